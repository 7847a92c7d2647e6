#include "k4forms/forms.hpp"

namespace k4 {

bool is_invariant_form(const GroupAction& act, const Mat& B) {
  return act.g1.transpose() * B * act.g1 == B && act.g2.transpose() * B * act.g2 == B;
}

bool is_symplectic_form(const GroupAction& act, const Mat& B) {
  return is_alternating_gram(B) && is_invertible(B) && is_invariant_form(act, B);
}

Mat radical(const Mat& B) { return kernel(B); }

Mat paired_form(const Mat& B) {
  const Field& F = B.field();
  int d = B.rows();
  return block2(Mat::zero(F, d, d), B, B.transpose(), Mat::zero(F, d, d));
}

GroupAction paired_action(const GroupAction& act) {
  return {diag_blocks({act.g1, inverse(act.g1).transpose()}),
          diag_blocks({act.g2, inverse(act.g2).transpose()})};
}

Mat orthogonal_sum(const Mat& a, const Mat& b) { return diag_blocks({a, b}); }

GroupAction direct_sum(const GroupAction& a, const GroupAction& b) {
  return {diag_blocks({a.g1, b.g1}), diag_blocks({a.g2, b.g2})};
}

namespace {

elem bil(const Mat& S, const std::vector<elem>& x, const std::vector<elem>& y) {
  const Field& F = S.field();
  elem r = 0;
  for (int i = 0; i < S.rows(); ++i) {
    if (!x[i]) continue;
    elem s = 0;
    for (int j = 0; j < S.cols(); ++j) s ^= F.mul(S(i, j), y[j]);
    r ^= F.mul(x[i], s);
  }
  return r;
}

}  // namespace

Mat symplectic_basis(const Mat& S) {
  if (!is_alternating_gram(S) || !is_invertible(S))
    throw PreconditionError("symplectic_basis needs a nondegenerate alternating form");
  const Field& F = S.field();
  int d = S.rows();
  std::vector<std::vector<elem>> rest;
  for (int i = 0; i < d; ++i) {
    std::vector<elem> e(d, 0);
    e[i] = 1;
    rest.push_back(e);
  }
  Mat P(F, d, d);
  int col = 0;
  while (!rest.empty()) {
    std::vector<elem> u = rest.front();
    rest.erase(rest.begin());
    std::size_t w = 0;
    while (w < rest.size() && bil(S, u, rest[w]) == 0) ++w;
    if (w == rest.size()) throw VerificationError("symplectic_basis: no partner found");
    std::vector<elem> v = rest[w];
    elem c = F.inv(bil(S, u, v));
    for (elem& x : v) x = F.mul(x, c);
    rest.erase(rest.begin() + long(w));
    for (auto& x : rest) {
      elem a = bil(S, x, v), b = bil(S, x, u);
      for (int i = 0; i < d; ++i) x[i] ^= F.mul(a, u[i]) ^ F.mul(b, v[i]);
    }
    for (int i = 0; i < d; ++i) {
      P(i, col) = u[i];
      P(i, col + 1) = v[i];
    }
    col += 2;
  }
  std::vector<Mat> hyp(d / 2, anti_identity(F, 2));
  if (P.transpose() * S * P != diag_blocks(hyp)) throw VerificationError("symplectic_basis: check failed");
  return P;
}

Mat quad_normalize(const Mat& Q) {
  Mat U(Q.field(), Q.rows(), Q.cols());
  for (int i = 0; i < Q.rows(); ++i) {
    U(i, i) = Q(i, i);
    for (int j = i + 1; j < Q.cols(); ++j) U(i, j) = Q(i, j) ^ Q(j, i);
  }
  return U;
}

bool quad_equal(const Mat& Q1, const Mat& Q2) { return quad_normalize(Q1) == quad_normalize(Q2); }

Mat quad_polar(const Mat& Q) { return Q + Q.transpose(); }

elem quad_eval(const Mat& Q, const std::vector<elem>& x) { return bil(Q, x, x); }

Mat quad_transform(const Mat& Q, const Mat& M) { return quad_normalize(M.transpose() * Q * M); }

bool is_invariant_quad(const GroupAction& act, const Mat& Q) {
  return quad_equal(act.g1.transpose() * Q * act.g1, Q) && quad_equal(act.g2.transpose() * Q * act.g2, Q);
}

Mat s_hat(const Mat& S) {
  Mat U(S.field(), S.rows(), S.cols());
  for (int i = 0; i < S.rows(); ++i)
    for (int j = i + 1; j < S.cols(); ++j) U(i, j) = S(i, j);
  return U;
}

Mat quad_with_diagonal(const Mat& S, const std::vector<elem>& d) {
  Mat Q = s_hat(S);
  for (int i = 0; i < Q.rows(); ++i) Q(i, i) = d.at(i);
  return Q;
}

elem arf_sum(const Mat& Q) {
  const Field& F = Q.field();
  Mat P = symplectic_basis(quad_polar(Q));
  elem a = 0;
  for (int c = 0; c < P.cols(); c += 2) {
    std::vector<elem> u(P.rows()), v(P.rows());
    for (int i = 0; i < P.rows(); ++i) {
      u[i] = P(i, c);
      v[i] = P(i, c + 1);
    }
    a ^= F.mul(quad_eval(Q, u), quad_eval(Q, v));
  }
  return a;
}

elem arf_class(const Mat& Q) { return Q.field().coset_reduce(arf_sum(Q)).first; }

std::vector<elem> diagonal(const Mat& A) {
  std::vector<elem> d(A.rows());
  for (int i = 0; i < A.rows(); ++i) d[i] = A(i, i);
  return d;
}

Mat block_quad(const Mat& R, const std::vector<elem>& D1, const std::vector<elem>& D2) {
  const Field& F = R.field();
  int h = R.rows();
  Mat Q(F, 2 * h, 2 * h);
  Q.set_block(0, h, R);
  for (int i = 0; i < h; ++i) {
    Q(i, i) = D1.at(i);
    Q(h + i, h + i) = D2.at(i);
  }
  return Q;
}

namespace {

bool all_zero(const std::vector<elem>& v) {
  for (elem x : v)
    if (x) return false;
  return true;
}

std::pair<int, elem> pivot(const Mat& R, const std::vector<elem>& D1) {
  const Field& F = R.field();
  int h = R.rows();
  Mat Ri = inverse(R);
  Mat D(F, h, h);
  for (int i = 0; i < h; ++i) D(i, i) = D1[i];
  Mat eta = Ri * D * Ri.transpose();
  for (int t = 0; t < h; ++t)
    if (eta(t, t)) return {t, eta(t, t)};
  throw VerificationError("block quadratic form: eta has zero diagonal");
}

}  // namespace

Mat block_quad_target(const Mat& R, const std::vector<elem>& D1, elem x) {
  int h = R.rows();
  std::vector<elem> D2(h, 0);
  if (!all_zero(D1)) {
    auto [t, e] = pivot(R, D1);
    D2[t] = R.field().div(x, e);
  }
  return block_quad(R, D1, D2);
}

BlockQuadReduction block_quad_reduce(const Mat& R, const std::vector<elem>& D1,
                                     const std::vector<elem>& D2) {
  const Field& F = R.field();
  int h = R.rows();
  if (!is_invertible(R)) throw PreconditionError("block quadratic form: R is singular");
  Mat RiT = inverse(R).transpose();
  BlockQuadReduction out;
  Mat L(F, h, h);
  if (all_zero(D1)) {
    out.unique = true;
    for (int i = 0; i < h; ++i) L(i, i) = D2[i];
  } else {
    auto [t, e] = pivot(R, D1);
    out.t = t;
    out.eta_tt = e;
    Mat Ri = inverse(R);
    Mat D(F, h, h);
    for (int i = 0; i < h; ++i) D(i, i) = D1[i];
    Mat eta = Ri * D * RiT;
    for (int i = 0; i < h; ++i) {
      if (i == t) continue;
      elem l = F.sqrt(F.div(D2[i], e));
      L(t, i) = l;
      L(i, t) = l;
    }
    elem w = D2[t];
    for (int s = 0; s < h; ++s)
      if (s != t) w ^= F.mul(eta(s, s), F.square(L(s, t)));
    auto [x, delta] = F.coset_reduce(F.mul(e, w));
    out.x = x;
    L(t, t) = F.div(delta, e);
  }
  out.Y = RiT * L;
  out.witness = block2(Mat::identity(F, h), out.Y, Mat::zero(F, h, h), Mat::identity(F, h));
  out.target = quad_transform(block_quad(R, D1, D2), out.witness);
  Mat expect = quad_normalize(block_quad_target(R, D1, out.x));
  if (out.target != expect) throw VerificationError("block quadratic reduction did not reach its target");
  return out;
}

}  // namespace k4
