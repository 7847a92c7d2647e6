#include "k4forms/classify.hpp"

#include <functional>
#include <sstream>

namespace k4 {

namespace {

std::uint64_t checked_pow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (b && r > UINT64_MAX / b) throw PreconditionError("class count overflows 64 bits");
    r *= b;
  }
  return r;
}

bool is_cninf(Family f) { return f == Family::CnInf || f == Family::CnInfSq; }

// Jordan data of the cyclic families; cninf uses f = T.
JordanData jd_of(const ModuleSpec& spec) {
  if (is_cninf(spec.family)) return jordan_data(spec.k, {0, 1}, spec.n);
  return jordan_data(spec.k, spec.f, spec.n);
}

// Visit every tuple in {0..q-1}^len. If skip_first_one, the first entry skips 1.
void for_each_tuple(int len, elem q, bool skip_first_one, const std::function<void(const std::vector<elem>&)>& fn) {
  std::vector<elem> v(len, 0);
  auto ok = [&]() { return !(skip_first_one && len > 0 && v[0] == 1); };
  while (true) {
    if (ok()) fn(v);
    int i = len - 1;
    while (i >= 0 && ++v[i] == q) v[i--] = 0;
    if (i < 0) break;
  }
}

// coef * q^(e * m), with m symbolic when m == 0.
std::string q_term(std::uint64_t coef, int e, int m) {
  std::ostringstream os;
  if (e == 0) {
    os << coef;
    return os.str();
  }
  if (coef != 1) os << coef << '*';
  os << 'q';
  if (m == 0)
    os << "^(" << (e == 1 ? "" : std::to_string(e) + "*") << "m)";
  else if (e * m != 1)
    os << '^' << e * m;
  return os.str();
}

int cnfsq_l(int n, int r) { return (n + 1 - r) / 2; }

}  // namespace

std::uint64_t count_classes(const ModuleSpec& spec) {
  std::uint64_t q = spec.k.order();
  int n = spec.n;
  switch (spec.family) {
    case Family::TrivialSq: return 1;
    case Family::Regular: return q * q;
    case Family::RegularSq: return 2 * q + 1;
    case Family::AnBn: {
      std::uint64_t s = 2;
      for (int i = 1; i <= 2 * n - 1; ++i) s += checked_pow(q, i);
      return s;
    }
    case Family::Cnf:
    case Family::CnInf: return checked_pow(q, spec.m() * (n / 2));
    case Family::CnfSq:
    case Family::CnInfSq: {
      std::uint64_t Q = checked_pow(q, spec.m());
      if (n % 2 == 0) return std::uint64_t(n) * checked_pow(Q, (n - 2) / 2);
      std::uint64_t a = std::uint64_t(n + 1) / 2 * checked_pow(Q, (n - 1) / 2);
      std::uint64_t b = n >= 3 ? std::uint64_t(n - 1) / 2 * checked_pow(Q, (n - 3) / 2) : 0;
      return a + b;
    }
  }
  return 0;
}

std::string count_formula(const ModuleSpec& spec) { return count_formula(spec.family, spec.n, spec.m()); }

std::string count_formula(Family fam, int n, int m) {
  switch (fam) {
    case Family::TrivialSq: return "1";
    case Family::Regular: return "q^2";
    case Family::RegularSq: return "2*q+1";
    case Family::AnBn: {
      std::string s;
      for (int i = 2 * n - 1; i >= 1; --i) s += q_term(1, i, 1) + "+";
      return s + "2";
    }
    case Family::CnInf:
    case Family::CnInfSq: m = 1; break;
    default: break;
  }
  if (fam == Family::Cnf || fam == Family::CnInf) return q_term(1, n / 2, m);
  if (n % 2 == 0) return q_term(std::uint64_t(n), (n - 2) / 2, m);
  std::string s = q_term(std::uint64_t(n + 1) / 2, (n - 1) / 2, m);
  if (n >= 3) s += "+" + q_term(std::uint64_t(n - 1) / 2, (n - 3) / 2, m);
  return s;
}

std::vector<ClassLabel> enumerate_classes(const ModuleSpec& spec) {
  std::vector<ClassLabel> out;
  elem q = spec.k.order();
  int n = spec.n;
  switch (spec.family) {
    case Family::TrivialSq: out.push_back(TrivialSqLabel{}); break;
    case Family::Regular:
      for (elem b = 0; b < q; ++b)
        for (elem c = 0; c < q; ++c) out.push_back(RegularLabel{b, c});
      break;
    case Family::RegularSq:
      out.push_back(RegularSqLabel{RegularSqLabel::Paired, 0});
      for (elem v = 0; v < q; ++v) out.push_back(RegularSqLabel{RegularSqLabel::Alpha, v});
      for (elem v = 0; v < q; ++v) out.push_back(RegularSqLabel{RegularSqLabel::Mu, v});
      break;
    case Family::AnBn:
      out.push_back(AnBnLabel{std::vector<elem>(2 * n, 0)});
      for (int p = 1; p <= 2 * n; ++p)
        for_each_tuple(2 * n - p, q, false, [&](const std::vector<elem>& tail) {
          std::vector<elem> w(2 * n, 0);
          w[p - 1] = 1;
          for (int i = 0; i < 2 * n - p; ++i) w[p + i] = tail[i];
          out.push_back(AnBnLabel{w});
        });
      break;
    case Family::Cnf:
    case Family::CnInf: {
      elem Q = jd_of(spec).ext.ext.order();
      for_each_tuple(n / 2, Q, false, [&](const std::vector<elem>& a) { out.push_back(CnfLabel{a}); });
      break;
    }
    case Family::CnfSq:
    case Family::CnInfSq: {
      elem Q = jd_of(spec).ext.ext.order();
      for (int r = 2; r <= n + 1; ++r) {
        int l = cnfsq_l(n, r);
        for (int s = 0; s <= l; ++s) {
          int t = l - s;
          for_each_tuple(s, Q, false, [&](const std::vector<elem>& phi) {
            for_each_tuple(t, Q, true, [&](const std::vector<elem>& psi) {
              out.push_back(CnfSqLabel{r, s, phi, psi});
            });
          });
        }
      }
      break;
    }
  }
  return out;
}

bool label_valid(const ModuleSpec& spec, const ClassLabel& label) {
  elem q = spec.k.order();
  int n = spec.n;
  auto in_range = [](const std::vector<elem>& v, elem Q) {
    for (elem x : v)
      if (x >= Q) return false;
    return true;
  };
  switch (spec.family) {
    case Family::TrivialSq: return std::holds_alternative<TrivialSqLabel>(label);
    case Family::Regular: {
      auto* L = std::get_if<RegularLabel>(&label);
      return L && L->b < q && L->c < q;
    }
    case Family::RegularSq: {
      auto* L = std::get_if<RegularSqLabel>(&label);
      if (!L || L->kind < 0 || L->kind > 2 || L->value >= q) return false;
      return L->kind != RegularSqLabel::Paired || L->value == 0;
    }
    case Family::AnBn: {
      auto* L = std::get_if<AnBnLabel>(&label);
      if (!L || int(L->omega.size()) != 2 * n || !in_range(L->omega, q)) return false;
      for (elem w : L->omega)
        if (w) return w == 1;
      return true;
    }
    case Family::Cnf:
    case Family::CnInf: {
      auto* L = std::get_if<CnfLabel>(&label);
      return L && int(L->a.size()) == n / 2 && in_range(L->a, jd_of(spec).ext.ext.order());
    }
    case Family::CnfSq:
    case Family::CnInfSq: {
      auto* L = std::get_if<CnfSqLabel>(&label);
      if (!L || L->r < 2 || L->r > n + 1) return false;
      int l = cnfsq_l(n, L->r);
      if (L->s < 0 || L->s > l) return false;
      int t = l - L->s;
      elem Q = jd_of(spec).ext.ext.order();
      if (int(L->phi.size()) != L->s || int(L->psi.size()) != t) return false;
      if (!in_range(L->phi, Q) || !in_range(L->psi, Q)) return false;
      return t == 0 || L->psi[0] != 1;
    }
  }
  return false;
}

namespace {

KG regular_sq_alpha(const RegularSqLabel& L) {
  if (L.kind == RegularSqLabel::Alpha) return {0, 1, L.value, elem(1) ^ L.value};
  if (L.kind == RegularSqLabel::Mu) return {0, 0, 1, 1};
  return {0, 0, 0, 0};
}

KG regular_sq_gamma(const RegularSqLabel& L) {
  if (L.kind == RegularSqLabel::Mu) return {0, L.value, 0, L.value};
  return {0, 0, 0, 0};
}

Mat regular_sq_form(const Field& k, const KG& a, const KG& b, const KG& c) {
  Mat B = kg_hat(k, b);
  return block2(kg_hat(k, a), B, B, kg_hat(k, c));
}

Mat hankel_sum(const Field& K, int n, int j0, const std::vector<elem>& coeffs, int step) {
  Mat R(K, n, n);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i]) R = R + hankel(K, n, n, j0 + int(i) * step, coeffs[i]);
  return R;
}

}  // namespace

Mat anbn_block(const Field& k, int n, const std::vector<elem>& omega) {
  int d = 2 * n + 1;
  Mat A(k, d, d);
  A.set_block(0, n + 1, anti_identity(k, n));
  A.set_block(n, 0, anti_identity(k, n + 1));
  for (int a = 1; a <= n + 1; ++a)
    for (int b = 1; b <= n; ++b) A(n + a - 1, n + b) = omega.at(a + b - 2);
  return A;
}

std::vector<elem> anbn_forced_diagonal(int n, const std::vector<elem>& omega) {
  std::vector<elem> D(2 * n + 1, 0);
  for (int i = n + 1; i <= 2 * n; ++i) D[i - 1] = omega.at(2 * (i - n) - 2);
  D[2 * n] = omega.at(2 * n - 1);
  return D;
}

Mat cnf_hankel(const JordanData& jd, const CnfLabel& label) {
  const Field& K = jd.ext.ext;
  return hankel(K, jd.n, jd.n, jd.n + 1, 1) + hankel_sum(K, jd.n, jd.n + 2, label.a, 2);
}

Triple cnfsq_triple(const JordanData& jd, const CnfSqLabel& L) {
  const Field& K = jd.ext.ext;
  int n = jd.n;
  Triple t;
  t.phi = hankel(K, n, n, n + L.r, 1) + hankel_sum(K, n, n + L.r + 1, L.phi, 2);
  t.mu = hankel(K, n, n, n + L.r + 2 * L.s + 1, 1);
  t.psi = hankel(K, n, n, n + 1, 1) + hankel_sum(K, n, n + 1, L.psi, 1);
  return t;
}

Mat cnfsq_sigma(const JordanData& jd, const Triple& t) {
  Mat P = jd.script_V(t.psi);
  return block2(jd.script_V(t.phi), P, P, jd.script_V(t.mu));
}

Mat representative(const ModuleSpec& spec, const ClassLabel& label) {
  if (!label_valid(spec, label)) throw PreconditionError("label does not belong to this module");
  const Field& k = spec.k;
  int n = spec.n;
  auto anti_pair = [&](const Mat& R) {
    int h = R.rows();
    return block2(Mat::zero(k, h, h), R, R.transpose(), Mat::zero(k, h, h));
  };
  switch (spec.family) {
    case Family::TrivialSq: return anti_identity(k, 2);
    case Family::Regular: {
      auto& L = std::get<RegularLabel>(label);
      return kg_hat(k, {0, L.b, L.c, elem(1) ^ L.b ^ L.c});
    }
    case Family::RegularSq: {
      auto& L = std::get<RegularSqLabel>(label);
      return regular_sq_form(k, regular_sq_alpha(L), {1, 0, 0, 0}, regular_sq_gamma(L));
    }
    case Family::AnBn: return anti_pair(anbn_block(k, n, std::get<AnBnLabel>(label).omega));
    case Family::Cnf: {
      JordanData jd = jd_of(spec);
      return anti_pair(jd.script_V(cnf_hankel(jd, std::get<CnfLabel>(label))));
    }
    case Family::CnfSq: {
      JordanData jd = jd_of(spec);
      return anti_pair(cnfsq_sigma(jd, cnfsq_triple(jd, std::get<CnfSqLabel>(label))));
    }
    case Family::CnInf:
    case Family::CnInfSq: {
      Mat P = cninf_swap(spec);
      return P * representative(cninf_partner(spec), label) * P;
    }
  }
  throw PreconditionError("unknown family");
}

// ---------------------------------------------------------------------------
// canonicalization

namespace {

void require_symplectic(const ModuleSpec& spec, const Mat& S) {
  if (S.rows() != spec.dim() || S.cols() != spec.dim() || S.field() != spec.k)
    throw PreconditionError("form has the wrong size or field for this module");
  if (!is_symmetric(S)) throw PreconditionError("form is not symmetric");
  if (!is_hollow(S)) throw PreconditionError("form is not alternating (nonzero diagonal)");
  if (!is_invertible(S)) throw PreconditionError("form is degenerate");
  if (!is_invariant_form(action(spec), S)) throw PreconditionError("form is not invariant under the group action");
}

Canonical finish(const ModuleSpec& spec, const Mat& S, ClassLabel label, Mat W) {
  if (W.transpose() * S * W != representative(spec, label))
    throw VerificationError("canonical witness does not reach the representative");
  if (!in_end(spec, W) || !is_invertible(W)) throw VerificationError("canonical witness is not a module automorphism");
  return {std::move(label), std::move(W)};
}

Canonical canon_trivial(const ModuleSpec& spec, const Mat& S) {
  const Field& k = spec.k;
  Mat W = Mat::identity(k, 2);
  W(0, 0) = k.inv(S(0, 1));
  return finish(spec, S, TrivialSqLabel{}, W);
}

Canonical canon_regular(const ModuleSpec& spec, const Mat& S) {
  const Field& k = spec.k;
  KG phi = kg_from_hat(S);
  if (kg_hat(k, phi) != S || phi[0] != 0) throw PreconditionError("form is not of the form B_phi");
  elem lam = k.inv(kg_aug(phi));
  RegularLabel L{k.mul(phi[1], lam), k.mul(phi[2], lam)};
  return finish(spec, S, L, Mat::identity(k, 4).scaled(k.sqrt(lam)));
}

Canonical canon_regular_sq(const ModuleSpec& spec, const Mat& S) {
  const Field& k = spec.k;
  Mat cur = S, W = Mat::identity(k, 8);
  auto part = [&](int r, int c) {
    Mat b = cur.block(r, c, 4, 4);
    KG x = kg_from_hat(b);
    if (kg_hat(k, x) != b) throw PreconditionError("form blocks are not kG multiplications");
    return x;
  };
  auto step = [&](const Mat& M) {
    W = W * M;
    cur = M.transpose() * cur * M;
  };
  auto scalars = [&](elem a, elem b, elem c, elem d) {
    Mat I = Mat::identity(k, 4);
    return block2(I.scaled(a), I.scaled(b), I.scaled(c), I.scaled(d));
  };
  auto normalize_beta = [&]() {
    KG b = part(0, 4);
    step(block2(Mat::identity(k, 4), Mat::zero(k, 4, 4), Mat::zero(k, 4, 4), kg_hat(k, kg_inv(k, b))));
  };
  KG a0 = part(0, 0), c0 = part(4, 4);
  if (is_invertible(kg_hat(k, a0)) || is_invertible(kg_hat(k, c0)))
    throw PreconditionError("form decomposes: a diagonal block is nondegenerate");
  part(0, 4);
  normalize_beta();
  KG al = part(0, 0), ga = part(4, 4);
  RegularSqLabel L;
  bool a_zero = al == KG{0, 0, 0, 0}, g_zero = ga == KG{0, 0, 0, 0};
  if (a_zero && g_zero) {
    L = {RegularSqLabel::Paired, 0};
  } else {
    elem det = k.mul(al[1], ga[2]) ^ k.mul(al[2], ga[1]);
    if (det) {
      elem di = k.inv(det);
      step(scalars(k.sqrt(k.mul(ga[1], di)), k.sqrt(k.mul(ga[2], di)), k.sqrt(k.mul(al[1], di)),
                   k.sqrt(k.mul(al[2], di))));
      normalize_beta();
      L = {RegularSqLabel::Mu, part(4, 4)[1]};
    } else {
      if (a_zero) {
        step(scalars(0, 1, 1, 0));
        std::swap(al, ga);
      }
      elem y = 0;
      for (int i = 1; i < 4; ++i)
        if (al[i]) {
          y = k.div(ga[i], al[i]);
          break;
        }
      bool alpha_family = al[1] != 0;
      elem x = k.inv(alpha_family ? al[1] : al[2]);
      step(scalars(k.sqrt(x), k.sqrt(y), 0, 1));
      normalize_beta();
      if (alpha_family)
        L = {RegularSqLabel::Alpha, part(0, 0)[2]};
      else
        L = {RegularSqLabel::Mu, 0};
    }
  }
  return finish(spec, S, L, W);
}

Canonical canon_anbn(const ModuleSpec& spec, const Mat& S) {
  const Field& k = spec.k;
  int n = spec.n, d = 2 * n + 1;
  Mat A = S.block(0, d, d, d);
  elem x = A(0, 2 * n);
  Mat Om = A.block(n, n + 1, n + 1, n);
  std::vector<elem> w(2 * n, 0);
  for (int a = 1; a <= n + 1; ++a)
    for (int b = 1; b <= n; ++b) w[a + b - 2] = Om(a - 1, b - 1);
  Mat expect = anbn_block(k, n, w);
  expect.set_block(0, n + 1, anti_identity(k, n).scaled(x));
  expect.set_block(n, 0, anti_identity(k, n + 1).scaled(x));
  if (x == 0 || A != expect || !S.block(0, 0, d, d).is_zero())
    throw PreconditionError("form is not in the expected block shape");
  Mat Z = split_symmetric_hollow(S.block(d, d, d, d));
  Mat I = Mat::identity(k, d);
  Mat Ma = block2(I, inverse(A).transpose() * Z, Mat::zero(k, d, d), I);
  elem top = 0;
  for (elem v : w)
    if (v) {
      top = v;
      break;
    }
  elem beta = top ? k.sqrt(k.inv(top)) : 1;
  elem alpha = k.inv(k.mul(beta, x));
  std::vector<elem> m1(d), m4(d);
  for (int i = 0; i < d; ++i) {
    m1[i] = i < n ? alpha : beta;
    m4[i] = i < n + 1 ? alpha : beta;
  }
  Mat Mb(k, 2 * d, 2 * d);
  for (int i = 0; i < d; ++i) {
    Mb(i, i) = m1[i];
    Mb(d + i, d + i) = m4[i];
  }
  elem b2 = k.mul(beta, beta);
  for (elem& v : w) v = k.mul(v, b2);
  return finish(spec, S, AnBnLabel{w}, Ma * Mb);
}

Canonical canon_cnf(const ModuleSpec& spec, const Mat& S) {
  const Field& k = spec.k;
  JordanData jd = jd_of(spec);
  int h = jd.Pi.rows(), n = spec.n;
  Mat B = S.block(0, h, h, h);
  if (!S.block(0, 0, h, h).is_zero() || S.block(h, 0, h, h) != B)
    throw PreconditionError("form is not in the expected block shape");
  Mat Z = split_symmetric_hollow(S.block(h, h, h, h));
  Mat I = Mat::identity(k, h);
  Mat Ma = block2(I, inverse(B) * Z, Mat::zero(k, h, h), I);
  Mat Bp = jd.script_V_inv(B);
  CosetReduction red = lh_coset_reduce(Bp, 0);
  CnfLabel L;
  for (int i = 2; i <= n; i += 2) L.a.push_back(hankel_coeff(red.C, n + i));
  Mat X = jd.centralizer(red.B);
  return finish(spec, S, L, Ma * diag_blocks({X, X}));
}

struct SqState {
  Mat phi, psi, mu;
  Mat a, b, c, d;

  void apply(const Mat& al, const Mat& be, const Mat& ga, const Mat& de) {
    Mat nphi = phi * al * al + mu * ga * ga;
    Mat nmu = phi * be * be + mu * de * de;
    Mat npsi = phi * al * be + psi * al * de + psi * ga * be + mu * ga * de;
    phi = nphi;
    mu = nmu;
    psi = npsi;
    Mat na = a * al + b * ga, nb = a * be + b * de, nc = c * al + d * ga, nd = c * be + d * de;
    a = na;
    b = nb;
    c = nc;
    d = nd;
  }
};

Canonical canon_cnf_sq(const ModuleSpec& spec, const Mat& S) {
  const Field& k = spec.k;
  JordanData jd = jd_of(spec);
  const Field& K = jd.ext.ext;
  int n = spec.n, mn = jd.Pi.rows(), h = 2 * mn;
  Mat om = S.block(0, h, h, h);
  if (!S.block(0, 0, h, h).is_zero() || S.block(h, 0, h, h) != om)
    throw PreconditionError("form is not in the expected block shape");
  if (om.block(mn, 0, mn, mn) != om.block(0, mn, mn, mn))
    throw PreconditionError("form is not in the expected block shape");
  SqState st;
  st.phi = jd.script_V_inv(om.block(0, 0, mn, mn));
  st.psi = jd.script_V_inv(om.block(0, mn, mn, mn));
  st.mu = jd.script_V_inv(om.block(mn, mn, mn, mn));
  if (is_invertible(st.phi) || is_invertible(st.mu))
    throw PreconditionError("form decomposes: a diagonal block is nondegenerate");
  Mat Z = split_symmetric_hollow(S.block(h, h, h, h));
  Mat Ih = Mat::identity(k, h);
  Mat Ma = block2(Ih, inverse(om) * Z, Mat::zero(k, h, h), Ih);

  Mat I = Mat::identity(K, n), O = Mat::zero(K, n, n), Ti = anti_identity(K, n);
  st.a = I;
  st.b = O;
  st.c = O;
  st.d = I;
  auto rk = [&](const Mat& X) { return n + 1 - rank(X); };
  CnfSqLabel L;

  if (st.phi.is_zero() && st.mu.is_zero()) {
    st.apply(inverse(st.psi) * Ti, O, O, I);
    L = {n + 1, 0, {}, {}};
  } else {
    if (st.phi.is_zero()) st.apply(O, I, I, O);
    int r = rk(st.phi), j = rk(st.mu);
    if (!st.mu.is_zero()) {
      if (j < r) {
        st.apply(O, I, I, O);
        std::swap(r, j);
      }
      while (!st.mu.is_zero() && (j - r) % 2 == 0) {
        int i = (j - r) / 2;
        elem x2 = K.div(hankel_coeff(st.mu, n + j), hankel_coeff(st.phi, n + r));
        st.apply(I, toeplitz(K, n, n, i + 1, K.sqrt(x2)), O, I);
        j = rk(st.mu);
      }
    }
    if (st.mu.is_zero()) {
      Mat A = lh_coset_reduce(st.phi, 0).B;
      st.apply(A, O, O, inverse(A) * inverse(st.psi) * Ti);
      r = rk(st.phi);
      int s = (n - r + 1) / 2;
      L = {r, s, {}, {}};
      for (int i = 1; i <= 2 * s - 1; i += 2) L.phi.push_back(hankel_coeff(st.phi, n + r + i));
    } else {
      int s = (j - r - 1) / 2;
      Mat A = lh_coset_reduce(st.phi, 0).B, D = lh_coset_reduce(st.mu, 0).B;
      st.apply(A, O, O, D);
      if (j < n) {
        CosetReduction red = lh_coset_reduce(st.phi, s + 1);
        Mat X3 = hr_decompose(st.mu, j);
        Mat d0i = inverse(I + toeplitz(K, n, n, 2, 1) * red.X * X3);
        st.apply(I, red.B * X3 * d0i, O, d0i);
      }
      if (st.mu != hankel(K, n, n, n + j, 1)) throw VerificationError("cnf2: mu normalization failed");
      std::vector<elem> cs(n, 0);
      for (int i = 1; i <= n; ++i) cs[i - 1] = K.sqrt(hankel_coeff(st.phi, n + r + 2 * s + 2 * i - 1));
      st.apply(I, O, upper_toeplitz(K, n, cs), I);
      int t = (n - r - 2 * s + 1) / 2;
      Mat tail(K, n, n);
      for (int i = t + 1; i <= n; ++i) tail = tail + hankel(K, n, n, n + i, hankel_coeff(st.psi, n + i));
      st.apply(I, O, O, I + inverse(st.psi) * tail);
      L = {r, s, {}, {}};
      for (int i = 1; i <= 2 * s - 1; i += 2) L.phi.push_back(hankel_coeff(st.phi, n + r + i));
      for (int i = 1; i <= t; ++i) L.psi.push_back(hankel_coeff(st.psi, n + i) ^ (i == 1 ? 1 : 0));
    }
  }
  Mat u = block2(jd.centralizer(st.a), jd.centralizer(st.b), jd.centralizer(st.c), jd.centralizer(st.d));
  return finish(spec, S, L, Ma * diag_blocks({u, u}));
}

}  // namespace

Canonical canonicalize(const ModuleSpec& spec, const Mat& S) {
  require_symplectic(spec, S);
  switch (spec.family) {
    case Family::TrivialSq: return canon_trivial(spec, S);
    case Family::Regular: return canon_regular(spec, S);
    case Family::RegularSq: return canon_regular_sq(spec, S);
    case Family::AnBn: return canon_anbn(spec, S);
    case Family::Cnf: return canon_cnf(spec, S);
    case Family::CnfSq: return canon_cnf_sq(spec, S);
    case Family::CnInf:
    case Family::CnInfSq: {
      Mat P = cninf_swap(spec);
      Canonical c = canonicalize(cninf_partner(spec), P * S * P);
      return finish(spec, S, c.label, P * c.witness * P);
    }
  }
  throw PreconditionError("unknown family");
}

// ---------------------------------------------------------------------------
// quadratic forms

namespace {

elem eps_term(const JordanData& jd) {
  const Field& K = jd.ext.ext;
  elem e = jd.ext.epsilon;
  return e ^ K.mul(e, e);
}

struct BlockData {
  Mat R;
  std::vector<elem> D1;
};

// Off-diagonal block and forced diagonal for families of the shape (0 R; R^T 0).
BlockData block_data(const ModuleSpec& spec, const ClassLabel& label) {
  Mat S = representative(spec, label);
  int h = S.rows() / 2;
  BlockData b{S.block(0, h, h, h), {}};
  if (spec.family == Family::AnBn)
    b.D1 = anbn_forced_diagonal(spec.n, std::get<AnBnLabel>(label).omega);
  else
    b.D1 = diagonal(b.R);
  return b;
}

}  // namespace

bool quad_exists(const ModuleSpec& spec, const ClassLabel& label) {
  if (!label_valid(spec, label)) throw PreconditionError("label does not belong to this module");
  int n = spec.n;
  switch (spec.family) {
    case Family::TrivialSq:
    case Family::Regular:
    case Family::RegularSq: return true;
    case Family::AnBn: {
      auto& w = std::get<AnBnLabel>(label).omega;
      for (int p = 2; p <= 2 * n - 2; p += 2)
        if (w[p - 1] != w[p]) return false;
      return true;
    }
    case Family::Cnf:
    case Family::CnInf: {
      JordanData jd = jd_of(spec);
      const Field& K = jd.ext.ext;
      auto& a = std::get<CnfLabel>(label).a;
      bool lin = jd.ext.f_is_linear_trivial();
      if (n % 2 == 1) {
        if (!lin) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
          if (a[i] != (i == 0 ? 1u : 0u)) return false;
        return true;
      }
      if (lin) return false;
      elem base = K.inv(eps_term(jd));
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != K.pow(base, i + 1)) return false;
      return true;
    }
    case Family::CnfSq:
    case Family::CnInfSq: {
      JordanData jd = jd_of(spec);
      const Field& K = jd.ext.ext;
      auto& L = std::get<CnfSqLabel>(label);
      if (L.s != cnfsq_l(n, L.r)) return false;  // mu != 0
      if (L.r == n + 1) return true;
      bool lin = jd.ext.f_is_linear_trivial();
      if ((n + L.r) % 2 == 0) {
        if (!lin) return false;
        for (std::size_t i = 0; i < L.phi.size(); ++i)
          if (L.phi[i] != (i == 0 ? 1u : 0u)) return false;
        return true;
      }
      if (lin) return false;
      elem base = K.inv(eps_term(jd));
      for (std::size_t i = 0; i < L.phi.size(); ++i)
        if (L.phi[i] != K.pow(base, i + 1)) return false;
      return true;
    }
  }
  return false;
}

std::vector<std::pair<QuadLabel, Mat>> quad_representatives(const ModuleSpec& spec, const ClassLabel& label) {
  std::vector<std::pair<QuadLabel, Mat>> out;
  if (!quad_exists(spec, label)) return out;
  const Field& k = spec.k;
  Mat S = representative(spec, label);
  switch (spec.family) {
    case Family::TrivialSq: {
      auto [z, c] = k.artin_schreier_reps();
      for (elem x : {z, c}) {
        Mat Q(k, 2, 2);
        Q(0, 0) = 1;
        Q(0, 1) = 1;
        Q(1, 1) = x;
        out.push_back({ArfRep{x}, Q});
      }
      break;
    }
    case Family::Regular:
    case Family::RegularSq: out.push_back({UniqueQuad{}, s_hat(S)}); break;
    case Family::CnInf:
    case Family::CnInfSq: {
      Mat P = cninf_swap(spec);
      for (auto& [ql, Q] : quad_representatives(cninf_partner(spec), label))
        out.push_back({ql, quad_normalize(P * Q * P)});
      break;
    }
    default: {
      BlockData b = block_data(spec, label);
      bool zero = true;
      for (elem v : b.D1) zero = zero && v == 0;
      if (zero) {
        out.push_back({UniqueQuad{}, block_quad(b.R, b.D1, b.D1)});
      } else {
        auto [z, c] = k.artin_schreier_reps();
        for (elem x : {z, c}) out.push_back({ArfRep{x}, block_quad_target(b.R, b.D1, x)});
      }
    }
  }
  GroupAction act = action(spec);
  for (auto& [ql, Q] : out)
    if (!is_invariant_quad(act, Q) || quad_polar(Q) != S)
      throw VerificationError("quadratic representative is not an invariant refinement");
  return out;
}

QuadCanonical quad_canonicalize(const ModuleSpec& spec, const ClassLabel& label, const Mat& Qin) {
  const Field& k = spec.k;
  Mat S = representative(spec, label);
  if (Qin.rows() != S.rows() || Qin.cols() != S.cols() || Qin.field() != k)
    throw PreconditionError("quadratic form has the wrong size or field");
  Mat Q = quad_normalize(Qin);
  if (quad_polar(Q) != S) throw PreconditionError("quadratic form does not refine the class representative");
  GroupAction act = action(spec);
  if (!is_invariant_quad(act, Q)) throw PreconditionError("quadratic form is not invariant");
  QuadCanonical out;
  switch (spec.family) {
    case Family::TrivialSq: {
      std::vector<elem> u(2), v0(2);
      if (Q(0, 0)) {
        u = {k.inv(k.sqrt(Q(0, 0))), 0};
        v0 = {0, k.sqrt(Q(0, 0))};
      } else if (Q(1, 1)) {
        u = {0, k.inv(k.sqrt(Q(1, 1)))};
        v0 = {k.sqrt(Q(1, 1)), 0};
      } else {
        u = {1, 1};
        v0 = {0, 1};
      }
      auto [x, delta] = k.coset_reduce(quad_eval(Q, v0));
      Mat W(k, 2, 2);
      for (int i = 0; i < 2; ++i) {
        W(i, 0) = u[i];
        W(i, 1) = v0[i] ^ k.mul(delta, u[i]);
      }
      out = {ArfRep{x}, W};
      break;
    }
    case Family::Regular: {
      Mat ones(k, 4, 4);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) ones(i, j) = Q(0, 0);
      out = {UniqueQuad{}, Mat::identity(k, 4) + ones};
      break;
    }
    case Family::RegularSq: {
      Mat z = kg_hat(k, {1, 1, 1, 1});
      Mat I = Mat::identity(k, 4);
      out = {UniqueQuad{}, block2(I, z.scaled(Q(4, 4)), z.scaled(Q(0, 0)), I)};
      break;
    }
    case Family::CnInf:
    case Family::CnInfSq: {
      Mat P = cninf_swap(spec);
      QuadCanonical c = quad_canonicalize(cninf_partner(spec), label, P * Q * P);
      out = {c.label, P * c.witness * P};
      break;
    }
    default: {
      BlockData b = block_data(spec, label);
      int h = b.R.rows();
      if (diagonal(Q.block(0, 0, h, h)) != b.D1) throw VerificationError("invariant form with unexpected diagonal");
      BlockQuadReduction red = block_quad_reduce(b.R, b.D1, diagonal(Q.block(h, h, h, h)));
      out.witness = red.witness;
      if (red.unique)
        out.label = UniqueQuad{};
      else
        out.label = ArfRep{red.x};
    }
  }
  Mat target;
  for (auto& [ql, R] : quad_representatives(spec, label))
    if (ql == out.label) target = R;
  if (target.rows() == 0) throw VerificationError("quadratic class label has no representative");
  if (quad_transform(Q, out.witness) != quad_normalize(target))
    throw VerificationError("quadratic witness does not reach the representative");
  if (out.witness.transpose() * S * out.witness != S || !in_end(spec, out.witness) || !is_invertible(out.witness))
    throw VerificationError("quadratic witness is not an isometry of the class representative");
  return out;
}

}  // namespace k4
