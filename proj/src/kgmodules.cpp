#include "k4forms/kgmodules.hpp"

#include <sstream>

namespace k4 {

std::string family_name(Family f) {
  switch (f) {
    case Family::TrivialSq: return "trivial2";
    case Family::Regular: return "regular";
    case Family::RegularSq: return "regular2";
    case Family::AnBn: return "anbn";
    case Family::Cnf: return "cnf";
    case Family::CnfSq: return "cnf2";
    case Family::CnInf: return "cninf";
    case Family::CnInfSq: return "cninf2";
  }
  return "?";
}

Family parse_family(const std::string& s) {
  for (Family f : {Family::TrivialSq, Family::Regular, Family::RegularSq, Family::AnBn, Family::Cnf,
                   Family::CnfSq, Family::CnInf, Family::CnInfSq})
    if (family_name(f) == s) return f;
  throw ParseError("unknown module family: " + s);
}

bool has_n(Family f) {
  return f == Family::AnBn || f == Family::Cnf || f == Family::CnfSq || f == Family::CnInf ||
         f == Family::CnInfSq;
}

bool has_poly(Family f) { return f == Family::Cnf || f == Family::CnfSq; }

bool is_squared(Family f) {
  return f == Family::RegularSq || f == Family::CnfSq || f == Family::CnInfSq;
}

int ModuleSpec::dim() const {
  switch (family) {
    case Family::TrivialSq: return 2;
    case Family::Regular: return 4;
    case Family::RegularSq: return 8;
    case Family::AnBn: return 4 * n + 2;
    case Family::Cnf: return 2 * m() * n;
    case Family::CnfSq: return 4 * m() * n;
    case Family::CnInf: return 2 * n;
    case Family::CnInfSq: return 4 * n;
  }
  return 0;
}

std::string ModuleSpec::header() const {
  std::ostringstream os;
  os << "module " << family_name(family) << ' ' << n;
  if (has_poly(family))
    for (elem c : f) os << ' ' << c;
  return os.str();
}

ModuleSpec make_spec(Family fam, const Field& k, int n, const Poly& f) {
  ModuleSpec s;
  s.family = fam;
  s.k = k;
  if (has_n(fam)) {
    if (n < 1) throw PreconditionError("module size n must be >= 1");
    s.n = n;
  } else if (n != 0) {
    throw PreconditionError("this module family takes no size parameter");
  }
  if (has_poly(fam)) {
    make_extension(k, f);  // validates
    s.f = f;
    poly_trim(s.f);
  } else if (!f.empty()) {
    throw PreconditionError("this module family takes no polynomial");
  }
  return s;
}

// kG arithmetic. Index bits: 1 -> g1, 2 -> g2.

KG kg_mul(const Field& F, const KG& x, const KG& y) {
  KG r{0, 0, 0, 0};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i ^ j] ^= F.mul(x[i], y[j]);
  return r;
}

elem kg_aug(const KG& x) { return x[0] ^ x[1] ^ x[2] ^ x[3]; }

KG kg_scale(const Field& F, const KG& x, elem s) {
  KG r;
  for (int i = 0; i < 4; ++i) r[i] = F.mul(x[i], s);
  return r;
}

KG kg_add(const KG& x, const KG& y) {
  KG r;
  for (int i = 0; i < 4; ++i) r[i] = x[i] ^ y[i];
  return r;
}

KG kg_inv(const Field& F, const KG& x) {
  elem a = kg_aug(x);
  if (a == 0) throw PreconditionError("kG element is not a unit");
  // x^2 = aug(x)^2
  return kg_scale(F, x, F.inv(F.mul(a, a)));
}

Mat kg_hat(const Field& F, const KG& x) {
  Mat R(F, 4, 4);
  for (int p = 0; p < 4; ++p)
    for (int j = 0; j < 4; ++j) R(p, j) = x[p ^ j];
  return R;
}

KG kg_from_hat(const Mat& X) { return {X(0, 0), X(0, 1), X(0, 2), X(0, 3)}; }

Mat companion(const Field& k, const Poly& f, int n) {
  Poly p = poly_pow(k, f, n);
  int d = int(p.size()) - 1;
  Mat C(k, d, d);
  for (int i = 1; i < d; ++i) C(i, i - 1) = 1;
  for (int i = 0; i < d; ++i) C(i, d - 1) = p[i];
  return C;
}

namespace {

Mat unipotent(const Mat& P) {
  const Field& F = P.field();
  int d = P.rows();
  return block2(Mat::identity(F, d), P, Mat::zero(F, d, d), Mat::identity(F, d));
}

}  // namespace

GroupAction action(const ModuleSpec& spec) {
  const Field& k = spec.k;
  int n = spec.n;
  switch (spec.family) {
    case Family::TrivialSq: return {Mat::identity(k, 2), Mat::identity(k, 2)};
    case Family::Regular: return {kg_hat(k, {0, 1, 0, 0}), kg_hat(k, {0, 0, 1, 0})};
    case Family::RegularSq: {
      Mat a = kg_hat(k, {0, 1, 0, 0}), b = kg_hat(k, {0, 0, 1, 0});
      return {diag_blocks({a, a}), diag_blocks({b, b})};
    }
    case Family::AnBn: {
      int d = 2 * n + 1;
      Mat e = Mat::identity(k, d);
      e(n, n) = 0;
      return {unipotent(toeplitz(k, d, d, 2, 1)), unipotent(e)};
    }
    case Family::Cnf: {
      Mat Pi = companion(k, spec.f, n);
      return {unipotent(Mat::identity(k, Pi.rows())), unipotent(Pi)};
    }
    case Family::CnfSq: {
      Mat Pi = companion(k, spec.f, n);
      return {unipotent(Mat::identity(k, 2 * Pi.rows())), unipotent(diag_blocks({Pi, Pi}))};
    }
    case Family::CnInf:
      return {unipotent(toeplitz(k, n, n, 2, 1)), unipotent(Mat::identity(k, n))};
    case Family::CnInfSq: {
      Mat t = toeplitz(k, n, n, 2, 1);
      return {unipotent(diag_blocks({t, t})), unipotent(Mat::identity(k, 2 * n))};
    }
  }
  throw PreconditionError("unknown family");
}

GroupAction action_An(const Field& k, int n) {
  auto g = [&](int i) {
    return block2(Mat::identity(k, n), toeplitz(k, n, n + 1, i, 1), Mat::zero(k, n + 1, n),
                  Mat::identity(k, n + 1));
  };
  return {g(2), g(1)};
}

GroupAction action_Bn(const Field& k, int n) {
  auto g = [&](int i) {
    return block2(Mat::identity(k, n + 1), toeplitz(k, n + 1, n, i, 1), Mat::zero(k, n, n + 1),
                  Mat::identity(k, n));
  };
  return {g(1), g(0)};
}

JordanData jordan_data(const Field& k, const Poly& f, int n) {
  if (n < 1) throw PreconditionError("n must be >= 1");
  JordanData jd;
  jd.ext = make_extension(k, f);
  jd.n = n;
  jd.m = jd.ext.m;
  const Field& K = jd.ext.ext;
  int d = jd.m * n;
  jd.Pi = companion(k, jd.ext.f, n);
  std::vector<Mat> blocks;
  for (int t = 1; t <= jd.m; ++t) {
    elem lam = jd.ext.sigma(t, jd.ext.epsilon);
    blocks.push_back(Mat::identity(K, n).scaled(lam) + toeplitz(K, n, n, 2, 1));
  }
  jd.J = diag_blocks(blocks);
  Mat v(K, d, 1);
  for (int t = 0; t < jd.m; ++t) v(t * n + n - 1, 0) = 1;
  jd.V = Mat(K, d, d);
  for (int i = 0; i < d; ++i) {
    jd.V.set_block(0, i, v);
    v = jd.J * v;
  }
  jd.Vinv = inverse(jd.V);
  if (jd.V * embed(jd.ext, jd.Pi) != jd.J * jd.V)
    throw VerificationError("jordan_data: V does not intertwine the companion and Jordan forms");
  return jd;
}

Mat JordanData::script_D(const Mat& X) const {
  std::vector<Mat> b;
  const Field& K = ext.ext;
  for (int t = 1; t <= m; ++t) b.push_back(map_entries(X, K, [&](elem x) { return ext.sigma(t, x); }));
  return diag_blocks(b);
}

Mat JordanData::script_V(const Mat& X) const {
  return restrict_to_base(ext, V.transpose() * script_D(X) * V);
}

Mat JordanData::script_V_inv(const Mat& B) const {
  Mat Y = Vinv.transpose() * embed(ext, B) * Vinv;
  Mat X = Y.block(0, 0, n, n);
  if (!is_lower_hankel(X) || script_V(X) != B)
    throw PreconditionError("matrix is not in the image of the Hankel transfer map");
  return X;
}

Mat JordanData::centralizer(const Mat& X) const {
  return restrict_to_base(ext, Vinv * script_D(X) * V);
}

Mat JordanData::centralizer_inv(const Mat& A) const {
  Mat X = (V * embed(ext, A) * Vinv).block(0, 0, n, n);
  if (!is_upper_toeplitz(X) || centralizer(X) != A)
    throw PreconditionError("matrix does not commute with the companion matrix");
  return X;
}

ModuleSpec cninf_partner(const ModuleSpec& spec) {
  if (spec.family == Family::CnInf) return make_spec(Family::Cnf, spec.k, spec.n, {0, 1});
  if (spec.family == Family::CnInfSq) return make_spec(Family::CnfSq, spec.k, spec.n, {0, 1});
  throw PreconditionError("cninf_partner needs cninf or cninf2");
}

Mat cninf_swap(const ModuleSpec& spec) {
  Mat t = anti_identity(spec.k, spec.n);
  if (spec.family == Family::CnInf) return diag_blocks({t, t});
  if (spec.family == Family::CnInfSq) return diag_blocks({t, t, t, t});
  throw PreconditionError("cninf_swap needs cninf or cninf2");
}

bool in_end(const ModuleSpec& spec, const Mat& M) {
  GroupAction g = action(spec);
  return M * g.g1 == g.g1 * M && M * g.g2 == g.g2 * M;
}

std::vector<Mat> end_basis_generic(const ModuleSpec& spec) {
  GroupAction g = action(spec);
  const Field& k = spec.k;
  int d = spec.dim();
  Mat sys(k, 2 * d * d, d * d);
  int row = 0;
  for (const Mat* h : {&g.g1, &g.g2}) {
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b, ++row)
        for (int c = 0; c < d; ++c) {
          // (M h - h M)_{ab}
          sys(row, a * d + c) ^= (*h)(c, b);
          sys(row, c * d + b) ^= (*h)(a, c);
        }
  }
  Mat ker = kernel(sys);
  std::vector<Mat> out;
  for (int j = 0; j < ker.cols(); ++j) {
    Mat M(k, d, d);
    for (int a = 0; a < d; ++a)
      for (int c = 0; c < d; ++c) M(a, c) = ker(a * d + c, j);
    out.push_back(M);
  }
  return out;
}

int end_dim_closed(const ModuleSpec& spec) {
  int n = spec.n, mn = spec.m() * spec.n;
  switch (spec.family) {
    case Family::TrivialSq: return 4;
    case Family::Regular: return 4;
    case Family::RegularSq: return 16;
    case Family::AnBn: return 2 + 2 * n + (2 * n + 1) * (2 * n + 1);
    case Family::Cnf: return mn + mn * mn;
    case Family::CnfSq: return 4 * mn + 4 * mn * mn;
    case Family::CnInf: return n + n * n;
    case Family::CnInfSq: return 4 * n + 4 * n * n;
  }
  return 0;
}

namespace {

void add_singles(std::vector<Mat>& out, const Field& k, int d, int r0, int c0, int nr, int nc) {
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) {
      Mat M(k, d, d);
      M(r0 + i, c0 + j) = 1;
      out.push_back(M);
    }
}

// Basis of the centralizer of the companion matrix over k.
std::vector<Mat> centralizer_basis(const JordanData& jd) {
  std::vector<Mat> out;
  const Field& K = jd.ext.ext;
  for (int i = 1; i <= jd.n; ++i) {
    elem kappa = 1;
    for (int j = 0; j < jd.m; ++j) {
      out.push_back(jd.centralizer(toeplitz(K, jd.n, jd.n, i, kappa)));
      kappa = K.mul(kappa, jd.ext.epsilon);
    }
  }
  return out;
}

}  // namespace

std::vector<Mat> end_basis_closed(const ModuleSpec& spec) {
  const Field& k = spec.k;
  int d = spec.dim(), n = spec.n;
  std::vector<Mat> out;
  switch (spec.family) {
    case Family::TrivialSq:
      add_singles(out, k, 2, 0, 0, 2, 2);
      break;
    case Family::Regular:
      for (int i = 0; i < 4; ++i) {
        KG x{0, 0, 0, 0};
        x[i] = 1;
        out.push_back(kg_hat(k, x));
      }
      break;
    case Family::RegularSq:
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q)
          for (int i = 0; i < 4; ++i) {
            KG x{0, 0, 0, 0};
            x[i] = 1;
            Mat M(k, 8, 8);
            M.set_block(4 * p, 4 * q, kg_hat(k, x));
            out.push_back(M);
          }
      break;
    case Family::AnBn: {
      Mat a(k, d, d), b(k, d, d);
      for (int i = 0; i < n; ++i) a(i, i) = 1;
      for (int i = n; i < 2 * n + 1; ++i) b(i, i) = 1;
      for (int i = 2 * n + 1; i < 3 * n + 2; ++i) a(i, i) = 1;
      for (int i = 3 * n + 2; i < d; ++i) b(i, i) = 1;
      out.push_back(a);
      out.push_back(b);
      for (int i = 2 - n; i <= n + 1; ++i) {
        Mat sig = toeplitz(k, n, n + 1, i, 1);
        Mat M(k, d, d);
        M.set_block(0, n, sig);
        M.set_block(2 * n + 1, 3 * n + 2, tau_transpose(sig));
        out.push_back(M);
      }
      add_singles(out, k, d, 0, 2 * n + 1, 2 * n + 1, 2 * n + 1);
      break;
    }
    case Family::Cnf: {
      JordanData jd = jordan_data(k, spec.f, n);
      int mn = jd.Pi.rows();
      for (const Mat& A : centralizer_basis(jd)) out.push_back(diag_blocks({A, A}));
      add_singles(out, k, d, 0, mn, mn, mn);
      break;
    }
    case Family::CnfSq: {
      JordanData jd = jordan_data(k, spec.f, n);
      int mn = jd.Pi.rows();
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q)
          for (const Mat& A : centralizer_basis(jd)) {
            Mat u(k, 2 * mn, 2 * mn);
            u.set_block(p * mn, q * mn, A);
            out.push_back(diag_blocks({u, u}));
          }
      add_singles(out, k, d, 0, 2 * mn, 2 * mn, 2 * mn);
      break;
    }
    case Family::CnInf:
    case Family::CnInfSq: {
      Mat P = cninf_swap(spec);
      for (const Mat& M : end_basis_closed(cninf_partner(spec))) out.push_back(P * M * P);
      break;
    }
  }
  return out;
}

elem residue_field_map(const ModuleSpec& spec, const JordanData& jd, const Mat& M) {
  if (spec.family != Family::Cnf) throw PreconditionError("residue map is defined for cnf only");
  if (!in_end(spec, M)) throw PreconditionError("matrix is not an endomorphism");
  int mn = jd.Pi.rows();
  return jd.centralizer_inv(M.block(0, 0, mn, mn))(0, 0);
}

Mat dual_witness(const ModuleSpec& spec) {
  const Field& k = spec.k;
  int n = spec.n;
  switch (spec.family) {
    case Family::TrivialSq: return anti_identity(k, 2);
    case Family::Regular: return kg_hat(k, {0, 1, 0, 0});
    case Family::RegularSq:
      return block2(Mat::zero(k, 4, 4), Mat::identity(k, 4), Mat::identity(k, 4), Mat::zero(k, 4, 4));
    case Family::AnBn: return anti_identity(k, 4 * n + 2);
    case Family::Cnf:
    case Family::CnfSq: {
      JordanData jd = jordan_data(k, spec.f, n);
      Mat R = jd.script_V(anti_identity(jd.ext.ext, n));
      if (spec.family == Family::CnfSq) R = diag_blocks({R, R});
      int h = R.rows();
      return block2(Mat::zero(k, h, h), R, R, Mat::zero(k, h, h));
    }
    case Family::CnInf: return anti_identity(k, 2 * n);
    case Family::CnInfSq: {
      Mat t = anti_identity(k, n);
      Mat R = diag_blocks({t, t});
      return block2(Mat::zero(k, 2 * n, 2 * n), R, R, Mat::zero(k, 2 * n, 2 * n));
    }
  }
  throw PreconditionError("unknown family");
}

}  // namespace k4
