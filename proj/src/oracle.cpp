#include "k4forms/oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

namespace k4 {

namespace {

std::uint64_t pow_budget(std::uint64_t q, int e, std::uint64_t cap, const char* what) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > cap / q) throw PreconditionError(std::string("oracle budget exceeded: ") + what);
    r *= q;
  }
  return r;
}

// Digits of code in base q, least significant first.
std::vector<elem> digits(std::uint64_t code, elem q, int len) {
  std::vector<elem> v(len);
  for (int i = 0; i < len; ++i) {
    v[i] = elem(code % q);
    code /= q;
  }
  return v;
}

Mat combine(const Field& k, const std::vector<Mat>& basis, const std::vector<elem>& c, int r, int cols) {
  Mat M(k, r, cols);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (c[i]) M = M + basis[i].scaled(c[i]);
  return M;
}

// All hollow symmetric h x h matrices over k.
std::vector<Mat> all_hollow_symmetric(const Field& k, int h, std::uint64_t cap) {
  std::vector<Mat> basis;
  for (int i = 0; i < h; ++i)
    for (int j = i + 1; j < h; ++j) {
      Mat E(k, h, h);
      E(i, j) = E(j, i) = 1;
      basis.push_back(E);
    }
  std::uint64_t total = pow_budget(k.order(), int(basis.size()), cap, "hollow blocks");
  std::vector<Mat> out;
  for (std::uint64_t c = 0; c < total; ++c)
    out.push_back(combine(k, basis, digits(c, k.order(), int(basis.size())), h, h));
  return out;
}

std::string label_text(const ClassLabel& L) {
  std::ostringstream os;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        auto list = [&](const std::vector<elem>& v) {
          os << '[';
          for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
          os << ']';
        };
        if constexpr (std::is_same_v<T, TrivialSqLabel>) os << "trivial2";
        else if constexpr (std::is_same_v<T, RegularLabel>) os << "regular " << x.b << ' ' << x.c;
        else if constexpr (std::is_same_v<T, RegularSqLabel>) os << "regular2 " << x.kind << ' ' << x.value;
        else if constexpr (std::is_same_v<T, AnBnLabel>) { os << "anbn "; list(x.omega); }
        else if constexpr (std::is_same_v<T, CnfLabel>) { os << "cnf "; list(x.a); }
        else { os << "cnf2 " << x.r << ' ' << x.s << ' '; list(x.phi); list(x.psi); }
      },
      L);
  return os.str();
}

bool is_cninf(Family f) { return f == Family::CnInf || f == Family::CnInfSq; }

}  // namespace

bool has_free_block(const ModuleSpec& spec) {
  switch (spec.family) {
    case Family::AnBn:
    case Family::Cnf:
    case Family::CnfSq:
    case Family::CnInf:
    case Family::CnInfSq: return true;
    default: return false;
  }
}

bool restrict_default(const ModuleSpec& spec, const OracleBudget& budget) {
  if (!has_free_block(spec)) return false;
  std::uint64_t r = 1, q = spec.k.order();
  for (int i = 0; i < end_dim_closed(spec); ++i) {
    if (r > budget.full_units / q) return true;
    r *= q;
  }
  return false;
}

std::vector<std::vector<int>> summand_indices(const ModuleSpec& spec) {
  std::vector<std::vector<int>> out;
  if (spec.family == Family::RegularSq) {
    out = {{0, 1, 2, 3}, {4, 5, 6, 7}};
  } else if (spec.family == Family::CnfSq || spec.family == Family::CnInfSq) {
    int mn = spec.dim() / 4;
    out.resize(2);
    for (int c = 0; c < 2; ++c)
      for (int half = 0; half < 2; ++half)
        for (int i = 0; i < mn; ++i) out[c].push_back(half * 2 * mn + c * mn + i);
  }
  return out;
}

bool admissible_form(const ModuleSpec& spec, const Mat& S) {
  if (!is_invertible(S)) return false;
  for (const auto& idx : summand_indices(spec)) {
    int s = int(idx.size());
    Mat R(spec.k, s, s);
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) R(i, j) = S(idx[i], idx[j]);
    if (is_invertible(R)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

FormSpace::FormSpace(const ModuleSpec& spec, bool restrict_D) : k_(spec.k), d_(spec.dim()) {
  int h = d_ / 2;
  std::vector<std::pair<int, int>> vars;
  for (int i = 0; i < d_; ++i)
    for (int j = i + 1; j < d_; ++j)
      if (!(restrict_D && i >= h)) vars.push_back({i, j});
  GroupAction act = action(spec);
  int nv = int(vars.size()), rows_per = d_ * (d_ - 1) / 2;
  Mat E(k_, 2 * rows_per, nv);
  for (int v = 0; v < nv; ++v) {
    Mat B(k_, d_, d_);
    B(vars[v].first, vars[v].second) = B(vars[v].second, vars[v].first) = 1;
    int row = 0;
    for (const Mat* g : {&act.g1, &act.g2}) {
      Mat R = g->transpose() * B * *g + B;
      for (int i = 0; i < d_; ++i)
        for (int j = i + 1; j < d_; ++j) E(row++, v) = R(i, j);
    }
  }
  Mat K = kernel(E);
  Mat Rw = K.transpose();
  std::vector<int> piv = rref(Rw);
  for (std::size_t r = 0; r < piv.size(); ++r) {
    Mat B(k_, d_, d_);
    for (int v = 0; v < nv; ++v)
      if (Rw(int(r), v)) B(vars[v].first, vars[v].second) = B(vars[v].second, vars[v].first) = Rw(int(r), v);
    basis_.push_back(B);
    pivots_.push_back(vars[piv[r]]);
  }
}

std::uint64_t FormSpace::size() const { return pow_budget(k_.order(), dim(), UINT64_MAX, "form space"); }

std::uint64_t FormSpace::encode(const Mat& S) const {
  std::uint64_t c = 0;
  for (int i = dim() - 1; i >= 0; --i) c = c * k_.order() + S(pivots_[i].first, pivots_[i].second);
  return c;
}

Mat FormSpace::decode(std::uint64_t code) const {
  return combine(k_, basis_, digits(code, k_.order(), dim()), d_, d_);
}

bool FormSpace::contains(const Mat& S) const {
  return S.rows() == d_ && S.cols() == d_ && decode(encode(S)) == S;
}

std::vector<Mat> enumerate_generic(const ModuleSpec& spec, bool restrict_D, const OracleBudget& budget) {
  FormSpace sp(spec, restrict_D);
  std::uint64_t total = pow_budget(spec.k.order(), sp.dim(), budget.max_forms, "form space");
  std::vector<Mat> out;
  for (std::uint64_t c = 0; c < total; ++c) {
    Mat S = sp.decode(c);
    if (admissible_form(spec, S)) out.push_back(S);
  }
  return out;
}

namespace {

// Structured forms (0 A; A^T D) for all off-diagonal blocks in offs.
std::vector<Mat> with_free_block(const Field& k, const std::vector<Mat>& offs, bool restrict_D, std::uint64_t cap) {
  if (offs.empty()) return {};
  int h = offs[0].rows();
  std::vector<Mat> Ds = restrict_D ? std::vector<Mat>{Mat::zero(k, h, h)} : all_hollow_symmetric(k, h, cap);
  if (offs.size() * Ds.size() > cap) throw PreconditionError("oracle budget exceeded: structured forms");
  std::vector<Mat> out;
  for (const Mat& A : offs)
    for (const Mat& D : Ds) out.push_back(block2(Mat::zero(k, h, h), A, A.transpose(), D));
  return out;
}

// Lower Hankel n x n over K with anti-diagonal coefficients c at n+1..2n.
Mat lh_from(const Field& K, int n, const std::vector<elem>& c) {
  Mat X(K, n, n);
  for (int i = 0; i < n; ++i)
    if (c[i]) X = X + hankel(K, n, n, n + 1 + i, c[i]);
  return X;
}

}  // namespace

std::vector<Mat> enumerate_structured(const ModuleSpec& spec, bool restrict_D, const OracleBudget& budget) {
  const Field& k = spec.k;
  elem q = k.order();
  int n = spec.n;
  std::vector<Mat> out;
  switch (spec.family) {
    case Family::TrivialSq:
      for (elem s = 1; s < q; ++s) out.push_back(anti_identity(k, 2).scaled(s));
      break;
    case Family::Regular:
      for (std::uint64_t c = 0; c < std::uint64_t(q) * q * q; ++c) {
        auto v = digits(c, q, 3);
        KG phi{0, v[0], v[1], v[2]};
        if (kg_aug(phi)) out.push_back(kg_hat(k, phi));
      }
      break;
    case Family::RegularSq: {
      std::vector<KG> ideal, unit;
      for (std::uint64_t c = 0; c < std::uint64_t(q) * q; ++c) {
        auto v = digits(c, q, 2);
        ideal.push_back({0, v[0], v[1], elem(v[0] ^ v[1])});
      }
      for (std::uint64_t c = 0; c < std::uint64_t(q) * q * q * q; ++c) {
        auto v = digits(c, q, 4);
        KG b{v[0], v[1], v[2], v[3]};
        if (kg_aug(b)) unit.push_back(b);
      }
      for (const KG& a : ideal)
        for (const KG& b : unit)
          for (const KG& c : ideal) {
            Mat B = kg_hat(k, b);
            out.push_back(block2(kg_hat(k, a), B, B, kg_hat(k, c)));
          }
      break;
    }
    case Family::AnBn: {
      int d = 2 * n + 1;
      std::uint64_t total = pow_budget(q, 2 * n, budget.max_forms, "anbn blocks");
      std::vector<Mat> offs;
      for (elem x = 1; x < q; ++x)
        for (std::uint64_t c = 0; c < total; ++c) {
          auto w = digits(c, q, 2 * n);
          Mat A(k, d, d);
          for (int i = 0; i < n; ++i) A(i, 2 * n - i) = x;
          for (int i = 0; i <= n; ++i) A(n + i, n - i) = x;
          for (int a = 0; a <= n; ++a)
            for (int b = 0; b < n; ++b) A(n + a, n + 1 + b) = w[a + b];
          offs.push_back(A);
        }
      out = with_free_block(k, offs, restrict_D, budget.max_forms);
      break;
    }
    case Family::Cnf:
    case Family::CnfSq: {
      JordanData jd = jordan_data(k, spec.f, n);
      const Field& K = jd.ext.ext;
      elem Q = K.order();
      std::vector<Mat> offs;
      if (spec.family == Family::Cnf) {
        std::uint64_t total = pow_budget(Q, n, budget.max_forms, "cnf blocks");
        for (std::uint64_t c = 0; c < total; ++c) {
          auto v = digits(c, Q, n);
          if (v[0]) offs.push_back(jd.script_V(lh_from(K, n, v)));
        }
      } else {
        std::uint64_t singular = pow_budget(Q, n - 1, budget.max_forms, "cnf2 blocks");
        std::uint64_t full = pow_budget(Q, n, budget.max_forms, "cnf2 blocks");
        if (singular * singular > budget.max_forms / full) throw PreconditionError("oracle budget exceeded: cnf2 blocks");
        std::vector<Mat> sing, any;
        for (std::uint64_t c = 0; c < singular; ++c) {
          auto v = digits(c, Q, n - 1);
          v.insert(v.begin(), 0);
          sing.push_back(jd.script_V(lh_from(K, n, v)));
        }
        for (std::uint64_t c = 0; c < full; ++c) any.push_back(jd.script_V(lh_from(K, n, digits(c, Q, n))));
        for (const Mat& a : sing)
          for (const Mat& b : any)
            for (const Mat& c : sing) {
              Mat w = block2(a, b, b, c);
              if (is_invertible(w)) offs.push_back(w);
            }
      }
      out = with_free_block(k, offs, restrict_D, budget.max_forms);
      break;
    }
    case Family::CnInf:
    case Family::CnInfSq: {
      Mat P = cninf_swap(spec);
      for (const Mat& S : enumerate_structured(cninf_partner(spec), restrict_D, budget)) out.push_back(P * S * P);
      break;
    }
  }
  return out;
}

std::vector<Mat> unit_group(const ModuleSpec& spec, bool restricted, const OracleBudget& budget) {
  std::vector<Mat> basis = end_basis_closed(spec);
  if (restricted) {
    int h = spec.dim() / 2;
    std::vector<Mat> keep;
    for (const Mat& b : basis)
      if (b.block(0, h, h, h).is_zero()) keep.push_back(b);
    basis = keep;
  }
  int d = spec.dim();
  std::uint64_t total = pow_budget(spec.k.order(), int(basis.size()), budget.max_units, "unit group");
  std::vector<Mat> out;
  for (std::uint64_t c = 0; c < total; ++c) {
    Mat M = combine(spec.k, basis, digits(c, spec.k.order(), int(basis.size())), d, d);
    if (is_invertible(M)) out.push_back(M);
  }
  return out;
}

// ---------------------------------------------------------------------------

OrbitReport orbit_partition(const ModuleSpec& spec, const std::vector<Mat>& forms, const std::vector<Mat>& units) {
  OrbitReport rep;
  rep.spec = spec;
  rep.forms = forms.size();
  rep.units = units.size();
  std::map<Mat, int> orbit_of;
  for (const Mat& S : forms) orbit_of[S] = -1;
  if (orbit_of.size() != forms.size()) rep.discrepancies.push_back("duplicate forms in enumeration");
  for (auto& [S, id] : orbit_of) {
    if (id >= 0) continue;
    int me = int(rep.orbits.size());
    OrbitInfo info;
    info.rep = S;
    for (const Mat& M : units) {
      Mat T = M.transpose() * S * M;
      auto it = orbit_of.find(T);
      if (it == orbit_of.end()) {
        rep.discrepancies.push_back("orbit leaves the enumerated set");
        continue;
      }
      if (it->second < 0) {
        it->second = me;
        ++info.size;
      } else if (it->second != me) {
        rep.discrepancies.push_back("orbits overlap");
      }
    }
    rep.orbits.push_back(info);
  }
  std::uint64_t total = 0;
  for (const auto& o : rep.orbits) total += o.size;
  if (total != rep.forms) rep.discrepancies.push_back("orbit sizes do not sum to the number of forms");

  // every member canonicalizes to its orbit's label, and labels separate orbits
  std::vector<std::set<ClassLabel>> labels(rep.orbits.size());
  for (const auto& [S, id] : orbit_of) {
    if (id < 0) continue;
    try {
      labels[id].insert(canonicalize(spec, S).label);
    } catch (const std::exception& e) {
      rep.discrepancies.push_back(std::string("canonicalize failed: ") + e.what());
    }
  }
  std::map<ClassLabel, int> seen;
  for (std::size_t i = 0; i < rep.orbits.size(); ++i) {
    if (labels[i].size() != 1) {
      rep.discrepancies.push_back("orbit " + std::to_string(i) + " has " + std::to_string(labels[i].size()) + " labels");
      continue;
    }
    rep.orbits[i].label = *labels[i].begin();
    auto [it, fresh] = seen.emplace(rep.orbits[i].label, int(i));
    if (!fresh) rep.discrepancies.push_back("two orbits share label " + label_text(rep.orbits[i].label));
  }
  return rep;
}

OrbitReport classify_oracle(const ModuleSpec& spec, const OracleBudget& budget) {
  return classify_oracle(spec, restrict_default(spec, budget), budget);
}

OrbitReport classify_oracle(const ModuleSpec& spec, bool restrict_D, const OracleBudget& budget) {
  std::vector<Mat> gen = enumerate_generic(spec, restrict_D, budget);
  std::vector<Mat> str = enumerate_structured(spec, restrict_D, budget);
  std::vector<Mat> units = unit_group(spec, restrict_D, budget);
  OrbitReport rep = orbit_partition(spec, gen, units);
  rep.restricted = restrict_D;
  std::sort(gen.begin(), gen.end());
  std::sort(str.begin(), str.end());
  if (gen != str)
    rep.discrepancies.push_back("generic enumeration (" + std::to_string(gen.size()) + ") differs from structured (" +
                                std::to_string(str.size()) + ")");
  if (rep.orbits.size() != count_classes(spec))
    rep.discrepancies.push_back("orbit count " + std::to_string(rep.orbits.size()) + " != count_classes " +
                                std::to_string(count_classes(spec)));
  std::set<ClassLabel> expect, got;
  for (const auto& L : enumerate_classes(spec)) expect.insert(L);
  for (const auto& o : rep.orbits) got.insert(o.label);
  if (expect != got) rep.discrepancies.push_back("orbit labels differ from enumerate_classes");
  if (restrict_D)
    for (auto& msg : d_kill_check(spec, budget.d_kill_samples, 1)) rep.discrepancies.push_back(msg);
  return rep;
}

std::vector<std::string> d_kill_check(const ModuleSpec& spec, int samples, std::uint64_t seed) {
  std::vector<std::string> out;
  if (!has_free_block(spec)) return out;
  FormSpace sp(spec, false);
  std::mt19937_64 rng(seed);
  int h = spec.dim() / 2, found = 0;
  for (int attempt = 0; found < samples && attempt < 1000 * samples; ++attempt) {
    std::vector<elem> c(sp.dim());
    for (elem& x : c) x = elem(rng() % spec.k.order());
    Mat S = combine(spec.k, sp.basis(), c, spec.dim(), spec.dim());
    if (S.block(h, h, h, h).is_zero() || !admissible_form(spec, S)) continue;
    ++found;
    Mat S0 = S;
    S0.set_block(h, h, Mat::zero(spec.k, h, h));
    try {
      if (canonicalize(spec, S).label != canonicalize(spec, S0).label)
        out.push_back("D-kill changes the label of a sampled form");
    } catch (const std::exception& e) {
      out.push_back(std::string("D-kill sample failed: ") + e.what());
    }
  }
  if (found < samples) out.push_back("D-kill check found only " + std::to_string(found) + " samples");
  return out;
}

// ---------------------------------------------------------------------------
// quadratic forms

std::vector<Mat> stabilizer_generators(const ModuleSpec& spec, const Mat& S, const OracleBudget& budget) {
  std::vector<Mat> out;
  if (!restrict_default(spec, budget)) {
    for (const Mat& M : unit_group(spec, false, budget))
      if (M.transpose() * S * M == S) out.push_back(M);
    return out;
  }
  // Stab = (block diagonal stabilizer) x (I Y; 0 I) with A^T Y symmetric.
  const Field& k = spec.k;
  int d = spec.dim(), h = d / 2;
  if (!S.block(h, h, h, h).is_zero()) throw PreconditionError("stabilizer generators need D = 0");
  for (const Mat& M : unit_group(spec, true, budget))
    if (M.transpose() * S * M == S) out.push_back(M);
  Mat A = S.block(0, h, h, h), At = A.transpose();
  Mat E(k, h * h, h * h);
  for (int v = 0; v < h * h; ++v) {
    Mat Y = single_entry(k, h, h, v / h + 1, v % h + 1, 1);
    Mat Z = At * Y;
    Z = Z + Z.transpose();
    for (int i = 0; i < h * h; ++i) E(i, v) = Z(i / h, i % h);
  }
  Mat K = kernel(E);
  for (int c = 0; c < K.cols(); ++c)
    for (int bit = 0; bit < k.degree(); ++bit) {
      Mat Y(k, h, h);
      for (int v = 0; v < h * h; ++v) Y(v / h, v % h) = k.mul(K(v, c), elem(1) << bit);
      Mat I = Mat::identity(k, h);
      out.push_back(block2(I, Y, Mat::zero(k, h, h), I));
    }
  return out;
}

std::vector<Mat> invariant_refinements(const ModuleSpec& spec, const ClassLabel& label, const OracleBudget& budget) {
  Mat S = representative(spec, label);
  int d = spec.dim();
  std::uint64_t total = pow_budget(spec.k.order(), d, budget.max_quad, "diagonal corrections");
  GroupAction act = action(spec);
  std::vector<Mat> out;
  for (std::uint64_t c = 0; c < total; ++c) {
    Mat Q = quad_with_diagonal(S, digits(c, spec.k.order(), d));
    if (is_invariant_quad(act, Q)) out.push_back(Q);
  }
  return out;
}

QuadOrbitReport quad_orbit_partition(const ModuleSpec& spec, const ClassLabel& label, const OracleBudget& budget) {
  QuadOrbitReport rep;
  rep.spec = spec;
  rep.label = label;
  std::vector<Mat> quads = invariant_refinements(spec, label, budget);
  rep.refinements = quads.size();
  bool claimed = quad_exists(spec, label);
  if (claimed != !quads.empty())
    rep.discrepancies.push_back("quad_exists says " + std::string(claimed ? "yes" : "no") + ", search found " +
                                std::to_string(quads.size()));
  if (quads.empty()) return rep;
  Mat S = representative(spec, label);
  std::vector<Mat> gens = stabilizer_generators(spec, S, budget);
  std::map<Mat, int> orbit_of;
  for (const Mat& Q : quads) orbit_of[Q] = -1;
  for (auto& [Q, id] : orbit_of) {
    if (id >= 0) continue;
    int me = int(rep.orbits.size());
    QuadOrbit o;
    o.rep = Q;
    id = me;
    o.size = 1;
    std::deque<Mat> todo{Q};
    while (!todo.empty()) {
      Mat cur = todo.front();
      todo.pop_front();
      for (const Mat& M : gens) {
        Mat T = quad_transform(cur, M);
        auto it = orbit_of.find(T);
        if (it == orbit_of.end()) {
          rep.discrepancies.push_back("stabilizer moves a refinement outside the search set");
          continue;
        }
        if (it->second < 0) {
          it->second = me;
          ++o.size;
          todo.push_back(T);
        }
      }
    }
    rep.orbits.push_back(o);
  }
  std::vector<std::set<QuadLabel>> labels(rep.orbits.size());
  for (const auto& [Q, id] : orbit_of) {
    try {
      labels[id].insert(quad_canonicalize(spec, label, Q).label);
    } catch (const std::exception& e) {
      rep.discrepancies.push_back(std::string("quad_canonicalize failed: ") + e.what());
    }
  }
  std::set<QuadLabel> seen;
  for (std::size_t i = 0; i < rep.orbits.size(); ++i) {
    if (labels[i].size() != 1) {
      rep.discrepancies.push_back("quadratic orbit with " + std::to_string(labels[i].size()) + " labels");
      continue;
    }
    rep.orbits[i].label = *labels[i].begin();
    if (!seen.insert(rep.orbits[i].label).second) rep.discrepancies.push_back("two quadratic orbits share a label");
  }
  auto reps = quad_representatives(spec, label);
  if (reps.size() != rep.orbits.size())
    rep.discrepancies.push_back("quadratic orbits " + std::to_string(rep.orbits.size()) + " != representatives " +
                                std::to_string(reps.size()));
  for (const auto& [ql, Q] : reps)
    if (!orbit_of.count(quad_normalize(Q))) rep.discrepancies.push_back("quadratic representative not found by search");
  return rep;
}

EmbeddingReport paired_embedding_check(const ModuleSpec& spec, const OracleBudget& budget) {
  const Field& k = spec.k;
  int d = spec.dim();
  Mat W = dual_witness(spec);
  Mat P = block2(Mat::zero(k, d, d), W, W.transpose(), Mat::zero(k, d, d));
  std::vector<Mat> basis = end_basis_closed(spec);
  int r = int(basis.size());
  std::uint64_t total = pow_budget(k.order(), r, budget.max_units, "End");
  pow_budget(total, 2, budget.max_forms * 16, "End pairs");
  std::vector<Mat> ends;
  for (std::uint64_t c = 0; c < total; ++c) ends.push_back(combine(k, basis, digits(c, k.order(), r), d, d));
  EmbeddingReport rep;
  for (const Mat& a : ends)
    for (const Mat& b : ends) {
      Mat al(k, 2 * d, d);
      al.set_block(0, 0, a);
      al.set_block(d, 0, b);
      if (rank(al) != d) continue;
      ++rep.embeddings;
      if (is_invertible(al.transpose() * P * al)) ++rep.nondegenerate;
    }
  return rep;
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> verify_spec(const ModuleSpec& spec, const OracleBudget& budget) {
  std::vector<CheckResult> out;
  auto add = [&](std::string name, bool pass, std::string detail) {
    out.push_back({spec.header() + " " + name, pass, std::move(detail)});
  };
  auto guarded = [&](const std::string& name, const std::function<void()>& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      add(name, false, e.what());
    }
  };
  guarded("count", [&] {
    auto L = enumerate_classes(spec);
    add("count", L.size() == count_classes(spec),
        std::to_string(L.size()) + " labels, formula " + std::to_string(count_classes(spec)));
  });
  guarded("orbits", [&] {
    OrbitReport r = classify_oracle(spec, budget);
    std::string detail = std::to_string(r.forms) + " forms, " + std::to_string(r.units) + " units, " +
                         std::to_string(r.orbits.size()) + " orbits" + (r.restricted ? " (D = 0)" : "");
    if (!r.ok()) detail += "; " + r.discrepancies.front();
    add("orbits", r.ok(), detail);
  });
  guarded("witnesses", [&] {
    int bad = 0, total = 0;
    for (const auto& L : enumerate_classes(spec)) {
      ++total;
      if (canonicalize(spec, representative(spec, L)).label != L) ++bad;
    }
    add("witnesses", bad == 0, std::to_string(total) + " representatives round-trip, " + std::to_string(bad) + " bad");
  });
  guarded("quadratic", [&] {
    int bad = 0, labels = 0;
    std::uint64_t classes = 0;
    std::string first;
    for (const auto& L : enumerate_classes(spec)) {
      QuadOrbitReport q = quad_orbit_partition(spec, L, budget);
      ++labels;
      classes += q.orbits.size();
      if (!q.ok()) {
        ++bad;
        if (first.empty()) first = label_text(L) + ": " + q.discrepancies.front();
      }
    }
    std::string detail = std::to_string(labels) + " labels, " + std::to_string(classes) + " quadratic classes";
    if (bad) detail += "; " + first;
    add("quadratic", bad == 0, detail);
  });
  if (is_cninf(spec.family)) {
    guarded("swap", [&] {
      ModuleSpec p = cninf_partner(spec);
      Mat P = cninf_swap(spec);
      bool ok = enumerate_classes(spec) == enumerate_classes(p);
      for (const auto& L : enumerate_classes(spec)) ok = ok && representative(spec, L) == P * representative(p, L) * P;
      add("swap", ok, "labels and representatives match " + p.header());
    });
  }
  return out;
}

std::vector<ModuleSpec> desk_suite() {
  Field F2(1);
  Poly T{0, 1}, T2{1, 1, 1};
  return {
      make_spec(Family::TrivialSq, F2),   make_spec(Family::Regular, F2),      make_spec(Family::RegularSq, F2),
      make_spec(Family::AnBn, F2, 1),     make_spec(Family::AnBn, F2, 2),      make_spec(Family::Cnf, F2, 1, T),
      make_spec(Family::Cnf, F2, 2, T),   make_spec(Family::Cnf, F2, 1, T2),   make_spec(Family::Cnf, F2, 2, T2),
      make_spec(Family::CnfSq, F2, 1, T), make_spec(Family::CnfSq, F2, 2, T),  make_spec(Family::CnfSq, F2, 3, T),
      make_spec(Family::CnInf, F2, 1),    make_spec(Family::CnInf, F2, 2),     make_spec(Family::CnInfSq, F2, 1),
      make_spec(Family::CnInfSq, F2, 2),  make_spec(Family::CnInfSq, F2, 3),
  };
}

}  // namespace k4
