#include <gtest/gtest.h>

#include <set>

#include "brute.hpp"
#include "k4forms/classify.hpp"

using namespace k4;

namespace {

std::vector<ModuleSpec> specs() {
  Field F2(1), F4(2);
  std::vector<ModuleSpec> out;
  for (const Field& k : {F2, F4}) {
    out.push_back(make_spec(Family::TrivialSq, k));
    out.push_back(make_spec(Family::Regular, k));
    out.push_back(make_spec(Family::RegularSq, k));
    for (int n = 1; n <= 2; ++n) out.push_back(make_spec(Family::AnBn, k, n));
    for (int n = 1; n <= 4; ++n) {
      out.push_back(make_spec(Family::Cnf, k, n, {0, 1}));
      out.push_back(make_spec(Family::Cnf, k, n, {1, 1}));
      out.push_back(make_spec(Family::CnfSq, k, n, {0, 1}));
      out.push_back(make_spec(Family::CnfSq, k, n, {1, 1}));
      out.push_back(make_spec(Family::CnInf, k, n));
      out.push_back(make_spec(Family::CnInfSq, k, n));
    }
  }
  out.push_back(make_spec(Family::AnBn, F2, 3));
  for (int n = 1; n <= 3; ++n) {
    out.push_back(make_spec(Family::Cnf, F2, n, {1, 1, 1}));
    out.push_back(make_spec(Family::CnfSq, F2, n, {1, 1, 1}));
    out.push_back(make_spec(Family::Cnf, F4, n, {2, 1}));
    out.push_back(make_spec(Family::CnfSq, F4, n, {2, 1, 1}));
  }
  out.push_back(make_spec(Family::Cnf, Field(3), 2, {0, 1}));
  out.push_back(make_spec(Family::CnfSq, Field(3), 2, {1, 1}));
  return out;
}

}  // namespace

TEST(Classify, KnownCounts) {
  Field F2(1), F4(2);
  EXPECT_EQ(count_classes(make_spec(Family::TrivialSq, F2)), 1u);
  EXPECT_EQ(count_classes(make_spec(Family::Regular, F2)), 4u);
  EXPECT_EQ(count_classes(make_spec(Family::Regular, F4)), 16u);
  EXPECT_EQ(count_classes(make_spec(Family::RegularSq, F2)), 5u);
  EXPECT_EQ(count_classes(make_spec(Family::AnBn, F2, 1)), 4u);
  EXPECT_EQ(count_classes(make_spec(Family::AnBn, F2, 2)), 16u);
  EXPECT_EQ(count_classes(make_spec(Family::Cnf, F2, 1, {0, 1})), 1u);
  EXPECT_EQ(count_classes(make_spec(Family::Cnf, F2, 2, {0, 1})), 2u);
  EXPECT_EQ(count_classes(make_spec(Family::Cnf, F2, 2, {1, 1, 1})), 4u);
  EXPECT_EQ(count_classes(make_spec(Family::CnfSq, F2, 1, {0, 1})), 1u);
  EXPECT_EQ(count_classes(make_spec(Family::CnfSq, F2, 2, {0, 1})), 2u);
  EXPECT_EQ(count_classes(make_spec(Family::CnfSq, F2, 3, {0, 1})), 5u);
  EXPECT_EQ(count_classes(make_spec(Family::CnInf, F2, 2)), 2u);
}

TEST(Classify, FormulaStrings) {
  Field F2(1);
  EXPECT_EQ(count_formula(make_spec(Family::AnBn, F2, 2)), "q^3+q^2+q+2");
  EXPECT_EQ(count_formula(make_spec(Family::Cnf, F2, 4, {1, 1, 1})), "q^4");
  EXPECT_EQ(count_formula(make_spec(Family::CnfSq, F2, 3, {0, 1})), "2*q+1");
  EXPECT_EQ(count_formula(make_spec(Family::CnfSq, F2, 4, {0, 1})), "4*q");
  EXPECT_EQ(count_formula(Family::Cnf, 5, 0), "q^(2*m)");
  EXPECT_EQ(count_formula(Family::CnfSq, 2, 0), "2");
  EXPECT_EQ(count_formula(Family::CnfSq, 5, 0), "3*q^(2*m)+2*q^(m)");
  EXPECT_EQ(count_formula(Family::RegularSq, 0, 0), "2*q+1");
}

TEST(Classify, EnumerationMatchesCountAndIsValid) {
  for (const auto& spec : specs()) {
    auto L = enumerate_classes(spec);
    EXPECT_EQ(L.size(), count_classes(spec)) << spec.header();
    std::set<ClassLabel> distinct(L.begin(), L.end());
    EXPECT_EQ(distinct.size(), L.size());
    for (const auto& l : L) EXPECT_TRUE(label_valid(spec, l));
  }
}

TEST(Classify, RepresentativesAreInvariantSymplecticAndCanonical) {
  for (const auto& spec : specs()) {
    GroupAction a = action(spec);
    auto L = enumerate_classes(spec);
    if (L.size() > 300) continue;
    for (const auto& l : L) {
      Mat S = representative(spec, l);
      ASSERT_TRUE(is_symplectic_form(a, S)) << spec.header();
      Canonical c = canonicalize(spec, S);
      EXPECT_EQ(c.label, l) << spec.header();
      EXPECT_EQ(c.witness.transpose() * S * c.witness, S);
    }
  }
}

TEST(Classify, RandomUnitsPreserveLabels) {
  std::mt19937_64 rng(13);
  for (const auto& spec : specs()) {
    auto L = enumerate_classes(spec);
    for (int t = 0; t < 20; ++t) {
      const ClassLabel& l = L[rng() % L.size()];
      Mat S = representative(spec, l);
      Mat M = brute::random_unit(spec, rng);
      Mat T = M.transpose() * S * M;
      Canonical c = canonicalize(spec, T);
      ASSERT_EQ(c.label, l) << spec.header();
      ASSERT_EQ(c.witness.transpose() * T * c.witness, S);
    }
  }
}

TEST(Classify, RejectsBadInput) {
  Field F(1);
  ModuleSpec reg = make_spec(Family::Regular, F);
  EXPECT_THROW(canonicalize(reg, Mat::identity(F, 4)), PreconditionError);  // not alternating
  EXPECT_THROW(canonicalize(reg, Mat::zero(F, 4, 4)), PreconditionError);   // degenerate
  EXPECT_THROW(canonicalize(reg, Mat::zero(F, 3, 3)), PreconditionError);
  // alternating and nondegenerate but not invariant
  Mat N = Mat::zero(F, 4, 4);
  N(0, 1) = N(1, 0) = N(2, 3) = N(3, 2) = N(0, 2) = N(2, 0) = 1;
  ASSERT_TRUE(is_invertible(N));
  ASSERT_FALSE(is_invariant_form(action(reg), N));
  EXPECT_THROW(canonicalize(reg, N), PreconditionError);
  // decomposable form on the squared module: a nondegenerate summand block
  ModuleSpec sq = make_spec(Family::RegularSq, F);
  Mat B = kg_hat(F, {0, 1, 0, 0});
  Mat S = block2(B, Mat::zero(F, 4, 4), Mat::zero(F, 4, 4), B);
  ASSERT_TRUE(is_symplectic_form(action(sq), S));
  EXPECT_THROW(canonicalize(sq, S), PreconditionError);
  EXPECT_THROW(representative(reg, RegularLabel{2, 0}), PreconditionError);
  EXPECT_THROW(representative(reg, CnfLabel{}), PreconditionError);
}

TEST(Classify, QuadraticRepresentativesRefineAndAreDistinct) {
  for (const auto& spec : specs()) {
    auto L = enumerate_classes(spec);
    if (L.size() > 300) continue;
    GroupAction a = action(spec);
    for (const auto& l : L) {
      auto reps = quad_representatives(spec, l);
      EXPECT_EQ(reps.empty(), !quad_exists(spec, l));
      Mat S = representative(spec, l);
      std::set<elem> arfs;
      for (const auto& [ql, Q] : reps) {
        EXPECT_TRUE(is_invariant_quad(a, Q));
        EXPECT_EQ(quad_polar(Q), S);
        QuadCanonical qc = quad_canonicalize(spec, l, Q);
        EXPECT_EQ(qc.label, ql);
        arfs.insert(arf_class(Q));
      }
      if (reps.size() == 2) EXPECT_EQ(arfs.size(), 2u) << spec.header();
    }
  }
}

TEST(Classify, QuadraticCanonicalizeOverAllInvariantDiagonals) {
  Field F2(1);
  for (const auto& spec : {make_spec(Family::TrivialSq, F2), make_spec(Family::Regular, F2),
                           make_spec(Family::RegularSq, F2), make_spec(Family::AnBn, F2, 1),
                           make_spec(Family::AnBn, F2, 2), make_spec(Family::Cnf, F2, 1, {0, 1}),
                           make_spec(Family::Cnf, F2, 2, {1, 1, 1}), make_spec(Family::CnfSq, F2, 2, {0, 1})}) {
    GroupAction a = action(spec);
    int d = spec.dim();
    for (const auto& l : enumerate_classes(spec)) {
      Mat S = representative(spec, l);
      for (std::uint64_t c = 0; c < (std::uint64_t(1) << d); ++c) {
        Mat Q = quad_with_diagonal(S, brute::digits(c, 2, d));
        if (!is_invariant_quad(a, Q)) continue;
        QuadCanonical qc = quad_canonicalize(spec, l, Q);
        Mat target;
        for (const auto& [ql, R] : quad_representatives(spec, l))
          if (ql == qc.label) target = R;
        ASSERT_EQ(quad_transform(Q, qc.witness), quad_normalize(target));
        ASSERT_EQ(arf_class(Q), arf_class(target));
      }
    }
  }
}

TEST(Classify, CyclicQuadraticExistenceAtSecondDegree) {
  Field F2(1);
  ModuleSpec s = make_spec(Family::Cnf, F2, 2, {1, 1, 1});
  JordanData jd = jordan_data(F2, s.f, 2);
  const Field& K = jd.ext.ext;
  elem e = jd.ext.epsilon;
  elem want = K.inv(e ^ K.mul(e, e));
  int hits = 0;
  for (const auto& l : enumerate_classes(s)) {
    bool ex = quad_exists(s, l);
    EXPECT_EQ(ex, std::get<CnfLabel>(l).a[0] == want);
    hits += ex;
  }
  EXPECT_EQ(hits, 1);
  EXPECT_FALSE(quad_exists(make_spec(Family::Cnf, F2, 1, {1, 1, 1}), CnfLabel{}));
  EXPECT_TRUE(quad_exists(make_spec(Family::Cnf, F2, 1, {0, 1}), CnfLabel{}));
}

TEST(Classify, SquaredCyclicTripleRanks) {
  Field F2(1);
  for (int n = 1; n <= 4; ++n) {
    JordanData jd = jordan_data(F2, {1, 1, 1}, n);
    for (const auto& l : enumerate_classes(make_spec(Family::CnfSq, F2, n, {1, 1, 1}))) {
      const auto& L = std::get<CnfSqLabel>(l);
      Triple t = cnfsq_triple(jd, L);
      EXPECT_EQ(rank(t.phi), n + 1 - L.r);
      EXPECT_EQ(rank(t.mu), std::max(0, n - L.r - 2 * L.s));
      EXPECT_TRUE(is_invertible(cnfsq_sigma(jd, t)));
    }
  }
}

// Every invariant refinement has the same diagonal on the first summand.
TEST(Classify, AnBnForcedDiagonal) {
  Field F2(1);
  for (int n = 1; n <= 2; ++n) {
    ModuleSpec s = make_spec(Family::AnBn, F2, n);
    GroupAction a = action(s);
    int d = s.dim(), h = 2 * n + 1;
    for (const auto& l : enumerate_classes(s)) {
      auto D = anbn_forced_diagonal(n, std::get<AnBnLabel>(l).omega);
      Mat S = representative(s, l);
      int found = 0;
      for (std::uint64_t c = 0; c < (std::uint64_t(1) << d); ++c) {
        auto x = brute::digits(c, 2, d);
        Mat Q = quad_with_diagonal(S, x);
        if (!is_invariant_quad(a, Q)) continue;
        ++found;
        EXPECT_EQ(std::vector<elem>(x.begin(), x.begin() + h), D);
      }
      EXPECT_EQ(found > 0, quad_exists(s, l));
    }
  }
}
