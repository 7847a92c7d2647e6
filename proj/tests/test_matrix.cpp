#include <gtest/gtest.h>

#include <set>

#include "brute.hpp"
#include "k4forms/matrix.hpp"

using namespace k4;

namespace {

// Member of the normalized family at depth r: leading coefficient 1 at n+r,
// zero coefficients at n+r+2, n+r+4, ...
bool in_normalized_family(const Mat& C, int r) {
  int n = C.rows();
  if (!is_lower_hankel(C)) return false;
  for (int j = n + 1; j < n + r; ++j)
    if (hankel_coeff(C, j)) return false;
  if (hankel_coeff(C, n + r) != 1) return false;
  for (int j = n + r + 2; j <= 2 * n; j += 2)
    if (hankel_coeff(C, j)) return false;
  return true;
}

}  // namespace

TEST(Matrix, InverseAndRank) {
  std::mt19937_64 rng(1);
  for (int e : {1, 2, 3}) {
    Field F(e);
    for (int t = 0; t < 200; ++t) {
      int n = 1 + int(rng() % 6);
      Mat A = brute::random_matrix(F, n, n, rng);
      if (is_invertible(A)) {
        EXPECT_EQ(A * inverse(A), Mat::identity(F, n));
        EXPECT_EQ(rank(A), n);
      } else {
        EXPECT_LT(rank(A), n);
        EXPECT_THROW(inverse(A), PreconditionError);
      }
      Mat K = kernel(A);
      EXPECT_EQ(K.cols(), n - rank(A));
      EXPECT_TRUE((A * K).is_zero());
      EXPECT_EQ(rank(K), K.cols());
    }
  }
}

TEST(Matrix, ToeplitzAndHankelShapes) {
  Field F(2);
  Mat T = toeplitz(F, 3, 4, 2, 3);
  for (int s = 0; s < 3; ++s)
    for (int t = 0; t < 4; ++t) EXPECT_EQ(T(s, t), (t - s == 1) ? 3u : 0u);
  Mat H = hankel(F, 3, 3, 5, 2);
  for (int s = 0; s < 3; ++s)
    for (int t = 0; t < 3; ++t) EXPECT_EQ(H(s, t), (s + t + 2 == 5) ? 2u : 0u);
  EXPECT_TRUE(hankel(F, 2, 2, 9, 1).is_zero());
  EXPECT_EQ(anti_identity(F, 3), hankel(F, 3, 3, 4, 1));
  // H_i T_j = H_{i+j-1}
  EXPECT_EQ(hankel(F, 4, 4, 5, 1) * toeplitz(F, 4, 4, 3, 1), hankel(F, 4, 4, 7, 1));
}

TEST(Matrix, DiagonalOfConjugationMatchesFullProduct) {
  std::mt19937_64 rng(2);
  for (int e : {1, 2}) {
    Field F(e);
    for (int t = 0; t < 5000; ++t) {
      int n = 1 + int(rng() % 6), c = 1 + int(rng() % 6);
      Mat A = brute::random_matrix(F, n, n, rng);
      A = A + A.transpose();
      for (int i = 0; i < n; ++i) A(i, i) = elem(rng() % F.order());
      Mat X = brute::random_matrix(F, n, c, rng);
      Mat P = X.transpose() * A * X;
      std::vector<elem> d(c);
      for (int i = 0; i < c; ++i) d[i] = P(i, i);
      ASSERT_EQ(diag_of_conjugation(A, X), d);
      if (is_hollow(A)) ASSERT_TRUE(is_hollow(P));
    }
  }
}

TEST(Matrix, RankFormulaForHankelToeplitzProducts) {
  for (int e : {1, 2}) {
    Field F(e);
    for (int n = 1; n <= (e == 1 ? 5 : 3); ++n) {
      auto LH = brute::all_lower_hankel(F, n);
      auto UT = brute::all_upper_toeplitz(F, n);
      for (const Mat& A : LH)
        for (const Mat& B : UT) {
          Mat P = A * B;
          if (P.is_zero()) continue;
          ASSERT_EQ(rank(P), rank(A) + rank(B) - n);
        }
    }
  }
}

TEST(Matrix, CosetReductionRoundTripAndUniqueness) {
  for (int e : {1, 2}) {
    Field F(e);
    for (int n = 1; n <= 3; ++n) {
      std::vector<Mat> toeplitz_all = brute::all_upper_toeplitz(F, n);
      for (const Mat& A : brute::all_lower_hankel(F, n)) {
        if (A.is_zero()) continue;
        int r = n + 1 - rank(A);
        for (int s = 0; r + 2 * s <= n; ++s) {
          CosetReduction red = lh_coset_reduce(A, s);
          ASSERT_EQ(red.r, r);
          ASSERT_EQ(A * red.B * red.B, red.C);
          ASSERT_TRUE(in_normalized_family(red.C, r + 2 * s));
          // X is only determined modulo what the Hankel factor kills
          int d = r + 2 * s;
          Mat H0 = hankel(F, n, n, n + d, 1), H1 = hankel(F, n, n, n + d + 1, 1);
          ASSERT_EQ(H0 + H1 * red.X * red.X, red.C);
          Mat Y = hr_decompose(red.C, d);
          ASSERT_TRUE(is_upper_toeplitz(Y));
          ASSERT_EQ(H0 + H1 * Y * Y, red.C);
          std::set<Mat> hits;
          for (const Mat& B : toeplitz_all) {
            Mat C = A * B * B;
            if (in_normalized_family(C, r + 2 * s)) hits.insert(C);
          }
          ASSERT_EQ(hits.size(), 1u);
          ASSERT_EQ(*hits.begin(), red.C);
        }
        EXPECT_THROW(lh_coset_reduce(A, n), PreconditionError);
      }
    }
  }
}

TEST(Matrix, SplitSymmetricHollow) {
  std::mt19937_64 rng(3);
  Field F(2);
  for (int t = 0; t < 50; ++t) {
    Mat Z = brute::random_matrix(F, 5, 5, rng);
    Mat D = Z + Z.transpose();
    Mat U = split_symmetric_hollow(D);
    EXPECT_EQ(U + U.transpose(), D);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j <= i; ++j) EXPECT_EQ(U(i, j), 0u);
  }
  EXPECT_THROW(split_symmetric_hollow(Mat::identity(F, 2)), PreconditionError);
}

TEST(Matrix, BlockHelpers) {
  Field F(1);
  Mat I = Mat::identity(F, 2), O = Mat::zero(F, 2, 2);
  Mat B = block2(I, O, O, I);
  EXPECT_EQ(B, Mat::identity(F, 4));
  EXPECT_EQ(diag_blocks({I, I}), B);
  EXPECT_EQ(B.block(0, 2, 2, 2), O);
  EXPECT_TRUE(is_alternating_gram(anti_identity(F, 4)));
}

TEST(Matrix, TauTransposeIsAntiTranspose) {
  std::mt19937_64 rng(4);
  Field F(2);
  Mat A = brute::random_matrix(F, 3, 4, rng);
  Mat T = tau_transpose(A);
  ASSERT_EQ(T.rows(), 4);
  ASSERT_EQ(T.cols(), 3);
  for (int s = 0; s < 4; ++s)
    for (int t = 0; t < 3; ++t) EXPECT_EQ(T(s, t), A(2 - t, 3 - s));
  EXPECT_EQ(tau_transpose(T), A);
}
