#pragma once

#include <string>
#include <vector>

#include "k4forms/field.hpp"

namespace k4 {

// Dense matrix over a finite field. Element access is 0-indexed; the
// structured constructors below use 1-indexed positions and band indices.
class Mat {
 public:
  Mat() = default;
  Mat(const Field& F, int rows, int cols);

  static Mat zero(const Field& F, int rows, int cols) { return Mat(F, rows, cols); }
  static Mat identity(const Field& F, int n);

  const Field& field() const { return F_; }
  int rows() const { return r_; }
  int cols() const { return c_; }
  bool square() const { return r_ == c_; }

  elem& operator()(int i, int j) { return a_[std::size_t(i) * c_ + j]; }
  elem operator()(int i, int j) const { return a_[std::size_t(i) * c_ + j]; }
  const std::vector<elem>& data() const { return a_; }

  Mat operator+(const Mat& o) const;
  Mat operator*(const Mat& o) const;
  Mat scaled(elem x) const;
  Mat transpose() const;
  Mat squared_entries() const;  // entrywise Frobenius
  bool operator==(const Mat& o) const;
  bool operator!=(const Mat& o) const { return !(*this == o); }
  bool operator<(const Mat& o) const { return a_ < o.a_; }
  bool is_zero() const;

  Mat block(int r0, int c0, int nr, int nc) const;
  void set_block(int r0, int c0, const Mat& b);

  std::string to_string() const;

 private:
  Field F_;
  int r_ = 0, c_ = 0;
  std::vector<elem> a_;
};

Mat block2(const Mat& a, const Mat& b, const Mat& c, const Mat& d);
Mat diag_blocks(const std::vector<Mat>& blocks);

// T_i(x): entries (s,t) with t-s = i-1.
Mat toeplitz(const Field& F, int rows, int cols, int i, elem x);
// H_i(x): entries (s,t) with s+t = i. Zero when no entry qualifies.
Mat hankel(const Field& F, int rows, int cols, int i, elem x);
Mat anti_identity(const Field& F, int m);
Mat single_entry(const Field& F, int rows, int cols, int s, int t, elem x);

Mat tau_transpose(const Mat& A);

bool is_hollow(const Mat& A);
bool is_symmetric(const Mat& A);
bool is_alternating_gram(const Mat& A);

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(Mat& A);
int rank(const Mat& A);
bool is_invertible(const Mat& A);
Mat inverse(const Mat& A);
// Columns form a basis of the right kernel.
Mat kernel(const Mat& A);

std::vector<elem> diag_of_conjugation(const Mat& A, const Mat& X);
Mat split_symmetric_hollow(const Mat& D);

// Coefficient of H_j in a lower triangular Hankel n x n matrix, j in n+1..2n.
elem hankel_coeff(const Mat& A, int j);
bool is_lower_hankel(const Mat& A);
bool is_upper_toeplitz(const Mat& A);
// Sum of T_i(c[i-1]) as an n x n matrix.
Mat upper_toeplitz(const Field& F, int n, const std::vector<elem>& c);

struct CosetReduction {
  Mat C;  // A * B^2, in the normalized family at depth r + 2s
  Mat B;
  Mat X;  // C = H_{n+r+2s}(1) + H_{n+r+2s+1}(1) X^2
  int r = 0;
};

// A nonzero lower triangular Hankel matrix, rank n+1-r, and s >= 0 with r+2s <= n.
CosetReduction lh_coset_reduce(const Mat& A, int s);

// For C = H_{n+r}(1) + H_{n+r+1}(1) X^2 returns the upper triangular Toeplitz X.
Mat hr_decompose(const Mat& C, int r);

// Apply a map entrywise to change fields.
template <class Fn>
Mat map_entries(const Mat& A, const Field& G, Fn fn) {
  Mat R(G, A.rows(), A.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) R(i, j) = fn(A(i, j));
  return R;
}

Mat embed(const ExtensionData& X, const Mat& A);
Mat restrict_to_base(const ExtensionData& X, const Mat& A);  // throws if an entry is outside k

}  // namespace k4
