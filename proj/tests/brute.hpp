#pragma once

// Slow reference implementations used only by tests.

#include <cstdint>
#include <random>
#include <vector>

#include "k4forms/classify.hpp"

namespace brute {

using k4::elem;
using k4::Field;
using k4::Mat;

// Carry-less product reduced by the modulus, bit by bit.
inline elem gf_mul(elem a, elem b, elem mod, int e) {
  std::uint64_t r = 0;
  for (int i = 0; i < 32; ++i)
    if (b >> i & 1) r ^= std::uint64_t(a) << i;
  for (int i = 63; i >= e; --i)
    if (r >> i & 1) r ^= std::uint64_t(mod) << (i - e);
  return elem(r);
}

// Irreducible over GF(2) by trial division with every polynomial of lower degree.
inline bool irreducible(std::uint64_t p) {
  int d = 63;
  while (d >= 0 && !(p >> d & 1)) --d;
  if (d < 1) return false;
  for (std::uint64_t q = 2; q < (std::uint64_t(1) << d); ++q) {
    int dq = 63;
    while (!(q >> dq & 1)) --dq;
    if (dq == 0 || dq > d / 2) continue;
    std::uint64_t r = p;
    for (int i = d; i >= dq; --i)
      if (r >> i & 1) r ^= q << (i - dq);
    if (r == 0) return false;
  }
  return true;
}

inline std::vector<elem> vec(const Mat& M, int col) {
  std::vector<elem> v(M.rows());
  for (int i = 0; i < M.rows(); ++i) v[i] = M(i, col);
  return v;
}

// q(x) = x^T Q x evaluated entry by entry.
inline elem qeval(const Mat& Q, const std::vector<elem>& x) {
  const Field& F = Q.field();
  elem s = 0;
  for (int i = 0; i < Q.rows(); ++i)
    for (int j = 0; j < Q.cols(); ++j) s ^= F.mul(F.mul(x[i], Q(i, j)), x[j]);
  return s;
}

// A quadratic form whose polar form is g-invariant is g-invariant iff it agrees on a basis.
inline bool quad_invariant_on_basis(const Mat& Q, const Mat& g) {
  int d = Q.rows();
  for (int i = 0; i < d; ++i) {
    std::vector<elem> e(d, 0);
    e[i] = 1;
    if (qeval(Q, vec(g, i)) != qeval(Q, e)) return false;
  }
  return true;
}

inline std::vector<elem> digits(std::uint64_t c, elem q, int len) {
  std::vector<elem> v(len);
  for (int i = 0; i < len; ++i) {
    v[i] = elem(c % q);
    c /= q;
  }
  return v;
}

// Every upper triangular Toeplitz n x n matrix over F.
inline std::vector<Mat> all_upper_toeplitz(const Field& F, int n) {
  std::vector<Mat> out;
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= F.order();
  for (std::uint64_t c = 0; c < total; ++c) out.push_back(k4::upper_toeplitz(F, n, digits(c, F.order(), n)));
  return out;
}

// Every lower triangular Hankel n x n matrix over F (coefficients at n+1..2n).
inline std::vector<Mat> all_lower_hankel(const Field& F, int n) {
  std::vector<Mat> out;
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= F.order();
  for (std::uint64_t c = 0; c < total; ++c) {
    auto v = digits(c, F.order(), n);
    Mat A(F, n, n);
    for (int i = 0; i < n; ++i)
      if (v[i]) A = A + k4::hankel(F, n, n, n + 1 + i, v[i]);
    out.push_back(A);
  }
  return out;
}

inline Mat random_matrix(const Field& F, int r, int c, std::mt19937_64& rng) {
  Mat M(F, r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) M(i, j) = elem(rng() % F.order());
  return M;
}

inline Mat random_invertible(const Field& F, int n, std::mt19937_64& rng) {
  while (true) {
    Mat M = random_matrix(F, n, n, rng);
    if (k4::is_invertible(M)) return M;
  }
}

// Random unit of End via the closed basis.
inline Mat random_unit(const k4::ModuleSpec& spec, std::mt19937_64& rng) {
  auto basis = k4::end_basis_closed(spec);
  while (true) {
    Mat M(spec.k, spec.dim(), spec.dim());
    for (const Mat& b : basis) M = M + b.scaled(elem(rng() % spec.k.order()));
    if (k4::is_invertible(M)) return M;
  }
}

// Arf invariant over GF(2) by counting zeros: Arf 0 iff q has more zeros than ones.
inline int arf_by_count(const Mat& Q) {
  int d = Q.rows();
  long zeros = 0;
  for (std::uint64_t c = 0; c < (std::uint64_t(1) << d); ++c)
    if (qeval(Q, digits(c, 2, d)) == 0) ++zeros;
  return 2 * zeros > (long(1) << d) ? 0 : 1;
}

}  // namespace brute
