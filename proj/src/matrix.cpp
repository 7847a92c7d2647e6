#include "k4forms/matrix.hpp"

#include <sstream>

namespace k4 {

Mat::Mat(const Field& F, int rows, int cols) : F_(F), r_(rows), c_(cols) {
  if (rows < 0 || cols < 0) throw PreconditionError("negative matrix dimension");
  a_.assign(std::size_t(rows) * cols, 0);
}

Mat Mat::identity(const Field& F, int n) {
  Mat I(F, n, n);
  for (int i = 0; i < n; ++i) I(i, i) = 1;
  return I;
}

Mat Mat::operator+(const Mat& o) const {
  if (F_ != o.F_ || r_ != o.r_ || c_ != o.c_) throw PreconditionError("matrix sum: shape or field mismatch");
  Mat R = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) R.a_[i] ^= o.a_[i];
  return R;
}

Mat Mat::operator*(const Mat& o) const {
  if (F_ != o.F_ || c_ != o.r_) throw PreconditionError("matrix product: shape or field mismatch");
  Mat R(F_, r_, o.c_);
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < c_; ++k) {
      elem x = (*this)(i, k);
      if (!x) continue;
      for (int j = 0; j < o.c_; ++j) {
        elem y = o(k, j);
        if (y) R(i, j) ^= F_.mul(x, y);
      }
    }
  return R;
}

Mat Mat::scaled(elem x) const {
  Mat R = *this;
  for (auto& v : R.a_) v = F_.mul(v, x);
  return R;
}

Mat Mat::transpose() const {
  Mat R(F_, c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) R(j, i) = (*this)(i, j);
  return R;
}

Mat Mat::squared_entries() const {
  Mat R = *this;
  for (auto& v : R.a_) v = F_.mul(v, v);
  return R;
}

bool Mat::operator==(const Mat& o) const {
  return F_ == o.F_ && r_ == o.r_ && c_ == o.c_ && a_ == o.a_;
}

bool Mat::is_zero() const {
  for (elem v : a_)
    if (v) return false;
  return true;
}

Mat Mat::block(int r0, int c0, int nr, int nc) const {
  if (r0 < 0 || c0 < 0 || r0 + nr > r_ || c0 + nc > c_) throw PreconditionError("block out of range");
  Mat R(F_, nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) R(i, j) = (*this)(r0 + i, c0 + j);
  return R;
}

void Mat::set_block(int r0, int c0, const Mat& b) {
  if (r0 < 0 || c0 < 0 || r0 + b.r_ > r_ || c0 + b.c_ > c_) throw PreconditionError("block out of range");
  for (int i = 0; i < b.r_; ++i)
    for (int j = 0; j < b.c_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

std::string Mat::to_string() const {
  std::ostringstream os;
  os << "matrix " << r_ << ' ' << c_ << '\n';
  for (int i = 0; i < r_; ++i) {
    for (int j = 0; j < c_; ++j) os << (j ? " " : "") << (*this)(i, j);
    os << '\n';
  }
  return os.str();
}

Mat block2(const Mat& a, const Mat& b, const Mat& c, const Mat& d) {
  if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() || b.cols() != d.cols())
    throw PreconditionError("block2: incompatible blocks");
  Mat R(a.field(), a.rows() + c.rows(), a.cols() + b.cols());
  R.set_block(0, 0, a);
  R.set_block(0, a.cols(), b);
  R.set_block(a.rows(), 0, c);
  R.set_block(a.rows(), a.cols(), d);
  return R;
}

Mat diag_blocks(const std::vector<Mat>& blocks) {
  int r = 0, c = 0;
  for (auto& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  Mat R(blocks.at(0).field(), r, c);
  r = c = 0;
  for (auto& b : blocks) {
    R.set_block(r, c, b);
    r += b.rows();
    c += b.cols();
  }
  return R;
}

Mat toeplitz(const Field& F, int rows, int cols, int i, elem x) {
  if (rows <= 0 || cols <= 0) throw PreconditionError("toeplitz: dimension <= 0");
  Mat R(F, rows, cols);
  for (int s = 1; s <= rows; ++s) {
    int t = s + i - 1;
    if (t >= 1 && t <= cols) R(s - 1, t - 1) = x;
  }
  return R;
}

Mat hankel(const Field& F, int rows, int cols, int i, elem x) {
  if (rows <= 0 || cols <= 0) throw PreconditionError("hankel: dimension <= 0");
  Mat R(F, rows, cols);
  for (int s = 1; s <= rows; ++s) {
    int t = i - s;
    if (t >= 1 && t <= cols) R(s - 1, t - 1) = x;
  }
  return R;
}

Mat anti_identity(const Field& F, int m) { return hankel(F, m, m, m + 1, 1); }

Mat single_entry(const Field& F, int rows, int cols, int s, int t, elem x) {
  if (rows <= 0 || cols <= 0) throw PreconditionError("single_entry: dimension <= 0");
  if (s < 1 || s > rows || t < 1 || t > cols) throw PreconditionError("single_entry: index out of range");
  Mat R(F, rows, cols);
  R(s - 1, t - 1) = x;
  return R;
}

Mat tau_transpose(const Mat& A) {
  return anti_identity(A.field(), A.cols()) * A.transpose() * anti_identity(A.field(), A.rows());
}

static void need_square(const Mat& A) {
  if (!A.square()) throw PreconditionError("matrix is not square");
}

bool is_hollow(const Mat& A) {
  need_square(A);
  for (int i = 0; i < A.rows(); ++i)
    if (A(i, i)) return false;
  return true;
}

bool is_symmetric(const Mat& A) {
  need_square(A);
  for (int i = 0; i < A.rows(); ++i)
    for (int j = i + 1; j < A.cols(); ++j)
      if (A(i, j) != A(j, i)) return false;
  return true;
}

bool is_alternating_gram(const Mat& A) { return is_hollow(A) && is_symmetric(A); }

std::vector<int> rref(Mat& A) {
  const Field& F = A.field();
  std::vector<int> piv;
  int row = 0;
  for (int c = 0; c < A.cols() && row < A.rows(); ++c) {
    int p = -1;
    for (int r = row; r < A.rows(); ++r)
      if (A(r, c)) {
        p = r;
        break;
      }
    if (p < 0) continue;
    if (p != row)
      for (int j = 0; j < A.cols(); ++j) std::swap(A(p, j), A(row, j));
    elem iv = F.inv(A(row, c));
    for (int j = 0; j < A.cols(); ++j) A(row, j) = F.mul(A(row, j), iv);
    for (int r = 0; r < A.rows(); ++r) {
      if (r == row || !A(r, c)) continue;
      elem f = A(r, c);
      for (int j = 0; j < A.cols(); ++j) A(r, j) ^= F.mul(f, A(row, j));
    }
    piv.push_back(c);
    ++row;
  }
  return piv;
}

int rank(const Mat& A) {
  Mat B = A;
  return int(rref(B).size());
}

bool is_invertible(const Mat& A) { return A.square() && rank(A) == A.rows(); }

Mat inverse(const Mat& A) {
  need_square(A);
  int n = A.rows();
  Mat W(A.field(), n, 2 * n);
  W.set_block(0, 0, A);
  W.set_block(0, n, Mat::identity(A.field(), n));
  auto piv = rref(W);
  if (int(piv.size()) < n || piv[n - 1] != n - 1) throw PreconditionError("matrix is singular");
  return W.block(0, n, n, n);
}

Mat kernel(const Mat& A) {
  Mat B = A;
  auto piv = rref(B);
  int n = A.cols();
  std::vector<bool> is_piv(n, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<int> free;
  for (int c = 0; c < n; ++c)
    if (!is_piv[c]) free.push_back(c);
  Mat K(A.field(), n, int(free.size()));
  for (std::size_t k = 0; k < free.size(); ++k) {
    int fc = free[k];
    K(fc, int(k)) = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) K(piv[r], int(k)) = B(int(r), fc);  // char 2: -x = x
  }
  return K;
}

std::vector<elem> diag_of_conjugation(const Mat& A, const Mat& X) {
  need_square(A);
  if (!is_symmetric(A)) throw PreconditionError("diag_of_conjugation: A not symmetric");
  if (X.rows() != A.rows()) throw PreconditionError("diag_of_conjugation: shape mismatch");
  const Field& F = A.field();
  std::vector<elem> d(X.cols(), 0);
  for (int i = 0; i < X.cols(); ++i)
    for (int s = 0; s < A.rows(); ++s) d[i] ^= F.mul(A(s, s), F.square(X(s, i)));
  return d;
}

Mat split_symmetric_hollow(const Mat& D) {
  if (!is_alternating_gram(D)) throw PreconditionError("split_symmetric_hollow: D not symmetric and hollow");
  Mat Z(D.field(), D.rows(), D.cols());
  for (int i = 0; i < D.rows(); ++i)
    for (int j = i + 1; j < D.cols(); ++j) Z(i, j) = D(i, j);
  return Z;
}

elem hankel_coeff(const Mat& A, int j) {
  int n = A.rows();
  if (j <= n || j > 2 * n) return 0;
  return A(j - n - 1, n - 1);
}

bool is_lower_hankel(const Mat& A) {
  if (!A.square()) return false;
  int n = A.rows();
  for (int s = 1; s <= n; ++s)
    for (int t = 1; t <= n; ++t) {
      int j = s + t;
      elem want = j <= n ? 0 : hankel_coeff(A, j);
      if (A(s - 1, t - 1) != want) return false;
    }
  return true;
}

bool is_upper_toeplitz(const Mat& A) {
  if (!A.square()) return false;
  int n = A.rows();
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      elem want = t < s ? 0 : A(0, t - s);
      if (A(s, t) != want) return false;
    }
  return true;
}

Mat upper_toeplitz(const Field& F, int n, const std::vector<elem>& c) {
  Mat R(F, n, n);
  for (int i = 1; i <= n && i <= int(c.size()); ++i)
    if (c[i - 1]) R = R + toeplitz(F, n, n, i, c[i - 1]);
  return R;
}

CosetReduction lh_coset_reduce(const Mat& A, int s) {
  if (!is_lower_hankel(A)) throw PreconditionError("lh_coset_reduce: A is not lower triangular Hankel");
  if (A.is_zero()) throw PreconditionError("lh_coset_reduce: A is zero");
  const Field& F = A.field();
  int n = A.rows();
  int r = n + 1 - rank(A);
  if (s < 0 || r + 2 * s > n) throw PreconditionError("lh_coset_reduce: s too large");
  auto x = [&](int i) -> elem { return i >= r && i <= n ? hankel_coeff(A, n + i) : 0; };
  std::vector<elem> y(n, 0), z(n, 0);
  for (int i = 1; i <= n; ++i) {
    y[i - 1] = F.sqrt(x(r + 2 * i - 2));
    z[i - 1] = F.sqrt(x(r + 2 * i - 1));
  }
  Mat A1 = upper_toeplitz(F, n, y), A2 = upper_toeplitz(F, n, z);
  Mat A1i = inverse(A1);
  CosetReduction out;
  out.r = r;
  out.B = A1i * toeplitz(F, n, n, s + 1, 1);
  out.X = A1i * A2;
  out.C = A * out.B * out.B;
  Mat expect = hankel(F, n, n, n + r + 2 * s, 1) + hankel(F, n, n, n + r + 2 * s + 1, 1) * out.X * out.X;
  if (out.C != expect) throw VerificationError("lh_coset_reduce: normal form mismatch");
  return out;
}

Mat hr_decompose(const Mat& C, int r) {
  const Field& F = C.field();
  int n = C.rows();
  std::vector<elem> w(n, 0);
  for (int i = 1; i <= n; ++i) w[i - 1] = F.sqrt(hankel_coeff(C, n + r + 2 * i - 1));
  Mat X = upper_toeplitz(F, n, w);
  Mat expect = hankel(F, n, n, n + r, 1) + hankel(F, n, n, n + r + 1, 1) * X * X;
  if (expect != C) throw PreconditionError("hr_decompose: matrix is not in the normalized family");
  return X;
}

Mat embed(const ExtensionData& X, const Mat& A) {
  if (A.field() != X.base) throw PreconditionError("embed: matrix not over the base field");
  return map_entries(A, X.ext, [&](elem a) { return X.embed(a); });
}

Mat restrict_to_base(const ExtensionData& X, const Mat& A) {
  if (A.field() != X.ext) throw PreconditionError("restrict: matrix not over the extension");
  return map_entries(A, X.base, [&](elem a) {
    auto v = X.restrict_to_base(a);
    if (!v) throw VerificationError("entry does not lie in the base field");
    return *v;
  });
}

}  // namespace k4
