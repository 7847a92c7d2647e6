#pragma once

#include <vector>

#include "k4forms/kgmodules.hpp"

namespace k4 {

// Bilinear forms are Gram matrices. A form is invariant when g^T B g = B
// for both generators.
bool is_invariant_form(const GroupAction& act, const Mat& B);
bool is_symplectic_form(const GroupAction& act, const Mat& B);  // invariant, alternating, nondegenerate

Mat radical(const Mat& B);  // columns span the radical

// Hyperbolic pair on M + M*: Gram (0 B; B^T 0), action diag(g, g^-T).
Mat paired_form(const Mat& B);
GroupAction paired_action(const GroupAction& act);
Mat orthogonal_sum(const Mat& a, const Mat& b);
GroupAction direct_sum(const GroupAction& a, const GroupAction& b);

// Columns u1, v1, u2, v2, ... with B(u_i, v_i) = 1 and all other pairings 0.
Mat symplectic_basis(const Mat& S);

// Quadratic forms q(x) = x^T Q x. Two matrices give the same form when they
// differ by a symmetric hollow matrix; the upper triangular one is canonical.
Mat quad_normalize(const Mat& Q);
bool quad_equal(const Mat& Q1, const Mat& Q2);
Mat quad_polar(const Mat& Q);  // Q + Q^T
elem quad_eval(const Mat& Q, const std::vector<elem>& x);
Mat quad_transform(const Mat& Q, const Mat& M);  // normalized M^T Q M
bool is_invariant_quad(const GroupAction& act, const Mat& Q);

// Strict upper triangle of S.
Mat s_hat(const Mat& S);
Mat quad_with_diagonal(const Mat& S, const std::vector<elem>& d);

// Sum of q(u_i) q(v_i) over a symplectic basis of the polar form.
elem arf_sum(const Mat& Q);
// Artin-Schreier class of arf_sum: 0 or the field's trace-1 representative.
elem arf_class(const Mat& Q);

// Q_S(D1, D2) = (diag D1, R; 0, diag D2) and its reduction by (I Y; 0 I).
Mat block_quad(const Mat& R, const std::vector<elem>& D1, const std::vector<elem>& D2);

struct BlockQuadReduction {
  bool unique = false;  // D1 = 0
  elem x = 0;           // Artin-Schreier representative when D1 != 0
  int t = -1;           // 0-indexed pivot, minimal with eta_tt != 0
  elem eta_tt = 0;
  Mat Y;
  Mat witness;  // (I Y; 0 I)
  Mat target;   // normalized M^T Q M
};

BlockQuadReduction block_quad_reduce(const Mat& R, const std::vector<elem>& D1,
                                     const std::vector<elem>& D2);

// Target of the reduction for a given class x.
Mat block_quad_target(const Mat& R, const std::vector<elem>& D1, elem x);

std::vector<elem> diagonal(const Mat& A);

}  // namespace k4
