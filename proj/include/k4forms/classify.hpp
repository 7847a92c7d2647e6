#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "k4forms/forms.hpp"

namespace k4 {

// Isometry class labels, one alternative per module family. cninf uses the
// cnf label and cninf2 the cnf2 label; K-valued entries live in the
// extension K = k[T]/(f).
struct TrivialSqLabel {
  auto operator<=>(const TrivialSqLabel&) const = default;
};
struct RegularLabel {
  elem b = 0, c = 0;  // phi = (0, b, c, 1 + b + c)
  auto operator<=>(const RegularLabel&) const = default;
};
struct RegularSqLabel {
  enum Kind { Paired = 0, Alpha = 1, Mu = 2 };
  int kind = Paired;
  elem value = 0;
  auto operator<=>(const RegularSqLabel&) const = default;
};
struct AnBnLabel {
  std::vector<elem> omega;  // anti-diagonals 1..2n of the Hankel block
  auto operator<=>(const AnBnLabel&) const = default;
};
struct CnfLabel {
  std::vector<elem> a;  // a_2, a_4, ..., in K
  auto operator<=>(const CnfLabel&) const = default;
};
struct CnfSqLabel {
  int r = 0, s = 0;
  std::vector<elem> phi;  // phi_1, phi_3, ..., phi_{2s-1}
  std::vector<elem> psi;  // psi_1, ..., psi_t
  auto operator<=>(const CnfSqLabel&) const = default;
};

using ClassLabel = std::variant<TrivialSqLabel, RegularLabel, RegularSqLabel, AnBnLabel, CnfLabel, CnfSqLabel>;

struct UniqueQuad {
  auto operator<=>(const UniqueQuad&) const = default;
};
struct ArfRep {
  elem x = 0;  // 0 or the trace-1 representative of k
  auto operator<=>(const ArfRep&) const = default;
};
using QuadLabel = std::variant<UniqueQuad, ArfRep>;

// Number of isometry classes from the closed formula.
std::uint64_t count_classes(const ModuleSpec& spec);
// The same formula in terms of q = |k|.
std::string count_formula(const ModuleSpec& spec);
// Formula without a concrete field; m = 0 leaves the degree of f as the symbol m.
std::string count_formula(Family fam, int n, int m);

std::vector<ClassLabel> enumerate_classes(const ModuleSpec& spec);
Mat representative(const ModuleSpec& spec, const ClassLabel& label);
bool label_valid(const ModuleSpec& spec, const ClassLabel& label);

struct Canonical {
  ClassLabel label;
  Mat witness;  // witness^T S witness = representative(label)
};

// S must be an invariant symplectic form on the module (and have degenerate
// summand blocks for the squared families).
Canonical canonicalize(const ModuleSpec& spec, const Mat& S);

// Quadratic refinements of representative(label).
bool quad_exists(const ModuleSpec& spec, const ClassLabel& label);
std::vector<std::pair<QuadLabel, Mat>> quad_representatives(const ModuleSpec& spec, const ClassLabel& label);

struct QuadCanonical {
  QuadLabel label;
  Mat witness;  // stabilizes representative(label), maps Q to the quad representative
};
QuadCanonical quad_canonicalize(const ModuleSpec& spec, const ClassLabel& label, const Mat& Q);

// Pieces exposed for tests.
// (phi, psi, mu) over K for the squared cyclic family, and the inverse map.
struct Triple {
  Mat phi, psi, mu;
};
Triple cnfsq_triple(const JordanData& jd, const CnfSqLabel& label);
Mat cnfsq_sigma(const JordanData& jd, const Triple& t);
Mat anbn_block(const Field& k, int n, const std::vector<elem>& omega);  // the A block with x = 1
Mat cnf_hankel(const JordanData& jd, const CnfLabel& label);           // element of H over K
std::vector<elem> anbn_forced_diagonal(int n, const std::vector<elem>& omega);

}  // namespace k4
