#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "k4forms/classify.hpp"

namespace k4 {

// Size limits for brute force. Exceeding one throws PreconditionError.
struct OracleBudget {
  std::uint64_t max_forms = std::uint64_t(1) << 24;      // candidate Grams in a form space
  std::uint64_t full_units = std::uint64_t(1) << 16;     // End sizes enumerated without restriction
  std::uint64_t max_units = std::uint64_t(1) << 22;      // End sizes enumerated at all
  std::uint64_t max_quad = std::uint64_t(1) << 20;       // diagonal corrections searched
  int d_kill_samples = 100;
};

// Families whose Grams have the shape (0 A; A^T D) with a free hollow symmetric D.
bool has_free_block(const ModuleSpec& spec);
// Restriction to D = 0 is used when End is too large to enumerate.
bool restrict_default(const ModuleSpec& spec, const OracleBudget& budget = {});

// Index sets of the two summand copies of a squared module.
std::vector<std::vector<int>> summand_indices(const ModuleSpec& spec);

// Nondegenerate, and for squared families degenerate on each summand copy.
bool admissible_form(const ModuleSpec& spec, const Mat& S);

// The k-space of invariant alternating Grams, in reduced coordinates.
class FormSpace {
 public:
  FormSpace(const ModuleSpec& spec, bool restrict_D);
  int dim() const { return int(basis_.size()); }
  std::uint64_t size() const;  // q^dim
  std::uint64_t encode(const Mat& S) const;  // S must lie in the space
  Mat decode(std::uint64_t code) const;
  bool contains(const Mat& S) const;
  const std::vector<Mat>& basis() const { return basis_; }

 private:
  Field k_;
  int d_ = 0;
  std::vector<Mat> basis_;
  std::vector<std::pair<int, int>> pivots_;
};

// Generic path: solve g^T B g = B, keep admissible solutions.
std::vector<Mat> enumerate_generic(const ModuleSpec& spec, bool restrict_D, const OracleBudget& budget = {});
// Structured path: the per-family parametrizations of invariant forms.
std::vector<Mat> enumerate_structured(const ModuleSpec& spec, bool restrict_D, const OracleBudget& budget = {});

// All units of End; with restricted set, only those with zero top-right block.
std::vector<Mat> unit_group(const ModuleSpec& spec, bool restricted, const OracleBudget& budget = {});

struct OrbitInfo {
  Mat rep;
  std::uint64_t size = 0;
  ClassLabel label;
};

struct OrbitReport {
  ModuleSpec spec;
  bool restricted = false;
  std::uint64_t forms = 0;
  std::uint64_t units = 0;
  std::vector<OrbitInfo> orbits;
  std::vector<std::string> discrepancies;
  bool ok() const { return discrepancies.empty(); }
};

// Orbits of forms under S -> M^T S M, checked against canonicalize.
OrbitReport orbit_partition(const ModuleSpec& spec, const std::vector<Mat>& forms, const std::vector<Mat>& units);

// Enumerate both ways, partition, compare with count_classes and enumerate_classes.
OrbitReport classify_oracle(const ModuleSpec& spec, const OracleBudget& budget = {});
OrbitReport classify_oracle(const ModuleSpec& spec, bool restrict_D, const OracleBudget& budget);

// Random forms with D != 0 must reach the same label as their D = 0 reduct.
std::vector<std::string> d_kill_check(const ModuleSpec& spec, int samples, std::uint64_t seed);

// Generators of the stabilizer of S in the unit group.
std::vector<Mat> stabilizer_generators(const ModuleSpec& spec, const Mat& S, const OracleBudget& budget = {});

// Invariant quadratic forms with polar representative(label), by search over diagonals.
std::vector<Mat> invariant_refinements(const ModuleSpec& spec, const ClassLabel& label, const OracleBudget& budget = {});

struct QuadOrbit {
  Mat rep;
  std::uint64_t size = 0;
  QuadLabel label;
};

struct QuadOrbitReport {
  ModuleSpec spec;
  ClassLabel label;
  std::uint64_t refinements = 0;
  std::vector<QuadOrbit> orbits;
  std::vector<std::string> discrepancies;
  bool ok() const { return discrepancies.empty(); }
};

QuadOrbitReport quad_orbit_partition(const ModuleSpec& spec, const ClassLabel& label, const OracleBudget& budget = {});

// Embeddings M -> M + M into the paired form of a self-dual M; counts the
// nondegenerate restrictions (expected 0).
struct EmbeddingReport {
  std::uint64_t embeddings = 0;
  std::uint64_t nondegenerate = 0;
};
EmbeddingReport paired_embedding_check(const ModuleSpec& spec, const OracleBudget& budget = {});

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Full pipeline on one spec: counts, label bijection, witnesses, quadratic existence and classes.
std::vector<CheckResult> verify_spec(const ModuleSpec& spec, const OracleBudget& budget = {});

// Specs small enough for exhaustive checking.
std::vector<ModuleSpec> desk_suite();

}  // namespace k4
