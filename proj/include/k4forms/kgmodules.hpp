#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "k4forms/matrix.hpp"

namespace k4 {

enum class Family { TrivialSq, Regular, RegularSq, AnBn, Cnf, CnfSq, CnInf, CnInfSq };

std::string family_name(Family f);  // trivial2, regular, regular2, anbn, cnf, cnf2, cninf, cninf2
Family parse_family(const std::string& s);  // throws ParseError

bool has_n(Family f);
bool has_poly(Family f);
bool is_squared(Family f);  // RegularSq, CnfSq, CnInfSq

struct ModuleSpec {
  Family family = Family::TrivialSq;
  Field k;
  int n = 0;  // 0 for families without a size parameter
  Poly f;     // Cnf and CnfSq only, monic over k

  int m() const { return has_poly(family) ? int(f.size()) - 1 : 1; }
  int dim() const;
  std::string header() const;  // "module <family> <n> [<coeffs>]"
  bool operator==(const ModuleSpec& o) const {
    return family == o.family && k == o.k && n == o.n && f == o.f;
  }
};

// Validates parameters (n >= 1 where needed, f monic irreducible).
ModuleSpec make_spec(Family fam, const Field& k, int n = 0, const Poly& f = {});

struct GroupAction {
  Mat g1, g2;
};

GroupAction action(const ModuleSpec& spec);

// Elements of kG as coefficient vectors over 1, g1, g2, g1g2.
using KG = std::array<elem, 4>;
KG kg_mul(const Field& F, const KG& x, const KG& y);
elem kg_aug(const KG& x);
KG kg_inv(const Field& F, const KG& x);  // needs nonzero augmentation
KG kg_scale(const Field& F, const KG& x, elem s);
KG kg_add(const KG& x, const KG& y);
Mat kg_hat(const Field& F, const KG& x);  // regular representation, symmetric
KG kg_from_hat(const Mat& X);  // top row

// Companion matrix of f^n.
Mat companion(const Field& k, const Poly& f, int n);

struct JordanData {
  ExtensionData ext;
  int n = 1, m = 1;
  Mat Pi;    // over k
  Mat J;     // over K
  Mat V;     // over K
  Mat Vinv;  // over K

  Mat script_D(const Mat& X) const;           // X n x n over K
  Mat script_V(const Mat& X) const;           // result over k
  Mat script_V_inv(const Mat& B) const;       // B in W over k, result lower Hankel over K
  Mat centralizer(const Mat& X) const;        // X upper Toeplitz over K, result over k
  Mat centralizer_inv(const Mat& A) const;    // A commuting with Pi, result over K
};

JordanData jordan_data(const Field& k, const Poly& f, int n);

// Basis swap between CnInf(n) (resp. CnInfSq) and Cnf(n,T) (resp. CnfSq).
Mat cninf_swap(const ModuleSpec& spec);
ModuleSpec cninf_partner(const ModuleSpec& spec);

// Two computations of End_{kG}(M).
std::vector<Mat> end_basis_generic(const ModuleSpec& spec);
std::vector<Mat> end_basis_closed(const ModuleSpec& spec);
int end_dim_closed(const ModuleSpec& spec);
bool in_end(const ModuleSpec& spec, const Mat& M);

// Residue map End(Cnf) -> K, M = (A B; 0 A) maps to X_{1,1} with A = V^-1 D(X) V.
elem residue_field_map(const ModuleSpec& spec, const JordanData& jd, const Mat& M);

// W with W^-1 (g^-1)^T W = g for both generators.
Mat dual_witness(const ModuleSpec& spec);

// Actions on A_n and B_n separately, in the standard bases.
GroupAction action_An(const Field& k, int n);
GroupAction action_Bn(const Field& k, int n);

}  // namespace k4
