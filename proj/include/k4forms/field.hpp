#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k4forms/errors.hpp"

namespace k4 {

// Field elements are bit-encoded polynomial residues, LSB = constant term.
using elem = std::uint32_t;

struct FieldTables;

// GF(2^e) given by a modulus irreducible over GF(2).
class Field {
 public:
  Field();  // GF(2)
  explicit Field(int e);  // smallest irreducible modulus of degree e
  Field(int e, elem modulus);

  int degree() const { return e_; }
  elem modulus() const { return mod_; }
  elem order() const { return elem(1) << e_; }
  bool contains(elem a) const { return a < order(); }

  elem add(elem a, elem b) const { return a ^ b; }
  elem mul(elem a, elem b) const;
  elem inv(elem a) const;
  elem div(elem a, elem b) const { return mul(a, inv(b)); }
  elem pow(elem a, std::uint64_t k) const;
  elem square(elem a) const { return mul(a, a); }
  elem sqrt(elem a) const;

  // Absolute trace to GF(2).
  int trace(elem a) const;

  // {0, c}: c is the smallest element of trace 1.
  std::pair<elem, elem> artin_schreier_reps() const;

  // (rep, delta) with a = rep + delta^2 + delta and rep one of the two reps.
  std::pair<elem, elem> coset_reduce(elem a) const;

  std::string header() const;  // "field 2 <e> <modulus>"

  bool operator==(const Field& o) const { return e_ == o.e_ && mod_ == o.mod_; }
  bool operator!=(const Field& o) const { return !(*this == o); }

 private:
  void build();
  elem slow_mul(elem a, elem b) const;

  int e_ = 1;
  elem mod_ = 3;
  elem as_rep_ = 1;
  std::shared_ptr<const FieldTables> tab_;
};

bool gf2_irreducible(std::uint64_t poly);
elem smallest_irreducible(int e);

// A field element that remembers its field. Arithmetic checks ownership.
struct Scalar {
  Field field;
  elem value = 0;

  Scalar operator+(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar inv() const;
  Scalar sqrt() const;
  bool operator==(const Scalar& o) const { return field == o.field && value == o.value; }
};

// Polynomials over a field, coefficients from low to high degree.
using Poly = std::vector<elem>;

Poly poly_mul(const Field& F, const Poly& a, const Poly& b);
Poly poly_pow(const Field& F, const Poly& a, int n);
elem poly_eval(const Field& F, const Poly& p, elem x);
void poly_trim(Poly& p);

// K = k[eps] for f monic irreducible over k of degree m.
struct ExtensionData {
  Field base;
  Field ext;
  Poly f;  // over base
  int m = 1;
  elem epsilon = 0;  // in ext
  std::vector<elem> image;  // image[a] = embedding of base element a

  elem embed(elem a) const { return image.at(a); }
  std::optional<elem> restrict_to_base(elem x) const;
  elem sigma(int i, elem x) const;  // x^(q^(i-1)), i = 1..m
  bool f_is_linear_trivial() const;  // f in {T, T+1}
};

ExtensionData make_extension(const Field& k, const Poly& f);

}  // namespace k4
