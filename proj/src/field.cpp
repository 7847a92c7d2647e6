#include "k4forms/field.hpp"

#include <algorithm>
#include <sstream>

namespace k4 {

struct FieldTables {
  std::vector<elem> exp;  // size 2*(q-1)
  std::vector<std::int32_t> log;
};

namespace {

constexpr int kTableMaxDegree = 16;

int bit_degree(std::uint64_t p) {
  int d = -1;
  while (p) {
    p >>= 1;
    ++d;
  }
  return d;
}

std::uint64_t gf2_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t mod) {
  int d = bit_degree(mod);
  std::uint64_t r = 0;
  while (b) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
    if ((a >> d) & 1) a ^= mod;
  }
  return r;
}

std::uint64_t gf2_gcd(std::uint64_t a, std::uint64_t b) {
  while (b) {
    int db = bit_degree(b);
    while (a && bit_degree(a) >= db) a ^= b << (bit_degree(a) - db);
    std::swap(a, b);
  }
  return a;
}

}  // namespace

bool gf2_irreducible(std::uint64_t poly) {
  int d = bit_degree(poly);
  if (d < 1) return false;
  if (d == 1) return true;
  if (!(poly & 1)) return false;
  // gcd(x^(2^i) - x, poly) = 1 for i <= d/2
  std::uint64_t x = 2, p = 2;
  for (int i = 1; i <= d / 2; ++i) {
    p = gf2_mulmod(p, p, poly);
    if (gf2_gcd(poly, p ^ x) != 1) return false;
  }
  return true;
}

elem smallest_irreducible(int e) {
  if (e < 1 || e > 31) throw PreconditionError("field degree out of range");
  for (std::uint64_t p = std::uint64_t(1) << e; p < (std::uint64_t(1) << (e + 1)); ++p)
    if (gf2_irreducible(p)) return elem(p);
  throw VerificationError("no irreducible polynomial found");
}

Field::Field() : Field(1) {}

Field::Field(int e) : e_(e), mod_(smallest_irreducible(e)) { build(); }

Field::Field(int e, elem modulus) : e_(e), mod_(modulus) {
  if (e < 1 || e > 31) throw PreconditionError("field degree out of range");
  if (bit_degree(modulus) != e) throw PreconditionError("modulus degree does not match e");
  if (!gf2_irreducible(modulus)) throw PreconditionError("modulus is not irreducible over GF(2)");
  build();
}

elem Field::slow_mul(elem a, elem b) const { return elem(gf2_mulmod(a, b, mod_)); }

void Field::build() {
  if (e_ <= kTableMaxDegree) {
    auto t = std::make_shared<FieldTables>();
    elem q1 = order() - 1;
    // find a generator of the multiplicative group
    for (elem g = (e_ == 1 ? 1 : 2); g < order(); ++g) {
      t->exp.assign(2 * std::size_t(q1), 0);
      t->log.assign(order(), -1);
      elem x = 1;
      bool ok = true;
      for (elem i = 0; i < q1; ++i) {
        if (t->log[x] != -1) {
          ok = false;
          break;
        }
        t->exp[i] = x;
        t->log[x] = std::int32_t(i);
        x = slow_mul(x, g);
      }
      if (ok && x == 1) break;
    }
    for (elem i = 0; i < q1; ++i) t->exp[i + q1] = t->exp[i];
    tab_ = t;
  }
  // smallest trace-1 element
  for (elem c = 1; c < order(); ++c)
    if (trace(c) == 1) {
      as_rep_ = c;
      break;
    }
}

elem Field::mul(elem a, elem b) const {
  if (a == 0 || b == 0) return 0;
  if (tab_) return tab_->exp[tab_->log[a] + tab_->log[b]];
  return slow_mul(a, b);
}

elem Field::inv(elem a) const {
  if (a == 0) throw PreconditionError("inversion of zero");
  if (tab_) {
    elem q1 = order() - 1;
    return tab_->exp[(q1 - elem(tab_->log[a])) % q1];
  }
  return pow(a, std::uint64_t(order()) - 2);
}

elem Field::pow(elem a, std::uint64_t k) const {
  elem r = 1;
  while (k) {
    if (k & 1) r = mul(r, a);
    a = mul(a, a);
    k >>= 1;
  }
  return r;
}

elem Field::sqrt(elem a) const {
  for (int i = 0; i < e_ - 1; ++i) a = mul(a, a);
  return a;
}

int Field::trace(elem a) const {
  elem t = 0, x = a;
  for (int i = 0; i < e_; ++i) {
    t ^= x;
    x = mul(x, x);
  }
  return int(t & 1);
}

std::pair<elem, elem> Field::artin_schreier_reps() const { return {0, as_rep_}; }

std::pair<elem, elem> Field::coset_reduce(elem a) const {
  elem rep = trace(a) ? as_rep_ : 0;
  elem target = a ^ rep;
  // solve d^2 + d = target over GF(2); columns are images of basis bits
  std::vector<elem> col(e_);
  for (int i = 0; i < e_; ++i) {
    elem b = elem(1) << i;
    col[i] = mul(b, b) ^ b;
  }
  // row reduce augmented system: unknown bits d_i, equations per output bit
  std::vector<std::uint64_t> rows(e_);
  for (int r = 0; r < e_; ++r) {
    std::uint64_t row = 0;
    for (int i = 0; i < e_; ++i)
      if ((col[i] >> r) & 1) row |= std::uint64_t(1) << i;
    if ((target >> r) & 1) row |= std::uint64_t(1) << e_;
    rows[r] = row;
  }
  std::vector<int> pivcol;
  int rank = 0;
  for (int c = 0; c < e_ && rank < e_; ++c) {
    int p = -1;
    for (int r = rank; r < e_; ++r)
      if ((rows[r] >> c) & 1) {
        p = r;
        break;
      }
    if (p < 0) continue;
    std::swap(rows[p], rows[rank]);
    for (int r = 0; r < e_; ++r)
      if (r != rank && ((rows[r] >> c) & 1)) rows[r] ^= rows[rank];
    pivcol.push_back(c);
    ++rank;
  }
  for (int r = rank; r < e_; ++r)
    if ((rows[r] >> e_) & 1) throw VerificationError("coset_reduce: inconsistent system");
  elem d = 0;
  for (int r = 0; r < rank; ++r)
    if ((rows[r] >> e_) & 1) d |= elem(1) << pivcol[r];
  if ((mul(d, d) ^ d ^ rep) != a) throw VerificationError("coset_reduce: bad solution");
  return {rep, d};
}

std::string Field::header() const {
  std::ostringstream os;
  os << "field 2 " << e_ << ' ' << mod_;
  return os.str();
}

Scalar Scalar::operator+(const Scalar& o) const {
  if (field != o.field) throw PreconditionError("scalars from different fields");
  return {field, value ^ o.value};
}

Scalar Scalar::operator*(const Scalar& o) const {
  if (field != o.field) throw PreconditionError("scalars from different fields");
  return {field, field.mul(value, o.value)};
}

Scalar Scalar::inv() const { return {field, field.inv(value)}; }
Scalar Scalar::sqrt() const { return {field, field.sqrt(value)}; }

void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_mul(const Field& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] ^= F.mul(a[i], b[j]);
  poly_trim(r);
  return r;
}

Poly poly_pow(const Field& F, const Poly& a, int n) {
  Poly r{1};
  for (int i = 0; i < n; ++i) r = poly_mul(F, r, a);
  return r;
}

elem poly_eval(const Field& F, const Poly& p, elem x) {
  elem r = 0;
  for (std::size_t i = p.size(); i-- > 0;) r = F.mul(r, x) ^ p[i];
  return r;
}

std::optional<elem> ExtensionData::restrict_to_base(elem x) const {
  for (elem a = 0; a < base.order(); ++a)
    if (image[a] == x) return a;
  return std::nullopt;
}

elem ExtensionData::sigma(int i, elem x) const {
  int sq = base.degree() * (i - 1);
  for (int j = 0; j < sq; ++j) x = ext.mul(x, x);
  return x;
}

bool ExtensionData::f_is_linear_trivial() const {
  return m == 1 && (f == Poly{0, 1} || f == Poly{1, 1});
}

ExtensionData make_extension(const Field& k, const Poly& f_in) {
  Poly f = f_in;
  poly_trim(f);
  if (f.size() < 2) throw PreconditionError("polynomial must have degree >= 1");
  if (f.back() != 1) throw PreconditionError("polynomial must be monic");
  for (elem c : f)
    if (!k.contains(c)) throw PreconditionError("coefficient outside base field");
  ExtensionData X;
  X.base = k;
  X.f = f;
  X.m = int(f.size()) - 1;
  int e = k.degree();
  if (X.m == 1) {
    X.ext = k;
    X.image.resize(k.order());
    for (elem a = 0; a < k.order(); ++a) X.image[a] = a;
  } else {
    if (e * X.m > 20) throw PreconditionError("extension too large");
    X.ext = Field(e * X.m);
    const Field& K = X.ext;
    // theta: smallest root in K of the modulus of k
    Poly km;
    for (int i = 0; i <= e; ++i) km.push_back((k.modulus() >> i) & 1);
    elem theta = 0;
    bool found = false;
    for (elem t = 0; t < K.order(); ++t)
      if (poly_eval(K, km, t) == 0) {
        theta = t;
        found = true;
        break;
      }
    if (!found) throw VerificationError("base field does not embed");
    X.image.resize(k.order());
    for (elem a = 0; a < k.order(); ++a) {
      elem v = 0, p = 1;
      for (int i = 0; i < e; ++i) {
        if ((a >> i) & 1) v ^= p;
        p = K.mul(p, theta);
      }
      X.image[a] = v;
    }
  }
  const Field& K = X.ext;
  Poly fe;
  for (elem c : f) fe.push_back(X.image[c]);
  // epsilon: smallest root of f in K lying in no proper intermediate field
  bool found = false;
  for (elem t = 0; t < K.order() && !found; ++t) {
    if (poly_eval(K, fe, t) != 0) continue;
    bool proper = false;
    for (int d = 1; d < X.m; ++d) {
      if (X.m % d) continue;
      elem y = t;
      for (int j = 0; j < d * e; ++j) y = K.mul(y, y);
      if (y == t) proper = true;
    }
    if (proper) continue;
    X.epsilon = t;
    found = true;
  }
  if (!found) throw PreconditionError("polynomial is not irreducible over the base field");
  return X;
}

}  // namespace k4
