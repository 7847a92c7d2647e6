#include "k4forms/io.hpp"

#include <charconv>
#include <istream>
#include <sstream>

namespace k4 {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::string> words(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

long long to_int(const std::string& s, const std::string& what) {
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw ParseError("expected an integer for " + what + ", got '" + s + "'");
  return v;
}

elem to_elem(const std::string& s, const Field& F, const std::string& what) {
  long long v = to_int(s, what);
  if (v < 0 || !F.contains(elem(v))) throw ParseError(what + " value " + s + " is not an element of the field");
  return elem(v);
}

// Wrap argument validation failures as parse errors.
template <class Fn>
auto as_parse_error(Fn fn) {
  try {
    return fn();
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

void append(std::ostringstream& os, const std::vector<elem>& v) {
  for (elem x : v) os << ' ' << x;
}

// Skips blank lines and comments.
bool next_line(std::istream& in, std::vector<std::string>& w) {
  std::string line;
  while (std::getline(in, line)) {
    auto h = line.find('#');
    if (h != std::string::npos) line.resize(h);
    w = words(line);
    if (!w.empty()) return true;
  }
  return false;
}

Mat read_rows(std::istream& in, const Field& F, const std::vector<std::string>& head) {
  if (head.size() != 3) throw ParseError("matrix header needs '" + head[0] + " <rows> <cols>'");
  long long r = to_int(head[1], "rows"), c = to_int(head[2], "cols");
  if (r < 1 || c < 1 || r > 4096 || c > 4096) throw ParseError("matrix size out of range");
  Mat M(F, int(r), int(c));
  for (int i = 0; i < r; ++i) {
    std::vector<std::string> w;
    if (!next_line(in, w)) throw ParseError("matrix ends early");
    if (static_cast<long long>(w.size()) != c) throw ParseError("matrix row " + std::to_string(i + 1) + " has the wrong length");
    for (int j = 0; j < c; ++j) M(i, j) = to_elem(w[j], F, "matrix entry");
  }
  return M;
}

}  // namespace

Field parse_field_arg(const std::string& arg) {
  auto p = split(arg, ',');
  if (p.size() < 2 || p.size() > 3) throw ParseError("field must be '2,<e>[,<modulus>]'");
  if (to_int(p[0], "characteristic") != 2) throw ParseError("only characteristic 2 is supported");
  long long e = to_int(p[1], "degree");
  if (e < 1 || e > 20) throw ParseError("field degree must be in 1..20");
  if (p.size() == 2) return Field(int(e));
  long long mod = to_int(p[2], "modulus");
  if (mod < 0 || mod >= (1ll << 31)) throw ParseError("modulus out of range");
  return as_parse_error([&] { return Field(int(e), elem(mod)); });
}

ModuleSpec parse_module_arg(const std::string& arg, const Field& k) {
  auto p = split(arg, ',');
  Family fam = parse_family(p[0]);
  int n = 0;
  if (p.size() >= 2) n = int(to_int(p[1], "n"));
  Poly f;
  for (std::size_t i = 2; i < p.size(); ++i) f.push_back(to_elem(p[i], k, "coefficient"));
  return as_parse_error([&] { return make_spec(fam, k, n, f); });
}

std::string format_label(const ModuleSpec& spec, const ClassLabel& label) {
  std::ostringstream os;
  os << "label " << family_name(spec.family);
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, RegularLabel>) {
          os << ' ' << x.b << ' ' << x.c;
        } else if constexpr (std::is_same_v<T, RegularSqLabel>) {
          if (x.kind == RegularSqLabel::Paired) os << " paired";
          else os << (x.kind == RegularSqLabel::Alpha ? " alpha " : " mu ") << x.value;
        } else if constexpr (std::is_same_v<T, AnBnLabel>) {
          append(os, x.omega);
        } else if constexpr (std::is_same_v<T, CnfLabel>) {
          append(os, x.a);
        } else if constexpr (std::is_same_v<T, CnfSqLabel>) {
          os << ' ' << x.r << ' ' << x.s << " phi";
          append(os, x.phi);
          os << " psi";
          append(os, x.psi);
        }
      },
      label);
  return os.str();
}

ClassLabel parse_label(const ModuleSpec& spec, const std::string& line) {
  auto w = words(line);
  if (w.size() < 2 || w[0] != "label") throw ParseError("label line must start with 'label <family>'");
  if (w[1] != family_name(spec.family)) throw ParseError("label family '" + w[1] + "' does not match the module");
  std::vector<std::string> a(w.begin() + 2, w.end());
  // scalars are range-checked by label_valid below
  auto num = [&](const std::string& s) {
    long long v = to_int(s, "label entry");
    if (v < 0 || v > 0xffffffffll) throw ParseError("label entry out of range");
    return elem(v);
  };
  auto nums = [&](std::size_t from, std::size_t to) {
    std::vector<elem> v;
    for (std::size_t i = from; i < to; ++i) v.push_back(num(a[i]));
    return v;
  };
  ClassLabel L;
  switch (spec.family) {
    case Family::TrivialSq:
      if (!a.empty()) throw ParseError("trivial2 labels take no parameters");
      L = TrivialSqLabel{};
      break;
    case Family::Regular:
      if (a.size() != 2) throw ParseError("regular labels are 'label regular <b> <c>'");
      L = RegularLabel{num(a[0]), num(a[1])};
      break;
    case Family::RegularSq:
      if (a.size() == 1 && a[0] == "paired")
        L = RegularSqLabel{RegularSqLabel::Paired, 0};
      else if (a.size() == 2 && a[0] == "alpha")
        L = RegularSqLabel{RegularSqLabel::Alpha, num(a[1])};
      else if (a.size() == 2 && a[0] == "mu")
        L = RegularSqLabel{RegularSqLabel::Mu, num(a[1])};
      else
        throw ParseError("regular2 labels are 'paired', 'alpha <x>' or 'mu <x>'");
      break;
    case Family::AnBn: L = AnBnLabel{nums(0, a.size())}; break;
    case Family::Cnf:
    case Family::CnInf: L = CnfLabel{nums(0, a.size())}; break;
    case Family::CnfSq:
    case Family::CnInfSq: {
      if (a.size() < 4 || a[2] != "phi") throw ParseError("cnf2 labels are '<r> <s> phi ... psi ...'");
      std::size_t ps = 3;
      while (ps < a.size() && a[ps] != "psi") ++ps;
      if (ps == a.size()) throw ParseError("cnf2 label is missing 'psi'");
      L = CnfSqLabel{int(to_int(a[0], "r")), int(to_int(a[1], "s")), nums(3, ps), nums(ps + 1, a.size())};
      break;
    }
  }
  if (!label_valid(spec, L)) throw PreconditionError("label is not a class label of " + spec.header());
  return L;
}

std::string format_quad_label(const QuadLabel& label) {
  if (auto* a = std::get_if<ArfRep>(&label)) return "quad arf " + std::to_string(a->x);
  return "quad unique";
}

QuadLabel parse_quad_label(const std::string& line) {
  auto w = words(line);
  if (w.size() == 2 && w[0] == "quad" && w[1] == "unique") return UniqueQuad{};
  if (w.size() == 3 && w[0] == "quad" && w[1] == "arf") {
    long long v = to_int(w[2], "arf value");
    if (v < 0 || v > 0xffffffffll) throw ParseError("arf value out of range");
    return ArfRep{elem(v)};
  }
  throw ParseError("quad label must be 'quad unique' or 'quad arf <x>'");
}

std::string format_matrix(const Mat& M, const std::string& keyword) {
  std::ostringstream os;
  os << keyword << ' ' << M.rows() << ' ' << M.cols() << '\n';
  for (int i = 0; i < M.rows(); ++i) {
    for (int j = 0; j < M.cols(); ++j) os << (j ? " " : "") << M(i, j);
    os << '\n';
  }
  return os.str();
}

FormFile read_form_file(std::istream& in) {
  FormFile f;
  std::vector<std::string> w;
  if (!next_line(in, w) || w[0] != "field") throw ParseError("form file must start with a field line");
  if (w.size() != 4) throw ParseError("field line is 'field 2 <e> <modulus>'");
  Field k = parse_field_arg(w[1] + "," + w[2] + "," + w[3]);
  if (!next_line(in, w) || w[0] != "module" || w.size() < 3) throw ParseError("second line must be 'module <family> <n> [<coeffs>]'");
  std::string arg = w[1];
  for (std::size_t i = 2; i < w.size(); ++i) arg += "," + w[i];
  Family fam = parse_family(w[1]);
  if (!has_n(fam)) {
    if (w.size() != 3 || w[2] != "0") throw ParseError("module " + w[1] + " takes n = 0 and no coefficients");
    arg = w[1];
  }
  f.spec = parse_module_arg(arg, k);
  if (!next_line(in, w) || w[0] != "kind" || w.size() != 2) throw ParseError("third line must be 'kind symplectic|quadratic'");
  if (w[1] == "symplectic")
    f.kind = FormKind::Symplectic;
  else if (w[1] == "quadratic")
    f.kind = FormKind::Quadratic;
  else
    throw ParseError("unknown kind '" + w[1] + "'");
  if (!next_line(in, w) || w[0] != "matrix") throw ParseError("expected a matrix block");
  f.matrix = read_rows(in, k, w);
  if (f.matrix.rows() != f.spec.dim() || f.matrix.cols() != f.spec.dim())
    throw ParseError("matrix size does not match the module dimension " + std::to_string(f.spec.dim()));
  while (next_line(in, w)) {
    std::string line;
    for (const auto& x : w) line += x + " ";
    if (w[0] == "label" && !f.label) {
      f.label = parse_label(f.spec, line);
    } else if (w[0] == "quad" && !f.quad) {
      f.quad = parse_quad_label(line);
    } else if (w[0] == "witness" && !f.witness) {
      f.witness = read_rows(in, k, w);
      if (f.witness->rows() != f.spec.dim() || f.witness->cols() != f.spec.dim())
        throw ParseError("witness size does not match the module dimension");
    } else {
      throw ParseError("unexpected line starting with '" + w[0] + "'");
    }
  }
  return f;
}

std::string write_form_file(const FormFile& f) {
  std::ostringstream os;
  os << f.spec.k.header() << '\n' << f.spec.header() << '\n';
  os << "kind " << (f.kind == FormKind::Symplectic ? "symplectic" : "quadratic") << '\n';
  os << format_matrix(f.matrix);
  if (f.label) os << format_label(f.spec, *f.label) << '\n';
  if (f.quad) os << format_quad_label(*f.quad) << '\n';
  if (f.witness) os << format_matrix(*f.witness, "witness");
  return os.str();
}

}  // namespace k4
