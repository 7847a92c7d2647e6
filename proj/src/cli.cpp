#include "k4forms/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

#include "k4forms/io.hpp"
#include "k4forms/oracle.hpp"

namespace k4 {

namespace {

constexpr std::uint64_t kEnumerateLimit = std::uint64_t(1) << 20;

FormFile load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return read_form_file(in);
}

ModuleSpec spec_from_args(const std::string& field, const std::string& module) {
  if (field.empty() || module.empty()) throw ParseError("--field and --module are required");
  return parse_module_arg(module, parse_field_arg(field));
}

int cmd_classes(const ModuleSpec& spec, bool tsv, std::ostream& out) {
  if (count_classes(spec) > kEnumerateLimit) throw PreconditionError("too many classes to list");
  auto labels = enumerate_classes(spec);
  if (tsv) {
    out << "index\tlabel\n";
    for (std::size_t i = 0; i < labels.size(); ++i) out << i << '\t' << format_label(spec, labels[i]) << '\n';
  } else {
    out << spec.k.header() << '\n' << spec.header() << '\n';
    for (const auto& L : labels) out << format_label(spec, L) << '\n';
  }
  return 0;
}

int cmd_count(const std::string& field, const std::string& module, bool tsv, std::ostream& out, std::ostream& err) {
  if (field == "symbolic") {
    auto p = module;
    std::vector<std::string> parts;
    std::stringstream ss(p);
    for (std::string x; std::getline(ss, x, ',');) parts.push_back(x);
    if (parts.empty()) throw ParseError("--module is required");
    Family fam = parse_family(parts[0]);
    int n = 0, m = 0;
    if (has_n(fam)) {
      if (parts.size() < 2) throw ParseError("this family needs n");
      try {
        n = std::stoi(parts[1]);
      } catch (const std::exception&) {
        throw ParseError("n must be an integer");
      }
      if (n < 1) throw ParseError("n must be >= 1");
    }
    if (has_poly(fam) && parts.size() > 2) m = int(parts.size()) - 3;
    if (has_poly(fam) && parts.size() > 2 && m < 1) throw ParseError("f must have degree >= 1");
    std::string formula = count_formula(fam, n, m);
    if (tsv)
      out << "formula\n" << formula << '\n';
    else
      out << "formula " << formula << "\nwhere q = |k|" << (has_poly(fam) && m == 0 ? ", m = deg f" : "") << '\n';
    return 0;
  }
  ModuleSpec spec = spec_from_args(field, module);
  std::uint64_t c = count_classes(spec);
  if (c <= kEnumerateLimit && enumerate_classes(spec).size() != c) {
    err << "count mismatch: formula " << c << " but " << enumerate_classes(spec).size() << " labels\n";
    return 3;
  }
  if (tsv)
    out << "count\tformula\n" << c << '\t' << count_formula(spec) << '\n';
  else
    out << spec.header() << "\ncount " << c << "\nformula " << count_formula(spec) << '\n';
  return 0;
}

int cmd_canon(const std::string& path, bool check, std::ostream& out, std::ostream& err) {
  FormFile f = load(path);
  if (f.kind != FormKind::Symplectic) throw PreconditionError("canon needs a symplectic form file");
  if (check && f.witness) {
    if (!f.label) throw ParseError("a witness needs a label line");
    const Mat& W = *f.witness;
    if (!is_invertible(W) || !in_end(f.spec, W)) {
      err << "check failed: witness is not a module automorphism\n";
      return 3;
    }
    if (W.transpose() * f.matrix * W != representative(f.spec, *f.label)) {
      err << "check failed: witness does not carry the form to the representative\n";
      return 3;
    }
    out << "check ok\n";
    return 0;
  }
  Canonical c = canonicalize(f.spec, f.matrix);
  if (check) {
    if (f.label && *f.label != c.label) {
      err << "check failed: form has " << format_label(f.spec, c.label) << '\n';
      return 3;
    }
    out << "check ok\n";
    return 0;
  }
  f.label = c.label;
  f.witness = c.witness;
  f.quad.reset();
  out << write_form_file(f);
  return 0;
}

void print_quad_reps(const ModuleSpec& spec, const ClassLabel& L, std::ostream& out) {
  out << format_label(spec, L) << '\n';
  auto reps = quad_representatives(spec, L);
  if (reps.empty()) out << "NONE\n";
  for (const auto& [ql, Q] : reps) out << format_quad_label(ql) << '\n' << format_matrix(Q);
}

int cmd_quad(const std::string& path, const std::string& field, const std::string& module, const std::string& label,
             std::ostream& out) {
  if (path.empty()) {
    ModuleSpec spec = spec_from_args(field, module);
    out << spec.k.header() << '\n' << spec.header() << '\n';
    if (!label.empty()) {
      print_quad_reps(spec, parse_label(spec, label), out);
      return 0;
    }
    if (count_classes(spec) > kEnumerateLimit) throw PreconditionError("too many classes to list");
    for (const auto& L : enumerate_classes(spec)) print_quad_reps(spec, L, out);
    return 0;
  }
  FormFile f = load(path);
  if (f.kind == FormKind::Symplectic) {
    Canonical c = canonicalize(f.spec, f.matrix);
    out << f.spec.k.header() << '\n' << f.spec.header() << '\n';
    print_quad_reps(f.spec, c.label, out);
    return 0;
  }
  Mat Q = quad_normalize(f.matrix);
  Mat S = quad_polar(Q);
  if (!is_invariant_quad(action(f.spec), Q)) throw PreconditionError("quadratic form is not invariant under the group action");
  Canonical c = canonicalize(f.spec, S);
  QuadCanonical qc = quad_canonicalize(f.spec, c.label, quad_transform(Q, c.witness));
  f.label = c.label;
  f.quad = qc.label;
  f.witness = c.witness * qc.witness;
  out << write_form_file(f);
  return 0;
}

int cmd_verify(const std::string& field, const std::string& module, bool tsv, std::ostream& out) {
  std::vector<ModuleSpec> specs;
  if (field.empty() && module.empty())
    specs = desk_suite();
  else
    specs.push_back(spec_from_args(field, module));
  int failed = 0, total = 0;
  if (tsv) out << "status\tcheck\tdetail\n";
  for (const auto& spec : specs)
    for (const auto& c : verify_spec(spec)) {
      ++total;
      if (!c.pass) ++failed;
      if (tsv)
        out << (c.pass ? "PASS" : "FAIL") << '\t' << c.name << '\t' << c.detail << '\n';
      else
        out << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    }
  if (!tsv) out << (total - failed) << " of " << total << " checks passed\n";
  return failed ? 3 : 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Invariant symplectic and quadratic forms for Klein four group modules in characteristic 2", "k4forms"};
  app.require_subcommand(1);
  std::string field, module, file, label;
  bool tsv = false, check = false;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--field", field, "2,<e>[,<modulus>]");
    sub->add_option("--module", module, "<family>[,<n>[,<coefficients of f, low to high>]]");
    sub->add_flag("--tsv", tsv, "tab separated output");
  };
  auto* classes = app.add_subcommand("classes", "list the isometry class labels");
  common(classes);
  auto* count = app.add_subcommand("count", "number of classes and the formula in q = |k|");
  common(count);
  auto* canon = app.add_subcommand("canon", "label and witness for a symplectic form file");
  canon->add_option("file", file, "form file")->required();
  canon->add_flag("--check", check, "verify the label and witness stored in the file");
  auto* quad = app.add_subcommand("quad", "quadratic refinements of a class or a quadratic form file");
  quad->add_option("file", file, "form file");
  quad->add_option("--label", label, "one class label, e.g. 'label cnf 1'");
  common(quad);
  auto* verify = app.add_subcommand("verify", "brute-force checks on small modules");
  common(verify);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  try {
    if (classes->parsed()) return cmd_classes(spec_from_args(field, module), tsv, out);
    if (count->parsed()) return cmd_count(field, module, tsv, out, err);
    if (canon->parsed()) return cmd_canon(file, check, out, err);
    if (quad->parsed()) return cmd_quad(file, field, module, label, out);
    if (verify->parsed()) return cmd_verify(field, module, tsv, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << '\n';
    return 2;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << '\n';
    return 3;
  }
  return 1;
}

}  // namespace k4
