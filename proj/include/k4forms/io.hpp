#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "k4forms/classify.hpp"

namespace k4 {

// "2,<e>[,<modulus>]"
Field parse_field_arg(const std::string& arg);
// "<family>[,<n>[,<c0>,<c1>,...]]" with coefficients of f from low to high degree.
ModuleSpec parse_module_arg(const std::string& arg, const Field& k);

// "label <family> <params...>"
std::string format_label(const ModuleSpec& spec, const ClassLabel& label);
ClassLabel parse_label(const ModuleSpec& spec, const std::string& line);

// "quad unique" or "quad arf <x>"
std::string format_quad_label(const QuadLabel& label);
QuadLabel parse_quad_label(const std::string& line);

// "<keyword> <r> <c>" followed by r rows of integers.
std::string format_matrix(const Mat& M, const std::string& keyword = "matrix");

enum class FormKind { Symplectic, Quadratic };

// A form file:
//   field 2 <e> <modulus>
//   module <family> <n> [<coeffs>]
//   kind symplectic|quadratic
//   matrix <r> <c>, rows
// optionally followed by label, quad and witness lines.
struct FormFile {
  ModuleSpec spec;
  FormKind kind = FormKind::Symplectic;
  Mat matrix;
  std::optional<ClassLabel> label;
  std::optional<QuadLabel> quad;
  std::optional<Mat> witness;
};

FormFile read_form_file(std::istream& in);
std::string write_form_file(const FormFile& f);

}  // namespace k4
