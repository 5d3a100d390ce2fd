#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "varred/reduction.hpp"
#include "varred/varequations.hpp"

namespace varred {

/// Line-oriented matrix file:
///
///   variable: x
///   dimension: 4
///   blocks: 10 4          (optional)
///   row 1: 0, 0, 2/x, 0
///
/// Blank lines and lines starting with '#' are ignored.
struct SystemFile {
  std::string variable = "x";
  RatMat matrix;
  std::optional<std::pair<std::size_t, std::size_t>> blocks;
};

/// Errors carry "<source>:<line>: " context.
SystemFile parse_system_file(std::string_view text, std::string_view source = "<input>");
std::string render_system_file(const SystemFile& f);

///   n: 2
///   hamiltonian: 1/2*(p1^2 + p2^2) + ...
///   variable: x
///   solution q1: 6*x^2/(x^2 + 1)^2 - 1
///   ...
///   sigma: x/2
/// The solution check runs during parsing.
HamiltonianSpec parse_hamiltonian_file(std::string_view text, std::string_view source = "<input>");
std::string render_hamiltonian_file(const HamiltonianSpec& spec);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// Key/value sections; the final matrix is embedded as a SystemFile between
/// "begin final-matrix" and "end final-matrix".
std::string render_report_structured(const ReductionReport& r, std::string_view var = "x");
std::string render_report_text(const ReductionReport& r, std::string_view var = "x");

/// Extracts the embedded final matrix of a structured report.
SystemFile final_matrix_from_report(std::string_view report_text);

}  // namespace varred
