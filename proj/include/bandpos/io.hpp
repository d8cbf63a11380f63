#pragma once

#include "bandpos/band_matrix.hpp"
#include "bandpos/graph.hpp"
#include "bandpos/preservers.hpp"
#include "bandpos/rational.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bandpos {

/// Raised for malformed matrix, graph or sequence input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parsed matrix file: band matrices keep their structure.
struct MatrixInput {
  std::string kind;  // "tridiagonal" | "pentadiagonal" | "dense"
  std::variant<BandSymMatrix<double>, Eigen::MatrixXd> matrix;

  bool is_band() const { return std::holds_alternative<BandSymMatrix<double>>(matrix); }
  const BandSymMatrix<double>& band() const { return std::get<BandSymMatrix<double>>(matrix); }
  Eigen::MatrixXd dense() const;
};

/// {"kind":"tridiagonal","diag":[...],"offdiag":[...]}
/// {"kind":"pentadiagonal","diag":[...],"second":[...]}
/// {"kind":"dense","rows":[[...],...]}
/// Unknown kinds and unknown fields are rejected; dense input must be symmetric.
MatrixInput parse_matrix_json(std::string_view text);
MatrixInput read_matrix_file(const std::string& path);

nlohmann::ordered_json matrix_to_json(const BandSymMatrix<double>& m);
/// Dense matrices that are tridiagonal or split pentadiagonal are written in band form.
nlohmann::ordered_json matrix_to_json(const Eigen::MatrixXd& m);

/// "n" on the first line, then one "i j" edge per line (1-indexed); '#' starts a comment.
SimpleGraph parse_graph(std::string_view text);
SimpleGraph read_graph_file(const std::string& path);
std::string graph_to_text(const SimpleGraph& g);

/// A comma-separated sequence of decimals or fractions.
struct SequenceInput {
  std::vector<Rational> exact;
  std::vector<double> values;
  /// Every term was written as an integer or p/q.
  bool all_fractions = false;
};

SequenceInput parse_sequence(std::string_view text);

/// Exact rational of the shortest decimal that round-trips x ("2.1" -> 21/10).
Rational decimal_rational(double x);

/// Shortest-round-trip double after rounding to 12 significant digits.
double round12(double x);
/// Decimal text with 12 significant digits.
std::string format12(double x);

nlohmann::ordered_json probe_report_to_json(const ProbeReport& report);

}  // namespace bandpos
