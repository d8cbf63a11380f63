#include "bandpos/io.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <fstream>
#include <set>
#include <sstream>

namespace bandpos {

using nlohmann::json;
using nlohmann::ordered_json;

Eigen::MatrixXd MatrixInput::dense() const {
  return is_band() ? band().to_dense() : std::get<Eigen::MatrixXd>(matrix);
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> number_array(const json& doc, const std::string& key) {
  if (!doc.contains(key)) throw FormatError("missing field \"" + key + "\"");
  const auto& arr = doc.at(key);
  if (!arr.is_array()) throw FormatError("field \"" + key + "\" must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : arr) {
    if (!v.is_number()) throw FormatError("field \"" + key + "\" must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

void check_fields(const json& doc, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : doc.items())
    if (!allowed.contains(key)) throw FormatError("unknown field \"" + key + "\"");
}

ordered_json rounded(const Eigen::VectorXd& v) {
  ordered_json arr = ordered_json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(round12(v(i)));
  return arr;
}

}  // namespace

MatrixInput parse_matrix_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("matrix file must be a JSON object");
  if (!doc.contains("kind") || !doc.at("kind").is_string()) throw FormatError("missing string field \"kind\"");
  const auto kind = doc.at("kind").get<std::string>();
  try {
    if (kind == "tridiagonal") {
      check_fields(doc, {"kind", "diag", "offdiag"});
      return {kind, make_tridiagonal(number_array(doc, "diag"), number_array(doc, "offdiag"))};
    }
    if (kind == "pentadiagonal") {
      check_fields(doc, {"kind", "diag", "second"});
      return {kind, make_pentadiagonal(number_array(doc, "diag"), number_array(doc, "second"))};
    }
    if (kind == "dense") {
      check_fields(doc, {"kind", "rows"});
      if (!doc.contains("rows") || !doc.at("rows").is_array()) throw FormatError("missing array field \"rows\"");
      const auto& rows = doc.at("rows");
      const auto n = static_cast<Index>(rows.size());
      if (n == 0) throw FormatError("dense matrix has no rows");
      Eigen::MatrixXd a(n, n);
      for (Index i = 0; i < n; ++i) {
        const auto& row = rows.at(static_cast<std::size_t>(i));
        if (!row.is_array() || static_cast<Index>(row.size()) != n) throw FormatError("dense matrix must be square");
        for (Index j = 0; j < n; ++j) {
          const auto& v = row.at(static_cast<std::size_t>(j));
          if (!v.is_number()) throw FormatError("dense rows must contain only numbers");
          a(i, j) = v.get<double>();
        }
      }
      require_symmetric(a);
      return {kind, a};
    }
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  throw FormatError("unknown matrix kind \"" + kind + "\"");
}

MatrixInput read_matrix_file(const std::string& path) { return parse_matrix_json(read_file(path)); }

nlohmann::ordered_json matrix_to_json(const BandSymMatrix<double>& m) {
  ordered_json out;
  if (m.is_split_pentadiagonal() && m.order() >= 3) {
    out["kind"] = "pentadiagonal";
    out["diag"] = rounded(m.diagonal());
    out["second"] = rounded(m.off_diagonal(2));
  } else if (m.bandwidth() == 1) {
    out["kind"] = "tridiagonal";
    out["diag"] = rounded(m.diagonal());
    out["offdiag"] = rounded(m.off_diagonal(1));
  } else {
    return matrix_to_json(m.to_dense());
  }
  return out;
}

nlohmann::ordered_json matrix_to_json(const Eigen::MatrixXd& m) {
  const Index n = m.rows();
  auto zero_beyond = [&](Index d) {
    for (Index i = 0; i < n; ++i)
      for (Index j = i + d + 1; j < n; ++j)
        if (m(i, j) != 0.0 || m(j, i) != 0.0) return false;
    return true;
  };
  const bool symmetric = n == m.cols() && m == m.transpose();
  if (symmetric && n >= 1 && zero_beyond(1)) {
    std::vector<double> d(static_cast<std::size_t>(n)), e(static_cast<std::size_t>(n - 1));
    for (Index i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = m(i, i);
    for (Index i = 0; i + 1 < n; ++i) e[static_cast<std::size_t>(i)] = m(i, i + 1);
    return matrix_to_json(make_tridiagonal(d, e));
  }
  if (symmetric && n >= 3 && zero_beyond(2) && (m.diagonal(1).array() == 0.0).all()) {
    std::vector<double> d(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n - 2));
    for (Index i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = m(i, i);
    for (Index i = 0; i + 2 < n; ++i) y[static_cast<std::size_t>(i)] = m(i, i + 2);
    return matrix_to_json(make_pentadiagonal(d, y));
  }
  ordered_json out;
  out["kind"] = "dense";
  ordered_json rows = ordered_json::array();
  for (Index i = 0; i < n; ++i) rows.push_back(rounded(m.row(i).transpose()));
  out["rows"] = rows;
  return out;
}

SimpleGraph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  std::optional<SimpleGraph> g;
  auto fail = [&](const std::string& msg) {
    throw FormatError("graph line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    auto to_index = [&](const std::string& tok) {
      long long v = 0;
      const auto* first = tok.data();
      const auto* last = tok.data() + tok.size();
      auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec != std::errc() || ptr != last) fail("expected an integer, got '" + tok + "'");
      return static_cast<Index>(v);
    };
    if (!g) {
      if (tokens.size() != 1) fail("first line must hold the vertex count");
      const Index n = to_index(tokens[0]);
      if (n < 1) fail("vertex count must be positive");
      g.emplace(n);
      continue;
    }
    if (tokens.size() != 2) fail("expected an edge 'i j'");
    const Index u = to_index(tokens[0]);
    const Index v = to_index(tokens[1]);
    if (u < 1 || v < 1 || u > g->order() || v > g->order()) fail("vertex out of range 1.." + std::to_string(g->order()));
    if (u == v) fail("self-loop at vertex " + std::to_string(u));
    g->add_edge(u - 1, v - 1);
  }
  if (!g) throw FormatError("graph file is empty");
  return *g;
}

SimpleGraph read_graph_file(const std::string& path) { return parse_graph(read_file(path)); }

std::string graph_to_text(const SimpleGraph& g) {
  std::ostringstream out;
  out << g.order() << '\n';
  for (auto [u, v] : g.edges()) out << u + 1 << ' ' << v + 1 << '\n';
  return out.str();
}

SequenceInput parse_sequence(std::string_view text) {
  SequenceInput seq;
  seq.all_fractions = true;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto term = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    Rational q;
    try {
      q = parse_rational(term);
    } catch (const std::invalid_argument& e) {
      throw FormatError("bad sequence term '" + std::string(term) + "': " + e.what());
    }
    if (term.find_first_of(".eE") != std::string_view::npos) seq.all_fractions = false;
    seq.values.push_back(q.get_d());
    seq.exact.push_back(std::move(q));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return seq;
}

Rational decimal_rational(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw std::invalid_argument("cannot format number");
  return parse_rational(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
}

std::string format12(double x) {
  if (x == 0.0) return "0";
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

double round12(double x) {
  if (!std::isfinite(x)) return x;
  return std::stod(format12(x));
}

nlohmann::ordered_json probe_report_to_json(const ProbeReport& report) {
  ordered_json out;
  out["family"] = report.family;
  out["samples"] = report.samples;
  out["exponent"] = round12(report.exponent);
  out["seed"] = report.seed;
  out["tol"] = report.tol;
  out["min_over_samples"] = round12(report.min_over_samples);
  out["worst_index"] = report.worst_index;
  out["violations"] = report.violations;
  out["worst_case"] = matrix_to_json(report.worst_case);
  return out;
}

}  // namespace bandpos
