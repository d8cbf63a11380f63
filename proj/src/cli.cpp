#include "bandpos/cli.hpp"

#include "bandpos/chain_sequence.hpp"
#include "bandpos/graph.hpp"
#include "bandpos/io.hpp"
#include "bandpos/positivity.hpp"
#include "bandpos/preservers.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>

namespace bandpos::cli {

using nlohmann::ordered_json;

ordered_json RunReport::to_json() const {
  ordered_json out;
  out["command"] = command;
  out["inputs"] = inputs;
  out["verdicts"] = verdicts;
  out["conventions"] = conventions;
  out["exit_code"] = exit_code;
  return out;
}

namespace {

/// Usage-level failure (bad flag value); maps to exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Context {
  double tol = kDefaultTol;
  bool json = false;
  bool exact = false;
};

std::string subscript(Index k) {
  static const char* const digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
  std::string out;
  for (char c : std::to_string(k)) out += digits[c - '0'];
  return out;
}

std::string join12(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + format12(xs[i]);
  return s;
}

std::string join12(const Eigen::VectorXd& v) {
  return join12(std::vector<double>(v.data(), v.data() + v.size()));
}

std::string join_exact(const std::vector<Rational>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + to_string(xs[i]);
  return s;
}

ordered_json rounded_array(const std::vector<double>& xs) {
  ordered_json arr = ordered_json::array();
  for (double x : xs) arr.push_back(round12(x));
  return arr;
}

ordered_json exact_array(const std::vector<Rational>& xs) {
  ordered_json arr = ordered_json::array();
  for (const auto& x : xs) arr.push_back(to_string(x));
  return arr;
}

template <typename Scalar>
ordered_json params_json(const std::vector<Scalar>& xs) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return exact_array(xs);
  } else {
    return rounded_array(xs);
  }
}

template <typename Scalar>
std::string params_text(const std::vector<Scalar>& xs) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return join_exact(xs);
  } else {
    return join12(xs);
  }
}

template <typename Scalar>
ordered_json chain_json(const ChainReport<Scalar>& c) {
  ordered_json j;
  j["is_chain"] = c.is_chain;
  j["minimal_params"] = params_json(c.minimal_params);
  j["failure_index"] = c.failure_index ? ordered_json(*c.failure_index + 1) : ordered_json(nullptr);
  j["exact_mode"] = c.exact_mode;
  j["boundary_indeterminate"] = c.boundary_indeterminate;
  return j;
}

template <typename Scalar>
std::string chain_text(const ChainReport<Scalar>& c) {
  std::string s = c.is_chain ? "chain sequence" : "not a chain sequence";
  if (c.failure_index) {
    s += " (fails at index " + std::to_string(*c.failure_index + 1);
    if (c.boundary_indeterminate) s += ", boundary-indeterminate: m within 1e-12 of 1";
    s += ")";
  }
  if (!c.minimal_params.empty()) s += "; m = (" + params_text(c.minimal_params) + ")";
  return s;
}

BandSymMatrix<Rational> exact_band(const BandSymMatrix<double>& m) {
  auto convert = [](const Eigen::VectorXd& v) {
    Vector<Rational> q(v.size());
    for (Index i = 0; i < v.size(); ++i) q(i) = decimal_rational(v(i));
    return q;
  };
  std::vector<Vector<Rational>> off;
  for (int k = 1; k <= m.bandwidth(); ++k) off.push_back(convert(m.off_diagonal(k)));
  return BandSymMatrix<Rational>(convert(m.diagonal()), std::move(off));
}

template <typename Scalar>
ordered_json wall_wetzel_json(const WallWetzelReport<Scalar>& ww, std::ostream& text, const std::string& indent) {
  ordered_json blocks = ordered_json::array();
  for (const auto& b : ww.blocks) {
    ordered_json jb;
    jb["rows"] = {b.first + 1, b.first + b.order};
    jb["pd"] = b.pd;
    jb["note"] = b.note;
    text << indent << "block rows " << b.first + 1 << "-" << b.first + b.order << ": " << (b.pd ? "PD" : "not PD")
         << " (" << b.note << ")";
    if (b.chain) {
      jb["chain"] = chain_json(*b.chain);
      text << "; " << chain_text(*b.chain);
    }
    text << '\n';
    blocks.push_back(jb);
  }
  ordered_json j;
  j["pd"] = ww.pd;
  j["blocks"] = blocks;
  return j;
}

template <typename Scalar>
ordered_json split_wall_wetzel(const BandSymMatrix<Scalar>& t, std::ostream& text, const std::string& label,
                               bool& pd) {
  const auto ww = wall_wetzel_report(t);
  text << label << (ww.pd ? "PD" : "not PD") << '\n';
  pd = ww.pd;
  return wall_wetzel_json(ww, text, "  ");
}

ordered_json verdict_json(const PositivityVerdict& v) {
  ordered_json j;
  j["class"] = to_string(v.definiteness);
  j["min_eigenvalue"] = round12(v.min_eigenvalue);
  j["scale"] = round12(v.scale);
  j["threshold"] = round12(v.threshold);
  j["leading_minors"] = rounded_array(v.leading_minors);
  if (v.sturm) {
    j["sturm"] = {{"threshold", round12(v.sturm->threshold)},
                  {"below_negative_threshold", v.sturm->below_negative},
                  {"below_positive_threshold", v.sturm->below_positive}};
  }
  return j;
}

void write_verdict_text(const PositivityVerdict& v, std::ostream& text) {
  text << "verdict: " << to_string(v.definiteness) << '\n';
  text << "min_eigenvalue: " << format12(v.min_eigenvalue) << '\n';
  text << "threshold: " << format12(v.threshold) << '\n';
  if (!v.leading_minors.empty()) text << "leading_minors: [" << join12(v.leading_minors) << "]\n";
  if (v.sturm)
    text << "sturm: " << v.sturm->below_negative << " eigenvalue(s) < -threshold, " << v.sturm->below_positive
         << " eigenvalue(s) < +threshold\n";
}

// -- commands ---------------------------------------------------------------

RunReport check_positivity(const std::string& path, const Context& ctx, std::ostream& text) {
  RunReport report;
  report.command = "check-positivity";
  const auto input = read_matrix_file(path);
  const Eigen::MatrixXd dense = input.dense();
  const auto verdict = input.is_band() ? classify_positivity(input.band(), ctx.tol) : classify_positivity(dense, ctx.tol);

  report.inputs["file"] = path;
  report.inputs["kind"] = input.kind;
  report.inputs["order"] = dense.rows();
  report.inputs["tol"] = ctx.tol;
  report.inputs["exact"] = ctx.exact;
  report.verdicts["oracle"] = verdict_json(verdict);

  text << "check-positivity: " << input.kind << " n=" << dense.rows() << '\n';
  write_verdict_text(verdict, text);

  std::optional<bool> algebraic_pd;
  if (input.kind == "tridiagonal") {
    text << "wall_wetzel: ";
    std::ostringstream blocks;
    ordered_json ww;
    if (ctx.exact) {
      const auto r = wall_wetzel_report(exact_band(input.band()));
      ww = wall_wetzel_json(r, blocks, "  ");
      algebraic_pd = r.pd;
    } else {
      const auto r = wall_wetzel_report(input.band());
      ww = wall_wetzel_json(r, blocks, "  ");
      algebraic_pd = r.pd;
    }
    text << (*algebraic_pd ? "PD" : "not PD") << '\n' << blocks.str();
    report.verdicts["wall_wetzel"] = ww;
  } else if (input.kind == "pentadiagonal") {
    const auto [odd, even] = split_pentadiagonal(input.band());
    bool odd_pd = false, even_pd = false;
    ordered_json split;
    if (ctx.exact) {
      split["odd_block"] = split_wall_wetzel(exact_band(odd), text, "split odd positions: ", odd_pd);
      split["even_block"] = split_wall_wetzel(exact_band(even), text, "split even positions: ", even_pd);
    } else {
      split["odd_block"] = split_wall_wetzel(odd, text, "split odd positions: ", odd_pd);
      split["even_block"] = split_wall_wetzel(even, text, "split even positions: ", even_pd);
    }
    algebraic_pd = odd_pd && even_pd;
    split["pd"] = *algebraic_pd;
    report.verdicts["split_wall_wetzel"] = split;
  }

  if (algebraic_pd) {
    const bool oracle_pd = verdict.is_pd();
    const bool decisive = std::abs(verdict.min_eigenvalue) > 10.0 * verdict.threshold;
    std::string agreement = oracle_pd == *algebraic_pd ? "yes" : (decisive ? "DISAGREEMENT" : "indeterminate (|min_eigenvalue| <= 10 * threshold)");
    report.verdicts["agreement"] = agreement;
    text << "agreement: " << agreement << '\n';
  }
  return report;
}

RunReport hadamard(const std::string& path, double r, const Context& ctx, std::ostream& text) {
  RunReport report;
  report.command = "hadamard";
  if (!(r >= 0.0) || !std::isfinite(r)) throw UsageError("-r must be a finite number >= 0");
  const auto input = read_matrix_file(path);
  const Eigen::MatrixXd dense = input.dense();
  Eigen::MatrixXd powered;
  ordered_json powered_json;
  try {
    if (input.is_band() && r > 0.0) {
      const auto p = hadamard_power(input.band(), r);
      powered = p.to_dense();
      powered_json = matrix_to_json(p);
    } else {
      powered = hadamard_power(dense, r);
      powered_json = matrix_to_json(powered);
    }
  } catch (const std::domain_error& e) {
    throw FormatError(e.what());
  }
  if (uses_zero_power_convention(dense, r)) report.conventions.push_back(kZeroPowerConvention);
  const auto verdict = classify_positivity(powered, ctx.tol);
  const double det = determinant(powered);

  report.inputs["file"] = path;
  report.inputs["kind"] = input.kind;
  report.inputs["r"] = r;
  report.inputs["tol"] = ctx.tol;
  report.verdicts["matrix"] = powered_json;
  report.verdicts["oracle"] = verdict_json(verdict);
  report.verdicts["determinant"] = round12(det);

  text << "hadamard: " << input.kind << " n=" << dense.rows() << ", r=" << format12(r) << '\n';
  text << "matrix: " << powered_json.dump() << '\n';
  write_verdict_text(verdict, text);
  text << "determinant: " << format12(det) << '\n';
  return report;
}

RunReport chain(const std::string& sequence, const Context& ctx, std::ostream& text) {
  RunReport report;
  report.command = "chain";
  const auto seq = parse_sequence(sequence);
  const bool exact = (seq.all_fractions || ctx.exact) && seq.exact.size() <= 32;
  report.inputs["sequence"] = sequence;
  report.inputs["exact"] = exact;
  ordered_json verdict;
  if (exact) {
    const auto c = minimal_parameters(seq.exact);
    verdict = chain_json(c);
    text << "chain: " << chain_text(c) << '\n';
    text << "terms: " << join_exact(seq.exact) << '\n';
  } else {
    const auto c = minimal_parameters(seq.values);
    verdict = chain_json(c);
    text << "chain: " << chain_text(c) << '\n';
    text << "terms: " << join12(seq.values) << '\n';
  }
  text << "mode: " << (exact ? "exact rational" : "floating point") << '\n';
  report.verdicts["chain"] = verdict;
  return report;
}

std::string labels(const std::vector<Index>& vs, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? sep : "") + std::to_string(vs[i] + 1);
  return s;
}

ordered_json label_array(const std::vector<Index>& vs) {
  ordered_json arr = ordered_json::array();
  for (Index v : vs) arr.push_back(v + 1);
  return arr;
}

RunReport critical_exponent(const std::string& path, std::ostream& text) {
  RunReport report;
  report.command = "critical-exponent";
  const auto g = read_graph_file(path);
  report.inputs["file"] = path;
  report.inputs["vertices"] = g.order();
  report.inputs["edges"] = g.edge_count();
  text << "graph: n=" << g.order() << ", " << g.edge_count() << " edge(s)\n";

  const auto cert = is_chordal(g);
  ordered_json chordal;
  chordal["is_chordal"] = cert.is_chordal;
  if (cert.is_chordal) {
    chordal["ordering"] = label_array(cert.ordering);
    text << "chordality: chordal; elimination ordering " << labels(cert.ordering, " ") << '\n';
  } else {
    chordal["witness_cycle"] = label_array(cert.witness_cycle);
    text << "chordality: not chordal; witness " << labels(cert.witness_cycle, "-") << '\n';
  }
  report.verdicts["chordality"] = chordal;

  const auto near = max_near_clique(g);
  report.verdicts["max_near_clique"] = {{"size", near.size}, {"vertices", label_array(near.vertices)}, {"exact", near.exact}};
  text << "max_near_clique: " << near.size << (near.exact ? "" : " (lower bound)") << " (vertices "
       << labels(near.vertices, " ") << ")\n";

  if (!cert.is_chordal) {
    report.verdicts["critical_exponent"] = nullptr;
    text << "critical_exponent: not determined (graph is not chordal)\n";
  } else if (g.order() < 3) {
    report.verdicts["critical_exponent"] = nullptr;
    text << "critical_exponent: not determined (fewer than 3 vertices)\n";
  } else if (!near.exact) {
    report.verdicts["critical_exponent"] = nullptr;
    text << "critical_exponent: not determined (graph too large for exact search)\n";
  } else {
    const auto set = chordal_critical_exponent(g);
    report.verdicts["critical_exponent"] = {{"tail_threshold", set.tail_threshold},
                                            {"includes_naturals", set.includes_naturals},
                                            {"text", set.to_string()}};
    report.conventions.push_back(kNaturalsConvention);
    text << "critical_exponent: " << set.to_string() << '\n';
  }
  return report;
}

RunReport id_check(const std::string& path, const Context& ctx, std::ostream& text) {
  RunReport report;
  report.command = "id-check";
  const auto input = read_matrix_file(path);
  const Eigen::MatrixXd dense = input.dense();
  if ((dense.array() < 0.0).any()) throw FormatError("id-check needs a matrix with nonnegative entries");
  report.inputs["file"] = path;
  report.inputs["kind"] = input.kind;
  report.inputs["tol"] = ctx.tol;
  text << "id-check: " << input.kind << " n=" << dense.rows() << '\n';

  std::optional<IdVerdict> verdict;
  if (input.kind == "tridiagonal") verdict = id_check_tridiagonal(input.band(), ctx.tol);
  if (input.kind == "pentadiagonal") verdict = id_check_pentadiagonal(input.band(), ctx.tol);

  if (verdict) {
    ordered_json j;
    j["is_id"] = verdict->is_id;
    j["reason"] = verdict->reason;
    std::string detail = verdict->reason;
    if (verdict->offending_index) {
      const Index k = *verdict->offending_index + 1;
      std::string block;
      if (verdict->block) block = *verdict->block == 0 ? " in the odd-position block" : " in the even-position block";
      detail = "b" + subscript(k) + "b" + subscript(k + 1) + " ≠ 0" + block;
      j["offending_pair"] = {k, k + 1};
      if (verdict->block) j["block"] = *verdict->block == 0 ? "odd" : "even";
    }
    if (verdict->is_id && input.kind == "tridiagonal") {
      ordered_json blocks = ordered_json::array();
      std::string shown;
      for (const auto& b : id_blocks(input.band(), ctx.tol)) {
        blocks.push_back(matrix_to_json(b));
        shown += (shown.empty() ? "" : " ") + std::string("[") + join12(b.diagonal()) +
                 (b.order() == 2 ? "; " + format12(b.off_diagonal(1)(0)) : "") + "]";
      }
      j["blocks"] = blocks;
      detail += "; blocks " + shown;
    }
    report.verdicts["algebraic"] = j;
    text << "id: " << (verdict->is_id ? "ID" : "not ID") << ": " << detail << '\n';
  } else {
    text << "id: no algebraic criterion for dense input (numeric probe only)\n";
  }

  const bool probe = id_numeric_probe(dense, default_id_grid(), ctx.tol);
  report.verdicts["numeric_probe"] = {{"grid", default_id_grid()}, {"passes", probe}};
  text << "numeric_probe: " << (probe ? "passes" : "fails") << " on r in {" << join12(default_id_grid())
       << "} (necessary condition only)\n";
  return report;
}

RunReport counterexample(const std::string& family, double r, const Context& ctx, std::ostream& text,
                         std::ostream& notes) {
  RunReport report;
  report.command = "counterexample";
  if (!(r > 0.0 && r < 1.0)) throw UsageError("-r must satisfy 0 < r < 1 (no counterexample exists for r >= 1)");
  report.inputs["family"] = family;
  report.inputs["r"] = r;
  BandSymMatrix<double> m = make_tridiagonal<double>({1.0}, {});
  double formula = 0.0;
  if (family == "tridiagonal") {
    m = counterexample_tridiagonal(r);
    const double eps = counterexample_epsilon(r);
    formula = std::pow(2.0 + eps, r) - 2.0;
    report.verdicts["epsilon"] = round12(eps);
    notes << "# A(eps) with eps = " << format12(eps) << "; det(A^r) = (2+eps)^r - 2 = " << format12(formula) << '\n';
  } else if (family == "pentadiagonal") {
    m = counterexample_pentadiagonal(r);
    formula = 2.0 - 3.0 * std::pow(2.0, r) + std::pow(4.0, r);
    notes << "# det(P^r) = 2 - 3*2^r + 4^r = " << format12(formula) << '\n';
  } else {
    throw UsageError("--family must be tridiagonal or pentadiagonal");
  }
  const auto base = classify_positivity(m, ctx.tol);
  const auto powered = classify_positivity(hadamard_power(m, r), ctx.tol);
  notes << "# matrix: " << to_string(base.definiteness) << "; r-th power: " << to_string(powered.definiteness) << '\n';
  report.verdicts["matrix"] = matrix_to_json(m);
  report.verdicts["determinant_formula"] = round12(formula);
  report.verdicts["matrix_class"] = to_string(base.definiteness);
  report.verdicts["power_class"] = to_string(powered.definiteness);
  text << matrix_to_json(m).dump() << '\n';
  return report;
}

struct ProbeArgs {
  std::string family;
  double r = 0.0;
  Index samples = 100;
  std::uint64_t seed = 0;
  std::string graph;
  Index min_order = 0;
  Index max_order = 0;
  bool boundary = false;
  bool inject = false;
};

RunReport probe(const ProbeArgs& args, const Context& ctx, std::ostream& text) {
  RunReport report;
  report.command = "probe";
  if (!(args.r > 0.0) || !std::isfinite(args.r)) throw UsageError("-r must be a positive number");
  if (args.samples < 1) throw UsageError("-n must be at least 1");
  ProbeOptions options;
  try {
    options.family = parse_probe_family(args.family);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (options.family == ProbeFamily::Tridiagonal) {
    options.min_order = 3;
    options.max_order = 12;
  } else if (options.family == ProbeFamily::Pentadiagonal) {
    options.min_order = 5;
    options.max_order = 8;
  } else {
    if (args.graph.empty()) throw UsageError("--family graph needs --graph FILE");
    options.pattern = read_graph_file(args.graph);
  }
  if (args.min_order > 0) options.min_order = args.min_order;
  if (args.max_order > 0) options.max_order = args.max_order;
  if (options.family != ProbeFamily::GraphPattern && options.max_order < options.min_order)
    throw UsageError("--max-order must be >= --min-order");
  options.include_boundary = args.boundary;
  if (args.inject && args.r < 1.0) {
    if (options.family == ProbeFamily::Tridiagonal) options.injected.push_back(counterexample_tridiagonal(args.r).to_dense());
    if (options.family == ProbeFamily::Pentadiagonal) options.injected.push_back(counterexample_pentadiagonal(args.r).to_dense());
  }
  const auto result = probe_preserves(args.r, args.samples, args.seed, ctx.tol, options);

  report.inputs["family"] = args.family;
  report.inputs["r"] = args.r;
  report.inputs["samples"] = args.samples;
  report.inputs["seed"] = args.seed;
  report.inputs["tol"] = ctx.tol;
  report.verdicts["probe"] = probe_report_to_json(result);
  text << probe_report_to_json(result).dump() << '\n';
  return report;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Positivity of Hadamard powers of symmetric band matrices", "bandpos"};
  app.require_subcommand(1);
  app.fallthrough();

  Context ctx;
  if (const char* env = std::getenv("BANDPOS_EXACT"); env && std::string(env) == "1") ctx.exact = true;
  app.add_option("--tol", ctx.tol, "Positivity tolerance, relative to max(1, max-norm)")->capture_default_str();
  app.add_flag("--json", ctx.json, "Emit the run report as JSON");

  std::string file, sequence, family;
  double r = -1.0;
  ProbeArgs probe_args;

  auto* check = app.add_subcommand("check-positivity", "Classify PD / PSD_BOUNDARY / INDEFINITE");
  check->add_option("file", file, "Matrix JSON file")->required();

  auto* had = app.add_subcommand("hadamard", "Entrywise power of a matrix and its verdict");
  had->add_option("file", file, "Matrix JSON file")->required();
  had->add_option("-r", r, "Exponent (>= 0)")->required();

  auto* chn = app.add_subcommand("chain", "Finite chain-sequence test");
  chn->add_option("sequence", sequence, "Comma-separated decimals or fractions, e.g. 1/4,1/4,1/4")->required();

  auto* crit = app.add_subcommand("critical-exponent", "Critical exponent of a chordal pattern graph");
  crit->add_option("file", file, "Graph file")->required();

  auto* idc = app.add_subcommand("id-check", "Infinite divisibility check");
  idc->add_option("file", file, "Matrix JSON file")->required();

  auto* cex = app.add_subcommand("counterexample", "Matrix whose r-th power loses positivity (0 < r < 1)");
  cex->add_option("--family", family, "tridiagonal | pentadiagonal")->required();
  cex->add_option("-r", r, "Exponent in (0, 1)")->required();

  auto* prb = app.add_subcommand("probe", "Randomized search for a falsifying sample");
  prb->add_option("--family", probe_args.family, "tridiagonal | pentadiagonal | graph")->required();
  prb->add_option("-r", probe_args.r, "Exponent (> 0)")->required();
  prb->add_option("-n", probe_args.samples, "Number of random samples")->capture_default_str();
  prb->add_option("--seed", probe_args.seed, "RNG seed")->capture_default_str();
  prb->add_option("--graph", probe_args.graph, "Pattern graph file for --family graph");
  prb->add_option("--min-order", probe_args.min_order, "Smallest sample order");
  prb->add_option("--max-order", probe_args.max_order, "Largest sample order");
  prb->add_flag("--boundary", probe_args.boundary, "Shift every other sample to the PSD boundary");
  prb->add_flag("--inject-counterexample", probe_args.inject, "Add the r < 1 counterexample as an extra sample");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  RunReport report;
  std::ostringstream text, notes;
  auto fail = [&](const std::string& command, int code, const std::string& msg) {
    err << "error: " << msg << '\n';
    if (ctx.json) {
      ordered_json j{{"command", command}, {"error", msg}, {"exit_code", code}};
      out << j.dump(2) << '\n';
    }
    return code;
  };
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (check->parsed()) report = check_positivity(file, ctx, text);
    if (had->parsed()) report = hadamard(file, r, ctx, text);
    if (chn->parsed()) report = chain(sequence, ctx, text);
    if (crit->parsed()) report = critical_exponent(file, text);
    if (idc->parsed()) report = id_check(file, ctx, text);
    if (cex->parsed()) report = counterexample(family, r, ctx, text, notes);
    if (prb->parsed()) report = probe(probe_args, ctx, text);
  } catch (const UsageError& e) {
    return fail(command, kUsage, e.what());
  } catch (const FormatError& e) {
    return fail(command, kFormat, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(command, kFormat, e.what());
  } catch (const std::domain_error& e) {
    return fail(command, kFormat, e.what());
  }

  if (ctx.json) {
    out << report.to_json().dump(2) << '\n';
  } else {
    out << text.str();
    err << notes.str();
    if (!report.conventions.empty()) {
      out << "conventions:";
      for (const auto& c : report.conventions) out << ' ' << c << ';';
      out << '\n';
    }
  }
  return report.exit_code;
}

}  // namespace bandpos::cli
