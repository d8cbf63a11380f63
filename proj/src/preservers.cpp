#include "bandpos/preservers.hpp"

#include "bandpos/chain_sequence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace bandpos {

PowerSet tridiag_preserver_set(Index n) {
  if (n < 3) throw std::invalid_argument("tridiagonal preserver set is stated for n >= 3");
  return PowerSet::tail(1.0);
}

PowerSet penta_preserver_set(Index n) {
  if (n < 3) throw std::invalid_argument("pentadiagonal preserver set is stated for n >= 3");
  return PowerSet::tail(n <= 4 ? 0.0 : 1.0);
}

namespace {

void require_unit_interval(double r) {
  if (!(r > 0.0 && r < 1.0)) throw std::domain_error("counterexamples exist only for 0 < r < 1");
}

// Platform-independent draws; std distributions are implementation-defined.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

// In (0, 1), never exactly 0.
double open_unit(std::mt19937_64& rng) { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; }

Index uniform_index(std::mt19937_64& rng, Index lo, Index hi) {
  return lo + static_cast<Index>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace

double counterexample_epsilon(double r) {
  require_unit_interval(r);
  return (std::pow(2.0, 1.0 / r) - 2.0) / 2.0;
}

BandSymMatrix<double> counterexample_tridiagonal(double r) {
  const double eps = counterexample_epsilon(r);
  return make_tridiagonal({1.0, 2.0 + eps, 1.0}, {1.0, 1.0});
}

BandSymMatrix<double> boundary_pentadiagonal() {
  return make_pentadiagonal({1.0, 2.0, 2.0, 1.0, 1.0}, {1.0, 1.0, 1.0});
}

BandSymMatrix<double> counterexample_pentadiagonal(double r) {
  require_unit_interval(r);
  return boundary_pentadiagonal();
}

std::string to_string(ProbeFamily f) {
  switch (f) {
    case ProbeFamily::Tridiagonal: return "tridiagonal";
    case ProbeFamily::Pentadiagonal: return "pentadiagonal";
    case ProbeFamily::GraphPattern: return "graph";
  }
  return "?";
}

ProbeFamily parse_probe_family(const std::string& name) {
  if (name == "tridiagonal") return ProbeFamily::Tridiagonal;
  if (name == "pentadiagonal") return ProbeFamily::Pentadiagonal;
  if (name == "graph") return ProbeFamily::GraphPattern;
  throw std::invalid_argument("unknown family '" + name + "' (expected tridiagonal, pentadiagonal or graph)");
}

std::mt19937_64 sample_rng(std::uint64_t seed, Index index) {
  const auto i = static_cast<std::uint64_t>(index);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
  return std::mt19937_64(seq);
}

BandSymMatrix<double> random_pd_tridiagonal(std::mt19937_64& rng, Index n) {
  if (n < 1) throw std::invalid_argument("order must be positive");
  std::vector<double> g(static_cast<std::size_t>(n));
  g[0] = uniform01(rng);
  for (std::size_t k = 1; k < g.size(); ++k) g[k] = open_unit(rng);
  std::vector<double> diag(static_cast<std::size_t>(n));
  for (auto& d : diag) d = std::exp(uniform(rng, -1.0, 1.5));
  std::vector<double> off(static_cast<std::size_t>(n - 1));
  if (n > 1) {
    const auto ratios = chain_from_parameters(g);
    for (std::size_t j = 0; j < off.size(); ++j) {
      const bool cut = uniform01(rng) < 0.15;
      off[j] = cut ? 0.0 : std::sqrt(ratios[j] * diag[j] * diag[j + 1]);
    }
  }
  return make_tridiagonal(diag, off);
}

BandSymMatrix<double> random_pd_pentadiagonal(std::mt19937_64& rng, Index n) {
  if (n < 3) throw std::invalid_argument("pentadiagonal order must be >= 3");
  auto odd = random_pd_tridiagonal(rng, (n + 1) / 2);
  auto even = random_pd_tridiagonal(rng, n / 2);
  return merge_pentadiagonal(odd, even);
}

Eigen::MatrixXd random_pd_pattern(std::mt19937_64& rng, const SimpleGraph& g) {
  const Index n = g.order();
  if (n < 1) throw std::invalid_argument("pattern graph has no vertices");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (auto [u, v] : g.edges()) {
    const double w = uniform01(rng) < 0.8 ? uniform(rng, 0.05, 1.0) : 0.0;
    a(u, v) = a(v, u) = w;
  }
  for (Index i = 0; i < n; ++i) a(i, i) = a.row(i).sum() + uniform(rng, 0.1, 1.0);
  // Pull the spectrum toward the PSD boundary while staying PD.
  const double lambda = min_eigenvalue(a);
  a.diagonal().array() -= uniform(rng, 0.0, 0.95) * lambda;
  return a;
}

namespace {

struct SampleResult {
  double min_eig = std::numeric_limits<double>::infinity();
  bool violation = false;
};

Eigen::MatrixXd draw_sample(const ProbeOptions& options, std::uint64_t seed, Index index) {
  auto rng = sample_rng(seed, index);
  Eigen::MatrixXd a;
  switch (options.family) {
    case ProbeFamily::Tridiagonal:
      a = random_pd_tridiagonal(rng, uniform_index(rng, options.min_order, options.max_order)).to_dense();
      break;
    case ProbeFamily::Pentadiagonal:
      a = random_pd_pentadiagonal(rng, uniform_index(rng, options.min_order, options.max_order)).to_dense();
      break;
    case ProbeFamily::GraphPattern:
      if (!options.pattern) throw std::invalid_argument("graph family needs a pattern graph");
      a = random_pd_pattern(rng, *options.pattern);
      break;
  }
  if (options.include_boundary && index % 2 == 1) {
    a.diagonal().array() -= min_eigenvalue(a);
    // A - lambda I may carry -1e-17 style residue on the diagonal; the
    // diagonal of a PSD matrix is nonnegative.
    a.diagonal() = a.diagonal().cwiseMax(0.0);
  }
  return a;
}

SampleResult evaluate(const Eigen::MatrixXd& a, double r, double tol) {
  const Eigen::MatrixXd powered = hadamard_power(a, r);
  SampleResult out;
  out.min_eig = min_eigenvalue(powered, tol);
  out.violation = out.min_eig < -tol * std::max(1.0, max_norm(powered));
  return out;
}

}  // namespace

ProbeReport probe_preserves(double r, Index samples, std::uint64_t seed, double tol, const ProbeOptions& options) {
  if (!(r > 0.0) || !std::isfinite(r)) throw std::domain_error("probe exponent must be positive");
  if (samples < 1) throw std::invalid_argument("probe needs at least one sample");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (options.family != ProbeFamily::GraphPattern &&
      (options.min_order < 1 || options.max_order < options.min_order))
    throw std::invalid_argument("invalid order range");
  if (options.family == ProbeFamily::Pentadiagonal && options.min_order < 3)
    throw std::invalid_argument("pentadiagonal samples need order >= 3");
  if (options.family == ProbeFamily::GraphPattern && !options.pattern)
    throw std::invalid_argument("graph family needs a pattern graph");

  const Index total = samples + static_cast<Index>(options.injected.size());
  std::vector<SampleResult> results(static_cast<std::size_t>(total));
  auto sample = [&](Index i) {
    return i < samples ? draw_sample(options, seed, i) : options.injected[static_cast<std::size_t>(i - samples)];
  };

  unsigned workers = options.workers != 0 ? options.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<Index>(workers, total));
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (Index i = w; i < total; i += workers)
            results[static_cast<std::size_t>(i)] = evaluate(sample(i), r, tol);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  ProbeReport report;
  report.family = to_string(options.family);
  report.samples = total;
  report.exponent = r;
  report.seed = seed;
  report.tol = tol;
  report.min_over_samples = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < total; ++i) {
    const auto& res = results[static_cast<std::size_t>(i)];
    if (res.violation) ++report.violations;
    if (res.min_eig < report.min_over_samples) {
      report.min_over_samples = res.min_eig;
      report.worst_index = i;
    }
  }
  report.worst_case = sample(report.worst_index);
  return report;
}

namespace {

void require_nonnegative(const Eigen::MatrixXd& a) {
  if ((a.array() < 0.0).any()) throw std::domain_error("matrix has a negative entry");
}

IdVerdict id_verdict_for_block(const BandSymMatrix<double>& t, double tol, double zero_tol) {
  const auto& b = t.off_diagonal(1);
  for (Index j = 0; j + 1 < b.size(); ++j)
    if (std::abs(b(j)) > zero_tol && std::abs(b(j + 1)) > zero_tol)
      return {false, "consecutive nonzero off-diagonal entries", j, std::nullopt};
  if (!classify_positivity(t, tol).is_psd()) return {false, "not PSD", std::nullopt, std::nullopt};
  return {true, "PSD with no two consecutive nonzero off-diagonal entries", std::nullopt, std::nullopt};
}

}  // namespace

IdVerdict id_check_tridiagonal(const BandSymMatrix<double>& t, double tol, double zero_tol) {
  if (t.bandwidth() != 1) throw std::invalid_argument("expected a tridiagonal matrix");
  require_nonnegative(t.to_dense());
  return id_verdict_for_block(t, tol, zero_tol);
}

bool is_id_tridiagonal(const BandSymMatrix<double>& t, double tol, double zero_tol) {
  return id_check_tridiagonal(t, tol, zero_tol).is_id;
}

IdVerdict id_check_pentadiagonal(const BandSymMatrix<double>& p, double tol, double zero_tol) {
  if (!p.is_split_pentadiagonal())
    throw std::invalid_argument("expected a pentadiagonal matrix with zero offset-1 diagonal");
  require_nonnegative(p.to_dense());
  const auto [odd, even] = split_pentadiagonal(p);
  int which = 0;
  for (const auto* block : {&odd, &even}) {
    auto v = id_verdict_for_block(*block, tol, zero_tol);
    if (!v.is_id) {
      v.block = which;
      return v;
    }
    ++which;
  }
  return {true, "both parity blocks are ID", std::nullopt, std::nullopt};
}

bool is_id_pentadiagonal(const BandSymMatrix<double>& p, double tol, double zero_tol) {
  return id_check_pentadiagonal(p, tol, zero_tol).is_id;
}

std::vector<BandSymMatrix<double>> id_blocks(const BandSymMatrix<double>& t, double tol, double zero_tol) {
  const auto verdict = id_check_tridiagonal(t, tol, zero_tol);
  if (!verdict.is_id) throw std::invalid_argument("matrix is not infinitely divisible: " + verdict.reason);
  return split_at_zero_offdiag(t, zero_tol);
}

const std::vector<double>& default_id_grid() {
  static const std::vector<double> grid{0.05, 0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0};
  return grid;
}

bool id_numeric_probe(const Eigen::MatrixXd& a, const std::vector<double>& r_grid, double tol) {
  require_symmetric(a);
  require_nonnegative(a);
  for (double r : r_grid)
    if (!(r > 0.0)) throw std::domain_error("ID probe exponents must be positive");
  return std::all_of(r_grid.begin(), r_grid.end(), [&](double r) {
    return classify_positivity(hadamard_power(a, r), tol).is_psd();
  });
}

Eigen::MatrixXd polynomial_apply(const Eigen::MatrixXd& t, const std::vector<double>& coeffs, PolynomialMode mode) {
  require_symmetric(t);
  if (coeffs.empty()) throw std::invalid_argument("polynomial needs at least one coefficient");
  for (double c : coeffs)
    if (!(c >= 0.0)) throw std::domain_error("polynomial coefficients must be nonnegative");
  const Index n = t.rows();
  Eigen::MatrixXd result = coeffs[0] * Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    if (mode == PolynomialMode::Ordinary) {
      power = power * t;
    } else {
      power = hadamard_power(t, static_cast<double>(k));
    }
    result += coeffs[k] * power;
  }
  if (mode == PolynomialMode::Ordinary) result = (0.5 * (result + result.transpose())).eval();
  return result;
}

}  // namespace bandpos
