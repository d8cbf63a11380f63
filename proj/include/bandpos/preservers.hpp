#pragma once

#include "bandpos/band_matrix.hpp"
#include "bandpos/graph.hpp"
#include "bandpos/positivity.hpp"
#include "bandpos/power_set.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace bandpos {

/// Powers preserving PD/PSD for every nonnegative tridiagonal matrix of order n >= 3: [1, inf).
PowerSet tridiag_preserver_set(Index n);

/// Same for the split pentadiagonal family: [0, inf) for n = 3, 4 and [1, inf) for n >= 5.
PowerSet penta_preserver_set(Index n);

/// Midpoint of the window 0 < eps < 2^(1/r) - 2.
double counterexample_epsilon(double r);

/// A(eps) = tridiag([1, 2 + eps, 1], [1, 1]) with eps = counterexample_epsilon(r);
/// PD, while its r-th Hadamard power has determinant (2 + eps)^r - 2 < 0.
BandSymMatrix<double> counterexample_tridiagonal(double r);

/// The fixed 5x5 PSD pentadiagonal matrix with det of its r-th power
/// equal to 2 - 3 * 2^r + 4^r, negative on 0 < r < 1.
BandSymMatrix<double> counterexample_pentadiagonal(double r);

/// diag (1, 2, 2, 1, 1), second diagonal (1, 1, 1).
BandSymMatrix<double> boundary_pentadiagonal();

enum class ProbeFamily { Tridiagonal, Pentadiagonal, GraphPattern };

std::string to_string(ProbeFamily f);
ProbeFamily parse_probe_family(const std::string& name);

struct ProbeOptions {
  ProbeFamily family = ProbeFamily::Tridiagonal;
  /// Required for GraphPattern.
  std::optional<SimpleGraph> pattern;
  /// Inclusive range of orders drawn per sample (ignored for GraphPattern).
  Index min_order = 3;
  Index max_order = 12;
  /// Also draw PSD boundary samples A - lambda_min I (every other sample).
  bool include_boundary = false;
  /// Extra matrices evaluated after the random samples.
  std::vector<Eigen::MatrixXd> injected;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned workers = 0;
};

struct ProbeReport {
  std::string family;
  Index samples = 0;
  double exponent = 0.0;
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
  /// Smallest min-eigenvalue of A^{∘r} over all samples.
  double min_over_samples = 0.0;
  /// The sample A (before powering) achieving it, and its index.
  Eigen::MatrixXd worst_case;
  Index worst_index = 0;
  /// Samples with min-eigenvalue < -tol * max(1, max-norm of A^{∘r}).
  Index violations = 0;

  bool falsified() const { return violations > 0; }
};

/// Per-sample generator, seeded from (seed, index) so results do not depend
/// on scheduling.
std::mt19937_64 sample_rng(std::uint64_t seed, Index index);

/// Random PD tridiagonal matrix built from chain-sequence parameters: draws
/// g_0 in [0, 1), g_k in (0, 1), positive diagonals, and sets
/// b_j = sqrt(ratio_j a_j a_{j+1}). Some off-diagonals are zeroed.
BandSymMatrix<double> random_pd_tridiagonal(std::mt19937_64& rng, Index n);

/// Random PD pentadiagonal matrix of the split family: two random PD
/// tridiagonal blocks interleaved.
BandSymMatrix<double> random_pd_pentadiagonal(std::mt19937_64& rng, Index n);

/// Random PD matrix with nonnegative entries and zero pattern G.
Eigen::MatrixXd random_pd_pattern(std::mt19937_64& rng, const SimpleGraph& g);

ProbeReport probe_preserves(double r, Index samples, std::uint64_t seed, double tol,
                            const ProbeOptions& options);

/// Why an ID test failed (or passed).
struct IdVerdict {
  bool is_id = false;
  /// "not PSD", "consecutive nonzero off-diagonals", ...
  std::string reason;
  /// For the off-diagonal criterion: 0-based j with b_j b_{j+1} != 0 (in the
  /// tridiagonal block where it was found).
  std::optional<Index> offending_index;
  /// Pentadiagonal only: 0 for the odd-position block, 1 for the even one.
  std::optional<int> block;
};

inline constexpr double kDefaultZeroTol = 1e-12;

/// T is ID iff T is PSD and b_i b_{i+1} = 0 for every i (|b| <= zero_tol counts as 0).
IdVerdict id_check_tridiagonal(const BandSymMatrix<double>& t, double tol = kDefaultTol,
                               double zero_tol = kDefaultZeroTol);
bool is_id_tridiagonal(const BandSymMatrix<double>& t, double tol = kDefaultTol,
                       double zero_tol = kDefaultZeroTol);

/// Split pentadiagonal P is ID iff both of its tridiagonal blocks are.
IdVerdict id_check_pentadiagonal(const BandSymMatrix<double>& p, double tol = kDefaultTol,
                                 double zero_tol = kDefaultZeroTol);
bool is_id_pentadiagonal(const BandSymMatrix<double>& p, double tol = kDefaultTol,
                         double zero_tol = kDefaultZeroTol);

/// Block-diagonal decomposition of an ID tridiagonal matrix; every block has order 1 or 2.
std::vector<BandSymMatrix<double>> id_blocks(const BandSymMatrix<double>& t, double tol = kDefaultTol,
                                             double zero_tol = kDefaultZeroTol);

const std::vector<double>& default_id_grid();

/// Necessary-condition sampler for infinite divisibility: A^{∘r} is not
/// INDEFINITE for every r in the grid. Never a proof of ID.
bool id_numeric_probe(const Eigen::MatrixXd& a, const std::vector<double>& r_grid = default_id_grid(),
                      double tol = kDefaultTol);

enum class PolynomialMode { Ordinary, Hadamard };

/// sum_k c_k T^k (Ordinary) or sum_k c_k T^{∘k} (Hadamard), with T^0 = T^{∘0} = I.
Eigen::MatrixXd polynomial_apply(const Eigen::MatrixXd& t, const std::vector<double>& coeffs,
                                 PolynomialMode mode);

}  // namespace bandpos
