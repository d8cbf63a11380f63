// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include "bandpos/chain_sequence.hpp"
#include "bandpos/graph.hpp"
#include "bandpos/preservers.hpp"
#include "oracles.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

using namespace bandpos;

namespace {

const std::vector<double> kExponents = {0.1, 0.5, 0.9, 1.0, 2.0, 3.7};

bool rel_close(double got, double expected, double rel) {
  return std::abs(got - expected) <= rel * std::abs(expected);
}

bool golden_tridiagonal(std::ostream& why) {
  for (double eps : {0.01, 0.1, 1.0, 10.0}) {
    const auto a = make_tridiagonal({1.0, 2.0 + eps, 1.0}, {1.0, 1.0});
    for (double r : kExponents) {
      const double expected = std::pow(2.0 + eps, r) - 2.0;
      const double got = determinant(hadamard_power(a.to_dense(), r));
      if (!rel_close(got, expected, 1e-12)) {
        why << "eps " << eps << " r " << r << ": " << got << " vs " << expected;
        return false;
      }
    }
  }
  return true;
}

bool golden_pentadiagonal(std::ostream& why) {
  const auto p = boundary_pentadiagonal().to_dense();
  for (double r : kExponents) {
    const double expected = 2.0 - 3.0 * std::pow(2.0, r) + std::pow(4.0, r);
    const double got = determinant(hadamard_power(p, r));
    const bool ok = r == 1.0 ? std::abs(got) <= 1e-12 : rel_close(got, expected, 1e-12);
    if (!ok) {
      why << "r " << r << ": " << got << " vs " << expected;
      return false;
    }
  }
  for (int k = 1; k <= 9; ++k) {
    const double r = k / 10.0;
    if (!(determinant(hadamard_power(p, r)) < 0.0)) {
      why << "det not negative at r " << r;
      return false;
    }
  }
  return true;
}

bool wall_wetzel_agreement(std::ostream& why) {
  std::mt19937_64 rng(3003);
  int decisive = 0, pd = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Index n = oracle::uniform_int(rng, 1, 10);
    std::vector<double> d(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n - 1));
    for (auto& x : d) x = oracle::uniform(rng, 0.05, 2.0);
    for (auto& x : b) x = oracle::coin(rng, 0.15) ? 0.0 : oracle::uniform(rng, 0.0, 1.2);
    const auto t = make_tridiagonal(d, b);
    const double lambda = oracle::jacobi_min_eigenvalue(t.to_dense());
    if (std::abs(lambda) <= 10.0 * kDefaultTol) continue;
    ++decisive;
    pd += lambda > 0.0 ? 1 : 0;
    if (wall_wetzel_pd(t) != (lambda > 0.0)) {
      why << "trial " << trial << " lambda " << lambda;
      return false;
    }
  }
  why << decisive << " decisive cases, " << pd << " PD";
  return pd > 0 && pd < decisive;
}

bool probe_family(ProbeOptions options, std::uint64_t seed, std::ostream& why) {
  for (double r : {1.0, 1.3, 2.0, std::numbers::e, 5.0}) {
    const auto report = probe_preserves(r, 500, seed, kDefaultTol, options);
    if (report.violations != 0) {
      why << "r " << r << ": " << report.violations << " violation(s), min " << report.min_over_samples;
      return false;
    }
  }
  return true;
}

bool tridiagonal_forward(std::ostream& why) {
  ProbeOptions options;
  options.min_order = 3;
  options.max_order = 12;
  return probe_family(options, 404, why);
}

Eigen::VectorXd sorted_eigenvalues(const Eigen::MatrixXd& a) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a, Eigen::EigenvaluesOnly).eigenvalues();
}

bool pentadiagonal_forward(std::ostream& why) {
  ProbeOptions options;
  options.family = ProbeFamily::Pentadiagonal;
  options.min_order = 5;
  options.max_order = 8;
  if (!probe_family(options, 505, why)) return false;

  std::mt19937_64 rng(5005);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = oracle::uniform_int(rng, 5, 8);
    const auto p = random_pd_pentadiagonal(rng, n);
    const auto m = conjugate_by_permutation(p.to_dense(), even_odd_permutation(n));
    const auto [odd, even] = split_pentadiagonal(p);
    std::vector<double> blocks = sym_tridiag_eigenvalues(odd, 1e-15);
    const auto e = sym_tridiag_eigenvalues(even, 1e-15);
    blocks.insert(blocks.end(), e.begin(), e.end());
    std::sort(blocks.begin(), blocks.end());
    const Eigen::VectorXd lp = sorted_eigenvalues(p.to_dense());
    const Eigen::VectorXd lm = sorted_eigenvalues(m);
    for (Index k = 0; k < n; ++k) {
      const double scale = std::max(1.0, max_norm(p));
      if (std::abs(lp(k) - lm(k)) > 1e-12 * scale ||
          std::abs(lp(k) - blocks[static_cast<std::size_t>(k)]) > 1e-12 * scale) {
        why << "split spectrum mismatch, trial " << trial;
        return false;
      }
    }
  }
  return true;
}

bool pattern_strictness(std::ostream& why) {
  std::mt19937_64 rng(606);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = oracle::uniform_int(rng, 3, 10);
    const auto g = trial % 2 ? path_graph(n) : penta_support_graph(n);
    const auto a = random_pd_pattern(rng, g);
    for (double r : {1.0, 1.5, 2.0}) {
      const auto powered = hadamard_power(a, r);
      if (!classify_positivity(powered).is_pd() || !(oracle::jacobi_min_eigenvalue(powered) > kDefaultTol)) {
        why << "trial " << trial << " r " << r;
        return false;
      }
    }
  }
  return true;
}

// Diagonally dominant, so every pattern is PD and only the off-diagonal criterion decides.
BandSymMatrix<double> dominant_tridiagonal(std::mt19937_64& rng, const std::vector<double>& b) {
  std::vector<double> d(b.size() + 1);
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double left = i > 0 ? b[i - 1] : 0.0;
    const double right = i < b.size() ? b[i] : 0.0;
    d[i] = left + right + oracle::uniform(rng, 0.01, 0.5);
  }
  return make_tridiagonal(d, b);
}

bool no_consecutive(const std::vector<double>& b, std::size_t stride) {
  for (std::size_t j = 0; j + stride < b.size(); ++j)
    if (b[j] != 0.0 && b[j + stride] != 0.0) return false;
  return true;
}

bool id_characterization(std::ostream& why) {
  std::mt19937_64 rng(707);
  for (unsigned mask = 0; mask < 16; ++mask) {
    std::vector<double> b(4, 0.0);
    for (std::size_t j = 0; j < 4; ++j)
      if (mask >> j & 1u) b[j] = oracle::uniform(rng, 0.5, 1.5);
    const auto t = dominant_tridiagonal(rng, b);
    const bool criterion = no_consecutive(b, 1);
    if (is_id_tridiagonal(t) != criterion || id_numeric_probe(t.to_dense()) != criterion) {
      why << "tridiagonal pattern " << mask;
      return false;
    }
  }
  for (Index n : {5, 6, 7}) {
    const auto m = static_cast<std::size_t>(n - 2);
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      std::vector<double> c(m, 0.0);
      for (std::size_t j = 0; j < m; ++j)
        if (mask >> j & 1u) c[j] = oracle::uniform(rng, 0.5, 1.5);
      std::vector<double> d(static_cast<std::size_t>(n));
      for (std::size_t i = 0; i < d.size(); ++i) {
        const double left = i >= 2 ? c[i - 2] : 0.0;
        const double right = i < m ? c[i] : 0.0;
        d[i] = left + right + oracle::uniform(rng, 0.01, 0.5);
      }
      const auto p = make_pentadiagonal(d, c);
      const auto [odd, even] = split_pentadiagonal(p);
      const bool criterion = no_consecutive(c, 2);
      const bool via_split = is_id_tridiagonal(odd) && is_id_tridiagonal(even);
      if (is_id_pentadiagonal(p) != criterion || via_split != criterion ||
          id_numeric_probe(p.to_dense()) != criterion) {
        why << "pentadiagonal n " << n << " pattern " << mask;
        return false;
      }
    }
  }
  return true;
}

SimpleGraph from_edges(Index n, const std::vector<std::pair<Index, Index>>& edges) {
  SimpleGraph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

bool critical_exponents(std::ostream& why) {
  for (Index n = 3; n <= 8; ++n) {
    const auto got = chordal_critical_exponent(complete_graph(n));
    if (!(got == PowerSet::naturals_and_tail(static_cast<double>(n - 2)))) {
      why << "K" << n << " gave " << got.to_string();
      return false;
    }
  }
  if (!(chordal_critical_exponent(path_graph(3)) == PowerSet::tail(1.0))) {
    why << "P3";
    return false;
  }
  const auto k4e = from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
  if (!(chordal_critical_exponent(k4e) == PowerSet::naturals_and_tail(2.0))) {
    why << "K4 minus an edge";
    return false;
  }
  const auto c4 = from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  const auto cert = is_chordal(c4);
  if (cert.is_chordal || cert.witness_cycle.size() < 4 || !is_chordless_cycle(c4, cert.witness_cycle)) {
    why << "C4 witness";
    return false;
  }
  try {
    chordal_critical_exponent(c4);
    why << "C4 not refused";
    return false;
  } catch (const std::invalid_argument&) {
  }
  return true;
}

bool dominated_chains(std::ostream& why) {
  std::mt19937_64 rng(909);
  for (int trial = 0; trial < 500; ++trial) {
    const auto n = static_cast<std::size_t>(oracle::uniform_int(rng, 1, 12));
    std::vector<Rational> g(n + 1);
    g[0] = Rational(oracle::uniform(rng, 0.0, 0.99));
    for (std::size_t k = 1; k <= n; ++k) g[k] = Rational(oracle::uniform(rng, 0.01, 0.99));
    const auto a = chain_from_parameters(g);
    std::vector<Rational> c(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) c[k] = a[k] * Rational(oracle::uniform(rng, 0.0, 1.0));
    if (!is_chain_sequence(a) || !comparison_dominates(c, a) || !is_chain_sequence(c)) {
      why << "comparison, trial " << trial;
      return false;
    }
    std::vector<double> ad(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) ad[k] = a[k].get_d();
    if (std::all_of(ad.begin(), ad.end(), [](double x) { return x < 1.0; })) {
      for (double r : {1.2, 2.0, std::numbers::e}) {
        std::vector<double> p(ad.size());
        for (std::size_t k = 0; k < ad.size(); ++k) p[k] = std::pow(ad[k], r);
        if (!is_chain_sequence(p)) {
          why << "power " << r << ", trial " << trial;
          return false;
        }
      }
    }
  }
  return true;
}

bool cauchy_vectors(std::ostream& why) {
  Eigen::MatrixXd c(3, 3);
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j) c(i, j) = 1.0 / static_cast<double>(i + j + 2);
  if (!id_numeric_probe(c)) {
    why << "Cauchy matrix fails the grid";
    return false;
  }
  const Eigen::MatrixXd sq = c * c;
  const double det = determinant(hadamard_power(sq, 0.25));
  why << "det of quarter power of the square " << det;
  return !id_numeric_probe(sq, {0.25}) && det < 0.0;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<bool(std::ostream&)>>> criteria = {
      {"tridiagonal counterexample determinants", golden_tridiagonal},
      {"pentadiagonal boundary determinants", golden_pentadiagonal},
      {"chain-sequence test agrees with eigenvalue oracle", wall_wetzel_agreement},
      {"tridiagonal powers r >= 1 stay PSD", tridiagonal_forward},
      {"pentadiagonal powers r >= 1 stay PSD; split spectra agree", pentadiagonal_forward},
      {"pattern powers stay strictly PD", pattern_strictness},
      {"ID characterization", id_characterization},
      {"chordal critical exponents", critical_exponents},
      {"dominated sequences and powers of chains stay chains", dominated_chains},
      {"Cauchy matrix and its square", cauchy_vectors},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::ostringstream why;
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = criteria[i].second(why);
    } catch (const std::exception& e) {
      why << "exception: " << e.what();
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    std::cout << (ok ? "PASS " : "FAIL ") << i + 1 << ". " << criteria[i].first;
    if (!why.str().empty()) std::cout << " (" << why.str() << ")";
    std::cout << " [" << std::fixed << std::setprecision(2) << elapsed.count() << "s]" << std::defaultfloat
              << '\n';
    failures += ok ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
