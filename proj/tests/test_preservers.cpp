#include "bandpos/chain_sequence.hpp"
#include "bandpos/preservers.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace bandpos;

namespace {

const BandSymMatrix<double> kP = make_pentadiagonal({1.0, 2.0, 2.0, 1.0, 1.0}, {1.0, 1.0, 1.0});

Eigen::MatrixXd cauchy3() {
  Eigen::MatrixXd c(3, 3);
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j) c(i, j) = 1.0 / static_cast<double>(i + j + 2);
  return c;
}

BandSymMatrix<double> random_id_tridiagonal(std::mt19937_64& rng, Index n) {
  std::vector<double> d(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n - 1), 0.0);
  for (auto& x : d) x = oracle::uniform(rng, 0.1, 3.0);
  for (std::size_t j = 0; j < b.size(); ++j) {
    if ((j > 0 && b[j - 1] != 0.0) || !oracle::coin(rng, 0.6)) continue;
    b[j] = std::sqrt(d[j] * d[j + 1]) * oracle::uniform(rng, 0.0, 1.0);
  }
  return make_tridiagonal(d, b);
}

}  // namespace

TEST(PreserverSets, Tridiagonal) {
  EXPECT_EQ(tridiag_preserver_set(3), PowerSet::tail(1.0));
  EXPECT_EQ(tridiag_preserver_set(10), PowerSet::tail(1.0));
  EXPECT_THROW(tridiag_preserver_set(2), std::invalid_argument);
}

TEST(PreserverSets, Pentadiagonal) {
  EXPECT_EQ(penta_preserver_set(3), PowerSet::tail(0.0));
  EXPECT_EQ(penta_preserver_set(4), PowerSet::tail(0.0));
  EXPECT_EQ(penta_preserver_set(5), PowerSet::tail(1.0));
  EXPECT_EQ(penta_preserver_set(9), PowerSet::tail(1.0));
  EXPECT_THROW(penta_preserver_set(2), std::invalid_argument);
  EXPECT_TRUE(penta_preserver_set(4).contains(0.0));
  EXPECT_FALSE(penta_preserver_set(5).contains(0.5));
}

TEST(PreserverSets, ZeroPowerOfSmallPentadiagonalIsPsd) {
  // Under 0^0 := 1 the r = 0 power of an n = 3, 4 split pentadiagonal matrix
  // has all-ones blocks of order <= 2, hence is PSD.
  const auto p = make_pentadiagonal({1.0, 2.0, 3.0, 4.0}, {0.5, 0.5});
  const auto split = conjugate_by_permutation(hadamard_power(p.to_dense(), 0.0), even_odd_permutation(4));
  EXPECT_EQ(split, Eigen::MatrixXd::Ones(4, 4));  // fills entirely: 0^0 := 1 also acts off the band
  EXPECT_TRUE(classify_positivity(hadamard_power(p.to_dense(), 0.0)).is_psd());
}

TEST(CounterexampleTridiagonal, HalfPower) {
  const auto a = counterexample_tridiagonal(0.5);
  EXPECT_DOUBLE_EQ(counterexample_epsilon(0.5), 1.0);
  EXPECT_EQ(a, make_tridiagonal({1.0, 3.0, 1.0}, {1.0, 1.0}));
  EXPECT_TRUE(classify_positivity(a).is_pd());
  const auto h = hadamard_power(a, 0.5);
  EXPECT_EQ(classify_positivity(h).definiteness, Definiteness::Indefinite);
  EXPECT_NEAR(oracle::leibniz_det<double>(h.to_dense()), std::sqrt(3.0) - 2.0, 1e-15);
}

TEST(CounterexampleTridiagonal, NearOne) {
  const double eps = counterexample_epsilon(0.99);
  EXPECT_NEAR(eps, (std::pow(2.0, 1.0 / 0.99) - 2.0) / 2.0, 1e-16);
  EXPECT_NEAR(eps, 0.0071, 1e-4);
  EXPECT_LT(determinant(hadamard_power(counterexample_tridiagonal(0.99).to_dense(), 0.99)), 0.0);
  EXPECT_THROW(counterexample_tridiagonal(1.0), std::domain_error);
  EXPECT_THROW(counterexample_tridiagonal(0.0), std::domain_error);
}

TEST(CounterexampleTridiagonalProperty, WindowMidpointAlwaysWorks) {
  for (int i = 1; i < 100; ++i) {
    const double r = i / 100.0;
    const auto a = counterexample_tridiagonal(r);
    const double eps = counterexample_epsilon(r);
    EXPECT_GT(eps, 0.0);
    EXPECT_LT(eps, std::pow(2.0, 1.0 / r) - 2.0);
    EXPECT_TRUE(wall_wetzel_pd(a.cast<Rational>())) << r;
    // For eps beyond ~1e10 the relative threshold tol * (2 + eps) exceeds lambda_min ~ 1.
    if (oracle::jacobi_min_eigenvalue(a.to_dense()) > kDefaultTol * (2.0 + eps))
      EXPECT_TRUE(classify_positivity(a).is_pd()) << r;
    else
      EXPECT_EQ(classify_positivity(a).definiteness, Definiteness::PsdBoundary) << r;
    EXPECT_EQ(classify_positivity(hadamard_power(a, r)).definiteness, Definiteness::Indefinite) << r;
  }
}

TEST(CounterexamplePentadiagonal, Determinants) {
  EXPECT_EQ(counterexample_pentadiagonal(0.5), kP);
  EXPECT_NEAR(determinant(hadamard_power(kP.to_dense(), 0.5)), 4.0 - 3.0 * std::sqrt(2.0), 1e-14);
  const double q = determinant(hadamard_power(kP.to_dense(), 0.25));
  EXPECT_NEAR(q, 2.0 - 3.0 * std::pow(2.0, 0.25) + std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(q, -0.153407783, 1e-9);
  EXPECT_EQ(classify_positivity(hadamard_power(kP, 0.25)).definiteness, Definiteness::Indefinite);
  EXPECT_THROW(counterexample_pentadiagonal(1.0), std::domain_error);
  EXPECT_EQ(determinant(kP.to_dense()), 0.0);
  EXPECT_EQ(classify_positivity(kP).definiteness, Definiteness::PsdBoundary);
}

TEST(GoldenDeterminants, CounterexampleFamilies) {
  for (double eps : {0.01, 0.1, 1.0, 10.0}) {
    const auto a = make_tridiagonal({1.0, 2.0 + eps, 1.0}, {1.0, 1.0});
    for (double r : {0.1, 0.5, 0.9, 1.0, 2.0, 3.7}) {
      const double expected = std::pow(2.0 + eps, r) - 2.0;
      EXPECT_NEAR(determinant(hadamard_power(a.to_dense(), r)), expected, 1e-12 * std::abs(expected));
    }
  }
  for (double r : {0.1, 0.5, 0.9, 1.0, 2.0, 3.7}) {
    const double expected = 2.0 - 3.0 * std::pow(2.0, r) + std::pow(4.0, r);
    const double got = determinant(hadamard_power(kP.to_dense(), r));
    if (r == 1.0)
      EXPECT_NEAR(got, 0.0, 1e-12);
    else
      EXPECT_NEAR(got, expected, 1e-12 * std::abs(expected));
  }
}

TEST(ProbePreserves, NoFalsificationAboveOne) {
  const auto report = probe_preserves(1.5, 500, 42, kDefaultTol, ProbeOptions{});
  EXPECT_EQ(report.samples, 500);
  EXPECT_EQ(report.violations, 0);
  EXPECT_GE(report.min_over_samples, -kDefaultTol);
  EXPECT_FALSE(report.falsified());
}

TEST(ProbePreserves, InjectedCounterexampleIsWorst) {
  ProbeOptions options;
  options.min_order = 1;
  options.max_order = 1;  // 1x1 samples cannot fail
  const auto a = counterexample_tridiagonal(0.5);
  options.injected.push_back(a.to_dense());
  const auto report = probe_preserves(0.5, 20, 3, kDefaultTol, options);
  EXPECT_LT(report.min_over_samples, 0.0);
  EXPECT_EQ(report.worst_index, 20);
  EXPECT_EQ(report.worst_case, a.to_dense());
  EXPECT_EQ(report.violations, 1);
}

TEST(ProbePreserves, Errors) {
  EXPECT_THROW(probe_preserves(1.5, 0, 1, kDefaultTol, ProbeOptions{}), std::invalid_argument);
  EXPECT_THROW(probe_preserves(-1.0, 10, 1, kDefaultTol, ProbeOptions{}), std::domain_error);
  ProbeOptions graph;
  graph.family = ProbeFamily::GraphPattern;
  EXPECT_THROW(probe_preserves(1.5, 10, 1, kDefaultTol, graph), std::invalid_argument);
  EXPECT_THROW(parse_probe_family("heptadiagonal"), std::invalid_argument);
  EXPECT_EQ(parse_probe_family("graph"), ProbeFamily::GraphPattern);
}

TEST(ProbePreserves, ReproducibleAcrossWorkerCounts) {
  ProbeOptions one;
  one.family = ProbeFamily::Pentadiagonal;
  one.min_order = 5;
  one.max_order = 8;
  one.include_boundary = true;
  one.workers = 1;
  ProbeOptions many = one;
  many.workers = 4;
  const auto a = probe_preserves(2.0, 60, 7, kDefaultTol, one);
  const auto b = probe_preserves(2.0, 60, 7, kDefaultTol, many);
  const auto c = probe_preserves(2.0, 60, 7, kDefaultTol, one);
  EXPECT_EQ(a.min_over_samples, b.min_over_samples);
  EXPECT_EQ(a.worst_index, b.worst_index);
  EXPECT_EQ(a.worst_case, b.worst_case);
  EXPECT_EQ(a.min_over_samples, c.min_over_samples);
  EXPECT_NE(probe_preserves(2.0, 60, 8, kDefaultTol, one).min_over_samples, a.min_over_samples);
}

TEST(ProbeProperty, ForwardDirectionsHold) {
  for (double r : {1.0, 1.3, 2.0, std::numbers::e, 5.0}) {
    EXPECT_EQ(probe_preserves(r, 200, 11, kDefaultTol, ProbeOptions{}).violations, 0) << r;
    ProbeOptions penta;
    penta.family = ProbeFamily::Pentadiagonal;
    penta.min_order = 5;
    penta.max_order = 8;
    penta.include_boundary = true;
    EXPECT_EQ(probe_preserves(r, 200, 12, kDefaultTol, penta).violations, 0) << r;
  }
}

TEST(RandomGenerators, SamplesArePdWithRightShape) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = oracle::uniform_int(rng, 1, 12);
    const auto t = random_pd_tridiagonal(rng, n);
    EXPECT_EQ(t.order(), n);
    EXPECT_GT(oracle::jacobi_min_eigenvalue(t.to_dense()), 0.0);
    EXPECT_TRUE((t.off_diagonal(1).array() >= 0.0).all());
    const auto p = random_pd_pentadiagonal(rng, std::max<Index>(n, 3));
    EXPECT_TRUE(p.is_split_pentadiagonal());
    EXPECT_GT(oracle::jacobi_min_eigenvalue(p.to_dense()), 0.0);
    const auto g = oracle::random_graph(rng, n, 0.4);
    const auto a = random_pd_pattern(rng, g);
    EXPECT_TRUE(pattern_check(a, g));
    EXPECT_TRUE((a.array() >= 0.0).all());
    EXPECT_GT(oracle::jacobi_min_eigenvalue(a), 0.0);
  }
}

TEST(PatternPowerProperty, PatternPowersStayStrictlyPd) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = oracle::uniform_int(rng, 3, 10);
    const auto g = trial % 2 ? path_graph(n) : penta_support_graph(n);
    const auto a = random_pd_pattern(rng, g);
    for (double r : {1.0, 1.5, 2.0}) {
      const auto v = classify_positivity(hadamard_power(a, r));
      EXPECT_TRUE(v.is_pd()) << "trial " << trial << " r " << r << " lambda " << v.min_eigenvalue;
    }
  }
}

TEST(IdTridiagonal, Examples) {
  const auto v = id_check_tridiagonal(make_tridiagonal({1.0, 2.0, 1.0}, {1.0, 1.0}));
  EXPECT_FALSE(v.is_id);
  EXPECT_EQ(v.offending_index, std::optional<Index>(0));
  EXPECT_TRUE(is_id_tridiagonal(make_tridiagonal({1.0, 2.0, 3.0}, {0.0, 0.0})));
  EXPECT_TRUE(is_id_tridiagonal(make_tridiagonal({1.0, 1.0, 5.0}, {1.0, 0.0})));
  EXPECT_TRUE(id_numeric_probe(make_tridiagonal({1.0, 1.0, 5.0}, {1.0, 0.0}).to_dense()));
  // Right pattern but not PSD.
  const auto np = id_check_tridiagonal(make_tridiagonal({1.0, 1.0, 5.0}, {2.0, 0.0}));
  EXPECT_FALSE(np.is_id);
  EXPECT_EQ(np.reason, "not PSD");
  EXPECT_THROW(is_id_tridiagonal(make_tridiagonal({1.0, 1.0}, {-0.5})), std::domain_error);
  EXPECT_THROW(is_id_tridiagonal(kP), std::invalid_argument);
}

TEST(IdTridiagonal, ZeroToleranceIsAbsolute) {
  EXPECT_TRUE(is_id_tridiagonal(make_tridiagonal({1.0, 2.0, 1.0}, {1.0, 1e-13})));
  EXPECT_FALSE(is_id_tridiagonal(make_tridiagonal({1.0, 2.0, 1.0}, {1.0, 1e-11})));
}

TEST(IdPentadiagonal, Examples) {
  const auto v = id_check_pentadiagonal(kP);
  EXPECT_FALSE(v.is_id);
  EXPECT_EQ(v.block, std::optional<int>(0));
  EXPECT_EQ(v.offending_index, std::optional<Index>(0));
  EXPECT_TRUE(is_id_pentadiagonal(make_pentadiagonal({1.0, 2.0, 3.0, 4.0, 5.0}, {0.0, 0.0, 0.0})));
  EXPECT_THROW(is_id_pentadiagonal(make_tridiagonal({1.0, 1.0}, {1.0})), std::invalid_argument);
}

TEST(IdPentadiagonalProperty, OrderFourIdIffPsd) {
  std::mt19937_64 rng(40);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> d, y;
    for (int i = 0; i < 4; ++i) d.push_back(oracle::uniform(rng, 0.0, 2.0));
    for (int i = 0; i < 2; ++i) y.push_back(oracle::uniform(rng, 0.0, 2.0));
    const auto p = make_pentadiagonal(d, y);
    const auto v = classify_positivity(p);
    if (std::abs(v.min_eigenvalue) <= 10.0 * v.threshold) continue;
    EXPECT_EQ(is_id_pentadiagonal(p), v.is_psd());
  }
}

TEST(IdBlocks, Examples) {
  const auto blocks = id_blocks(make_tridiagonal({1.0, 1.0, 5.0}, {1.0, 0.0}));
  ASSERT_EQ(blocks.size(), 2u);
  EXPECT_EQ(blocks[0].to_dense(), Eigen::MatrixXd::Ones(2, 2));
  EXPECT_EQ(blocks[1].to_dense(), Eigen::MatrixXd::Constant(1, 1, 5.0));
  const auto diag = id_blocks(make_tridiagonal({1.0, 2.0}, {0.0}));
  ASSERT_EQ(diag.size(), 2u);
  EXPECT_EQ(diag[1].diagonal()(0), 2.0);
  EXPECT_THROW(id_blocks(make_tridiagonal({1.0, 2.0, 1.0}, {1.0, 1.0})), std::invalid_argument);
}

TEST(IdBlocksProperty, BlocksHaveOrderAtMostTwo) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const auto t = random_id_tridiagonal(rng, oracle::uniform_int(rng, 1, 10));
    ASSERT_TRUE(is_id_tridiagonal(t));
    std::vector<Eigen::MatrixXd> dense;
    for (const auto& b : id_blocks(t)) {
      EXPECT_LE(b.order(), 2);
      EXPECT_TRUE(classify_positivity(b).is_psd());
      dense.push_back(b.to_dense());
    }
    EXPECT_EQ(block_diagonal(dense), t.to_dense());
  }
}

TEST(IdNumericProbe, Examples) {
  EXPECT_TRUE(id_numeric_probe(cauchy3()));
  const Eigen::MatrixXd c2 = cauchy3() * cauchy3();
  EXPECT_FALSE(id_numeric_probe(c2, {0.25}));
  EXPECT_LT(determinant(hadamard_power(c2, 0.25)), 0.0);
  EXPECT_FALSE(id_numeric_probe(make_tridiagonal({1.0, 2.0, 1.0}, {1.0, 1.0}).to_dense()));
  EXPECT_THROW(id_numeric_probe(cauchy3(), {0.5, 0.0}), std::domain_error);
  EXPECT_THROW(id_numeric_probe(-cauchy3()), std::domain_error);
}

TEST(IdCriterionProperty, ExhaustivePatternsAgreeWithProbe) {
  std::mt19937_64 rng(7);
  for (unsigned mask = 0; mask < 16; ++mask) {
    for (int rep = 0; rep < 5; ++rep) {
      std::vector<double> b(4, 0.0), d(5, 0.0);
      for (int j = 0; j < 4; ++j)
        if (mask >> j & 1u) b[static_cast<std::size_t>(j)] = oracle::uniform(rng, 0.5, 1.5);
      for (int i = 0; i < 5; ++i) {
        const double left = i > 0 ? b[static_cast<std::size_t>(i - 1)] : 0.0;
        const double right = i < 4 ? b[static_cast<std::size_t>(i)] : 0.0;
        d[static_cast<std::size_t>(i)] = left + right + oracle::uniform(rng, 0.01, 0.5);
      }
      const auto t = make_tridiagonal(d, b);
      bool criterion = true;
      for (int j = 0; j < 3; ++j)
        if (b[static_cast<std::size_t>(j)] != 0.0 && b[static_cast<std::size_t>(j + 1)] != 0.0) criterion = false;
      EXPECT_EQ(is_id_tridiagonal(t), criterion) << "mask " << mask;
      EXPECT_EQ(id_numeric_probe(t.to_dense()), criterion) << "mask " << mask;
    }
  }
}

TEST(PolynomialApply, Examples) {
  const auto t = make_tridiagonal({1.0, 1.0, 5.0}, {1.0, 0.0}).to_dense();
  for (auto mode : {PolynomialMode::Ordinary, PolynomialMode::Hadamard}) {
    EXPECT_EQ(polynomial_apply(t, {0.0, 1.0}, mode), t);
    EXPECT_EQ(polynomial_apply(t, {1.0, 0.0}, mode), Eigen::MatrixXd::Identity(3, 3));
  }
  const auto f = polynomial_apply(t, {1.0, 2.0, 1.0}, PolynomialMode::Ordinary);
  const Eigen::MatrixXd expected = Eigen::MatrixXd::Identity(3, 3) + 2.0 * t + t * t;
  EXPECT_TRUE(f.isApprox(expected, 1e-15));
  EXPECT_EQ(f(0, 2), 0.0);
  EXPECT_TRUE(id_numeric_probe(f));
  EXPECT_THROW(polynomial_apply(t, {1.0, -1.0}, PolynomialMode::Hadamard), std::domain_error);
  EXPECT_THROW(polynomial_apply(t, {}, PolynomialMode::Hadamard), std::invalid_argument);
}

TEST(PolynomialApplyProperty, IdClosure) {
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = random_id_tridiagonal(rng, oracle::uniform_int(rng, 2, 8));
    std::vector<double> coeffs(static_cast<std::size_t>(oracle::uniform_int(rng, 1, 5)));
    for (auto& c : coeffs) c = oracle::coin(rng, 0.2) ? 0.0 : oracle::uniform(rng, 0.0, 2.0);
    for (auto mode : {PolynomialMode::Ordinary, PolynomialMode::Hadamard}) {
      const auto f = polynomial_apply(t.to_dense(), coeffs, mode);
      EXPECT_TRUE(id_numeric_probe(f)) << "trial " << trial;
    }
  }
}
