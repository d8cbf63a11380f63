#pragma once

#include "bandpos/band_matrix.hpp"
#include "bandpos/rational.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace bandpos {

/// Outcome of the finite chain-sequence test.
///
/// A finite sequence a_1..a_N is a chain sequence iff the minimal parameter
/// recursion m_0 = 0, m_k = a_k / (1 - m_{k-1}) stays strictly inside (0, 1).
template <typename Scalar>
struct ChainReport {
  bool is_chain = false;
  /// m_1..m_k up to (and including) the failing step.
  std::vector<Scalar> minimal_params;
  /// 0-based position of the first a_k <= 0 or m_k >= 1.
  std::optional<Index> failure_index;
  bool exact_mode = std::is_same_v<Scalar, Rational>;
  /// Floating mode only: the failing m_k was within 1e-12 of 1.
  bool boundary_indeterminate = false;
};

inline constexpr double kChainBoundaryBand = 1e-12;

template <typename Scalar>
ChainReport<Scalar> minimal_parameters(std::span<const Scalar> a) {
  if (a.empty()) throw std::invalid_argument("chain-sequence test needs at least one term");
  ChainReport<Scalar> report;
  Scalar previous(0);
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!(a[k] > Scalar(0))) {
      report.failure_index = static_cast<Index>(k);
      return report;
    }
    Scalar m = a[k] / (Scalar(1) - previous);
    report.minimal_params.push_back(m);
    if constexpr (std::is_floating_point_v<Scalar>) {
      if (!std::isfinite(m) || std::abs(m - 1.0) <= kChainBoundaryBand || m >= 1.0) {
        report.boundary_indeterminate = std::isfinite(m) && std::abs(m - 1.0) <= kChainBoundaryBand;
        report.failure_index = static_cast<Index>(k);
        return report;
      }
    } else {
      if (m >= Scalar(1)) {
        report.failure_index = static_cast<Index>(k);
        return report;
      }
    }
    previous = m;
  }
  report.is_chain = true;
  return report;
}

template <typename Scalar>
ChainReport<Scalar> minimal_parameters(const std::vector<Scalar>& a) {
  return minimal_parameters(std::span<const Scalar>(a));
}

template <typename Scalar>
bool is_chain_sequence(const std::vector<Scalar>& a) {
  return minimal_parameters(a).is_chain;
}

/// Domination hypothesis: 0 < c_k <= a_k for every k.
template <typename Scalar>
bool comparison_dominates(const std::vector<Scalar>& c, const std::vector<Scalar>& a) {
  if (c.size() != a.size()) throw std::invalid_argument("comparison needs sequences of equal length");
  for (std::size_t k = 0; k < c.size(); ++k)
    if (!(c[k] > Scalar(0)) || !(c[k] <= a[k])) return false;
  return true;
}

/// a_k = (1 - g_{k-1}) g_k for k = 1..N from parameters g_0..g_N with
/// 0 <= g_0 < 1 and 0 < g_k < 1.
template <typename Scalar>
std::vector<Scalar> chain_from_parameters(const std::vector<Scalar>& g) {
  if (g.size() < 2) throw std::invalid_argument("need parameters g_0..g_N with N >= 1");
  if (!(g[0] >= Scalar(0)) || !(g[0] < Scalar(1))) throw std::invalid_argument("g_0 must lie in [0, 1)");
  std::vector<Scalar> a;
  a.reserve(g.size() - 1);
  for (std::size_t k = 1; k < g.size(); ++k) {
    if (!(g[k] > Scalar(0)) || !(g[k] < Scalar(1))) throw std::invalid_argument("g_k must lie in (0, 1)");
    a.push_back((Scalar(1) - g[k - 1]) * g[k]);
  }
  return a;
}

/// b_j^2 / (a_j a_{j+1}), j = 1..n-1. Requires every a_i > 0.
template <typename Scalar>
std::vector<Scalar> tridiag_ratio_sequence(const BandSymMatrix<Scalar>& t) {
  if (t.bandwidth() != 1) throw std::invalid_argument("ratio sequence needs a tridiagonal matrix");
  const auto& a = t.diagonal();
  const auto& b = t.off_diagonal(1);
  for (Index i = 0; i < a.size(); ++i)
    if (!(a(i) > Scalar(0)))
      throw std::domain_error("ratio sequence needs positive diagonal; entry " + std::to_string(i + 1) +
                              " is not");
  std::vector<Scalar> ratios;
  ratios.reserve(static_cast<std::size_t>(b.size()));
  for (Index j = 0; j < b.size(); ++j) ratios.push_back(b(j) * b(j) / (a(j) * a(j + 1)));
  return ratios;
}

namespace detail {
template <typename Scalar>
bool is_negligible(const Scalar& x, double zero_tol) {
  if constexpr (std::is_floating_point_v<Scalar>) {
    return std::abs(x) <= zero_tol;
  } else {
    return abs(x) <= Scalar(zero_tol);
  }
}
}  // namespace detail

/// Maximal irreducible diagonal blocks of T, cutting wherever |b_j| <= zero_tol.
template <typename Scalar>
std::vector<BandSymMatrix<Scalar>> split_at_zero_offdiag(const BandSymMatrix<Scalar>& t,
                                                         double zero_tol = 0.0) {
  if (t.bandwidth() != 1) throw std::invalid_argument("split_at_zero_offdiag needs a tridiagonal matrix");
  const auto& a = t.diagonal();
  const auto& b = t.off_diagonal(1);
  std::vector<BandSymMatrix<Scalar>> blocks;
  Index start = 0;
  for (Index j = 0; j <= b.size(); ++j) {
    if (j < b.size() && !detail::is_negligible(b(j), zero_tol)) continue;
    const Index len = j - start + 1;
    blocks.emplace_back(a.segment(start, len), std::vector<Vector<Scalar>>{b.segment(start, len - 1)});
    start = j + 1;
  }
  return blocks;
}

template <typename Scalar>
struct WallWetzelBlock {
  Index first = 0;  // 0-based row of the block in T
  Index order = 0;
  bool pd = false;
  /// Chain report of the block's ratio sequence, when the ratio test applied.
  std::optional<ChainReport<Scalar>> chain;
  std::string note;
};

template <typename Scalar>
struct WallWetzelReport {
  bool pd = false;
  std::vector<WallWetzelBlock<Scalar>> blocks;
};

/// PD test for tridiagonal T through irreducible blocks: a 1x1 block is PD
/// iff its entry is positive; a larger block with a nonpositive diagonal
/// entry is not PD; otherwise the block is PD iff its ratio sequence
/// b_j^2 / (a_j a_{j+1}) is a chain sequence.
template <typename Scalar>
WallWetzelReport<Scalar> wall_wetzel_report(const BandSymMatrix<Scalar>& t) {
  WallWetzelReport<Scalar> report;
  report.pd = true;
  Index first = 0;
  for (const auto& block : split_at_zero_offdiag(t)) {
    WallWetzelBlock<Scalar> entry;
    entry.first = first;
    entry.order = block.order();
    first += block.order();
    const auto& a = block.diagonal();
    if (block.order() == 1) {
      entry.pd = a(0) > Scalar(0);
      entry.note = entry.pd ? "positive 1x1 block" : "nonpositive 1x1 block";
    } else if (std::any_of(a.begin(), a.end(), [](const Scalar& x) { return !(x > Scalar(0)); })) {
      entry.pd = false;
      entry.note = "nonpositive diagonal entry in an irreducible block";
    } else {
      auto chain = minimal_parameters(tridiag_ratio_sequence(block));
      entry.pd = chain.is_chain;
      entry.note = chain.is_chain ? "ratio sequence is a chain sequence"
                                  : "ratio sequence is not a chain sequence";
      entry.chain = std::move(chain);
    }
    report.pd = report.pd && entry.pd;
    report.blocks.push_back(std::move(entry));
  }
  return report;
}

template <typename Scalar>
bool wall_wetzel_pd(const BandSymMatrix<Scalar>& t) {
  return wall_wetzel_report(t).pd;
}

}  // namespace bandpos
