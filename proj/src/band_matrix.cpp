#include "bandpos/band_matrix.hpp"

#include "bandpos/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace bandpos {

double max_norm(const Eigen::MatrixXd& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

double max_norm(const BandSymMatrix<double>& a) {
  double m = a.diagonal().cwiseAbs().maxCoeff();
  for (int k = 1; k <= a.bandwidth(); ++k)
    if (a.off_diagonal(k).size() > 0) m = std::max(m, a.off_diagonal(k).cwiseAbs().maxCoeff());
  return m;
}

bool is_symmetric(const Eigen::MatrixXd& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  if (!a.allFinite()) return false;
  const double tol = rel_tol * std::max(1.0, max_norm(a));
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = i + 1; j < a.cols(); ++j)
      if (std::abs(a(i, j) - a(j, i)) > tol) return false;
  return true;
}

void require_symmetric(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("matrix is not square (" + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + ")");
  if (!a.allFinite()) throw std::invalid_argument("matrix has non-finite entries");
  if (!is_symmetric(a)) throw std::invalid_argument("matrix is not symmetric");
}

namespace {

bool is_integer(double r) { return std::isfinite(r) && std::floor(r) == r; }

double integer_power(double x, unsigned long long k) {
  double result = 1.0;
  while (k > 0) {
    if (k & 1ULL) result *= x;
    k >>= 1ULL;
    if (k > 0) x *= x;
  }
  return result;
}

}  // namespace

double power_entry(double x, double r) {
  if (!std::isfinite(r) || r < 0.0) throw std::domain_error("Hadamard exponent must be finite and >= 0");
  if (r == 0.0) return 1.0;
  if (is_integer(r)) {
    if (r <= 64.0) return integer_power(x, static_cast<unsigned long long>(r));
    return std::pow(x, r);
  }
  if (x < 0.0) throw std::domain_error("negative entry raised to a non-integer power");
  return std::pow(x, r);
}

Eigen::MatrixXd hadamard_power(const Eigen::MatrixXd& a, double r) {
  return a.unaryExpr([r](double x) { return power_entry(x, r); });
}

BandSymMatrix<double> hadamard_power(const BandSymMatrix<double>& a, double r) {
  if (r == 0.0)
    throw std::domain_error("r = 0 fills the band (0^0 := 1); use the dense overload");
  auto pw = [r](double x) { return power_entry(x, r); };
  std::vector<Eigen::VectorXd> off;
  for (int k = 1; k <= a.bandwidth(); ++k) off.push_back(a.off_diagonal(k).unaryExpr(pw));
  return BandSymMatrix<double>(a.diagonal().unaryExpr(pw), std::move(off));
}

bool uses_zero_power_convention(const Eigen::MatrixXd& a, double r) {
  return r == 0.0 && (a.array() == 0.0).any();
}

PermutationSpec::PermutationSpec(std::vector<Index> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (Index k : image_) {
    if (k < 0 || k >= static_cast<Index>(image_.size()))
      throw std::invalid_argument("permutation image out of range");
    if (seen[static_cast<std::size_t>(k)]) throw std::invalid_argument("permutation image repeats an index");
    seen[static_cast<std::size_t>(k)] = true;
  }
}

PermutationSpec PermutationSpec::identity(Index n) {
  std::vector<Index> image(static_cast<std::size_t>(n));
  std::iota(image.begin(), image.end(), Index{0});
  return PermutationSpec(std::move(image));
}

PermutationSpec PermutationSpec::inverse() const {
  std::vector<Index> inv(image_.size());
  for (std::size_t k = 0; k < image_.size(); ++k) inv[static_cast<std::size_t>(image_[k])] = static_cast<Index>(k);
  return PermutationSpec(std::move(inv));
}

Eigen::MatrixXd PermutationSpec::to_matrix() const {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(size(), size());
  for (Index k = 0; k < size(); ++k) x(k, (*this)[k]) = 1.0;
  return x;
}

PermutationSpec even_odd_permutation(Index n) {
  if (n < 2) throw std::invalid_argument("even_odd_permutation needs n >= 2");
  std::vector<Index> image;
  image.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; i += 2) image.push_back(i);
  for (Index i = 1; i < n; i += 2) image.push_back(i);
  return PermutationSpec(std::move(image));
}

Eigen::MatrixXd conjugate_by_permutation(const Eigen::MatrixXd& a, const PermutationSpec& p) {
  if (a.rows() != a.cols() || a.rows() != p.size())
    throw std::invalid_argument("permutation size does not match matrix order");
  const Index n = a.rows();
  Eigen::MatrixXd out(n, n);
  for (Index k = 0; k < n; ++k)
    for (Index l = 0; l < n; ++l) out(k, l) = a(p[k], p[l]);
  return out;
}

Eigen::MatrixXd principal_submatrix(const Eigen::MatrixXd& a, const std::vector<Index>& indices) {
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 0 || indices[i] >= a.rows()) throw std::out_of_range("principal index out of range");
    if (i > 0 && indices[i] <= indices[i - 1]) throw std::invalid_argument("indices must be increasing");
  }
  const auto m = static_cast<Index>(indices.size());
  Eigen::MatrixXd out(m, m);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) out(i, j) = a(indices[static_cast<std::size_t>(i)], indices[static_cast<std::size_t>(j)]);
  return out;
}

std::pair<BandSymMatrix<double>, BandSymMatrix<double>> split_pentadiagonal(
    const BandSymMatrix<double>& p) {
  if (!p.is_split_pentadiagonal() || p.order() < 3)
    throw std::invalid_argument("split_pentadiagonal needs a pentadiagonal matrix with zero offset-1 diagonal");
  const Index n = p.order();
  const auto& x = p.diagonal();
  const auto& y = p.off_diagonal(2);
  auto block = [&](Index start) {
    const Index m = (n - start + 1) / 2;
    Eigen::VectorXd d(m), e(m - 1);
    for (Index t = 0; t < m; ++t) d(t) = x(start + 2 * t);
    for (Index t = 0; t + 1 < m; ++t) e(t) = y(start + 2 * t);
    return BandSymMatrix<double>(std::move(d), {std::move(e)});
  };
  return {block(0), block(1)};
}

BandSymMatrix<double> merge_pentadiagonal(const BandSymMatrix<double>& odd,
                                          const BandSymMatrix<double>& even) {
  if (odd.bandwidth() != 1 || even.bandwidth() != 1)
    throw std::invalid_argument("merge_pentadiagonal expects two tridiagonal blocks");
  const Index n = odd.order() + even.order();
  if (n < 3 || (odd.order() != even.order() && odd.order() != even.order() + 1))
    throw std::invalid_argument("block sizes must be (k, k) or (k+1, k)");
  std::vector<double> x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n - 2));
  for (Index t = 0; t < odd.order(); ++t) x[static_cast<std::size_t>(2 * t)] = odd.diagonal()(t);
  for (Index t = 0; t < even.order(); ++t) x[static_cast<std::size_t>(2 * t + 1)] = even.diagonal()(t);
  for (Index t = 0; t + 1 < odd.order(); ++t) y[static_cast<std::size_t>(2 * t)] = odd.off_diagonal(1)(t);
  for (Index t = 0; t + 1 < even.order(); ++t) y[static_cast<std::size_t>(2 * t + 1)] = even.off_diagonal(1)(t);
  return make_pentadiagonal(x, y);
}

Eigen::MatrixXd block_diagonal(const std::vector<Eigen::MatrixXd>& blocks) {
  Index n = 0;
  for (const auto& b : blocks) {
    if (b.rows() != b.cols()) throw std::invalid_argument("blocks must be square");
    n += b.rows();
  }
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  Index at = 0;
  for (const auto& b : blocks) {
    out.block(at, at, b.rows(), b.cols()) = b;
    at += b.rows();
  }
  return out;
}

bool pattern_check(const Eigen::MatrixXd& a, const SimpleGraph& g) {
  if (a.rows() != a.cols() || a.rows() != g.order())
    throw std::invalid_argument("matrix order does not match graph vertex count");
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (i != j && a(i, j) != 0.0 && !g.has_edge(i, j)) return false;
  return true;
}

double superadditive_gap(double a, double b, double r) {
  if (!(a >= 0.0) || !(b >= 0.0) || (a == 0.0 && b == 0.0) || !(r >= 1.0) || !std::isfinite(a + b + r))
    throw std::domain_error("superadditive_gap needs a, b >= 0 not both zero and r >= 1");
  return std::pow(a + b, r) - std::pow(a, r) - std::pow(b, r);
}

}  // namespace bandpos
