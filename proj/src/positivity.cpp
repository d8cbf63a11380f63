#include "bandpos/positivity.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bandpos {

std::string to_string(Definiteness d) {
  switch (d) {
    case Definiteness::PositiveDefinite: return "PD";
    case Definiteness::PsdBoundary: return "PSD_BOUNDARY";
    case Definiteness::Indefinite: return "INDEFINITE";
  }
  return "?";
}

namespace {

void require_tridiagonal(const BandSymMatrix<double>& t) {
  if (t.bandwidth() != 1) throw std::invalid_argument("expected a tridiagonal matrix");
}

void require_positive_tol(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw std::invalid_argument("tolerance must be positive");
}

Definiteness classify(double min_eig, double threshold) {
  if (min_eig > threshold) return Definiteness::PositiveDefinite;
  if (min_eig < -threshold) return Definiteness::Indefinite;
  return Definiteness::PsdBoundary;
}

}  // namespace

Index sturm_count(const BandSymMatrix<double>& t, double x) {
  require_tridiagonal(t);
  const auto& a = t.diagonal();
  const auto& b = t.off_diagonal(1);
  double max_b2 = 1.0;
  for (Index i = 0; i < b.size(); ++i) max_b2 = std::max(max_b2, b(i) * b(i));
  const double pivmin = std::numeric_limits<double>::min() * max_b2;

  Index count = 0;
  double q = a(0) - x;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (Index i = 1; i < a.size(); ++i) {
    q = (a(i) - x) - b(i - 1) * b(i - 1) / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

std::pair<double, double> gershgorin_bounds(const BandSymMatrix<double>& t) {
  require_tridiagonal(t);
  const auto& a = t.diagonal();
  const auto& b = t.off_diagonal(1);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Index i = 0; i < a.size(); ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(b(i - 1));
    if (i + 1 < a.size()) radius += std::abs(b(i));
    lo = std::min(lo, a(i) - radius);
    hi = std::max(hi, a(i) + radius);
  }
  return {lo, hi};
}

double tridiag_eigenvalue(const BandSymMatrix<double>& t, Index k, double tol) {
  require_positive_tol(tol);
  require_tridiagonal(t);
  if (k < 0 || k >= t.order()) throw std::out_of_range("eigenvalue index out of range");
  auto [lo, hi] = gershgorin_bounds(t);
  const double margin = 4.0 * std::numeric_limits<double>::epsilon() * std::max({1.0, std::abs(lo), std::abs(hi)});
  lo -= margin;
  hi += margin;
  // invariant: count(lo) <= k < count(hi)
  while (hi - lo > tol) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(t, mid) <= k)
      lo = mid;
    else
      hi = mid;
  }
  return lo + 0.5 * (hi - lo);
}

std::vector<double> sym_tridiag_eigenvalues(const BandSymMatrix<double>& t, double tol) {
  require_positive_tol(tol);
  require_tridiagonal(t);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(t.order()));
  for (Index k = 0; k < t.order(); ++k) out.push_back(tridiag_eigenvalue(t, k, tol));
  // Brackets are nested per k, so the list is already ascending up to rounding.
  std::sort(out.begin(), out.end());
  return out;
}

double min_eigenvalue(const Eigen::MatrixXd& a, double tol) {
  require_positive_tol(tol);
  require_symmetric(a);
  if (a.rows() == 0) throw std::invalid_argument("empty matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue iteration did not converge");
  return solver.eigenvalues()(0);
}

double min_eigenvalue(const BandSymMatrix<double>& a, double tol) {
  if (a.bandwidth() == 1) return tridiag_eigenvalue(a, 0, tol * std::max(1.0, max_norm(a)) * 1e-3);
  return min_eigenvalue(a.to_dense(), tol);
}

PositivityVerdict classify_positivity(const Eigen::MatrixXd& a, double tol) {
  require_positive_tol(tol);
  require_symmetric(a);
  PositivityVerdict v;
  v.scale = max_norm(a);
  v.threshold = tol * std::max(1.0, v.scale);
  v.min_eigenvalue = min_eigenvalue(a, tol);
  v.definiteness = classify(v.min_eigenvalue, v.threshold);
  if (a.rows() <= 64) v.leading_minors = leading_principal_minors(a);
  return v;
}

PositivityVerdict classify_positivity(const BandSymMatrix<double>& a, double tol) {
  if (a.bandwidth() != 1) return classify_positivity(a.to_dense(), tol);
  require_positive_tol(tol);
  PositivityVerdict v;
  v.scale = max_norm(a);
  v.threshold = tol * std::max(1.0, v.scale);
  v.min_eigenvalue = tridiag_eigenvalue(a, 0, v.threshold * 1e-3);
  v.definiteness = classify(v.min_eigenvalue, v.threshold);
  v.sturm = SturmCertificate{v.threshold, sturm_count(a, -v.threshold), sturm_count(a, v.threshold)};
  if (a.order() <= 64) v.leading_minors = leading_principal_minors(a.to_dense());
  return v;
}

DenseMatrix<Rational> to_rational(const Eigen::MatrixXd& a) {
  if (!a.allFinite()) throw std::invalid_argument("non-finite entry has no rational value");
  DenseMatrix<Rational> q(a.rows(), a.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) q(i, j) = Rational(a(i, j));
  return q;
}

std::vector<double> leading_principal_minors(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("leading minors of a non-square matrix");
  if (a.rows() > kExactMinorLimit) return leading_principal_minors<double>(a);
  const auto exact = leading_principal_minors<Rational>(to_rational(a));
  std::vector<double> out;
  out.reserve(exact.size());
  for (const auto& m : exact) out.push_back(m.get_d());
  return out;
}

double determinant(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (a.rows() == 0) return 1.0;
  if (a.rows() > kExactMinorLimit) return a.partialPivLu().determinant();
  return bareiss_determinant<Rational>(to_rational(a)).get_d();
}

Eigen::MatrixXd shift_to_pd(const Eigen::MatrixXd& a, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("shift_to_pd needs eps > 0");
  require_symmetric(a);
  Eigen::MatrixXd out = a;
  out.diagonal().array() += eps;
  return out;
}

BandSymMatrix<double> shift_to_pd(const BandSymMatrix<double>& a, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("shift_to_pd needs eps > 0");
  std::vector<Eigen::VectorXd> off;
  for (int k = 1; k <= a.bandwidth(); ++k) off.push_back(a.off_diagonal(k));
  return BandSymMatrix<double>((a.diagonal().array() + eps).matrix(), std::move(off));
}

BoundaryShift<Eigen::MatrixXd> shift_to_boundary(const Eigen::MatrixXd& a, double tol) {
  const auto verdict = classify_positivity(a, tol);
  if (!verdict.is_pd()) throw std::invalid_argument("shift_to_boundary needs a positive definite matrix");
  BoundaryShift<Eigen::MatrixXd> out{a, verdict.min_eigenvalue};
  out.matrix.diagonal().array() -= out.lambda;
  return out;
}

BoundaryShift<BandSymMatrix<double>> shift_to_boundary(const BandSymMatrix<double>& a, double tol) {
  const auto verdict = classify_positivity(a, tol);
  if (!verdict.is_pd()) throw std::invalid_argument("shift_to_boundary needs a positive definite matrix");
  const double lambda = a.bandwidth() == 1
                            ? tridiag_eigenvalue(a, 0, 4.0 * std::numeric_limits<double>::epsilon())
                            : verdict.min_eigenvalue;
  std::vector<Eigen::VectorXd> off;
  for (int k = 1; k <= a.bandwidth(); ++k) off.push_back(a.off_diagonal(k));
  return {BandSymMatrix<double>((a.diagonal().array() - lambda).matrix(), std::move(off)), lambda};
}

}  // namespace bandpos
