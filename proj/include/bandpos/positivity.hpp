#pragma once

#include "bandpos/band_matrix.hpp"
#include "bandpos/rational.hpp"

#include <Eigen/Core>
#include <Eigen/LU>

#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace bandpos {

inline constexpr double kDefaultTol = 1e-10;

enum class Definiteness { PositiveDefinite, PsdBoundary, Indefinite };

/// "PD", "PSD_BOUNDARY" or "INDEFINITE".
std::string to_string(Definiteness d);

/// Sturm counts at the classification thresholds -t and +t.
struct SturmCertificate {
  double threshold = 0.0;
  Index below_negative = 0;  // eigenvalues < -threshold
  Index below_positive = 0;  // eigenvalues < +threshold
};

struct PositivityVerdict {
  Definiteness definiteness = Definiteness::Indefinite;
  double min_eigenvalue = 0.0;
  /// max-norm of the matrix; thresholds are tol * max(1, scale).
  double scale = 0.0;
  double threshold = 0.0;
  /// Leading principal minors (filled for n <= 64).
  std::vector<double> leading_minors;
  /// Present for tridiagonal input.
  std::optional<SturmCertificate> sturm;

  bool is_psd() const { return definiteness != Definiteness::Indefinite; }
  bool is_pd() const { return definiteness == Definiteness::PositiveDefinite; }
};

/// Number of eigenvalues of tridiagonal T strictly below x (Sturm sequence).
Index sturm_count(const BandSymMatrix<double>& t, double x);

/// Gershgorin interval containing the spectrum of T.
std::pair<double, double> gershgorin_bounds(const BandSymMatrix<double>& t);

/// All eigenvalues of a symmetric tridiagonal matrix by Sturm bisection,
/// ascending, each bracketed to width <= tol (or to double resolution).
std::vector<double> sym_tridiag_eigenvalues(const BandSymMatrix<double>& t, double tol = kDefaultTol);

/// k-th smallest eigenvalue (0-based) by Sturm bisection.
double tridiag_eigenvalue(const BandSymMatrix<double>& t, Index k, double tol = kDefaultTol);

/// Smallest eigenvalue of a dense symmetric matrix (Eigen self-adjoint solver).
double min_eigenvalue(const Eigen::MatrixXd& a, double tol = kDefaultTol);

/// Smallest eigenvalue; Sturm bisection for tridiagonal input, dense solver otherwise.
double min_eigenvalue(const BandSymMatrix<double>& a, double tol = kDefaultTol);

PositivityVerdict classify_positivity(const Eigen::MatrixXd& a, double tol = kDefaultTol);
PositivityVerdict classify_positivity(const BandSymMatrix<double>& a, double tol = kDefaultTol);

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
/// Exact for rational scalars.
template <typename Scalar>
Scalar bareiss_determinant(DenseMatrix<Scalar> m) {
  const Index n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (n == 0) return Scalar(1);
  Scalar prev(1);
  bool negate = false;
  for (Index k = 0; k + 1 < n; ++k) {
    Index pivot = k;
    while (pivot < n && m(pivot, k) == Scalar(0)) ++pivot;
    if (pivot == n) return Scalar(0);
    if (pivot != k) {
      m.row(k).swap(m.row(pivot));
      negate = !negate;
    }
    for (Index i = k + 1; i < n; ++i) {
      for (Index j = k + 1; j < n; ++j) {
        Scalar v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        m(i, j) = v / prev;
      }
      m(i, k) = Scalar(0);
    }
    prev = m(k, k);
  }
  Scalar det = m(n - 1, n - 1);
  if (negate) det = -det;
  return det;
}

/// det of the leading k x k blocks, k = 1..n.
template <typename Scalar>
std::vector<Scalar> leading_principal_minors(const DenseMatrix<Scalar>& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("leading minors of a non-square matrix");
  std::vector<Scalar> minors;
  minors.reserve(static_cast<std::size_t>(a.rows()));
  for (Index k = 1; k <= a.rows(); ++k) {
    if constexpr (std::is_floating_point_v<Scalar>) {
      minors.push_back(a.topLeftCorner(k, k).partialPivLu().determinant());
    } else {
      minors.push_back(bareiss_determinant<Scalar>(a.topLeftCorner(k, k)));
    }
  }
  return minors;
}

inline constexpr Index kExactMinorLimit = 12;

/// Double-precision entry point: for n <= 12 the minors are computed exactly
/// on the (exactly representable) rational values of the entries and then
/// rounded once; larger matrices use LU.
std::vector<double> leading_principal_minors(const Eigen::MatrixXd& a);

/// Exact determinant for n <= 12, LU otherwise.
double determinant(const Eigen::MatrixXd& a);

DenseMatrix<Rational> to_rational(const Eigen::MatrixXd& a);

/// A + eps * I.
Eigen::MatrixXd shift_to_pd(const Eigen::MatrixXd& a, double eps);
BandSymMatrix<double> shift_to_pd(const BandSymMatrix<double>& a, double eps);

template <typename MatrixType>
struct BoundaryShift {
  MatrixType matrix;  // A - lambda * I
  double lambda = 0.0;
};

/// (A - lambda I, lambda) with lambda the smallest eigenvalue of a PD matrix A.
BoundaryShift<Eigen::MatrixXd> shift_to_boundary(const Eigen::MatrixXd& a, double tol = kDefaultTol);
BoundaryShift<BandSymMatrix<double>> shift_to_boundary(const BandSymMatrix<double>& a,
                                                       double tol = kDefaultTol);

}  // namespace bandpos
