#pragma once

#include "bandpos/rational.hpp"

#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bandpos {

using Eigen::Index;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

class SimpleGraph;

/// Symmetric band matrix of bandwidth 1 (tridiagonal) or 2 (pentadiagonal),
/// stored by its main diagonal and upper diagonals.
///
/// off_diagonal(k) holds entries (i, i+k) for i = 0..n-k-1. Only the upper
/// triangle is stored, so the matrix is symmetric by construction.
template <typename Scalar = double>
class BandSymMatrix {
 public:
  using VectorType = Vector<Scalar>;

  BandSymMatrix(VectorType main_diag, std::vector<VectorType> off_diags)
      : main_(std::move(main_diag)), off_(std::move(off_diags)) {
    const Index n = main_.size();
    if (n < 1) throw std::invalid_argument("band matrix order must be positive");
    if (off_.size() < 1 || off_.size() > 2)
      throw std::invalid_argument("bandwidth must be 1 or 2");
    for (std::size_t k = 0; k < off_.size(); ++k) {
      const Index want = n > static_cast<Index>(k + 1) ? n - static_cast<Index>(k + 1) : 0;
      if (off_[k].size() != want)
        throw std::invalid_argument("diagonal at offset " + std::to_string(k + 1) + " must have " +
                                    std::to_string(want) + " entries, got " +
                                    std::to_string(off_[k].size()));
    }
    for (Index i = 0; i < n; ++i)
      if (!is_finite(main_(i))) throw std::invalid_argument("non-finite diagonal entry");
    for (const auto& d : off_)
      for (Index i = 0; i < d.size(); ++i)
        if (!is_finite(d(i))) throw std::invalid_argument("non-finite off-diagonal entry");
  }

  Index order() const { return main_.size(); }
  int bandwidth() const { return static_cast<int>(off_.size()); }

  const VectorType& diagonal() const { return main_; }
  const VectorType& off_diagonal(int offset) const {
    if (offset < 1 || offset > bandwidth()) throw std::out_of_range("no diagonal at that offset");
    return off_[static_cast<std::size_t>(offset - 1)];
  }

  Scalar operator()(Index i, Index j) const {
    if (i > j) std::swap(i, j);
    const Index k = j - i;
    if (k == 0) return main_(i);
    if (k > bandwidth()) return Scalar(0);
    return off_[static_cast<std::size_t>(k - 1)](i);
  }

  /// True for the bandwidth-2 family with identically zero offset-1 diagonal.
  bool is_split_pentadiagonal() const {
    if (bandwidth() != 2) return false;
    for (Index i = 0; i < off_[0].size(); ++i)
      if (off_[0](i) != Scalar(0)) return false;
    return true;
  }

  DenseMatrix<Scalar> to_dense() const {
    const Index n = order();
    DenseMatrix<Scalar> a = DenseMatrix<Scalar>::Zero(n, n);
    for (Index i = 0; i < n; ++i) a(i, i) = main_(i);
    for (int k = 1; k <= bandwidth(); ++k) {
      const auto& d = off_diagonal(k);
      for (Index i = 0; i < d.size(); ++i) {
        a(i, i + k) = d(i);
        a(i + k, i) = d(i);
      }
    }
    return a;
  }

  template <typename Other>
  BandSymMatrix<Other> cast() const {
    std::vector<Vector<Other>> off;
    for (const auto& d : off_) off.push_back(d.template cast<Other>());
    return BandSymMatrix<Other>(main_.template cast<Other>(), std::move(off));
  }

  friend bool operator==(const BandSymMatrix& a, const BandSymMatrix& b) {
    if (a.order() != b.order() || a.bandwidth() != b.bandwidth()) return false;
    if (a.main_ != b.main_) return false;
    for (std::size_t k = 0; k < a.off_.size(); ++k)
      if (a.off_[k] != b.off_[k]) return false;
    return true;
  }

 private:
  VectorType main_;
  std::vector<VectorType> off_;
};

namespace detail {
template <typename Scalar>
Vector<Scalar> to_vector(const std::vector<Scalar>& v) {
  Vector<Scalar> out(static_cast<Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Index>(i)) = v[i];
  return out;
}
}  // namespace detail

/// Tridiagonal matrix with main diagonal `diag` and off-diagonal `offdiag` (n-1 entries).
template <typename Scalar = double>
BandSymMatrix<Scalar> make_tridiagonal(const std::vector<Scalar>& diag,
                                       const std::vector<Scalar>& offdiag) {
  if (diag.empty()) throw std::invalid_argument("tridiagonal matrix needs at least one diagonal entry");
  if (offdiag.size() + 1 != diag.size())
    throw std::invalid_argument("offdiag must have n-1 = " + std::to_string(diag.size() - 1) +
                                " entries, got " + std::to_string(offdiag.size()));
  return BandSymMatrix<Scalar>(detail::to_vector(diag), {detail::to_vector(offdiag)});
}

/// Pentadiagonal matrix with zero offset-1 diagonal and offset-2 diagonal `second_diag`.
template <typename Scalar = double>
BandSymMatrix<Scalar> make_pentadiagonal(const std::vector<Scalar>& diag,
                                         const std::vector<Scalar>& second_diag) {
  if (diag.size() < 3) throw std::invalid_argument("pentadiagonal matrix needs order n >= 3");
  if (second_diag.size() + 2 != diag.size())
    throw std::invalid_argument("second_diag must have n-2 = " + std::to_string(diag.size() - 2) +
                                " entries, got " + std::to_string(second_diag.size()));
  const auto n = static_cast<Index>(diag.size());
  return BandSymMatrix<Scalar>(detail::to_vector(diag),
                               {Vector<Scalar>::Zero(n - 1), detail::to_vector(second_diag)});
}

/// max |a_ij|
double max_norm(const Eigen::MatrixXd& a);
double max_norm(const BandSymMatrix<double>& a);

/// Throws std::invalid_argument unless |a_ij - a_ji| <= 1e-12 * max(1, max_norm).
void require_symmetric(const Eigen::MatrixXd& a);
bool is_symmetric(const Eigen::MatrixXd& a, double rel_tol = 1e-12);

/// x^r with the conventions used throughout: 0^0 := 1, integer r accepts any
/// sign, non-integer r requires x >= 0. Throws std::domain_error otherwise.
double power_entry(double x, double r);

/// Entrywise (Hadamard) power. r = 0 maps every entry, zeros included, to 1.
Eigen::MatrixXd hadamard_power(const Eigen::MatrixXd& a, double r);

/// Band-preserving Hadamard power; requires r > 0 since 0^0 := 1 would fill the band.
BandSymMatrix<double> hadamard_power(const BandSymMatrix<double>& a, double r);

/// True when the power at r relied on the 0^0 := 1 convention.
bool uses_zero_power_convention(const Eigen::MatrixXd& a, double r);

/// Permutation matrix X given by rows: row k of X is row image[k] of the identity.
class PermutationSpec {
 public:
  explicit PermutationSpec(std::vector<Index> image);

  static PermutationSpec identity(Index n);

  Index size() const { return static_cast<Index>(image_.size()); }
  const std::vector<Index>& image() const { return image_; }
  Index operator[](Index k) const { return image_[static_cast<std::size_t>(k)]; }

  PermutationSpec inverse() const;
  Eigen::MatrixXd to_matrix() const;

  friend bool operator==(const PermutationSpec&, const PermutationSpec&) = default;

 private:
  std::vector<Index> image_;
};

/// Odd positions first, then even positions (1-based), i.e. 0-based images
/// (0, 2, 4, ..., 1, 3, 5, ...). Requires n >= 2.
PermutationSpec even_odd_permutation(Index n);

/// X A X^T, computed as (X A X^T)(k, l) = A(image[k], image[l]).
Eigen::MatrixXd conjugate_by_permutation(const Eigen::MatrixXd& a, const PermutationSpec& p);

/// Principal submatrix on the given (0-based, strictly increasing) indices.
Eigen::MatrixXd principal_submatrix(const Eigen::MatrixXd& a, const std::vector<Index>& indices);

/// Splits a pentadiagonal matrix with zero offset-1 diagonal into its
/// tridiagonal principal submatrices on positions 1,3,5,... and 2,4,6,...
/// (1-based). Sizes are (k, k) for n = 2k and (k+1, k) for n = 2k+1.
std::pair<BandSymMatrix<double>, BandSymMatrix<double>> split_pentadiagonal(
    const BandSymMatrix<double>& p);

/// Inverse of split_pentadiagonal: interleaves the two tridiagonal blocks.
BandSymMatrix<double> merge_pentadiagonal(const BandSymMatrix<double>& odd,
                                          const BandSymMatrix<double>& even);

/// diag(blocks...) as a dense matrix.
Eigen::MatrixXd block_diagonal(const std::vector<Eigen::MatrixXd>& blocks);

/// True iff every nonzero off-diagonal entry of A sits on an edge of G.
bool pattern_check(const Eigen::MatrixXd& a, const SimpleGraph& g);

/// (a+b)^r - a^r - b^r; nonnegative for a, b >= 0 and r >= 1.
double superadditive_gap(double a, double b, double r);

}  // namespace bandpos
