#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "heunracah/errors.hpp"

namespace heunracah {

using Complex = std::complex<double>;
using OperatorMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

/// Matrix dimensions are capped; this is a desk-scale verification tool.
inline constexpr Eigen::Index kMaxDim = 64;

/// Backward-error bound every returned eigenpair must satisfy, relative to ‖M‖_F.
inline constexpr double kOracleTol = 1e-10;

template <typename DerivedA, typename DerivedB>
void require_same_dim(const Eigen::MatrixBase<DerivedA>& a,
                      const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("dimension mismatch: " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                         "x" + std::to_string(b.cols()));
  }
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

/// Throws ParameterDomainError naming `what` if any entry is NaN or Inf.
template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const std::string& what) {
  if (!m.allFinite()) throw ParameterDomainError(what + " has non-finite entries");
}

/// [a, b] = ab − ba
template <typename DerivedA, typename DerivedB>
OperatorMatrix commutator(const Eigen::MatrixBase<DerivedA>& a,
                          const Eigen::MatrixBase<DerivedB>& b) {
  require_same_dim(a, b);
  return a * b - b * a;
}

/// {a, b} = ab + ba
template <typename DerivedA, typename DerivedB>
OperatorMatrix anticommutator(const Eigen::MatrixBase<DerivedA>& a,
                              const Eigen::MatrixBase<DerivedB>& b) {
  require_same_dim(a, b);
  return a * b + b * a;
}

/// ‖lhs − rhs‖_F / max(1, ‖lhs‖_F). Works for matrices and vectors alike.
template <typename DerivedA, typename DerivedB>
double residual_norm(const Eigen::MatrixBase<DerivedA>& lhs,
                     const Eigen::MatrixBase<DerivedB>& rhs) {
  require_same_dim(lhs, rhs);
  return (lhs - rhs).norm() / std::max(1.0, static_cast<double>(lhs.norm()));
}

inline OperatorMatrix identity(Eigen::Index dim) {
  return OperatorMatrix::Identity(dim, dim);
}

struct SpectrumResult {
  std::vector<Complex> eigenvalues;
  /// Unit-norm eigenvectors, present only when requested.
  std::optional<std::vector<StateVector>> eigenvectors;
  /// ‖M v − λ v‖₂ / ‖M‖_F per pair (empty when vectors were not requested).
  std::vector<double> residuals;
};

/// Lexicographic (real, imag) order used for every reported spectrum.
inline bool complex_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

/// Full eigendecomposition of a general complex matrix.
/// Eigenvalues come back sorted by (real, imag). Throws OracleError if the
/// eigensolver fails or any eigenpair misses the kOracleTol backward-error bound.
SpectrumResult dense_spectrum(const OperatorMatrix& m, bool want_vectors);

}  // namespace heunracah
