#include "heunracah/core.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace heunracah {

SpectrumResult dense_spectrum(const OperatorMatrix& m, bool want_vectors) {
  if (m.rows() != m.cols()) throw DimensionError("dense_spectrum: matrix is not square");
  if (m.rows() < 1) throw DimensionError("dense_spectrum: empty matrix");
  if (m.rows() > kMaxDim) throw DimensionError("dense_spectrum: dimension exceeds 64");
  if (!m.allFinite()) throw OracleError("dense_spectrum: non-finite input");

  // Vectors are always computed so the backward-error contract can be checked.
  Eigen::ComplexEigenSolver<OperatorMatrix> solver(m, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    throw OracleError("dense_spectrum: complex QR iteration did not converge");
  }

  const auto n = static_cast<std::size_t>(m.rows());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  const auto& values = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return complex_less(values(static_cast<Eigen::Index>(a)),
                        values(static_cast<Eigen::Index>(b)));
  });

  const double scale = std::max(m.norm(), std::numeric_limits<double>::min());
  SpectrumResult out;
  std::vector<StateVector> vectors;
  out.eigenvalues.reserve(n);
  for (std::size_t k : order) {
    const auto idx = static_cast<Eigen::Index>(k);
    const Complex lambda = values(idx);
    StateVector v = solver.eigenvectors().col(idx);
    v.normalize();
    const double res = (m * v - lambda * v).norm() / scale;
    if (!(res <= kOracleTol)) {
      throw OracleError("dense_spectrum: eigenpair residual " + std::to_string(res) +
                        " exceeds oracle tolerance");
    }
    out.eigenvalues.push_back(lambda);
    if (want_vectors) {
      vectors.push_back(std::move(v));
      out.residuals.push_back(res);
    }
  }
  if (want_vectors) out.eigenvectors = std::move(vectors);
  return out;
}

}  // namespace heunracah
