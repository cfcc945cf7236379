#pragma once

#include <string>

#include "heunracah/core.hpp"
#include "heunracah/racah.hpp"

namespace heunracah {

namespace detail {

/// Denominator guard shared by the closed forms: exact zeros are poles.
template <typename Scalar>
Scalar nonzero(Scalar d, const char* what) {
  if (std::abs(d) == 0.0) throw ParameterDomainError(std::string("pole: ") + what + " = 0");
  return d;
}

}  // namespace detail

/// f1(u,m) = (4m² − u²)/2, the X-coefficient of B(u,m).
template <typename Scalar>
Scalar coeff_f1(Scalar u, Scalar m) {
  return (Scalar(4) * m * m - u * u) / Scalar(2);
}

template <typename Scalar>
Scalar coeff_g1(Scalar u, Scalar m, Scalar rho) {
  return (u - Scalar(2) * m) * (Scalar(2) * m * rho - rho * u - Scalar(2)) / Scalar(2);
}

template <typename Scalar>
Scalar coeff_k1(Scalar u, Scalar v) {
  const Scalar den = detail::nonzero(u * u - v * v, "u²−v²");
  return ((u - Scalar(2)) * (u - Scalar(2)) - v * v) / den;
}

template <typename Scalar>
Scalar coeff_k2(Scalar u, Scalar v, Scalar m, Scalar rho) {
  detail::nonzero(v, "v");
  detail::nonzero(v - u, "v−u");
  const Scalar den = detail::nonzero(Scalar(2) * m * rho - Scalar(1), "2mρ−1");
  return (v - Scalar(1)) * (rho * (u - v - Scalar(4) * m) + Scalar(2)) / (v * (v - u) * den);
}

/// Representation plus the free parameter ρ of the dynamical operators.
class DynContext {
 public:
  /// Throws ParameterDomainError if rho ∈ {0, 1}.
  DynContext(Representation rep, Complex rho);

  const Representation& rep() const { return rep_; }
  const RacahParams& params() const { return rep_.params; }
  Complex rho() const { return rho_; }
  Eigen::Index dim() const { return rep_.dim(); }
  /// {X, Y}, cached because every dynamical operator uses it.
  const OperatorMatrix& xy_anticommutator() const { return xy_; }

 private:
  Representation rep_;
  Complex rho_;
  OperatorMatrix xy_;
};

Complex coeff_f0(Complex u, Complex m, const RacahParams& p);
/// Throws ParameterDomainError at u = 1.
Complex coeff_g0(Complex u, Complex m, const DynContext& ctx);

/// A(u,m) = (g0 + g1(u,m) X + g1(−1,m) Y + Z + ρ{X,Y}) / (2mρ − 1)
OperatorMatrix op_A(Complex u, Complex m, const DynContext& ctx);
/// B(u,m) = f0 + f1(u,m) X + f1(−1,m) Y + 2m Z + {X,Y}; even in u.
OperatorMatrix op_B(Complex u, Complex m, const DynContext& ctx);
/// C(u,m) = B(u, −m + 1/ρ)
OperatorMatrix op_C(Complex u, Complex m, const DynContext& ctx);

}  // namespace heunracah
