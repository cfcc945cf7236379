#pragma once

#include <doctest.h>

#include "heunracah/io.hpp"

namespace fixtures {

using namespace heunracah;

// N=1, β=5, γ=1, δ=2.
inline RacahParams p0() { return build_params(1, 5.0, 1.0, 2.0); }

inline DynContext p0_ctx(Complex rho = 2.0) { return DynContext(build_representation(p0()), rho); }

// ρ=2, s1=1, s2=3 on P0.
inline HeunParams p0_heun() { return make_heun_params(2.0, 1.0, 3.0, p0()); }

inline OperatorMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  OperatorMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline bool near(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace fixtures
