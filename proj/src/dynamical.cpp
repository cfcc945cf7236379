#include "heunracah/dynamical.hpp"

namespace heunracah {

DynContext::DynContext(Representation rep, Complex rho)
    : rep_(std::move(rep)), rho_(rho), xy_(anticommutator(rep_.X, rep_.Y)) {
  if (rho == 0.0 || rho == 1.0) {
    throw ParameterDomainError("rho must avoid 0 and 1");
  }
}

Complex coeff_f0(Complex u, Complex m, const RacahParams& p) {
  return (4.0 * m * m - 1.0) * (u * u - 2.0 * p.b - 1.0) / 8.0 - p.d2;
}

Complex coeff_g0(Complex u, Complex m, const DynContext& ctx) {
  const auto& p = ctx.params();
  const Complex rho = ctx.rho();
  const Complex u_minus_1 = detail::nonzero(u - 1.0, "u−1");
  return rho * coeff_f0(u, m, p) +
         (2.0 * m * rho - 1.0) * ((4.0 * m - u + 1.0) * (2.0 * p.b + 1.0 - u * u) / 8.0 -
                                  (p.d1 - p.d2) / u_minus_1);
}

OperatorMatrix op_A(Complex u, Complex m, const DynContext& ctx) {
  const Complex rho = ctx.rho();
  const Complex den = detail::nonzero(2.0 * m * rho - 1.0, "2mρ−1");
  const auto& r = ctx.rep();
  OperatorMatrix a = coeff_g1(u, m, rho) * r.X + coeff_g1(Complex(-1.0), m, rho) * r.Y + r.Z +
                     rho * ctx.xy_anticommutator();
  a.diagonal().array() += coeff_g0(u, m, ctx);
  a /= den;
  require_finite(a, "A(u,m)");
  return a;
}

OperatorMatrix op_B(Complex u, Complex m, const DynContext& ctx) {
  const auto& r = ctx.rep();
  OperatorMatrix b = coeff_f1(u, m) * r.X + coeff_f1(Complex(-1.0), m) * r.Y + 2.0 * m * r.Z +
                     ctx.xy_anticommutator();
  b.diagonal().array() += coeff_f0(u, m, ctx.params());
  require_finite(b, "B(u,m)");
  return b;
}

OperatorMatrix op_C(Complex u, Complex m, const DynContext& ctx) {
  return op_B(u, -m + 1.0 / ctx.rho(), ctx);
}

}  // namespace heunracah
