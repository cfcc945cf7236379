#include "heunracah/heun.hpp"

#include <algorithm>
#include <cmath>

namespace heunracah {

HeunParams make_heun_params(Complex rho, Complex s1, Complex s2, const RacahParams& rp) {
  if (rho == 0.0 || rho == 1.0) throw ParameterDomainError("rho must avoid 0 and 1");
  if (s2 == rho) throw ParameterDomainError("s2 = rho makes 2m̄ρ − 1 vanish");
  HeunParams hp;
  hp.rho = rho;
  hp.s1 = s1;
  hp.s2 = s2;
  hp.m_bar = (s2 - rho + 1.0) / (2.0 * rho);
  const Complex root = std::sqrt(2.0 * s1 * rho * rho - 2.0 * s1 * rho + 1.0);
  const Complex base = 1.0 - rp.gamma * rho - rp.delta * rho - 2.0 * rho;
  hp.p_bar_plus = (base + root) / (2.0 * rho);
  hp.p_bar_minus = (base - root) / (2.0 * rho);
  return hp;
}

std::vector<int> integer_p_bars(const HeunParams& hp, int N, double tol) {
  std::vector<int> out;
  for (Complex p : {hp.p_bar_plus, hp.p_bar_minus}) {
    const double nearest = std::round(p.real());
    if (std::abs(p - Complex(nearest)) > tol) continue;
    if (nearest < 0 || nearest > N) continue;
    out.push_back(static_cast<int>(nearest));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

OperatorMatrix build_W_parametric(const HeunParams& hp, const DynContext& ctx) {
  const Complex rho = hp.rho;
  if (rho == 0.0 || rho == 1.0) throw ParameterDomainError("rho must avoid 0 and 1");
  const auto& r = ctx.rep();
  OperatorMatrix w = (-2.0 * rho / (rho - 1.0)) * (r.X * r.Y) + hp.s1 * r.X +
                     ((hp.s2 * hp.s2 - 1.0) / (2.0 * rho * (rho - 1.0))) * r.Y + r.Z;
  require_finite(w, "W");
  return w;
}

OperatorMatrix build_W_bilinear(const BilinearParams& bp, const Representation& rep) {
  OperatorMatrix w =
      bp.r1 * rep.X + bp.r2 * rep.Y + bp.r3 * (rep.X * rep.Y) + bp.r4 * (rep.Y * rep.X);
  w.diagonal().array() += bp.r0;
  return w;
}

CanonicalForm canonicalize(const BilinearParams& bp, const RacahParams& rp) {
  if (bp.r4 == 0.0) throw CanonicalizationError("r4 = 0: YX coefficient must be nonzero");
  if (bp.r3 == bp.r4) throw CanonicalizationError("r3 = r4: form degenerates to X·Y symmetric");
  const Complex q = bp.r3 / bp.r4;
  const Complex rho = (q + 1.0) / (q - 1.0);
  if (rho == 0.0) throw ParameterDomainError("r3 = −r4 maps to rho = 0");
  const Complex scale = -bp.r4;
  const Complex s1 = bp.r1 / scale;
  Complex s2 = std::sqrt(1.0 + 2.0 * rho * (rho - 1.0) * bp.r2 / scale);
  if (s2.real() == 0.0 && s2.imag() < 0.0) s2 = -s2;
  return {make_heun_params(rho, s1, s2, rp), scale, bp.r0};
}

Complex heun_h1(Complex u, const HeunParams& hp) {
  detail::nonzero(u, "u");
  const Complex rho = hp.rho;
  const Complex t = rho * u - rho + hp.s2;
  return hp.s1 / (2.0 * u) - (t * t - 1.0) / (4.0 * rho * u * (rho - 1.0));
}

HCoeffs h_coeffs(Complex u, const HeunParams& hp, const DynContext& ctx) {
  const Complex den = detail::nonzero(2.0 * hp.m_bar * hp.rho - 1.0, "2m̄ρ−1");
  HCoeffs h;
  h.h1_plus = heun_h1(u, hp);
  h.h1_minus = heun_h1(-u, hp);
  h.h2 = -(h.h1_plus * coeff_g0(u, hp.m_bar, ctx) + h.h1_minus * coeff_g0(-u, hp.m_bar, ctx)) /
         den;
  return h;
}

OperatorMatrix wa_expansion(Complex u, const HeunParams& hp, const DynContext& ctx,
                            Complex h2_offset) {
  const auto h = h_coeffs(u, hp, ctx);
  OperatorMatrix r = h.h1_plus * op_A(u, hp.m_bar, ctx) + h.h1_minus * op_A(-u, hp.m_bar, ctx);
  r.diagonal().array() += h.h2 + h2_offset;
  return r;
}

WAResiduals verify_WA(Complex u1, Complex u2, const HeunParams& hp, const DynContext& ctx,
                      double tol, Complex h2_offset) {
  const OperatorMatrix w = build_W_parametric(hp, ctx);
  const OperatorMatrix r1 = wa_expansion(u1, hp, ctx, h2_offset);
  const OperatorMatrix r2 = u1 == u2 ? r1 : wa_expansion(u2, hp, ctx, h2_offset);
  WAResiduals out{residual_norm(r1, w), residual_norm(r1, r2)};
  const double worst = std::max(out.against_W, out.u_independence);
  if (!(worst <= tol)) {
    VerificationReport report;
    report.relation = RelationId::WA_IDENTITY;
    report.samples = 1;
    report.tol = tol;
    report.max_residual = worst;
    report.worst_tuple.u = u1;
    report.worst_tuple.v = u2;
    report.worst_tuple.m = hp.m_bar;
    report.notes["against_W"] = out.against_W;
    report.notes["u_independence"] = out.u_independence;
    throw RelationViolation(std::move(report));
  }
  return out;
}

}  // namespace heunracah
