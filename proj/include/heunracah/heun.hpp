#pragma once

#include <optional>

#include "heunracah/dynamical.hpp"

namespace heunracah {

/// Parameters of W = −2ρ/(ρ−1) XY + s1 X + (s2²−1)/(2ρ(ρ−1)) Y + [X,Y].
struct HeunParams {
  Complex rho;
  Complex s1;
  Complex s2;
  /// (s2 − ρ + 1)/(2ρ)
  Complex m_bar;
  /// The two particle numbers at which the ψ prefactor vanishes.
  Complex p_bar_plus;
  Complex p_bar_minus;
};

/// Throws ParameterDomainError if ρ ∈ {0,1} or s2 = ρ (2m̄ρ − 1 = 0).
HeunParams make_heun_params(Complex rho, Complex s1, Complex s2, const RacahParams& rp);

/// Integer particle numbers in [0, N] among p̄±, deduplicated, ascending.
/// Integrality is tested to within `tol`.
std::vector<int> integer_p_bars(const HeunParams& hp, int N, double tol = 1e-9);

/// Coefficients of the generic bilinear form r0 + r1 X + r2 Y + r3 XY + r4 YX.
struct BilinearParams {
  Complex r0, r1, r2, r3, r4;
};

OperatorMatrix build_W_parametric(const HeunParams& hp, const DynContext& ctx);
OperatorMatrix build_W_bilinear(const BilinearParams& bp, const Representation& rep);

/// W_bilinear = scale · W_parametric(heun) + shift · I
struct CanonicalForm {
  HeunParams heun;
  Complex scale;
  Complex shift;
};

/// Maps the bilinear form onto the (ρ, s1, s2) family. s2 takes the square-root
/// branch with Re ≥ 0 (Im ≥ 0 on the imaginary axis).
/// Throws CanonicalizationError when r4 = 0 or r3 = r4.
CanonicalForm canonicalize(const BilinearParams& bp, const RacahParams& rp);

/// h1(u) = s1/(2u) − ((ρu − ρ + s2)² − 1)/(4ρu(ρ − 1))
Complex heun_h1(Complex u, const HeunParams& hp);

struct HCoeffs {
  Complex h1_plus;   // h1(u)
  Complex h1_minus;  // h1(−u)
  Complex h2;        // h2(u)
};

HCoeffs h_coeffs(Complex u, const HeunParams& hp, const DynContext& ctx);

/// h1(u) A(u,m̄) + h1(−u) A(−u,m̄) + h2(u) I; equals W for every admissible u.
OperatorMatrix wa_expansion(Complex u, const HeunParams& hp, const DynContext& ctx,
                            Complex h2_offset = 0.0);

struct WAResiduals {
  double against_W = 0.0;       // ‖R(u1) − W‖
  double u_independence = 0.0;  // ‖R(u1) − R(u2)‖
};

/// Checks the dynamical-operator expansion of W at u1 and its u-independence
/// against u2. `h2_offset` perturbs h2 (for negative tests). Throws
/// RelationViolation(WA_IDENTITY) when either residual exceeds tol.
WAResiduals verify_WA(Complex u1, Complex u2, const HeunParams& hp, const DynContext& ctx,
                      double tol, Complex h2_offset = 0.0);

}  // namespace heunracah
