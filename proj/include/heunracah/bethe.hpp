#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "heunracah/heun.hpp"

namespace heunracah {

using RootList = std::vector<Complex>;
using RootSpan = std::span<const Complex>;

enum class BetheMode { Homogeneous, Inhomogeneous };

std::string_view to_string(BetheMode mode);

struct BetheState {
  RootList roots;
  BetheMode mode = BetheMode::Homogeneous;
  Complex u_aux;
  Complex eigenvalue;
  /// U_r (homogeneous) or U_r + U_r⁽ⁱ⁾ (inhomogeneous), one per root.
  std::vector<Complex> bethe_residuals;
  /// ‖W V − λ V‖ / (‖W‖_F ‖V‖)
  double eigen_residual = 0.0;
};

/// Highest-weight vector e₀ = (1, 0, …, 0)ᵀ.
StateVector vacuum(Eigen::Index dim);

/// A(u,m) e₀ = ξ(u,m) e₀ + ζ(u,m) B(u,m) e₀
struct VacuumCoeffs {
  Complex xi;
  Complex zeta;
};

VacuumCoeffs vacuum_coeffs(Complex u, Complex m, const RacahParams& p, Complex rho);
Complex vacuum_xi(Complex u, Complex m, const RacahParams& p);

/// B(x₁, m)·B(x₂, m−1)···B(x_p, m−p+1)·e₀; e₀ for an empty list.
StateVector bethe_vector(RootSpan roots, Complex m_top, const DynContext& ctx);

/// f1(v) = (2ρ(ρ−1)s1 − (ρv−ρ+s2+1)(ρv−ρ+s2−1))(1 − 1/v).
/// Distinct from coeff_f1(u, m) of the B operator.
Complex f1_W(Complex v, const HeunParams& hp);

/// Eigenvalue candidate
///   w_p = h1(u) ξ(u, m̄−p) Π k1(u, x_j) + h1(−u) ξ(−u, m̄−p) Π k1(−u, x_j) + h2(u).
/// The vacuum coefficient is taken at m̄−p, where A(±u, ·) meets e₀ after
/// passing all p creation operators.
Complex eigenvalue_w(Complex u, RootSpan roots, const HeunParams& hp, const DynContext& ctx);

/// U_r = Σ_ε f1(εx_r) ξ(εx_r, m̄−p) Π_{ℓ≠r} k1(εx_r, x_ℓ), for 0-based r.
Complex unwanted_U(std::size_t r, RootSpan roots, const HeunParams& hp, const DynContext& ctx);

/// The u- and root-independent factor 2(1−ρ)s1 + (γ+δ+2+2p)(δρ+γρ+2ρ(p+1)−2).
/// Its zeros in p are p̄±.
Complex psi_prefactor(Complex p, const HeunParams& hp, const RacahParams& rp);

struct PsiValues {
  Complex factored;
  Complex summed;
};

/// Coefficient ψ(u,p) of the unwanted (p+1)-root vector, in closed factored form
/// and as the raw double sum over vacuum ζ terms.
PsiValues psi(Complex u, int p, RootSpan roots, const HeunParams& hp, const DynContext& ctx);
Complex psi_factored(Complex u, int p, RootSpan roots, const HeunParams& hp,
                     const RacahParams& rp);

/// U_r for r = 1..p̄. Throws ModeError unless roots.size() is an integer p̄.
std::vector<Complex> homogeneous_residuals(RootSpan roots, const HeunParams& hp,
                                           const DynContext& ctx);

/// |lhs − rhs| / max(1, |rhs|) of the ratio form
///   f1(x_r)ξ(x_r, m̄−p) / (f1(−x_r)ξ(−x_r, m̄−p)) = −Π_{ℓ≠r} ((x_r+2)² − x_ℓ²)/((x_r−2)² − x_ℓ²)
std::vector<double> homogeneous_ratio_defects(RootSpan roots, const HeunParams& hp,
                                              const DynContext& ctx);

struct MabaCoeffs {
  Complex tau_u;
  std::vector<Complex> tau;
  /// (γ + δ − 2m + 2N + 2)², the numerator constant of the slot weights.
  Complex K;
};

/// τ_u and τ_j of the (N+1)-root reduction at dynamical parameter m.
MabaCoeffs maba_reduce(RootSpan roots, Complex u, Complex m, const DynContext& ctx);

/// Relative residual of
///   |x₁..x_N, u; m⟩ = τ_u |x⟩ + Σ_j (K − u²)/(x_j² − u²) τ_j |x with x_j → u⟩.
double maba_residual(RootSpan roots, Complex u, Complex m, const DynContext& ctx);

struct InhomogeneousTerms {
  Complex w_i;
  std::vector<Complex> U_i;
};

/// w⁽ⁱ⁾ = τ_u ψ(u,N) and U_r⁽ⁱ⁾ = τ_r ρ F Π_q (…), requiring N roots.
InhomogeneousTerms inhomogeneous_terms(RootSpan roots, Complex u, const HeunParams& hp,
                                       const DynContext& ctx);

/// U_r + U_r⁽ⁱ⁾ for r = 1..N. These do not depend on u; `u` is only pole-checked.
std::vector<Complex> inhomogeneous_residuals(RootSpan roots, Complex u, const HeunParams& hp,
                                             const DynContext& ctx);

/// Magnitude of the individual terms in the residual map, used to scale tolerances:
/// 1 + max_r (|U_r⁺| + |U_r⁻| + |U_r⁽ⁱ⁾|).
double bethe_residual_scale(RootSpan roots, BetheMode mode, const HeunParams& hp,
                            const DynContext& ctx);

/// Which dynamical index the swapped middle creation operator carries in the
/// action of A on a Bethe vector.
enum class SlotConvention {
  Consistent,  // B(u, m − r + 1): the same slot index as in the Bethe vector
  AsPrinted,   // B(u, m − r − 1)
};

/// Right-hand side of A(u,m)|x; m⟩ assembled from k1, k2 and the vacuum action.
StateVector abv_rhs(Complex u, RootSpan roots, Complex m, const DynContext& ctx,
                    SlotConvention slot);
double abv_residual(Complex u, RootSpan roots, Complex m, const DynContext& ctx,
                    SlotConvention slot);

/// Relative residual of the full action of W on |x; m̄⟩:
///   W V = w_p V + Σ_r U_r/(ρ(ρ−1)(u²−x_r²)) V_r(u) + ψ(u,p) |x, u; m̄⟩
double action_residual(Complex u, RootSpan roots, const HeunParams& hp, const DynContext& ctx);

/// Least-squares distance of (W − w_p) V from the span of the swapped vectors V_r(u),
/// relative to ‖W V‖. Zero when ψ(u, p) vanishes.
double swapped_span_defect(Complex u, RootSpan roots, const HeunParams& hp,
                           const DynContext& ctx);

/// Roots with Re ≥ 0 (Im ≥ 0 on the imaginary axis), sorted by (Re, Im).
RootList canonical_roots(RootSpan roots);

/// Smallest distance to any pole of the residual maps and, when `u` is given, of the
/// eigenvalue/ψ/τ_u terms at that spectral parameter. Values below the pole margin
/// mark the configuration as inadmissible.
double pole_distance(RootSpan roots, std::optional<Complex> u, BetheMode mode,
                     const HeunParams& hp, const DynContext& ctx);

}  // namespace heunracah
