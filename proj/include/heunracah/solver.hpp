#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "heunracah/bethe.hpp"

namespace heunracah {

struct SolverConfig {
  int max_iter = 200;
  /// Convergence threshold on ‖f‖_∞, relative to 1 + ‖f(x_start)‖_∞.
  double newton_tol = 1e-12;
  int starts = 64;
  std::uint64_t seed = 0;
  /// Central finite-difference step, scaled by max(1, |x_j|).
  double jacobian_step = 1e-7;
  double deflation_tol = 1e-6;
  double pole_margin = kPoleMargin;
  /// Spectral parameter used to evaluate eigenvalues; redrawn (seeded) per state
  /// when it sits within pole_margin of a pole.
  Complex u_aux{2.37, 0.91};
};

/// Certification thresholds a reported state must meet.
inline constexpr double kEigenResidualTol = 1e-8;
inline constexpr double kBetheResidualTol = 1e-9;
inline constexpr double kEigenMatchTol = 1e-6;

using ResidualMap = std::function<std::vector<Complex>(RootSpan)>;
using JacobianMap = std::function<Eigen::MatrixXcd(RootSpan)>;

struct NewtonResult {
  RootList roots;
  bool converged = false;
  int iterations = 0;
  /// Set when the start was dropped: pole hit, singular Jacobian, or stagnation.
  std::string abandoned;
};

/// Damped Newton (up to 30 step halvings). The Jacobian is `jac` when given, central
/// finite differences otherwise. Converged iff ‖f‖_∞ ≤ newton_tol · (1 + ‖f(x0)‖_∞). ParameterDomainError
/// from f abandons the start; during the line search it only rejects the trial step.
NewtonResult newton_refine(const ResidualMap& f, RootSpan x0, const SolverConfig& cfg,
                           const JacobianMap& jac = {});

/// Exactly cfg.starts deterministic start lists of p roots: a quarter near the
/// zeros of ξ(x, m̄−p), the rest drawn from the annulus 0.5 ≤ |x| ≤ 2·max|λ_x|^{1/2}.
/// Every start clears the pole margin and is canonicalized.
std::vector<RootList> seed_starts(BetheMode mode, int p, const HeunParams& hp,
                                  const DynContext& ctx, const SolverConfig& cfg);

/// Analytic zeros of ξ(x, m): −N ± (β−γ+δ), N + 2 + γ + δ ± β, 2m − γ − δ.
std::vector<Complex> vacuum_weight_zeros(Complex m, const RacahParams& rp);

struct CoverageEntry {
  Complex eigenvalue;
  bool matched = false;
};

struct SolveReport {
  BetheMode mode = BetheMode::Homogeneous;
  /// Particle numbers that were solved for (p̄ values, or N).
  std::vector<int> particle_numbers;
  std::vector<BetheState> states;
  int attempts = 0;
  int converged = 0;
  int distinct = 0;
  std::vector<CoverageEntry> spectrum_coverage;
  /// Some certified eigenvalue lies within the matching tolerance of two oracle eigenvalues.
  bool ambiguous_match = false;

  double coverage_fraction() const;
};

/// Solves U_r = 0 for every integer p̄ in [0, N]. Throws ModeError when no such
/// p̄ exists and SolverFailure when no start converges.
SolveReport solve_homogeneous(const HeunParams& hp, const DynContext& ctx,
                              const SolverConfig& cfg);

/// Solves U_r + U_r⁽ⁱ⁾ = 0 with N roots. Partial spectrum coverage is reported,
/// not an error; SolverFailure only when no start converges.
SolveReport solve_inhomogeneous(const HeunParams& hp, const DynContext& ctx,
                                const SolverConfig& cfg);

/// Eigenvalue of a root configuration at spectral parameter u:
/// w_p (homogeneous) or w_N + w⁽ⁱ⁾ (inhomogeneous).
Complex state_eigenvalue(RootSpan roots, BetheMode mode, Complex u, const HeunParams& hp,
                         const DynContext& ctx);

}  // namespace heunracah
