#pragma once

#include "heunracah/core.hpp"
#include "heunracah/report.hpp"
#include "heunracah/sampling.hpp"

namespace heunracah {

/// Parameters of the (N+1)-dimensional Racah representation.
/// alpha is pinned to −(N+1); b, d1, d2 are the derived structure constants.
struct RacahParams {
  int N = 1;
  Complex beta;
  Complex gamma;
  Complex delta;
  Complex alpha;
  Complex b;
  Complex d1;
  Complex d2;

  Eigen::Index dim() const { return N + 1; }
};

/// Validates the B(x), D(x), λ_x denominators and derives α, b, d1, d2.
/// Throws ParameterDomainError naming the first offending x.
RacahParams build_params(int N, Complex beta, Complex gamma, Complex delta);

// Recurrence coefficients of the Racah representation.
Complex coeff_B(const RacahParams& p, int x);
Complex coeff_D(const RacahParams& p, int x);
Complex eigen_lambda(const RacahParams& p, int x);

struct Representation {
  RacahParams params;
  OperatorMatrix X;
  OperatorMatrix Y;
  OperatorMatrix Z;  // [X, Y]

  Eigen::Index dim() const { return X.rows(); }
};

Representation build_representation(const RacahParams& p);

struct DefiningRelationResiduals {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
};

/// Residuals of the three defining relations for explicit structure constants.
/// Exposed separately so callers can check a representation against perturbed b, d1, d2.
DefiningRelationResiduals defining_relation_residuals(const OperatorMatrix& X,
                                                      const OperatorMatrix& Y,
                                                      const OperatorMatrix& Z, Complex b,
                                                      Complex d1, Complex d2);

/// Returns the three residuals; throws RelationViolation (carrying the worst one)
/// if any exceeds tol.
DefiningRelationResiduals verify_defining_relations(const Representation& r, double tol);

/// Seeded draw of (β, γ, δ) from the annulus 0.5 ≤ |·| ≤ 5, rejecting draws whose
/// B/D/λ denominators come within `margin` of zero.
RacahParams random_params(int N, Rng& rng, double margin = kPoleMargin);

}  // namespace heunracah
