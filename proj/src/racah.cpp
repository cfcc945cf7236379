#include "heunracah/racah.hpp"

#include <string>

namespace heunracah {

namespace {

constexpr double kExactPoleTol = 1e-12;

// Smallest of the B/D/λ denominators over x ∈ {0..N}, with the location.
struct WorstDenominator {
  double magnitude;
  int x;
  const char* expr;
};

WorstDenominator worst_denominator(int N, Complex gamma, Complex delta) {
  WorstDenominator worst{std::numeric_limits<double>::infinity(), 0, ""};
  const Complex s = gamma + delta;
  for (int x = 0; x <= N; ++x) {
    const double two_x = 2.0 * x;
    const std::pair<Complex, const char*> dens[] = {
        {two_x + s + 1.0, "2x+γ+δ+1"},
        {two_x + s, "2x+γ+δ"},
        {two_x + s + 2.0, "2x+γ+δ+2"},
    };
    for (const auto& [value, expr] : dens) {
      if (std::abs(value) < worst.magnitude) worst = {std::abs(value), x, expr};
    }
  }
  return worst;
}

}  // namespace

RacahParams build_params(int N, Complex beta, Complex gamma, Complex delta) {
  if (N < 0) throw ParameterDomainError("N must be nonnegative, got " + std::to_string(N));
  if (N + 1 > kMaxDim) throw ParameterDomainError("N must be at most 63");
  const auto worst = worst_denominator(N, gamma, delta);
  if (worst.magnitude <= kExactPoleTol) {
    throw ParameterDomainError(std::string("B/D/λ denominator ") + worst.expr +
                               " vanishes at x=" + std::to_string(worst.x));
  }

  RacahParams p;
  p.N = N;
  p.beta = beta;
  p.gamma = gamma;
  p.delta = delta;
  p.alpha = Complex(-(N + 1.0), 0.0);
  const Complex a = p.alpha;
  p.b = (beta + delta) * (beta - gamma) + (a - delta) * (a - gamma) + delta * delta +
        gamma * gamma - 2.0;
  p.d1 = (gamma * gamma - delta * delta) * (2.0 * beta - gamma + delta) *
         (gamma + delta - 2.0 * a) / 8.0;
  p.d2 = (a * a - beta * beta) * (a - beta - 2.0 * delta) * (2.0 * gamma - beta - a) / 8.0;
  return p;
}

Complex coeff_B(const RacahParams& p, int ix) {
  const double x = ix;
  const Complex s = p.gamma + p.delta;
  return (x + p.alpha + 1.0) * (x + p.beta + p.delta + 1.0) * (x + p.gamma + 1.0) *
         (x + s + 1.0) / ((2.0 * x + s + 1.0) * (2.0 * x + s + 2.0));
}

Complex coeff_D(const RacahParams& p, int ix) {
  if (ix == 0) return 0.0;
  const double x = ix;
  const Complex s = p.gamma + p.delta;
  return x * (x - p.alpha + s) * (x - p.beta + p.gamma) *
         (x + p.delta) / ((2.0 * x + s) * (2.0 * x + s + 1.0));
}

Complex eigen_lambda(const RacahParams& p, int ix) {
  const double x = ix;
  const Complex s = p.gamma + p.delta;
  return (2.0 * x + s + 2.0) * (2.0 * x + s) / 4.0;
}

Representation build_representation(const RacahParams& p) {
  const Eigen::Index n = p.dim();
  const Complex shift = (p.alpha + p.beta) * (p.alpha + p.beta + 2.0) / 4.0;

  Representation r;
  r.params = p;
  r.X = OperatorMatrix::Zero(n, n);
  r.Y = OperatorMatrix::Zero(n, n);
  for (int x = 0; x <= p.N; ++x) {
    const Complex bx = x == p.N ? Complex(0.0) : coeff_B(p, x);
    r.X(x, x) = shift - bx - coeff_D(p, x);
    if (x < p.N) {
      r.X(x + 1, x) = bx;
      r.X(x, x + 1) = coeff_D(p, x + 1);
    }
    r.Y(x, x) = eigen_lambda(p, x);
  }
  r.Z = commutator(r.X, r.Y);
  require_finite(r.X, "X");
  require_finite(r.Y, "Y");
  return r;
}

DefiningRelationResiduals defining_relation_residuals(const OperatorMatrix& X,
                                                      const OperatorMatrix& Y,
                                                      const OperatorMatrix& Z, Complex b,
                                                      Complex d1, Complex d2) {
  const OperatorMatrix I = identity(X.rows());
  const OperatorMatrix xy = anticommutator(X, Y);
  DefiningRelationResiduals out;
  out.r1 = residual_norm(commutator(X, Y), Z);
  out.r2 = residual_norm(commutator(Z, X), -2.0 * X * X - 2.0 * xy + b * X + d2 * I);
  out.r3 = residual_norm(commutator(Y, Z), -2.0 * Y * Y - 2.0 * xy + b * Y + d1 * I);
  return out;
}

DefiningRelationResiduals verify_defining_relations(const Representation& r, double tol) {
  const auto& p = r.params;
  const auto res = defining_relation_residuals(r.X, r.Y, r.Z, p.b, p.d1, p.d2);
  const std::pair<RelationId, double> all[] = {
      {RelationId::R1, res.r1}, {RelationId::R2, res.r2}, {RelationId::R3, res.r3}};
  for (const auto& [id, value] : all) {
    if (!(value <= tol)) {
      VerificationReport report;
      report.relation = id;
      report.samples = 1;
      report.tol = tol;
      report.max_residual = value;
      throw RelationViolation(std::move(report));
    }
  }
  return res;
}

RacahParams random_params(int N, Rng& rng, double margin) {
  for (;;) {
    const Complex beta = sample_annulus(rng);
    const Complex gamma = sample_annulus(rng);
    const Complex delta = sample_annulus(rng);
    if (worst_denominator(N, gamma, delta).magnitude < margin) continue;
    return build_params(N, beta, gamma, delta);
  }
}

}  // namespace heunracah
