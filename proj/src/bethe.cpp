#include "heunracah/bethe.hpp"

#include <algorithm>
#include <limits>

namespace heunracah {

namespace {

using detail::nonzero;

// Π_{ℓ≠skip} k1(y, x_ℓ)
Complex k1_product(Complex y, RootSpan roots, std::size_t skip) {
  Complex prod = 1.0;
  for (std::size_t l = 0; l < roots.size(); ++l) {
    if (l != skip) prod *= coeff_k1(y, roots[l]);
  }
  return prod;
}

constexpr std::size_t kNoSkip = std::numeric_limits<std::size_t>::max();

// (δρ + γρ + ρ(c + 2p) − s2 − 1), the shifted constant appearing in ψ.
Complex psi_shift(double c, int p, const HeunParams& hp, const RacahParams& rp) {
  const Complex rho = hp.rho;
  return rp.delta * rho + rp.gamma * rho + rho * (c + 2.0 * p) - hp.s2 - 1.0;
}

// Π_r (L1² − ρ²x_r²)/(L3² − ρ²x_r²)
Complex psi_root_product(int p, RootSpan roots, const HeunParams& hp, const RacahParams& rp) {
  const Complex l1 = psi_shift(1.0, p, hp, rp);
  const Complex l3 = psi_shift(3.0, p, hp, rp);
  const Complex rho2 = hp.rho * hp.rho;
  Complex prod = 1.0;
  for (Complex x : roots) {
    prod *= (l1 * l1 - rho2 * x * x) / nonzero(l3 * l3 - rho2 * x * x, "ψ root denominator");
  }
  return prod;
}

void require_root_count(RootSpan roots, int N, const char* who) {
  if (static_cast<int>(roots.size()) != N) {
    throw DimensionError(std::string(who) + " needs exactly N=" + std::to_string(N) +
                         " roots, got " + std::to_string(roots.size()));
  }
}

}  // namespace

std::string_view to_string(BetheMode mode) {
  return mode == BetheMode::Homogeneous ? "homogeneous" : "inhomogeneous";
}

StateVector vacuum(Eigen::Index dim) {
  StateVector e0 = StateVector::Zero(dim);
  e0(0) = 1.0;
  return e0;
}

Complex vacuum_xi(Complex u, Complex m, const RacahParams& p) {
  const double N = p.N;
  const Complex bgd = p.beta - p.gamma + p.delta;
  const Complex s = p.gamma + p.delta;
  const Complex t = u - N - 2.0 - s;
  const Complex den = 8.0 * nonzero(u - 1.0, "u−1") * nonzero(s - 2.0 * m + 2.0 - u, "δ+γ−2m+2−u");
  return ((u + N) * (u + N) - bgd * bgd) * (p.beta * p.beta - t * t) * (s - 2.0 * m + u) / den;
}

VacuumCoeffs vacuum_coeffs(Complex u, Complex m, const RacahParams& p, Complex rho) {
  const Complex s = p.gamma + p.delta;
  const Complex den = nonzero(2.0 * m * rho - 1.0, "2mρ−1") *
                      nonzero(s - 2.0 * m + 2.0 - u, "δ+γ−2m+2−u");
  const Complex zeta = (s * rho + 2.0 * m * rho + 2.0 * rho - rho * u - 2.0) / den;
  return {vacuum_xi(u, m, p), zeta};
}

StateVector bethe_vector(RootSpan roots, Complex m_top, const DynContext& ctx) {
  StateVector v = vacuum(ctx.dim());
  for (std::size_t i = roots.size(); i-- > 0;) {
    v = op_B(roots[i], m_top - static_cast<double>(i), ctx) * v;
  }
  return v;
}

Complex f1_W(Complex v, const HeunParams& hp) {
  nonzero(v, "v");
  const Complex rho = hp.rho;
  const Complex t = rho * v - rho + hp.s2;
  return (2.0 * rho * (rho - 1.0) * hp.s1 - (t + 1.0) * (t - 1.0)) * (1.0 - 1.0 / v);
}

Complex eigenvalue_w(Complex u, RootSpan roots, const HeunParams& hp, const DynContext& ctx) {
  const auto& rp = ctx.params();
  const Complex m = hp.m_bar - static_cast<double>(roots.size());
  const auto h = h_coeffs(u, hp, ctx);
  return h.h1_plus * vacuum_xi(u, m, rp) * k1_product(u, roots, kNoSkip) +
         h.h1_minus * vacuum_xi(-u, m, rp) * k1_product(-u, roots, kNoSkip) + h.h2;
}

Complex unwanted_U(std::size_t r, RootSpan roots, const HeunParams& hp, const DynContext& ctx) {
  if (r >= roots.size()) throw DimensionError("unwanted_U: root index out of range");
  const Complex m = hp.m_bar - static_cast<double>(roots.size());
  Complex total = 0.0;
  for (double eps : {1.0, -1.0}) {
    const Complex y = eps * roots[r];
    total += f1_W(y, hp) * vacuum_xi(y, m, ctx.params()) * k1_product(y, roots, r);
  }
  return total;
}

Complex psi_prefactor(Complex p, const HeunParams& hp, const RacahParams& rp) {
  const Complex rho = hp.rho;
  return 2.0 * (1.0 - rho) * hp.s1 +
         (rp.gamma + rp.delta + 2.0 + 2.0 * p) *
             (rp.delta * rho + rp.gamma * rho + 2.0 * rho * (p + 1.0) - 2.0);
}

Complex psi_factored(Complex u, int p, RootSpan roots, const HeunParams& hp,
                     const RacahParams& rp) {
  const Complex rho = hp.rho;
  const Complex l3 = psi_shift(3.0, p, hp, rp);
  const Complex den = (1.0 - rho) * nonzero(l3 * l3 - rho * rho * u * u, "ψ u denominator");
  return rho * rho * psi_prefactor(static_cast<double>(p), hp, rp) / den *
         psi_root_product(p, roots, hp, rp);
}

PsiValues psi(Complex u, int p, RootSpan roots, const HeunParams& hp, const DynContext& ctx) {
  const auto& rp = ctx.params();
  const Complex m = hp.m_bar - static_cast<double>(p);
  Complex summed = 0.0;
  for (double nu : {1.0, -1.0}) {
    const Complex w = nu * u;
    Complex inner = vacuum_coeffs(w, m, rp, hp.rho).zeta * k1_product(w, roots, kNoSkip);
    for (double eps : {1.0, -1.0}) {
      for (std::size_t t = 0; t < roots.size(); ++t) {
        const Complex y = eps * roots[t];
        inner += vacuum_coeffs(y, m, rp, hp.rho).zeta * coeff_k2(w, y, hp.m_bar, hp.rho) *
                 k1_product(y, roots, t);
      }
    }
    summed += heun_h1(w, hp) * inner;
  }
  return {psi_factored(u, p, roots, hp, rp), summed};
}

std::vector<Complex> homogeneous_residuals(RootSpan roots, const HeunParams& hp,
                                           const DynContext& ctx) {
  const auto bars = integer_p_bars(hp, ctx.params().N);
  const int p = static_cast<int>(roots.size());
  if (std::find(bars.begin(), bars.end(), p) == bars.end()) {
    throw ModeError("homogeneous Bethe equations need p = p̄ integer; got p=" +
                    std::to_string(p));
  }
  std::vector<Complex> out;
  out.reserve(roots.size());
  for (std::size_t r = 0; r < roots.size(); ++r) out.push_back(unwanted_U(r, roots, hp, ctx));
  return out;
}

std::vector<double> homogeneous_ratio_defects(RootSpan roots, const HeunParams& hp,
                                              const DynContext& ctx) {
  const Complex m = hp.m_bar - static_cast<double>(roots.size());
  const auto& rp = ctx.params();
  std::vector<double> out;
  for (std::size_t r = 0; r < roots.size(); ++r) {
    const Complex x = roots[r];
    const Complex lhs = f1_W(x, hp) * vacuum_xi(x, m, rp) /
                        nonzero(f1_W(-x, hp) * vacuum_xi(-x, m, rp), "ratio denominator");
    Complex rhs = -1.0;
    for (std::size_t l = 0; l < roots.size(); ++l) {
      if (l == r) continue;
      const Complex xl2 = roots[l] * roots[l];
      rhs *= ((x + 2.0) * (x + 2.0) - xl2) / nonzero((x - 2.0) * (x - 2.0) - xl2, "ratio pole");
    }
    out.push_back(std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
  }
  return out;
}

namespace {

// τ coefficients; τ_u is left at zero when no spectral parameter is given.
MabaCoeffs maba_coeffs(RootSpan roots, std::optional<Complex> u, Complex m,
                       const DynContext& ctx) {
  const auto& rp = ctx.params();
  const int N = rp.N;
  require_root_count(roots, N, "maba_reduce");
  const Complex beta = rp.beta;
  const Complex shift_k = rp.gamma + rp.delta - 2.0 * m + 2.0 * N + 2.0;
  const Complex K = shift_k * shift_k;

  Complex common = ((2.0 * m - double(N)) * (2.0 * m - double(N)) - beta * beta) / 8.0;
  for (int k = 1; k <= N; ++k) {
    common /= nonzero((2.0 * m - 2.0 * rp.delta - beta - double(N) - 2.0 * k) *
                          (2.0 * m - 2.0 * rp.gamma + beta - double(N) - 2.0 * k),
                      "τ denominator");
  }
  const Complex bgd = beta - rp.gamma + rp.delta - double(N);
  auto weight_poly = [&](Complex y) {
    Complex prod = 1.0;
    for (int k = 0; k <= N; ++k) prod *= y * y - (bgd + 2.0 * k) * (bgd + 2.0 * k);
    return prod;
  };

  MabaCoeffs out;
  out.K = K;
  if (u) {
    out.tau_u = common * weight_poly(*u);
    for (Complex x : roots) out.tau_u *= (K - x * x) / nonzero(*u * *u - x * x, "u²−x²");
  }
  out.tau.reserve(roots.size());
  for (std::size_t j = 0; j < roots.size(); ++j) {
    Complex t = common * weight_poly(roots[j]);
    for (std::size_t k = 0; k < roots.size(); ++k) {
      if (k == j) continue;
      t *= (K - roots[k] * roots[k]) / nonzero(roots[j] * roots[j] - roots[k] * roots[k], "x_j²−x_k²");
    }
    out.tau.push_back(t);
  }
  return out;
}

// U_r⁽ⁱ⁾ = τ_r ρ F Π_q (…); independent of the spectral parameter.
std::vector<Complex> inhomogeneous_U(const MabaCoeffs& c, RootSpan roots, const HeunParams& hp,
                                     const RacahParams& rp) {
  const Complex weight = hp.rho * psi_prefactor(static_cast<double>(rp.N), hp, rp) *
                         psi_root_product(rp.N, roots, hp, rp);
  std::vector<Complex> out;
  out.reserve(c.tau.size());
  for (Complex t : c.tau) out.push_back(t * weight);
  return out;
}

}  // namespace

MabaCoeffs maba_reduce(RootSpan roots, Complex u, Complex m, const DynContext& ctx) {
  return maba_coeffs(roots, u, m, ctx);
}

double maba_residual(RootSpan roots, Complex u, Complex m, const DynContext& ctx) {
  const auto c = maba_reduce(roots, u, m, ctx);
  RootList extended(roots.begin(), roots.end());
  extended.push_back(u);
  const StateVector lhs = bethe_vector(extended, m, ctx);
  const bool vanishing = c.tau_u == 0.0 && std::all_of(c.tau.begin(), c.tau.end(),
                                                       [](Complex t) { return t == 0.0; });
  if (vanishing) {
    // All weights are zero, so the product must cancel to zero; compare against the
    // size of its factors.
    double scale = 1.0;
    for (std::size_t i = 0; i < extended.size(); ++i) {
      scale *= op_B(extended[i], m - static_cast<double>(i), ctx).norm();
    }
    return lhs.norm() / std::max(1.0, scale);
  }
  StateVector rhs = c.tau_u * bethe_vector(roots, m, ctx);
  for (std::size_t j = 0; j < roots.size(); ++j) {
    RootList swapped(roots.begin(), roots.end());
    swapped[j] = u;
    const Complex x2 = roots[j] * roots[j];
    rhs += (c.K - u * u) / nonzero(x2 - u * u, "x_j²−u²") * c.tau[j] *
           bethe_vector(swapped, m, ctx);
  }
  return residual_norm(lhs, rhs);
}

InhomogeneousTerms inhomogeneous_terms(RootSpan roots, Complex u, const HeunParams& hp,
                                       const DynContext& ctx) {
  const auto& rp = ctx.params();
  const auto c = maba_coeffs(roots, u, hp.m_bar, ctx);
  return {c.tau_u * psi_factored(u, rp.N, roots, hp, rp), inhomogeneous_U(c, roots, hp, rp)};
}

std::vector<Complex> inhomogeneous_residuals(RootSpan roots, Complex u, const HeunParams& hp,
                                             const DynContext& ctx) {
  if (pole_distance(roots, u, BetheMode::Inhomogeneous, hp, ctx) == 0.0) {
    throw ParameterDomainError("inhomogeneous_residuals: u_aux sits on a pole");
  }
  const auto& rp = ctx.params();
  auto out = inhomogeneous_U(maba_coeffs(roots, std::nullopt, hp.m_bar, ctx), roots, hp, rp);
  for (std::size_t r = 0; r < roots.size(); ++r) out[r] += unwanted_U(r, roots, hp, ctx);
  return out;
}

double bethe_residual_scale(RootSpan roots, BetheMode mode, const HeunParams& hp,
                            const DynContext& ctx) {
  const Complex m = hp.m_bar - static_cast<double>(roots.size());
  std::vector<Complex> extra(roots.size(), 0.0);
  if (mode == BetheMode::Inhomogeneous) {
    extra = inhomogeneous_U(maba_coeffs(roots, std::nullopt, hp.m_bar, ctx), roots, hp,
                            ctx.params());
  }
  double worst = 0.0;
  for (std::size_t r = 0; r < roots.size(); ++r) {
    double mag = std::abs(extra[r]);
    for (double eps : {1.0, -1.0}) {
      const Complex y = eps * roots[r];
      mag += std::abs(f1_W(y, hp) * vacuum_xi(y, m, ctx.params()) * k1_product(y, roots, r));
    }
    worst = std::max(worst, mag);
  }
  return 1.0 + worst;
}

StateVector abv_rhs(Complex u, RootSpan roots, Complex m, const DynContext& ctx,
                    SlotConvention slot) {
  const auto& rp = ctx.params();
  const std::size_t p = roots.size();
  const Complex m_last = m - static_cast<double>(p);
  const StateVector e0 = vacuum(ctx.dim());

  auto vacuum_action = [&](Complex w) -> StateVector {
    const auto vc = vacuum_coeffs(w, m_last, rp, ctx.rho());
    return vc.xi * e0 + vc.zeta * (op_B(w, m_last, ctx) * e0);
  };
  auto apply_chain = [&](RootSpan ys, std::size_t swapped, StateVector v) {
    for (std::size_t i = p; i-- > 0;) {
      Complex mi = m - static_cast<double>(i);
      if (i == swapped && slot == SlotConvention::AsPrinted) mi -= 2.0;
      v = op_B(ys[i], mi, ctx) * v;
    }
    return v;
  };

  StateVector out = k1_product(u, roots, kNoSkip) * apply_chain(roots, kNoSkip, vacuum_action(u));
  for (double eps : {1.0, -1.0}) {
    for (std::size_t r = 0; r < p; ++r) {
      const Complex y = eps * roots[r];
      const Complex coef = coeff_k2(u, y, m, ctx.rho()) * k1_product(y, roots, r);
      RootList ys(roots.begin(), roots.end());
      ys[r] = u;
      out += coef * apply_chain(ys, r, vacuum_action(y));
    }
  }
  return out;
}

double abv_residual(Complex u, RootSpan roots, Complex m, const DynContext& ctx,
                    SlotConvention slot) {
  const StateVector lhs = op_A(u, m, ctx) * bethe_vector(roots, m, ctx);
  return residual_norm(lhs, abv_rhs(u, roots, m, ctx, slot));
}

namespace {

// Columns V_r(u): the Bethe vector with x_r replaced by u.
Eigen::MatrixXcd swapped_vectors(Complex u, RootSpan roots, Complex m, const DynContext& ctx) {
  Eigen::MatrixXcd cols(ctx.dim(), static_cast<Eigen::Index>(roots.size()));
  for (std::size_t r = 0; r < roots.size(); ++r) {
    RootList ys(roots.begin(), roots.end());
    ys[r] = u;
    cols.col(static_cast<Eigen::Index>(r)) = bethe_vector(ys, m, ctx);
  }
  return cols;
}

}  // namespace

double action_residual(Complex u, RootSpan roots, const HeunParams& hp, const DynContext& ctx) {
  const int p = static_cast<int>(roots.size());
  const Complex rho = hp.rho;
  const OperatorMatrix w = build_W_parametric(hp, ctx);
  const StateVector v = bethe_vector(roots, hp.m_bar, ctx);
  const Eigen::MatrixXcd swapped = swapped_vectors(u, roots, hp.m_bar, ctx);

  StateVector rhs = eigenvalue_w(u, roots, hp, ctx) * v;
  for (std::size_t r = 0; r < roots.size(); ++r) {
    const Complex x2 = roots[r] * roots[r];
    rhs += unwanted_U(r, roots, hp, ctx) / (rho * (rho - 1.0) * nonzero(u * u - x2, "u²−x²")) *
           swapped.col(static_cast<Eigen::Index>(r));
  }
  RootList extended(roots.begin(), roots.end());
  extended.push_back(u);
  rhs += psi_factored(u, p, roots, hp, ctx.params()) * bethe_vector(extended, hp.m_bar, ctx);
  return residual_norm(StateVector(w * v), rhs);
}

double swapped_span_defect(Complex u, RootSpan roots, const HeunParams& hp,
                           const DynContext& ctx) {
  const OperatorMatrix w = build_W_parametric(hp, ctx);
  const StateVector v = bethe_vector(roots, hp.m_bar, ctx);
  const StateVector wv = w * v;
  const StateVector defect = wv - eigenvalue_w(u, roots, hp, ctx) * v;
  if (roots.empty()) return defect.norm() / std::max(1.0, wv.norm());
  const Eigen::MatrixXcd swapped = swapped_vectors(u, roots, hp.m_bar, ctx);
  const Eigen::VectorXcd coef = swapped.completeOrthogonalDecomposition().solve(defect);
  return (defect - swapped * coef).norm() / std::max(1.0, wv.norm());
}

RootList canonical_roots(RootSpan roots) {
  RootList out;
  out.reserve(roots.size());
  for (Complex x : roots) {
    if (x.real() < 0.0 || (x.real() == 0.0 && x.imag() < 0.0)) x = -x;
    out.push_back(x);
  }
  std::sort(out.begin(), out.end(), complex_less);
  return out;
}

double pole_distance(RootSpan roots, std::optional<Complex> u, BetheMode mode,
                     const HeunParams& hp, const DynContext& ctx) {
  const auto& rp = ctx.params();
  const int p = static_cast<int>(roots.size());
  const Complex m = hp.m_bar - static_cast<double>(p);
  const Complex xi_pole = rp.gamma + rp.delta - 2.0 * m + 2.0;
  const Complex l3 = psi_shift(3.0, p, hp, rp);
  const Complex rho2 = hp.rho * hp.rho;

  double dist = std::numeric_limits<double>::infinity();
  auto take = [&](Complex d) { dist = std::min(dist, std::abs(d)); };
  auto spectral_point = [&](Complex y) {
    take(y);
    take(y - 1.0);
    take(y + 1.0);
    take(xi_pole - y);
    take(xi_pole + y);
    take(l3 * l3 - rho2 * y * y);
  };
  if (u) spectral_point(*u);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    spectral_point(roots[i]);
    if (u) take(*u * *u - roots[i] * roots[i]);
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      take(roots[i] * roots[i] - roots[j] * roots[j]);
    }
  }
  if (mode == BetheMode::Inhomogeneous) {
    const Complex mb = hp.m_bar;
    const double N = rp.N;
    for (int k = 1; k <= rp.N; ++k) {
      take(2.0 * mb - 2.0 * rp.delta - rp.beta - N - 2.0 * k);
      take(2.0 * mb - 2.0 * rp.gamma + rp.beta - N - 2.0 * k);
    }
  }
  return dist;
}

}  // namespace heunracah
