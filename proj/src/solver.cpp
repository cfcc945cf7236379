#include "heunracah/solver.hpp"

#include <algorithm>
#include <limits>

namespace heunracah {

namespace {

constexpr int kMaxHalvings = 30;
constexpr double kMaxCondition = 1e14;
// Bethe vectors smaller than this fraction of Π‖B‖_F are treated as null.
constexpr double kNullVectorRatio = 1e-12;
constexpr int kMaxStartDraws = 10000;

double inf_norm(const std::vector<Complex>& v) {
  double n = 0.0;
  for (Complex c : v) n = std::max(n, std::abs(c));
  return std::isfinite(n) ? n : std::numeric_limits<double>::infinity();
}

Eigen::VectorXcd as_vector(const std::vector<Complex>& v) {
  return Eigen::Map<const Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

bool same_state(const RootList& a, const RootList& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > tol) return false;
  }
  return true;
}

ResidualMap residual_map(BetheMode mode, const HeunParams& hp, const DynContext& ctx,
                         const SolverConfig& cfg) {
  return [mode, &hp, &ctx, &cfg](RootSpan xs) {
    if (pole_distance(xs, std::nullopt, mode, hp, ctx) < cfg.pole_margin) {
      throw ParameterDomainError("roots within pole margin");
    }
    return mode == BetheMode::Homogeneous ? homogeneous_residuals(xs, hp, ctx)
                                          : inhomogeneous_residuals(xs, cfg.u_aux, hp, ctx);
  };
}

class Certifier {
 public:
  Certifier(BetheMode mode, const HeunParams& hp, const DynContext& ctx, const SolverConfig& cfg)
      : mode_(mode),
        hp_(hp),
        ctx_(ctx),
        cfg_(cfg),
        w_(build_W_parametric(hp, ctx)),
        w_norm_(w_.norm()),
        oracle_(dense_spectrum(w_, false).eigenvalues),
        rng_(cfg.seed ^ 0x9e3779b97f4a7c15ULL) {}

  const std::vector<Complex>& oracle() const { return oracle_; }

  std::optional<BetheState> certify(const RootList& roots) {
    BetheState s;
    s.roots = roots;
    s.mode = mode_;
    s.u_aux = admissible_u(roots);
    try {
      s.bethe_residuals = mode_ == BetheMode::Homogeneous
                              ? homogeneous_residuals(roots, hp_, ctx_)
                              : inhomogeneous_residuals(roots, s.u_aux, hp_, ctx_);
      const double scale = bethe_residual_scale(roots, mode_, hp_, ctx_);
      if (!(inf_norm(s.bethe_residuals) <= kBetheResidualTol * scale)) return std::nullopt;
      s.eigenvalue = state_eigenvalue(roots, mode_, s.u_aux, hp_, ctx_);
    } catch (const ParameterDomainError&) {
      return std::nullopt;
    }

    const StateVector v = bethe_vector(roots, hp_.m_bar, ctx_);
    double chain_norm = 1.0;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      chain_norm *= op_B(roots[i], hp_.m_bar - static_cast<double>(i), ctx_).norm();
    }
    if (!(v.norm() > kNullVectorRatio * chain_norm)) return std::nullopt;

    s.eigen_residual = (w_ * v - s.eigenvalue * v).norm() / (w_norm_ * v.norm());
    if (!(s.eigen_residual <= kEigenResidualTol)) return std::nullopt;
    if (!nearest_oracle(s.eigenvalue)) return std::nullopt;
    return s;
  }

  /// Index of the nearest oracle eigenvalue within the matching tolerance.
  std::optional<std::size_t> nearest_oracle(Complex lambda) const {
    std::optional<std::size_t> best;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < oracle_.size(); ++k) {
      const double d = std::abs(lambda - oracle_[k]);
      if (d <= kEigenMatchTol * std::max(1.0, std::abs(oracle_[k])) && d < best_dist) {
        best = k;
        best_dist = d;
      }
    }
    return best;
  }

  std::size_t matches_within_tol(Complex lambda) const {
    std::size_t count = 0;
    for (Complex mu : oracle_) {
      if (std::abs(lambda - mu) <= kEigenMatchTol * std::max(1.0, std::abs(mu))) ++count;
    }
    return count;
  }

 private:
  Complex admissible_u(const RootList& roots) {
    Complex u = cfg_.u_aux;
    while (pole_distance(roots, u, mode_, hp_, ctx_) < cfg_.pole_margin) {
      u = sample_annulus(rng_, 0.5, 5.0);
    }
    return u;
  }

  BetheMode mode_;
  const HeunParams& hp_;
  const DynContext& ctx_;
  const SolverConfig& cfg_;
  OperatorMatrix w_;
  double w_norm_;
  std::vector<Complex> oracle_;
  Rng rng_;
};

void solve_particle_number(BetheMode mode, int p, const HeunParams& hp, const DynContext& ctx,
                           const SolverConfig& cfg, Certifier& certifier, SolveReport& report,
                           std::vector<RootList>& distinct) {
  const auto starts = seed_starts(mode, p, hp, ctx, cfg);
  const auto f = residual_map(mode, hp, ctx, cfg);
  for (const auto& start : starts) {
    ++report.attempts;
    RootList roots;
    if (p == 0) {
      roots = {};
    } else {
      auto result = newton_refine(f, start, cfg);
      if (!result.converged) continue;
      roots = canonical_roots(result.roots);
    }
    ++report.converged;
    if (pole_distance(roots, std::nullopt, mode, hp, ctx) < cfg.pole_margin) continue;
    const bool seen = std::any_of(distinct.begin(), distinct.end(), [&](const RootList& r) {
      return same_state(r, roots, cfg.deflation_tol);
    });
    if (seen) continue;
    distinct.push_back(roots);
    ++report.distinct;
    if (auto state = certifier.certify(roots)) report.states.push_back(std::move(*state));
  }
}

void finalize(SolveReport& report, const Certifier& certifier) {
  std::stable_sort(report.states.begin(), report.states.end(),
                   [](const BetheState& a, const BetheState& b) {
                     return complex_less(a.eigenvalue, b.eigenvalue);
                   });
  for (Complex mu : certifier.oracle()) report.spectrum_coverage.push_back({mu, false});
  for (const auto& s : report.states) {
    if (certifier.matches_within_tol(s.eigenvalue) > 1) report.ambiguous_match = true;
    if (auto k = certifier.nearest_oracle(s.eigenvalue)) {
      report.spectrum_coverage[*k].matched = true;
    }
  }
}

}  // namespace

NewtonResult newton_refine(const ResidualMap& f, RootSpan x0, const SolverConfig& cfg,
                           const JacobianMap& exact_jac) {
  NewtonResult out;
  out.roots.assign(x0.begin(), x0.end());
  const auto n = static_cast<Eigen::Index>(x0.size());

  std::vector<Complex> fx;
  try {
    fx = f(out.roots);
  } catch (const ParameterDomainError& e) {
    out.abandoned = std::string("start at pole: ") + e.what();
    return out;
  }
  double fnorm = inf_norm(fx);
  if (!std::isfinite(fnorm)) {
    out.abandoned = "non-finite residual at start";
    return out;
  }
  const double threshold = cfg.newton_tol * (1.0 + fnorm);

  for (;;) {
    if (fnorm <= threshold) {
      out.converged = true;
      return out;
    }
    if (out.iterations >= cfg.max_iter) {
      out.abandoned = "iteration limit";
      return out;
    }

    Eigen::MatrixXcd jac(n, n);
    try {
      if (exact_jac) jac = exact_jac(out.roots);
      for (Eigen::Index j = 0; j < n && !exact_jac; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        const double h = cfg.jacobian_step * std::max(1.0, std::abs(out.roots[jj]));
        RootList plus = out.roots, minus = out.roots;
        plus[jj] += h;
        minus[jj] -= h;
        jac.col(j) = (as_vector(f(plus)) - as_vector(f(minus))) / (2.0 * h);
      }
    } catch (const ParameterDomainError& e) {
      out.abandoned = std::string("jacobian stencil hit a pole: ") + e.what();
      return out;
    }
    if (!jac.allFinite()) {
      out.abandoned = "non-finite jacobian";
      return out;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(jac);
    const auto& sv = svd.singularValues();
    if (sv(n - 1) == 0.0 || sv(0) / sv(n - 1) > kMaxCondition) {
      out.abandoned = "singular jacobian";
      return out;
    }
    const Eigen::VectorXcd step = jac.fullPivLu().solve(-as_vector(fx));

    bool accepted = false;
    double t = 1.0;
    for (int k = 0; k <= kMaxHalvings && !accepted; ++k, t *= 0.5) {
      RootList trial = out.roots;
      for (Eigen::Index j = 0; j < n; ++j) trial[static_cast<std::size_t>(j)] += t * step(j);
      try {
        auto ft = f(trial);
        const double tn = inf_norm(ft);
        if (tn < fnorm) {
          out.roots = std::move(trial);
          fx = std::move(ft);
          fnorm = tn;
          accepted = true;
        }
      } catch (const ParameterDomainError&) {
        // Trial step landed on a pole; keep halving.
      }
    }
    ++out.iterations;
    if (!accepted) {
      out.abandoned = "line search stagnated";
      return out;
    }
  }
}

std::vector<Complex> vacuum_weight_zeros(Complex m, const RacahParams& rp) {
  const double N = rp.N;
  const Complex bgd = rp.beta - rp.gamma + rp.delta;
  const Complex top = N + 2.0 + rp.gamma + rp.delta;
  return {-N + bgd, -N - bgd, top + rp.beta, top - rp.beta, 2.0 * m - rp.gamma - rp.delta};
}

std::vector<RootList> seed_starts(BetheMode mode, int p, const HeunParams& hp,
                                  const DynContext& ctx, const SolverConfig& cfg) {
  const auto& rp = ctx.params();
  Rng rng(cfg.seed);
  std::vector<RootList> out;
  out.reserve(static_cast<std::size_t>(cfg.starts));
  if (p == 0) {
    out.assign(static_cast<std::size_t>(cfg.starts), RootList{});
    return out;
  }

  double max_lambda = 0.0;
  for (int x = 0; x <= rp.N; ++x) max_lambda = std::max(max_lambda, std::abs(eigen_lambda(rp, x)));
  const double outer = std::max(1.0, 2.0 * std::sqrt(max_lambda));

  auto guesses = vacuum_weight_zeros(hp.m_bar - static_cast<double>(p), rp);
  const int analytic = cfg.starts >= 2 ? std::max(1, cfg.starts / 4) : 0;
  std::normal_distribution<double> jitter(0.0, 0.05);

  for (int i = 0; i < cfg.starts; ++i) {
    RootList roots(static_cast<std::size_t>(p));
    for (int attempt = 0;; ++attempt) {
      if (attempt == kMaxStartDraws) {
        throw ParameterDomainError("no pole-free start in " + std::to_string(kMaxStartDraws) +
                                   " draws; the Bethe equations have a parameter-level pole");
      }
      for (int j = 0; j < p; ++j) {
        if (i < analytic && attempt < 16) {
          const auto g = guesses[static_cast<std::size_t>(i * p + j) % guesses.size()];
          roots[static_cast<std::size_t>(j)] = g + Complex(jitter(rng), jitter(rng));
        } else {
          roots[static_cast<std::size_t>(j)] = sample_annulus(rng, 0.5, outer);
        }
      }
      roots = canonical_roots(roots);
      if (pole_distance(roots, std::nullopt, mode, hp, ctx) >= cfg.pole_margin) break;
    }
    out.push_back(std::move(roots));
  }
  return out;
}

Complex state_eigenvalue(RootSpan roots, BetheMode mode, Complex u, const HeunParams& hp,
                         const DynContext& ctx) {
  Complex lambda = eigenvalue_w(u, roots, hp, ctx);
  if (mode == BetheMode::Inhomogeneous) lambda += inhomogeneous_terms(roots, u, hp, ctx).w_i;
  return lambda;
}

double SolveReport::coverage_fraction() const {
  if (spectrum_coverage.empty()) return 0.0;
  const auto matched = std::count_if(spectrum_coverage.begin(), spectrum_coverage.end(),
                                     [](const CoverageEntry& e) { return e.matched; });
  return static_cast<double>(matched) / static_cast<double>(spectrum_coverage.size());
}

SolveReport solve_homogeneous(const HeunParams& hp, const DynContext& ctx,
                              const SolverConfig& cfg) {
  const auto& rp = ctx.params();
  const auto bars = integer_p_bars(hp, rp.N);
  if (bars.empty()) {
    auto fmt = [](Complex c) {
      return "(" + std::to_string(c.real()) + "," + std::to_string(c.imag()) + ")";
    };
    throw ModeError("no integer p̄ in [0, N]: p̄+ = " + fmt(hp.p_bar_plus) +
                    ", p̄- = " + fmt(hp.p_bar_minus) + "; use inhomogeneous mode");
  }

  SolveReport report;
  report.mode = BetheMode::Homogeneous;
  report.particle_numbers = bars;
  Certifier certifier(BetheMode::Homogeneous, hp, ctx, cfg);
  std::vector<RootList> distinct;
  for (int p : bars) {
    solve_particle_number(BetheMode::Homogeneous, p, hp, ctx, cfg, certifier, report, distinct);
  }
  if (report.converged == 0) throw SolverFailure("homogeneous solve: no start converged");
  finalize(report, certifier);
  return report;
}

SolveReport solve_inhomogeneous(const HeunParams& hp, const DynContext& ctx,
                                const SolverConfig& cfg) {
  const int N = ctx.params().N;
  SolveReport report;
  report.mode = BetheMode::Inhomogeneous;
  report.particle_numbers = {N};
  Certifier certifier(BetheMode::Inhomogeneous, hp, ctx, cfg);
  std::vector<RootList> distinct;
  solve_particle_number(BetheMode::Inhomogeneous, N, hp, ctx, cfg, certifier, report, distinct);
  if (report.converged == 0) throw SolverFailure("inhomogeneous solve: no start converged");
  finalize(report, certifier);
  return report;
}

}  // namespace heunracah
