#include "fixtures.hpp"

using namespace fixtures;

namespace {

struct Homogeneous {
  DynContext ctx;
  HeunParams hp;
};

// s1 = 0, γ = 1, δ = 2: p̄₊ = (2 − 5ρ)/(2ρ).
Homogeneous homogeneous_case(int n, Complex rho) {
  const auto rep = build_representation(build_params(n, 5.0, 1.0, 2.0));
  return {DynContext(rep, rho), make_heun_params(rho, 0.0, 3.0, rep.params)};
}

struct Generic {
  DynContext ctx;
  HeunParams hp;
};

Generic generic_case(int n) {
  const auto rep = build_representation(
      build_params(n, Complex(5.3, 0.2), Complex(1.1, -0.3), Complex(2.2, 0.1)));
  const Complex rho(1.7, 0.2);
  return {DynContext(rep, rho), make_heun_params(rho, Complex(0.8, 0.4), Complex(2.6, -0.3), rep.params)};
}

double max_abs(const std::vector<Complex>& v) {
  double m = 0.0;
  for (auto c : v) m = std::max(m, std::abs(c));
  return m;
}

void check_certified(const SolveReport& report, const Generic& g) {
  const auto w = build_W_parametric(g.hp, g.ctx);
  const auto oracle = dense_spectrum(w, false).eigenvalues;
  for (const auto& s : report.states) {
    const StateVector v = bethe_vector(s.roots, g.hp.m_bar, g.ctx);
    CHECK((w * v - s.eigenvalue * v).norm() <= 1e-8 * w.norm() * v.norm());
    double best = std::numeric_limits<double>::infinity();
    for (auto mu : oracle) best = std::min(best, std::abs(mu - s.eigenvalue) / std::max(1.0, std::abs(mu)));
    CHECK(best <= 1e-6);
    CHECK(s.eigen_residual <= 1e-8);
    CHECK(max_abs(s.bethe_residuals) <= 1e-9 * bethe_residual_scale(s.roots, s.mode, g.hp, g.ctx));
  }
}

}  // namespace

TEST_SUITE("solver") {
  TEST_CASE("newton: linear map converges in one step") {
    SolverConfig cfg;
    const ResidualMap f = [](RootSpan x) {
      return std::vector<Complex>{2.0 * x[0] + x[1] - 3.0, Complex(0, 1) * x[1] - x[0] + 1.0};
    };
    const JacobianMap jac = [](RootSpan) {
      Eigen::MatrixXcd j(2, 2);
      j << 2.0, 1.0, -1.0, Complex(0, 1);
      return j;
    };
    const RootList x0{Complex(5.0, 1.0), Complex(-2.0, 0.5)};
    const auto exact = newton_refine(f, x0, cfg, jac);
    CHECK(exact.converged);
    CHECK(exact.iterations == 1);
    const auto fd = newton_refine(f, x0, cfg);
    CHECK(fd.converged);
    CHECK(fd.iterations <= 2);
  }

  TEST_CASE("newton: x^2 - 4 from 3") {
    SolverConfig cfg;
    const ResidualMap f = [](RootSpan x) { return std::vector<Complex>{x[0] * x[0] - 4.0}; };
    const auto r = newton_refine(f, RootList{3.0}, cfg);
    CHECK(r.converged);
    CHECK(r.iterations <= 6);
    CHECK(std::abs(r.roots[0] - 2.0) <= 1e-12);
  }

  TEST_CASE("newton: singular start is abandoned") {
    SolverConfig cfg;
    const ResidualMap f = [](RootSpan x) { return std::vector<Complex>{x[0] * x[0] + 1.0}; };
    const auto r = newton_refine(f, RootList{0.0}, cfg);
    CHECK_FALSE(r.converged);
    CHECK_FALSE(r.abandoned.empty());
  }

  TEST_CASE("newton: pole-adjacent start does not crash") {
    SolverConfig cfg;
    const ResidualMap f = [](RootSpan x) {
      if (std::abs(x[0]) < 1e-3) throw ParameterDomainError("pole");
      return std::vector<Complex>{1.0 / x[0] - 0.5};
    };
    NewtonResult r;
    CHECK_NOTHROW(r = newton_refine(f, RootList{Complex(1e-4, 0.0)}, cfg));
    CHECK_FALSE(r.converged);
  }

  TEST_CASE("seed_starts") {
    const auto h = homogeneous_case(2, 2.0 / 7.0);
    SolverConfig cfg;
    cfg.starts = 37;
    const auto a = seed_starts(BetheMode::Homogeneous, 1, h.hp, h.ctx, cfg);
    const auto b = seed_starts(BetheMode::Homogeneous, 1, h.hp, h.ctx, cfg);
    CHECK(a.size() == 37);
    CHECK(a == b);
    for (const auto& s : a) {
      CHECK(s.size() == 1);
      CHECK(canonical_roots(s) == s);
    }
    const auto& p = h.ctx.params();
    const auto zeros = vacuum_weight_zeros(h.hp.m_bar - 1.0, p);
    const auto has = [&](Complex z) {
      return std::any_of(zeros.begin(), zeros.end(), [&](Complex w) { return std::abs(w - z) < 1e-12; });
    };
    CHECK(has(-2.0 + (p.beta - p.gamma + p.delta)));
    CHECK(has(p.beta + 2.0 + 2.0 + p.gamma + p.delta));
  }

  TEST_CASE("homogeneous with p-bar = 0 certifies the vacuum") {
    const auto h = homogeneous_case(2, 0.4);
    const auto report = solve_homogeneous(h.hp, h.ctx, SolverConfig{});
    REQUIRE(report.states.size() == 1);
    const auto& s = report.states[0];
    CHECK(s.roots.empty());
    CHECK(s.eigen_residual <= 1e-10);
    CHECK(near(s.eigenvalue, eigenvalue_w(SolverConfig{}.u_aux, {}, h.hp, h.ctx), 0.0));
    const auto w = build_W_parametric(h.hp, h.ctx);
    const StateVector e0 = vacuum(3);
    CHECK((w * e0 - s.eigenvalue * e0).norm() <= 1e-10 * w.norm());
  }

  TEST_CASE("homogeneous with p-bar = 1 certifies a one-root state") {
    for (int n : {1, 2, 3}) {
      const auto h = homogeneous_case(n, 2.0 / 7.0);
      const auto report = solve_homogeneous(h.hp, h.ctx, SolverConfig{});
      REQUIRE(!report.states.empty());
      check_certified(report, Generic{h.ctx, h.hp});
      for (const auto& s : report.states) {
        CHECK(s.roots.size() == 1);
        const Complex x = s.roots[0];
        const Complex m = h.hp.m_bar - 1.0;
        // Away from common zeros of both halves the ratio form is equivalent.
        if (std::abs(f1_W(-x, h.hp) * vacuum_xi(-x, m, h.ctx.params())) > 1e-6) {
          for (double d : homogeneous_ratio_defects(s.roots, h.hp, h.ctx)) CHECK(d <= 1e-8);
        }
        const Complex w2 = eigenvalue_w(Complex(-1.3, 2.2), s.roots, h.hp, h.ctx);
        CHECK(std::abs(w2 - s.eigenvalue) <= 1e-8 * std::max(1.0, std::abs(s.eigenvalue)));
      }
    }
  }

  TEST_CASE("homogeneous mode needs an integer p-bar") {
    try {
      solve_homogeneous(p0_heun(), p0_ctx(), SolverConfig{});
      FAIL("expected ModeError");
    } catch (const ModeError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("-1.69") != std::string::npos);
      CHECK(msg.find("-2.80") != std::string::npos);
    }
  }

  TEST_CASE("distinct states do not depend on the seed") {
    const auto h = homogeneous_case(3, 2.0 / 7.0);
    SolverConfig a, b;
    b.seed = 12345;
    const auto ra = solve_homogeneous(h.hp, h.ctx, a);
    const auto rb = solve_homogeneous(h.hp, h.ctx, b);
    REQUIRE(ra.states.size() == rb.states.size());
    for (std::size_t i = 0; i < ra.states.size(); ++i) {
      CHECK(std::abs(ra.states[i].roots[0] - rb.states[i].roots[0]) <= 1e-6);
    }
  }

  TEST_CASE("inhomogeneous N=1 at P0") {
    const Generic g{p0_ctx(), p0_heun()};
    const auto report = solve_inhomogeneous(g.hp, g.ctx, SolverConfig{});
    CHECK(report.states.size() <= 2);
    CHECK(report.spectrum_coverage.size() == 2);
    CHECK(report.coverage_fraction() > 0.0);
    check_certified(report, g);
  }

  TEST_CASE("inhomogeneous N=1..3, generic complex parameters") {
    for (int n : {1, 2, 3}) {
      const auto g = generic_case(n);
      const auto report = solve_inhomogeneous(g.hp, g.ctx, SolverConfig{});
      CHECK(report.spectrum_coverage.size() == static_cast<std::size_t>(n + 1));
      check_certified(report, g);
      for (std::size_t i = 0; i < report.states.size(); ++i) {
        for (std::size_t j = i + 1; j < report.states.size(); ++j) {
          double dist = 0.0;
          for (std::size_t r = 0; r < report.states[i].roots.size(); ++r) {
            dist = std::max(dist, std::abs(report.states[i].roots[r] - report.states[j].roots[r]));
          }
          CHECK(dist > SolverConfig{}.deflation_tol);
        }
      }
    }
  }

  TEST_CASE("inhomogeneous eigenvalues do not depend on u_aux") {
    const auto g = generic_case(2);
    SolverConfig a, b;
    b.u_aux = Complex(-1.1, 3.4);
    const auto ra = solve_inhomogeneous(g.hp, g.ctx, a);
    const auto rb = solve_inhomogeneous(g.hp, g.ctx, b);
    REQUIRE(ra.states.size() == rb.states.size());
    for (std::size_t i = 0; i < ra.states.size(); ++i) {
      const Complex la = ra.states[i].eigenvalue, lb = rb.states[i].eigenvalue;
      CHECK(std::abs(la - lb) <= 1e-7 * std::max(1.0, std::abs(la)));
      const Complex direct = state_eigenvalue(ra.states[i].roots, BetheMode::Inhomogeneous,
                                              Complex(0.4, -2.7), g.hp, g.ctx);
      CHECK(std::abs(la - direct) <= 1e-7 * std::max(1.0, std::abs(la)));
    }
  }

  TEST_CASE("colliding roots are rejected as inadmissible") {
    const auto g = generic_case(2);
    const RootList collided{Complex(1.3, 0.2), Complex(-1.3, -0.2)};
    CHECK(pole_distance(collided, std::nullopt, BetheMode::Inhomogeneous, g.hp, g.ctx) < kPoleMargin);
    SolverConfig cfg;
    for (const auto& s : seed_starts(BetheMode::Inhomogeneous, 2, g.hp, g.ctx, cfg)) {
      CHECK(pole_distance(s, std::nullopt, BetheMode::Inhomogeneous, g.hp, g.ctx) >= cfg.pole_margin);
    }
  }

  TEST_CASE("identical configuration gives identical reports") {
    const auto g = generic_case(2);
    SolverConfig cfg;
    cfg.seed = 77;
    const auto a = to_json(solve_inhomogeneous(g.hp, g.ctx, cfg)).dump();
    const auto b = to_json(solve_inhomogeneous(g.hp, g.ctx, cfg)).dump();
    CHECK(a == b);
  }
}
