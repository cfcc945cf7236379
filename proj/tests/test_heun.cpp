#include "fixtures.hpp"

using namespace fixtures;

TEST_SUITE("heun") {
  TEST_CASE("W at P0, hp=(2,1,3)") {
    const auto ctx = p0_ctx();
    const auto w = build_W_parametric(p0_heun(), ctx);
    CHECK(max_abs_diff(w, mat2(-89.8, 52.2, 60.8, -171.2)) < 1e-12);
    const auto& r = ctx.rep();
    const OperatorMatrix explicit_w = -4.0 * r.X * r.Y + r.X + 2.0 * r.Y + r.Z;
    CHECK(max_abs_diff(w, explicit_w) < 1e-12);
  }

  TEST_CASE("W with s1=0, s2=1 drops the linear terms") {
    const auto ctx = p0_ctx(3.0);
    const auto hp = make_heun_params(3.0, 0.0, 1.0, ctx.params());
    const auto& r = ctx.rep();
    CHECK(max_abs_diff(build_W_parametric(hp, ctx), -3.0 * r.X * r.Y + r.Z) < 1e-12);
  }

  TEST_CASE("bilinear special cases") {
    const auto rep = build_representation(p0());
    CHECK(max_abs_diff(build_W_bilinear({1, 0, 0, 0, 0}, rep), identity(2)) == 0.0);
    CHECK(max_abs_diff(build_W_bilinear({0, 0, 0, 1, -1}, rep), rep.Z) < 1e-13);
  }

  TEST_CASE("bilinear form of the P0 operator") {
    const auto ctx = p0_ctx();
    const BilinearParams bp{0, 1, 2, -3, -1};
    CHECK(max_abs_diff(build_W_bilinear(bp, ctx.rep()), build_W_parametric(p0_heun(), ctx)) < 1e-12);
    const auto c = canonicalize(bp, ctx.params());
    CHECK(near(c.heun.rho, 2.0, 1e-14));
    CHECK(near(c.heun.s1, 1.0, 1e-14));
    CHECK(near(c.heun.s2, 3.0, 1e-14));
    CHECK(near(c.scale, 1.0, 0));
    CHECK(near(c.shift, 0.0, 0));
  }

  TEST_CASE("canonicalize special cases") {
    const auto p = p0();
    CHECK(near(canonicalize({0, 0.3, 0.2, -3, 1}, p).heun.rho, 0.5, 1e-15));
    const auto c = canonicalize({0, 0, 0, 2.5, 1.5}, p);
    CHECK(c.heun.s1 == 0.0);
    CHECK(c.heun.s2 == 1.0);
    CHECK_THROWS_AS(canonicalize({0, 1, 1, 1, 0}, p), CanonicalizationError);
    CHECK_THROWS_AS(canonicalize({0, 1, 1, 2, 2}, p), CanonicalizationError);
    CHECK_THROWS_AS(canonicalize({0, 1, 1, -2, 2}, p), ParameterDomainError);
  }

  TEST_CASE("canonicalize round-trips on random draws") {
    Rng rng(31);
    for (int draw = 0; draw < 100; ++draw) {
      const int n = 1 + draw % 6;
      const auto rep = build_representation(random_params(n, rng));
      const BilinearParams bp{sample_annulus(rng), sample_annulus(rng), sample_annulus(rng),
                              sample_annulus(rng), sample_annulus(rng)};
      const auto c = canonicalize(bp, rep.params);
      CHECK(c.heun.s2.real() >= 0.0);
      const DynContext ctx(rep, c.heun.rho);
      const OperatorMatrix rebuilt =
          c.scale * build_W_parametric(c.heun, ctx) + c.shift * identity(rep.dim());
      CHECK(residual_norm(build_W_bilinear(bp, rep), rebuilt) <= 1e-12);
    }
  }

  TEST_CASE("p-bar values") {
    const auto p = p0();
    const auto hp = make_heun_params(2.0 / 7.0, 0.0, 3.0, p);
    CHECK(near(hp.p_bar_plus, 1.0, 1e-13));
    CHECK(near(make_heun_params(0.4, 0.0, 3.0, p).p_bar_plus, 0.0, 1e-13));
    CHECK(integer_p_bars(hp, 1) == std::vector<int>{1});
    CHECK(integer_p_bars(hp, 0).empty());
    CHECK(integer_p_bars(p0_heun(), 1).empty());
    CHECK(near(hp.m_bar, (3.0 - 2.0 / 7.0 + 1.0) / (4.0 / 7.0), 1e-13));
  }

  TEST_CASE("h1 and h2") {
    const auto ctx = p0_ctx();
    const auto hp = p0_heun();
    CHECK(near(heun_h1(3.0, hp), -11.0 / 6.0, 1e-14));
    const auto h = h_coeffs(3.0, hp, ctx);
    CHECK(near(h.h1_plus, -11.0 / 6.0, 1e-14));
    CHECK(near(h.h2, 9.0, 1e-12));
    // (ρu − ρ + s2)² = 1 with s1 = 0
    const auto hp0 = make_heun_params(2.0, 0.0, 2.5, p0());
    CHECK(std::abs(heun_h1(0.25, hp0)) == 0.0);
  }

  TEST_CASE("expansion of W in A(u) and A(-u)") {
    const auto ctx = p0_ctx();
    const auto hp = p0_heun();
    const auto r = verify_WA(3.0, Complex(5.0, 1.0), hp, ctx, 1e-10);
    CHECK(r.against_W <= 1e-10);
    CHECK(r.u_independence <= 1e-10);
    CHECK(verify_WA(3.0, 3.0, hp, ctx, 1e-10).u_independence == 0.0);
    CHECK_THROWS_AS(verify_WA(3.0, Complex(5.0, 1.0), hp, ctx, 1e-10, 1e-3), RelationViolation);
  }

  TEST_CASE("expansion holds on random draws") {
    Rng rng(4);
    for (int n = 1; n <= 8; ++n) {
      const auto rep = build_representation(random_params(n, rng));
      const Complex rho = sample_annulus(rng);
      const DynContext ctx(rep, rho);
      const auto hp = make_heun_params(rho, sample_annulus(rng), sample_annulus(rng), rep.params);
      const auto r = verify_WA(sample_annulus(rng), sample_annulus(rng), hp, ctx, 1e-10);
      CHECK(r.against_W <= 1e-10);
      CHECK(r.u_independence <= 1e-10);
    }
  }
}
