#include "fixtures.hpp"

using namespace fixtures;

TEST_SUITE("racah") {
  TEST_CASE("structure constants at P0") {
    const auto p = p0();
    CHECK(near(p.alpha, -2.0, 0));
    CHECK(near(p.b, 43.0, 1e-12));
    CHECK(near(p.d1, -231.0 / 8.0, 1e-12));
    CHECK(near(p.d2, -231.0 / 8.0, 1e-12));
  }

  TEST_CASE("structure constants at N=2, beta=4") {
    const auto p = build_params(2, 4.0, 1.0, 2.0);
    CHECK(near(p.alpha, -3.0, 0));
    CHECK(near(p.b, 41.0, 1e-12));
    CHECK(near(p.d1, -243.0 / 8.0, 1e-12));
    CHECK(near(p.d2, 77.0 / 8.0, 1e-12));
  }

  TEST_CASE("vanishing lambda denominator is a domain error") {
    try {
      build_params(1, 3.0, 0.5, -1.5);
      FAIL("expected ParameterDomainError");
    } catch (const ParameterDomainError& e) {
      CHECK(std::string(e.what()).find("2x+γ+δ+1") != std::string::npos);
    }
  }

  TEST_CASE("size limits") {
    CHECK_THROWS_AS(build_params(-1, 5.0, 1.0, 2.0), ParameterDomainError);
    CHECK_THROWS_AS(build_params(64, 5.0, 1.0, 2.0), ParameterDomainError);
    CHECK(build_params(63, 5.0, 1.0, 2.0).dim() == 64);
    const auto rep = build_representation(build_params(0, 5.0, 1.0, 2.0));
    CHECK(rep.dim() == 1);
  }

  TEST_CASE("P0 matrices") {
    const auto rep = build_representation(p0());
    CHECK(max_abs_diff(rep.X, mat2(6.95, -1.8, -3.2, 5.55)) < 1e-13);
    CHECK(max_abs_diff(rep.Y, mat2(3.75, 0, 0, 8.75)) < 1e-13);
    CHECK(max_abs_diff(rep.Z, mat2(0, -9, 16, 0)) < 1e-13);
    CHECK(near(coeff_B(rep.params, 0), -3.2, 1e-13));
    CHECK(near(coeff_D(rep.params, 1), -1.8, 1e-13));
  }

  TEST_CASE("truncation: B(N)=0 and D(0)=0") {
    Rng rng(17);
    for (int n = 1; n <= 8; ++n) {
      const auto p = random_params(n, rng);
      CHECK(std::abs(coeff_B(p, n)) <= 1e-12);
      CHECK(coeff_D(p, 0) == 0.0);
    }
  }

  TEST_CASE("X is tridiagonal and Y is diagonal with lambda_x") {
    Rng rng(21);
    for (int n = 1; n <= 8; ++n) {
      const auto rep = build_representation(random_params(n, rng));
      for (Eigen::Index i = 0; i < rep.dim(); ++i) {
        CHECK(rep.Y(i, i) == eigen_lambda(rep.params, static_cast<int>(i)));
        for (Eigen::Index j = 0; j < rep.dim(); ++j) {
          if (std::abs(i - j) > 1) CHECK(rep.X(i, j) == 0.0);
          if (i != j) CHECK(rep.Y(i, j) == 0.0);
        }
      }
    }
  }

  TEST_CASE("defining relations at P0") {
    const auto res = verify_defining_relations(build_representation(p0()), 1e-12);
    CHECK(res.r1 <= 1e-12);
    CHECK(res.r2 <= 1e-12);
    CHECK(res.r3 <= 1e-12);
  }

  TEST_CASE("perturbed Y breaks the defining relations") {
    auto rep = build_representation(p0());
    rep.Y(1, 1) += 1e-3;
    CHECK_THROWS_AS(verify_defining_relations(rep, 1e-10), RelationViolation);
  }

  TEST_CASE("perturbed b breaks the second relation") {
    const auto rep = build_representation(p0());
    const auto res = defining_relation_residuals(rep.X, rep.Y, rep.Z, rep.params.b + 1e-3,
                                                 rep.params.d1, rep.params.d2);
    CHECK(res.r1 <= 1e-12);
    CHECK(res.r2 > 1e-6);
  }

  TEST_CASE("defining relations hold for random complex parameters") {
    Rng rng(2024);
    for (int n = 1; n <= 8; ++n) {
      for (int draw = 0; draw < 20; ++draw) {
        const auto rep = build_representation(random_params(n, rng));
        const auto res = defining_relation_residuals(rep.X, rep.Y, rep.Z, rep.params.b,
                                                     rep.params.d1, rep.params.d2);
        CHECK(res.r1 <= 1e-10);
        CHECK(res.r2 <= 1e-10);
        CHECK(res.r3 <= 1e-10);
      }
    }
  }

  TEST_CASE("random_params is seeded") {
    Rng a(9), b(9);
    const auto pa = random_params(4, a);
    const auto pb = random_params(4, b);
    CHECK(pa.beta == pb.beta);
    CHECK(pa.gamma == pb.gamma);
    CHECK(pa.delta == pb.delta);
  }
}
