#include "fixtures.hpp"

using namespace fixtures;

TEST_SUITE("io") {
  TEST_CASE("parameter file: real and complex values") {
    const auto f = parse_params(Json::parse(
        R"({"N": 2, "beta": [5, 0.5], "gamma": 1, "delta": 2.5, "rho": [1.5, -0.25], "s1": 0, "s2": 3})"));
    CHECK(f.N == 2);
    CHECK(f.beta == Complex(5.0, 0.5));
    CHECK(f.gamma == Complex(1.0, 0.0));
    CHECK(f.rho == Complex(1.5, -0.25));
    const auto p = build_problem(f);
    CHECK(p.ctx);
    CHECK(p.heun);
    CHECK_FALSE(p.canonical);
  }

  TEST_CASE("parameter file: schema violations") {
    CHECK_THROWS_AS(parse_params(Json::parse(R"({"N": 1, "beta": 5, "gamma": 1, "delta": 2, "x": 0})")), ParseError);
    CHECK_THROWS_AS(parse_params(Json::parse(R"({"N": 1.5, "beta": 5, "gamma": 1, "delta": 2})")), ParseError);
    CHECK_THROWS_AS(parse_params(Json::parse(R"({"N": 1, "gamma": 1, "delta": 2})")), ParseError);
    CHECK_THROWS_AS(parse_params(Json::parse(R"({"N": 1, "beta": [1, 2, 3], "gamma": 1, "delta": 2})")), ParseError);
    CHECK_THROWS_AS(parse_params(Json::parse(R"([1, 2])")), ParseError);
    CHECK_THROWS_AS(
        parse_params(Json::parse(R"({"N": 1, "beta": 5, "gamma": 1, "delta": 2, "bilinear": {"r0": 0, "r5": 1}})")),
        ParseError);
  }

  TEST_CASE("bilinear block takes precedence") {
    const auto f = parse_params(Json::parse(
        R"({"N": 1, "beta": 5, "gamma": 1, "delta": 2, "rho": 3, "s1": 0, "s2": 1,
            "bilinear": {"r0": 0, "r1": 1, "r2": 2, "r3": -3, "r4": -1}})"));
    const auto p = build_problem(f);
    REQUIRE(p.canonical);
    CHECK(near(p.heun->rho, 2.0, 1e-14));
    CHECK(near(p.ctx->rho(), 2.0, 1e-14));
  }

  TEST_CASE("problem without rho has no context") {
    const auto p = build_problem(parse_params(Json::parse(R"({"N": 1, "beta": 5, "gamma": 1, "delta": 2})")));
    CHECK_FALSE(p.ctx);
    CHECK_FALSE(p.heun);
  }

  TEST_CASE("complex round trip") {
    const Complex c(1.25, -3.5);
    CHECK(complex_from_json(complex_json(c)) == c);
    CHECK(complex_json(c).dump() == "[1.25,-3.5]");
  }

  TEST_CASE("report serialization") {
    RelationSweep sweep;
    sweep.samples = 3;
    const auto r = measure_relation(RelationId::ABV_ACTION, p0_ctx(), p0_heun(), sweep);
    const auto j = to_json(r);
    CHECK(j["relation"] == "ABV_ACTION");
    CHECK(j["samples"] == 3);
    CHECK(j["passed"] == true);
    CHECK(j.contains("notes"));
    CHECK(j["worst_tuple"].contains("u"));
    const auto s = spectrum_json({Complex(1, 0), Complex(2, 1)});
    CHECK(s["sum"].dump() == "[3.0,1.0]");
  }

  TEST_CASE("relation names round trip") {
    for (auto id : kAllRelations) CHECK(relation_from_string(to_string(id)) == id);
    CHECK_THROWS_AS(relation_from_string("NOPE"), std::invalid_argument);
  }
}
