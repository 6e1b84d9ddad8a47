#include <doctest.h>

#include <cmath>

#include "bcp/json_io.hpp"

using namespace bcp;

namespace {

bool has_path(const ValidationError& e, const std::string& path) {
  for (const auto& [p, m] : e.violations())
    if (p == path) return true;
  return false;
}

ValidationError capture(const Json& j) {
  try {
    problem_from_json(j);
  } catch (const ValidationError& e) {
    return e;
  }
  FAIL("expected a validation error");
  return ValidationError({});
}

}  // namespace

TEST_CASE("empty document gives the default problem") {
  CHECK(problem_from_json(Json::object()) == default_problem());
}

TEST_CASE("problem round trip through json") {
  ProblemSpec spec = default_problem(4, 6, BcKind::Neumann);
  spec.params = ModelParams(0.5, 2.0, 1.5, 0, 3.0);
  spec.period = 3.0;
  spec.forcing.terms = {{1e-3, 1, 0.25, {2}}, {-2e-4, 0, 0.0, {0}}};
  BoundarySpec b;
  b.h.left = {{1e-3, 0, 0.0}};
  b.h.right = {{1e-3, 0, 0.0}, {5e-4, 2, 1.0}};
  spec.boundary = b;
  const Json j = to_json(spec);
  CHECK(problem_from_json(j) == spec);
  // text round trip keeps every double
  CHECK(problem_from_json(Json::parse(j.dump())) == spec);
  CHECK(j["domain"]["bc"] == "neumann");
  CHECK(j["params"].size() == 5);
}

TEST_CASE("two-dimensional defaults follow the dimension") {
  const ProblemSpec spec = problem_from_json(Json::parse(R"({"domain":{"dimension":2}})"));
  CHECK(spec.domain.lengths.size() == 2);
  CHECK(spec.spatial_modes.size() == 2);
}

TEST_CASE("malformed documents report field paths") {
  {
    const auto e = capture(Json::parse(R"({"params":{"a":"one","zeta":1},"period":[1]})"));
    CHECK(has_path(e, "params.a"));
    CHECK(has_path(e, "params.zeta"));
    CHECK(has_path(e, "period"));
  }
  {
    const auto e = capture(Json::parse(R"({"forcing":[{"amplitude":1,"m":1}]})"));
    CHECK(has_path(e, "forcing[0].n"));
  }
  {
    const auto e = capture(Json::parse(R"({"domain":{"bc":"robin"}})"));
    CHECK(has_path(e, "domain.bc"));
  }
  {
    const auto e = capture(Json::parse(R"({"params":{"a":-1.0,"b":0.0}})"));
    CHECK(has_path(e, "params.a"));
    CHECK(has_path(e, "params.b"));
  }
  {
    const auto e = capture(Json::parse(R"({"forcing":[{"amplitude":1,"m":9,"n":[1]}]})"));
    CHECK(has_path(e, "forcing[0].m"));
  }
  {
    const auto e = capture(Json::parse(R"({"temporal_modes":2.5})"));
    CHECK(has_path(e, "temporal_modes"));
  }
  const auto e = capture(Json::parse("[1,2]"));
  CHECK(has_path(e, "<root>"));
}

TEST_CASE("nested paths carry the caller prefix") {
  JsonReader r;
  problem_from_json(Json::parse(R"({"params":{"c":0.0}})"), r, "problem");
  REQUIRE(r.violations().size() == 1);
  CHECK(r.violations()[0].first == "problem.params.c");
  CHECK_THROWS_AS(r.check(), ValidationError);
}

TEST_CASE("fixed point and oracle configs") {
  FixedPointConfig cfg;
  cfg.max_iterations = 7;
  cfg.relaxation = 0.5;
  JsonReader r;
  const FixedPointConfig back = fixed_point_from_json(to_json(cfg), r, "fixed_point");
  CHECK(r.ok());
  CHECK(back.max_iterations == 7);
  CHECK(back.relaxation == 0.5);
  fixed_point_from_json(Json::parse(R"({"relaxation":2.0})"), r, "fixed_point");
  CHECK_FALSE(r.ok());

  OracleConfig o;
  o.initial_amplitude = 1e-3;
  o.seed = 42;
  JsonReader r2;
  const OracleConfig ob = oracle_config_from_json(to_json(o), r2, "oracle");
  CHECK(r2.ok());
  CHECK(ob.initial_amplitude == 1e-3);
  CHECK(ob.seed == 42);
  CHECK(to_json(OracleConfig{})["initial_amplitude"].is_null());
  oracle_config_from_json(Json::parse(R"({"seed":-1})"), r2, "oracle");
  CHECK(r2.violations().back().first == "oracle.seed");
}

TEST_CASE("reports serialize non-finite values as null") {
  SolveReport rep;
  rep.verdict = Verdict::Diverged;
  rep.residuals = {1.0, std::nan("")};
  rep.ratios = {INFINITY};
  rep.ps_norm = INFINITY;
  const Json j = to_json(rep);
  CHECK(j["verdict"] == "diverged");
  CHECK(j["residuals"][1].is_null());
  CHECK(j["final_residual"].is_null());
  CHECK(j["ps_norm"].is_null());
  CHECK(j["max_ratio"].is_null());
  EpsilonScanReport scan;
  CHECK(to_json(scan)["largest_converged"].is_null());
}

TEST_CASE("coefficient table round trip") {
  const Basis basis(BcKind::Dirichlet, {3.0, 2.0}, {2, 3});
  SpectralField u(basis, 1.5, 2);
  for (int m = -2; m <= 2; ++m)
    for (int n = 0; n < basis.size(); ++n) u(m, n) = Complex(m + 0.1 * n, n - 0.3 * m);
  const Json j = coefficients_to_json(u);
  CHECK(j["coefficients"].size() == 5 * 6);
  const SpectralField back = coefficients_from_json(Json::parse(j.dump()), basis, 1.5, 2);
  CHECK(back.coeffs() == u.coeffs());
  CHECK_THROWS_AS(coefficients_from_json(j, basis, 1.5, 1), ShapeError);
}
