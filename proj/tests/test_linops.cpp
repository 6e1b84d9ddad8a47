#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "bcp/linops.hpp"

using namespace bcp;

namespace {

constexpr double pi = std::numbers::pi;
const ModelParams defaults;

SpectralField random_oscillatory(const Basis& basis, int M, std::mt19937& rng) {
  std::normal_distribution<double> g;
  SpectralField u(basis, 2.0 * pi, M);
  for (int m = -M; m <= M; ++m)
    for (int n = 0; n < basis.size(); ++n)
      if (m != 0) u(m, n) = Complex(g(rng), g(rng));
  return u.make_real();
}

SpectralField random_steady(const Basis& basis, int M, std::mt19937& rng) {
  std::normal_distribution<double> g;
  SpectralField u(basis, 2.0 * pi, M);
  for (int n = 0; n < basis.size(); ++n) u(0, n) = g(rng);
  return u;
}

double rel(const SpectralField& a, const SpectralField& b) {
  return (a.coeffs() - b.coeffs()).norm() / b.coeffs().norm();
}

}  // namespace

TEST_CASE("symbol values") {
  CHECK(symbol(defaults, 1.0, 0, 1.0) == Complex(-1.0, 0.0));
  CHECK(std::abs(symbol(defaults, 1.0, 1, 1.0) - Complex(1.0, -1.0)) < 1e-15);
  CHECK(std::abs(symbol(defaults, 1.0, 1, 0.0) - Complex(0.0, 1.0)) < 1e-15);
  CHECK(std::abs(heat_symbol(defaults, 1.0, 1, 1.0) * kuznetsov_symbol(defaults, 1.0, 1, 1.0) -
                 symbol(defaults, 1.0, 1, 1.0)) < 1e-15);
}

TEST_CASE("symbol factorization in extended precision") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(1e-3, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    const long double a = u(rng), b = u(rng), c = u(rng), mu = u(rng), lambda = u(rng);
    const auto lhs = heat_symbol_t(a, mu, lambda) * kuznetsov_symbol_t(b, c, mu, lambda);
    const auto rhs = symbol_t(a, b, c, mu, lambda);
    CHECK(std::abs(lhs - rhs) <= 1e-16L * std::abs(rhs));
  }
}

TEST_CASE("invertibility witness") {
  const auto r = check_invertibility(default_problem(1, 1));
  CHECK(r.min_abs == doctest::Approx(std::sqrt(2.0)));
  CHECK(r.m == 1);
  CHECK(check_invertibility(default_problem(8, 8)).min_abs > 0.0);

  Basis basis(BcKind::Dirichlet, {pi}, {4});
  double prev = 1e300;
  // forcing frequency tuned so that the undamped wave factor vanishes at (1, 1)
  for (double delta : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const double m = check_invertibility(defaults.with_dissipation_scale(delta), basis, 2.0 * pi, 4)
                         .min_abs;
    CHECK(m < prev);
    CHECK(m == doctest::Approx(delta * std::sqrt(1.0 + delta * delta)).epsilon(1e-9));
    prev = m;
  }
  std::ostringstream csv;
  write_symbol_table_csv(csv, defaults, basis, 2.0 * pi, 2);
  CHECK(csv.str().rfind("m,n1,abs_symbol\n", 0) == 0);
}

TEST_CASE("single-mode inversions") {
  Basis basis(BcKind::Dirichlet, {pi}, {3});
  SpectralField f(basis, 2.0 * pi, 2);
  f(1, 0) = 1.0;
  CHECK(std::abs(solve_linear_direct(f, defaults)(1, 0) - Complex(0.5, 0.5)) < 1e-15);
  CHECK(std::abs(solve_kuznetsov(f, defaults)(1, 0) - Complex(0.0, -1.0)) < 1e-15);
  CHECK(std::abs(solve_heat(f, defaults)(1, 0) - Complex(-0.5, 0.5)) < 1e-15);
  SpectralField steady(basis, 2.0 * pi, 2);
  steady(0, 0) = 1.0;
  CHECK_THROWS_AS(solve_linear_direct(steady, defaults), PreconditionError);
  CHECK_THROWS_AS(solve_steady_dirichlet(f, defaults), PreconditionError);
}

TEST_CASE("direct solve round trip, linearity and realness") {
  std::mt19937 rng(17);
  for (BcKind bc : {BcKind::Dirichlet, BcKind::Neumann}) {
    Basis basis(bc, {pi, 2.0}, {5, 4});
    const SpectralField f1 = random_oscillatory(basis, 6, rng);
    const SpectralField f2 = random_oscillatory(basis, 6, rng);
    const SpectralField u1 = solve_linear_direct(f1, defaults);
    CHECK(ps_norm(apply_symbol(u1, defaults) - f1) < 1e-12 * ps_norm(f1));
    CHECK(u1.is_hermitian(1e-14));
    const SpectralField combo = solve_linear_direct(2.0 * f1 - 3.0 * f2, defaults);
    CHECK(rel(combo, 2.0 * u1 - 3.0 * solve_linear_direct(f2, defaults)) < 1e-12);
    CHECK(rel(solve_linear_decomposed(f1, defaults), u1) < 1e-12);
  }
}

TEST_CASE("lift examples") {
  BoundaryData1D data = BoundaryData1D::zero(1);
  data.g(1, 0) = data.g(1, 1) = 1.0;
  const PolynomialLift one = lift_boundary_1d(data, BcKind::Dirichlet, pi, 2.0 * pi);
  for (double x : {0.0, 0.7, pi}) CHECK(std::abs(one.value(0, x) - 1.0) < 1e-15);

  BoundaryData1D curv = BoundaryData1D::zero(1);
  curv.h(1, 0) = curv.h(1, 1) = 1.0;
  const PolynomialLift q = lift_boundary_1d(curv, BcKind::Dirichlet, pi, 2.0 * pi);
  for (double x : {0.3, 1.1, 2.9}) CHECK(std::abs(q.value(0, x) - x * (x - pi) / 2.0) < 1e-14);

  CHECK(lift_boundary_1d(BoundaryData1D::zero(2), BcKind::Neumann, pi, 2.0 * pi).is_zero());
}

TEST_CASE("lift projection agrees with quadrature") {
  Basis basis(BcKind::Dirichlet, {2.5}, {12});
  Basis cos_basis(BcKind::Neumann, {2.5}, {12});
  Eigen::MatrixXcd c(1, 5);
  c << 0.3, -1.2, 0.7, 0.25, -0.4;
  const PolynomialLift l(2.5, 1.0, c);
  const SpatialGrid gl = SpatialGrid::gauss_legendre({2.5}, {60});
  for (const Basis& b : {basis, cos_basis}) {
    PhysicalField p;
    p.values = l.sample(1, gl.nodes[0]);
    p.period = 1.0;
    p.grid = gl;
    p.parity = {Parity::Mixed};
    const SpectralField quad = to_spectral(p, b, 0);
    CHECK((l.project(b).coeffs() - quad.coeffs()).norm() < 1e-13);
  }
}

TEST_CASE("decomposed solve recovers inhomogeneous traces") {
  Basis basis(BcKind::Dirichlet, {pi}, {12});
  const int M = 3;
  SpectralField f(basis, 2.0 * pi, M);
  BoundarySpec spec;
  spec.g.left = {{1.0, 1, 0.0}};
  const BoundaryData1D data = BoundaryData1D::from_spec(spec, M);
  const LiftedField u = solve_linear_decomposed(f, defaults, data);
  const LiftedField direct = solve_linear_direct(f, defaults, data);
  const BoundaryData1D tr = boundary_traces(u);
  CHECK((tr.g - data.g).norm() < 1e-10);
  CHECK((tr.h - data.h).norm() < 1e-10);
  CHECK(apply_linear(u, defaults).coeffs().norm() < 1e-12);
  CHECK((u.projected().coeffs() - direct.projected().coeffs()).norm() < 1e-12);

  // traces at collocation times
  const int nt = collocation_time_points(M);
  const Eigen::VectorXd x = (Eigen::VectorXd(2) << 0.0, pi).finished();
  const PhysicalField p = u.to_physical(nt, SpatialGrid{NodeKind::Uniform, {pi}, {x}, {x}});
  for (int j = 0; j < nt; ++j) {
    CHECK(std::abs(p.values(j, 0) - std::cos(2.0 * pi * j / nt)) < 1e-10);
    CHECK(std::abs(p.values(j, 1)) < 1e-10);
  }
}

TEST_CASE("neumann traces through the decomposed path") {
  Basis basis(BcKind::Neumann, {2.0}, {10});
  std::mt19937 rng(23);
  const SpectralField f = random_oscillatory(basis, 2, rng);
  BoundarySpec spec;
  spec.g.left = {{0.4, 1, 0.3}};
  spec.h.right = {{-0.2, 2, 1.0}};
  BoundaryData1D data = BoundaryData1D::from_spec(spec, 2);
  const LiftedField u = solve_linear_decomposed(f, defaults, data);
  const BoundaryData1D tr = boundary_traces(u);
  CHECK((tr.g - data.g).norm() < 1e-12);
  CHECK((tr.h - data.h).norm() < 1e-12);
  CHECK(rel(apply_linear(u, defaults), f) < 1e-12);
}

TEST_CASE("steady dirichlet") {
  Basis basis(BcKind::Dirichlet, {pi}, {6});
  SpectralField f(basis, 2.0 * pi, 1);
  f(0, 0) = 1.0;
  CHECK(solve_steady_dirichlet(f, defaults)(0, 0) == Complex(-1.0, 0.0));
  std::mt19937 rng(29);
  const ModelParams p(0.3, 2.0, 1.7, 1, 0.5);
  const SpectralField g = random_steady(basis, 2, rng);
  CHECK(rel(solve_steady_dirichlet(g, p, SteadyRoute::TwoStage),
            solve_steady_dirichlet(g, p, SteadyRoute::DirectDivision)) < 1e-13);

  BoundaryData1D data = BoundaryData1D::zero(2);
  data.g(2, 0) = 0.5;
  data.h(2, 1) = -1.5;
  const LiftedField u = solve_steady_dirichlet(g, p, data);
  const BoundaryData1D tr = boundary_traces(u);
  CHECK((tr.g - data.g).norm() < 1e-12);
  CHECK((tr.h - data.h).norm() < 1e-12);
  CHECK(rel(apply_linear(u, p), g) < 1e-12);
}

TEST_CASE("steady neumann compatibility and gauge") {
  const double L = 2.0;
  Basis basis(BcKind::Neumann, {L}, {6});
  SpectralField f(basis, 2.0 * pi, 1);
  f(0, 0) = 1.0;
  CHECK_THROWS_AS(solve_steady_neumann(f, defaults), IncompatibleDataError);

  const double h0 = 0.75;
  BoundaryData1D data = BoundaryData1D::zero(1);
  data.h(1, 0) = data.h(1, 1) = h0;
  f(0, 0) = -2.0 * defaults.a() * defaults.c() * defaults.c() * h0 / L;
  const LiftedField u = solve_steady_neumann(f, defaults, data);
  CHECK(std::abs(u.projected()(0, 0)) < 1e-14);
  const BoundaryData1D tr = boundary_traces(u);
  CHECK((tr.h - data.h).norm() < 1e-12);
  CHECK(rel(apply_linear(u, defaults), f) < 1e-12);

  SpectralField c1(basis, 2.0 * pi, 1);
  c1(0, 1) = 1.0;
  const double lambda = std::pow(pi / L, 2);
  CHECK(std::abs(solve_steady_neumann(c1, defaults)(0, 1) + 1.0 / (lambda * lambda)) < 1e-14);
  CHECK(std::abs(solve_steady_neumann(c1, defaults, SteadyRoute::DirectDivision)(0, 1) +
                 1.0 / (lambda * lambda)) < 1e-14);
}
