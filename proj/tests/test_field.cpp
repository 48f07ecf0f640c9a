#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "foliant/field.hpp"
#include "foliant/foliation.hpp"
#include "foliant/rng.hpp"

using namespace foliant;

TEST_CASE("fd_jacobian is exact for linear maps") {
  Matrix m(3, 3);
  m(0, 1) = 2.0;
  m(1, 0) = -1.0;
  m(2, 2) = 0.5;
  VectorMap f = [m](const Vector& x) { return m * x; };
  Matrix j = fd_jacobian(f, Vector{0.3, -0.2, 0.9});
  CHECK(op_norm(j - m) <= 1e-9);
}

TEST_CASE("fd_jacobian of the parabolic map at (0.3, 0.5)") {
  VectorMap phi = [](const Vector& sy) {
    return Vector{sy[1], sy[0] + sy[1] * sy[1]};
  };
  Matrix j = fd_jacobian(phi, Vector{0.3, 0.5}, 1e-5);
  CHECK(std::abs(j(0, 0) - 0.0) <= 1e-8);
  CHECK(std::abs(j(0, 1) - 1.0) <= 1e-8);
  CHECK(std::abs(j(1, 0) - 1.0) <= 1e-8);
  CHECK(std::abs(j(1, 1) - 1.0) <= 1e-8);  // 2 * 0.5
}

TEST_CASE("fd_jacobian validates the step") {
  VectorMap f = [](const Vector& x) { return x; };
  CHECK_THROWS_AS(fd_jacobian(f, Vector{1.0}, 1e-10), DomainError);
  CHECK_THROWS_AS(fd_jacobian(f, Vector{1.0}, 0.1), DomainError);
}

TEST_CASE("analytic and FD Jacobians agree for registry fields") {
  Rng rng(51);
  for (const std::string& name : registry_field_names()) {
    VectorField f = registry_field(name);
    REQUIRE(f.has_analytic_jacobian());
    int done = 0;
    while (done < 20) {
      Vector p = rng.in_box(2, 1.0);
      // stay away from the kink sets of the non-smooth fields
      if (name == "parabola-field" && std::abs(p[1] - p[0] * p[0]) < 0.1) continue;
      if (name == "peano-field" && std::abs(p[1]) < 0.1) continue;
      Matrix analytic = f.jacobian(p);
      const VectorField& ref = f;
      Matrix fd = fd_jacobian([&ref](const Vector& x) { return ref(x); }, p);
      CHECK(op_norm(analytic - fd) <= 1e-6);
      ++done;
    }
  }
}

TEST_CASE("registry examples") {
  VectorField par = registry_field("parabola-field");
  Vector v = par(Vector{0.0, 0.0});
  CHECK(v[0] == 1.0);
  CHECK(v[1] == doctest::Approx(1.0));
  VectorField peano = registry_field("peano-field");
  CHECK(peano(Vector{0.0, -8.0})[1] == doctest::Approx(4.0));
  CHECK_THROWS_AS(registry_field("unknown"), UnknownNameError);
}

TEST_CASE("parabola foliation registry entry round-trips") {
  Foliation fol = registry_foliation("parabola-foliation");
  CHECK(fol.map().forward(Vector{0.0, 0.0})[0] == 0.0);
  CHECK(fol.map().inverse(Vector{0.0, 0.0})[0] == 0.0);
  auto grid = linspace(-1.0, 1.0, 21);
  for (double s : grid) {
    for (double y : grid) {
      Vector w{s, y};
      Vector z = fol.forward(w);
      CHECK(norm(fol.inverse(z) - w) <= 1e-10);
      CHECK(norm(fol.forward(fol.inverse(w)) - w) <= 1e-10);
    }
  }
}

TEST_CASE("chain rule: forward and inverse FD Jacobians compose to identity") {
  Foliation fol = registry_foliation("parabola-foliation");
  const DiffeoMap& map = fol.map();
  auto grid = linspace(-1.0, 1.0, 21);
  for (double s : grid) {
    for (double y : grid) {
      Vector w{s, y};
      Vector z = map.forward(w);
      Matrix jf = fd_jacobian([&map](const Vector& x) { return map.forward(x); }, w);
      Matrix ji = fd_jacobian([&map](const Vector& x) { return map.inverse(x); }, z);
      CHECK(op_norm(ji * jf - Matrix::identity(2)) <= 1e-5);
    }
  }
}

TEST_CASE("expression-backed field matches the built-in parabola field") {
  std::vector<ExprPtr> comps{
      parse_expr("1", 2), parse_expr("1 + (z2 - z1^2)^(2/3)", 2)};
  VectorField f = VectorField::from_expressions("expr-parabola", comps, 2);
  VectorField ref = registry_field("parabola-field");
  Rng rng(53);
  for (int i = 0; i < 100; ++i) {
    Vector p = rng.in_box(2, 2.0);
    CHECK(norm(f(p) - ref(p)) <= 1e-12);
  }
}

TEST_CASE("field evaluation failures are structured errors") {
  std::vector<ExprPtr> comps{parse_expr("1/z1", 1)};
  VectorField f = VectorField::from_expressions("inv", comps, 1);
  CHECK_THROWS_AS(f(Vector{0.0}), EvalError);
  CHECK_THROWS_AS(f(Vector{1.0, 2.0}), DimensionError);
}

TEST_CASE("IVP validates dimensions") {
  VectorField lin = registry_field("linear-field");
  CHECK_THROWS_AS(IVP(lin, Vector{1.0, 2.0, 3.0}), DimensionError);
  IVP ok(lin, Vector{0.0, 1.0});
  CHECK(ok.t0 == 0.0);
}

TEST_CASE("DiffeoMap validates a wrong inverse") {
  VectorMap fwd = [](const Vector& w) { return Vector{w[0] + 1.0, w[1]}; };
  VectorMap bad_inv = [](const Vector& z) { return z; };
  DiffeoMap m(2, fwd, bad_inv);
  CHECK_THROWS_AS(m.validate_inverse_near(Vector(2), 0.1), DomainError);
}
