#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "foliant/field.hpp"
#include "foliant/rng.hpp"
#include "foliant/transform.hpp"

using namespace foliant;

namespace {

double two_thirds(double x) {
  double c = std::cbrt(x);
  return c * c;
}

}  // namespace

TEST_CASE("pullback through the identity foliation is the field itself") {
  VectorField f = registry_field("trig-field");
  Foliation id = identity_foliation(Vector(2));
  PulledBackField h = pullback_field(f, id);
  auto grid = linspace(-0.5, 0.5, 11);
  for (double a : grid) {
    for (double b : grid) {
      Vector w{a, b};
      CHECK(norm(h.field(w) - f(w)) <= 1e-12);
    }
  }
}

TEST_CASE("pullback of the parabola pair matches (1 + s^(2/3) - 2y, 1)") {
  VectorField f = registry_field("parabola-field");
  Foliation fol = registry_foliation("parabola-foliation");
  PulledBackField h = pullback_field(f, fol);
  auto grid = linspace(-0.5, 0.5, 21);
  for (double s : grid) {
    for (double y : grid) {
      Vector value = h.field(Vector{s, y});
      CHECK(std::abs(value[0] - (1.0 + two_thirds(s) - 2.0 * y)) <= 1e-8);
      CHECK(std::abs(value[1] - 1.0) <= 1e-8);
    }
  }
}

TEST_CASE("pullback through an affine frame is B^-1 F(p0 + B w)") {
  Rng rng(83);
  double c = std::cos(0.4), s = std::sin(0.4);
  Vector w{c, s};
  OrthonormalBasis v{{Vector{-s, c}}, w};
  Vector p0{0.3, -0.2};
  Foliation fol = affine_foliation(p0, w, v);
  VectorField f = registry_field("trig-field");
  PulledBackField h = pullback_field(f, fol);
  Matrix b = Matrix::from_columns({w, Vector{-s, c}});
  Matrix binv = mat_inverse(b);
  for (int i = 0; i < 50; ++i) {
    Vector x = rng.in_box(2, 0.5);
    Vector expect = binv * f(p0 + b * x);
    CHECK(norm(h.field(x) - expect) <= 1e-9);
  }
}

TEST_CASE("transversality of the parabola pair is 1") {
  VectorField f = registry_field("parabola-field");
  Foliation fol = registry_foliation("parabola-foliation");
  TransversalityResult t = transversality(f, fol);
  CHECK(t.value == doctest::Approx(1.0).epsilon(1e-10));
  // the normal at p0 is the gradient of Phi^-1's first component: (0, 1)
  CHECK(std::abs(t.normal[0]) <= 1e-10);
  CHECK(t.normal[1] == doctest::Approx(1.0));
}

TEST_CASE("transversality vanishes for the peano field with horizontal leaves") {
  VectorField f = registry_field("peano-field");
  OrthonormalBasis v{{Vector::unit(2, 0)}, Vector::unit(2, 1)};
  Foliation fol = affine_foliation(Vector(2), Vector::unit(2, 1), v);
  TransversalityResult t = transversality(f, fol);
  CHECK(std::abs(t.value) <= 1e-12);
}

TEST_CASE("transversality through the identity foliation is F1(p0)") {
  for (const std::string& name : registry_field_names()) {
    VectorField f = registry_field(name);
    Vector p0{0.1, 0.2};
    Foliation id = identity_foliation(p0);
    TransversalityResult t = transversality(f, id);
    CHECK(t.value == doctest::Approx(f(p0)[0]).epsilon(1e-10));
  }
}

TEST_CASE("transversality agrees with the inverse-gradient route") {
  // <grad Phi1^-1 (p0), F(p0)> computed by finite differences on the
  // inverse map must match e1^T Phi'(0)^-1 F(p0).
  struct Pairing {
    const char* field;
    const char* foliation;
  };
  for (const Pairing& pairing :
       {Pairing{"parabola-field", "parabola-foliation"},
        Pairing{"peano-field", "identity-foliation"},
        Pairing{"trig-field", "parabola-foliation"},
        Pairing{"linear-field", "identity-foliation"}}) {
    VectorField f = registry_field(pairing.field);
    Foliation fol = registry_foliation(pairing.foliation);
    REQUIRE(fol.has_inverse());
    TransversalityResult direct = transversality(f, fol);
    const Foliation& ref = fol;
    VectorMap inv_first = [&ref](const Vector& z) {
      return Vector{ref.inverse(z)[0]};
    };
    Matrix g = fd_jacobian(inv_first, fol.base());
    double via_inverse = dot(g.row(0), f(fol.base()));
    CHECK(std::abs(direct.value - via_inverse) <= 1e-6);
  }
}

TEST_CASE("pullback refuses a singular Jacobian point") {
  // forward map folds at s = 0: Jacobian determinant vanishes there
  VectorMap fwd = [](const Vector& w) {
    return Vector{w[0] * w[0] + w[0], w[1]};
  };
  DiffeoMap map(2, fwd, nullptr, [](const Vector& w) {
    Matrix j(2, 2);
    j(0, 0) = 2.0 * w[0] + 1.0;
    j(1, 1) = 1.0;
    return j;
  });
  Foliation fol(map, Vector(2), FoliationKind::Graph);
  VectorField f = registry_field("linear-field");
  PulledBackField h = pullback_field(f, fol);
  CHECK_THROWS_AS(h.field(Vector{-0.5, 0.0}), SingularMatrixError);
  CHECK(h.field(Vector{0.2, 0.0}).finite());
}

TEST_CASE("lipschitz_fixing_first on the reduced parabola field") {
  // g(s, y) = (1 + s^(2/3) - 2y, 1): exact Lipschitz constant 2 in y.
  VectorMap g = [](const Vector& w) {
    return Vector{1.0 + two_thirds(w[0]) - 2.0 * w[1], 1.0};
  };
  SampleParams prm;
  LipschitzEstimate est = lipschitz_fixing_first(g, 2, prm);
  CHECK(est.constant >= 1.9);
  CHECK(est.constant <= 2.01);
  CHECK_FALSE(est.blowup);
}

TEST_CASE("lipschitz_fixing_first flags the peano pullback") {
  VectorMap g = [](const Vector& w) {
    return Vector{1.0 + two_thirds(w[1]), 1.0};
  };
  SampleParams prm;
  LipschitzEstimate est = lipschitz_fixing_first(g, 2, prm);
  CHECK(est.blowup);
  // blow-up cases rise far above the region-scale reference quotient
  double reference = est.strata.front().max_quotient;
  CHECK(reference > 0.0);
  CHECK(est.constant >= 1e3 * reference);
}

TEST_CASE("lipschitz_fixing_first on a map constant in the free variables") {
  VectorMap g = [](const Vector& w) {
    return Vector{std::sin(w[0]), std::cos(w[0])};
  };
  SampleParams prm;
  LipschitzEstimate est = lipschitz_fixing_first(g, 3, prm);
  CHECK(est.constant <= 1e-9);
  CHECK_FALSE(est.blowup);
}

TEST_CASE("lipschitz_fixing_first validates inputs") {
  VectorMap g = [](const Vector& w) { return w; };
  SampleParams prm;
  prm.budget = 10;
  CHECK_THROWS_AS(lipschitz_fixing_first(g, 2, prm), DomainError);
  prm.budget = 4096;
  CHECK_THROWS_AS(lipschitz_fixing_first(g, 1, prm), DimensionError);
  prm.region = 0.0;
  CHECK_THROWS_AS(lipschitz_fixing_first(g, 2, prm), DomainError);
}

TEST_CASE("the inverse Jacobian of the parabola foliation is 2-Lipschitz") {
  Foliation fol = registry_foliation("parabola-foliation");
  const Foliation& ref = fol;
  VectorMap inv_jac = [&ref](const Vector& w) {
    return flatten(mat_inverse(ref.jacobian(w)));
  };
  SampleParams prm;
  prm.region = 0.5;
  LipschitzEstimate est = lipschitz_fixing_first(inv_jac, 2, prm);
  CHECK(est.constant <= 2.1);
  CHECK_FALSE(est.blowup);
}

TEST_CASE("lipschitz_along_direction recovers the directional quotient") {
  // f(t, x) = x: along u = (0,1) the quotient is exactly 1.
  ScalarMap f = [](const Vector& z) { return z[1]; };
  SampleParams prm;
  LipschitzEstimate est =
      lipschitz_along_direction(f, Vector(2), Vector{0.0, 1.0}, prm);
  CHECK(est.constant == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_FALSE(est.blowup);
  // along u = (1,0) the same f is constant
  LipschitzEstimate flat =
      lipschitz_along_direction(f, Vector(2), Vector{1.0, 0.0}, prm);
  CHECK(flat.constant <= 1e-9);
}
