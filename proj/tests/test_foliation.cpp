#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "foliant/field.hpp"
#include "foliant/foliation.hpp"
#include "foliant/rng.hpp"

using namespace foliant;

namespace {

void check_core_invariants(const Foliation& fol) {
  Vector origin(fol.dim());
  CHECK(norm(fol.forward(origin) - fol.base()) <= 1e-10);
  Matrix j = fd_jacobian(
      [&fol](const Vector& w) { return fol.forward(w); }, origin);
  CHECK(std::abs(mat_det(j)) > 1e-8);
}

}  // namespace

TEST_CASE("affine foliation: the identity frame") {
  OrthonormalBasis v{{Vector::unit(2, 1)}, Vector::unit(2, 0)};
  Foliation fol = affine_foliation(Vector(2), Vector::unit(2, 0), v);
  CHECK(fol.provenance() == FoliationKind::Affine);
  Vector w{0.3, -0.7};
  CHECK(norm(fol.forward(w) - w) == 0.0);
  CHECK(norm(fol.inverse(w) - w) <= 1e-14);
  check_core_invariants(fol);
}

TEST_CASE("affine foliation with a rotated orthonormal frame") {
  double s = 1.0 / std::sqrt(2.0);
  Vector w{s, s};
  OrthonormalBasis v{{Vector{s, -s}}, w};
  Foliation fol = affine_foliation(Vector{1.0, 1.0}, w, v);
  Matrix j = fol.jacobian(Vector(2));
  CHECK(std::abs(std::abs(mat_det(j)) - 1.0) <= 1e-12);
  // columns orthonormal
  CHECK(std::abs(dot(j.col(0), j.col(1))) <= 1e-12);
  CHECK(std::abs(norm(j.col(0)) - 1.0) <= 1e-12);
  check_core_invariants(fol);
}

TEST_CASE("affine foliation rejects w inside the leaf hyperplane") {
  OrthonormalBasis v{{Vector::unit(2, 1)}, Vector::unit(2, 0)};
  CHECK_THROWS_AS(affine_foliation(Vector(2), Vector::unit(2, 1), v),
                  DomainError);
}

TEST_CASE("affine foliation Jacobian is constant over the grid") {
  double s = 1.0 / std::sqrt(2.0);
  OrthonormalBasis v{{Vector{s, -s}}, Vector{s, s}};
  Foliation fol = affine_foliation(Vector{1.0, 1.0}, Vector{s, s}, v);
  Matrix j0 = fol.jacobian(Vector(2));
  auto grid = linspace(-1.0, 1.0, 9);
  for (double a : grid) {
    for (double b : grid) {
      CHECK(norm_max(fol.jacobian(Vector{a, b}) - j0) <= 1e-12);
    }
  }
}

TEST_CASE("graph foliation: the parabola example") {
  Foliation fol = registry_foliation("parabola-foliation");
  CHECK(fol.provenance() == FoliationKind::Graph);
  // forward (s,y) = (y, s + y^2); inverse (z1,z2) = (z2 - z1^2, z1)
  Vector z = fol.forward(Vector{0.5, 2.0});
  CHECK(z[0] == 2.0);
  CHECK(z[1] == doctest::Approx(4.5));
  Vector w = fol.inverse(Vector{2.0, 4.5});
  CHECK(w[0] == doctest::Approx(0.5));
  CHECK(w[1] == doctest::Approx(2.0));
  check_core_invariants(fol);
}

TEST_CASE("graph foliation with g = 0 is the axis swap") {
  Foliation fol = graph_foliation(1, [](const Vector&) { return 0.0; });
  Matrix j = fol.jacobian(Vector(2));
  CHECK(std::abs(std::abs(mat_det(j)) - 1.0) <= 1e-12);
  Vector z = fol.forward(Vector{0.3, 0.7});
  CHECK(z[0] == 0.7);
  CHECK(z[1] == 0.3);
}

TEST_CASE("graph foliation with g = sin round-trips on a grid") {
  Foliation fol = graph_foliation(
      1, [](const Vector& y) { return std::sin(y[0]); });
  auto grid = linspace(-1.0, 1.0, 21);
  for (double s : grid) {
    for (double y : grid) {
      Vector w{s, y};
      CHECK(norm(fol.inverse(fol.forward(w)) - w) <= 1e-10);
    }
  }
  check_core_invariants(fol);
}

TEST_CASE("graph foliation in three dimensions") {
  Foliation fol = graph_foliation(
      2, [](const Vector& y) { return y[0] * y[0] + 0.5 * y[1]; });
  CHECK(fol.dim() == 3);
  Vector w{0.2, 0.3, -0.4};
  CHECK(norm(fol.inverse(fol.forward(w)) - w) <= 1e-10);
  check_core_invariants(fol);
}

TEST_CASE("curve foliation: straight frame reduces to the affine identity") {
  CurveFrame frame;
  Vector p0{0.5, -0.25};
  frame.gamma1 = [p0](double t) { return p0 + t * Vector::unit(2, 0); };
  frame.gamma1_deriv = [](double) { return Vector::unit(2, 0); };
  frame.gamma2 = [](double) { return ProjectivePoint(Vector{1.0, 0.0}); };
  Foliation fol = curve_foliation(frame, 33);
  CHECK(fol.provenance() == FoliationKind::Curve);
  CHECK_FALSE(fol.interval_shrunk());
  Vector w{0.1, -0.2};
  CHECK(norm(fol.forward(w) - (p0 + w)) <= 1e-12);
  check_core_invariants(fol);
  // A(s) is the identity along the whole frame
  CHECK(op_norm(fol.frame_matrix(0.25) - Matrix::identity(2)) <= 1e-12);
}

TEST_CASE("curve foliation on the transversal parabola frame") {
  CurveFrame frame = registry_frame("parabola-frame");
  Foliation fol = curve_foliation(frame, 64);
  CHECK(norm(fol.forward(Vector(2)) - Vector(2)) <= 1e-10);
  Matrix j0 = fol.jacobian(Vector(2));
  CHECK(std::abs(mat_det(j0)) >= 0.5);
  CHECK_FALSE(fol.interval_shrunk());

  // frame columns: first column is the lifted leaf normal, the rest are an
  // orthonormal basis of its orthogonal complement
  for (double s : linspace(fol.interval().first, fol.interval().second, 64)) {
    Matrix a = fol.frame_matrix(s);
    Vector normal = a.col(0);
    Vector leaf = a.col(1);
    CHECK(std::abs(norm(normal) - 1.0) <= 1e-9);
    CHECK(std::abs(norm(leaf) - 1.0) <= 1e-9);
    CHECK(std::abs(dot(normal, leaf)) <= 1e-9);
    // the normal tracks gamma2 up to sign
    Vector g2 = frame.gamma2(s).rep();
    CHECK(std::abs(std::abs(dot(normal, g2)) - 1.0) <= 1e-9);
  }
}

TEST_CASE("curve foliation rejects a non-transversal frame at 0") {
  CurveFrame frame = registry_frame("parabola-tangent-frame");
  CHECK_THROWS_AS(curve_foliation(frame, 64), TransversalityError);
}

TEST_CASE("curve foliation shrinks the interval near the antipodal pole") {
  CurveFrame frame;
  frame.gamma1 = [](double t) { return Vector{0.0, t}; };
  frame.gamma1_deriv = [](double) { return Vector{0.0, 1.0}; };
  // the leaf normal sweeps from e1 at t=0 toward -e1 at |t| -> 1.2
  frame.gamma2 = [](double t) {
    double a = 3.14159265358979323846 * t / 1.2;
    return ProjectivePoint(Vector{std::cos(a), std::sin(a)});
  };
  frame.t_min = -1.2;
  frame.t_max = 1.2;
  // gamma1'(0) = e2 vs normal e1 would be perpendicular; tilt gamma1
  frame.gamma1 = [](double t) { return Vector{0.8 * t, 0.6 * t}; };
  frame.gamma1_deriv = [](double) { return Vector{0.8, 0.6}; };
  Foliation fol = curve_foliation(frame, 97);
  CHECK(fol.interval_shrunk());
  CHECK(fol.interval().second < 1.2);
  CHECK(fol.interval().first > -1.2);
  // queries beyond the working interval are refused
  CHECK_THROWS_AS(fol.frame_matrix(1.19), DomainError);
  check_core_invariants(fol);
}

TEST_CASE("curve foliation enforces the speed band") {
  CurveFrame frame;
  frame.gamma1 = [](double t) { return Vector{3.0 * t, 0.0}; };  // speed 3
  frame.gamma1_deriv = [](double) { return Vector{3.0, 0.0}; };
  frame.gamma2 = [](double) { return ProjectivePoint(Vector{1.0, 0.0}); };
  CHECK_THROWS_AS(curve_foliation(frame, 33), DomainError);
}

TEST_CASE("curve foliation propagates lift failures") {
  CurveFrame frame;
  frame.gamma1 = [](double t) { return Vector{t, 0.0}; };
  frame.gamma1_deriv = [](double) { return Vector{1.0, 0.0}; };
  // oscillates too fast for the sample resolution
  frame.gamma2 = [](double t) {
    double a = 40.0 * t;
    return ProjectivePoint(Vector{std::cos(a), std::sin(a)});
  };
  CHECK_THROWS_AS(curve_foliation(frame, 17), LiftError);
}

TEST_CASE("identity foliation recovers F1(p0) geometry") {
  Foliation fol = identity_foliation(Vector{2.0, -1.0});
  CHECK(norm(fol.base() - Vector{2.0, -1.0}) == 0.0);
  CHECK(norm(fol.forward(Vector{0.1, 0.2}) - Vector{2.1, -0.8}) <= 1e-14);
}

TEST_CASE("registry foliation and frame lookups") {
  CHECK_THROWS_AS(registry_foliation("nope"), UnknownNameError);
  CHECK_THROWS_AS(registry_frame("nope"), UnknownNameError);
  CHECK(registry_foliation("identity-foliation").provenance() ==
        FoliationKind::Affine);
}
