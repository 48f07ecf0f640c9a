#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "foliant/field.hpp"
#include "foliant/geometry.hpp"

// Local n-foliation constructors: affine (translated hyperplanes), graph
// (leaves y -> (y, s + g(y))), and the curve-driven construction
// Φ(s,y) = γ1(s) + A(s)(0,y) with A(s) the rotation taking e1 to the
// lifted leaf normal.

namespace foliant {

// A C¹ path (γ1, γ2) of base points and leaf normals over a parameter
// interval containing 0.
struct CurveFrame {
  std::function<Vector(double)> gamma1;
  std::function<ProjectivePoint(double)> gamma2;
  std::function<Vector(double)> gamma1_deriv;  // optional; FD when absent
  double t_min = -0.5;
  double t_max = 0.5;
};

enum class FoliationKind { Affine, Graph, Curve };

const char* to_string(FoliationKind k);

class Foliation {
 public:
  Foliation(DiffeoMap map, Vector base, FoliationKind kind);

  const DiffeoMap& map() const { return map_; }
  const Vector& base() const { return base_; }
  FoliationKind provenance() const { return kind_; }
  std::size_t dim() const { return map_.dim(); }

  Vector forward(const Vector& w) const { return map_.forward(w); }
  Matrix jacobian(const Vector& w) const { return map_.jacobian(w); }
  bool has_inverse() const { return map_.has_inverse(); }
  Vector inverse(const Vector& z) const { return map_.inverse(z); }
  bool has_analytic_jacobian() const { return map_.has_analytic_jacobian(); }

  // Curve-built foliations only: the frame A(s), the working parameter
  // interval, and whether it was shrunk to dodge the antipodal pole.
  Matrix frame_matrix(double s) const;
  bool has_frame() const { return bool(frame_); }
  std::pair<double, double> interval() const { return interval_; }
  bool interval_shrunk() const { return shrunk_; }

  // Internal wiring used by the constructors below.
  void set_frame(std::function<Matrix(double)> frame,
                 std::pair<double, double> interval, bool shrunk);

 private:
  DiffeoMap map_;
  Vector base_;
  FoliationKind kind_;
  std::function<Matrix(double)> frame_;
  std::pair<double, double> interval_{0.0, 0.0};
  bool shrunk_ = false;
};

// Φ(s,y) = p0 + s w + Σ y_i b_i with exact inverse and constant Jacobian.
// Requires that w has a component orthogonal to span(V) of norm > 1e-8.
Foliation affine_foliation(const Vector& p0, const Vector& w,
                           const OrthonormalBasis& V);

// Φ(s,y) = (y, s + g(y)) on R^{n+1}, exact inverse (z1..zn, z_{n+1}) ->
// (z_{n+1} - g(z1..zn), z1..zn).  grad_g optional (FD fallback).
Foliation graph_foliation(std::size_t n, ScalarMap g,
                          std::function<Vector(const Vector&)> grad_g = nullptr);

// Theorem-style construction from a curve frame; `samples` points of γ2 are
// lifted to the sphere and A(s) is evaluated on demand through the rotation
// formula, with signs propagated from the nearest lifted sample.
Foliation curve_foliation(const CurveFrame& frame, int samples);

// Shifted identity foliation Φ(w) = p0 + w.
Foliation identity_foliation(const Vector& p0);

// Named example foliations: parabola-foliation, identity-foliation.
Foliation registry_foliation(const std::string& name);
// Named example frames: parabola-frame (transversal frame along the
// parabola's normals), parabola-tangent-frame (the degenerate frame with
// γ1 on S itself; fails the transversality condition at 0).
CurveFrame registry_frame(const std::string& name);

}  // namespace foliant
