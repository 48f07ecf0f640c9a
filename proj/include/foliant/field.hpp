#pragma once

#include <functional>
#include <string>
#include <vector>

#include "foliant/expr.hpp"
#include "foliant/linalg.hpp"

namespace foliant {

using ScalarMap = std::function<double(const Vector&)>;
using VectorMap = std::function<Vector(const Vector&)>;
using MatrixMap = std::function<Matrix(const Vector&)>;

// Central-difference step: 1e-6 * max(1, |x|).
double default_fd_step(const Vector& x);

// Central-difference Jacobian, column j = (f(x+h e_j) - f(x-h e_j)) / 2h.
// h must lie in [1e-9, 1e-2].
Matrix fd_jacobian(const VectorMap& map, const Vector& x, double h);
Matrix fd_jacobian(const VectorMap& map, const Vector& x);

// A continuous vector field F: R^{n+1} -> R^{n+1}.  Evaluation checks
// dimensions and finiteness; the optional analytic Jacobian is returned
// raw (it may carry non-finite entries on kink sets, callers decide).
class VectorField {
 public:
  VectorField(std::string name, std::size_t dim, VectorMap eval,
              MatrixMap jacobian = nullptr);

  static VectorField from_expressions(std::string name,
                                      const std::vector<ExprPtr>& components,
                                      std::size_t dim);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return dim_; }
  Vector operator()(const Vector& z) const;
  bool has_analytic_jacobian() const { return bool(jac_); }
  Matrix jacobian(const Vector& z) const;  // analytic if present, else FD

 private:
  std::string name_;
  std::size_t dim_;
  VectorMap eval_;
  MatrixMap jac_;
};

// A diffeomorphism record: forward map, optional exact inverse, optional
// analytic Jacobian (FD fallback otherwise).
class DiffeoMap {
 public:
  DiffeoMap(std::size_t dim, VectorMap forward, VectorMap inverse = nullptr,
            MatrixMap jacobian = nullptr);

  std::size_t dim() const { return dim_; }
  Vector forward(const Vector& w) const;
  bool has_inverse() const { return bool(inverse_); }
  Vector inverse(const Vector& z) const;
  bool has_analytic_jacobian() const { return bool(jac_); }
  Matrix jacobian(const Vector& w) const;

  // Spot-check inverse(forward(w)) = w near w0; throws on disagreement
  // beyond 1e-8.
  void validate_inverse_near(const Vector& w0, double radius) const;

 private:
  std::size_t dim_;
  VectorMap forward_;
  VectorMap inverse_;
  MatrixMap jac_;
};

struct IVP {
  IVP(VectorField field, Vector p0, double t0 = 0.0);
  VectorField field;
  Vector p0;
  double t0;
};

// Named example fields.  Includes at least: parabola-field, peano-field,
// identity-field, linear-field, trig-field.
VectorField registry_field(const std::string& name);
std::vector<std::string> registry_field_names();
std::vector<std::string> registry_smooth_field_names();

}  // namespace foliant
