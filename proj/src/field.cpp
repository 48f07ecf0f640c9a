#include "foliant/field.hpp"

#include <cmath>

#include "foliant/errors.hpp"

namespace foliant {

double default_fd_step(const Vector& x) {
  return 1e-6 * std::max(1.0, norm(x));
}

Matrix fd_jacobian(const VectorMap& map, const Vector& x, double h) {
  if (!(h >= 1e-9 && h <= 1e-2)) {
    throw DomainError("fd_jacobian: step must lie in [1e-9, 1e-2]");
  }
  std::size_t n = x.dim();
  Matrix j;
  for (std::size_t col = 0; col < n; ++col) {
    Vector xp = x, xm = x;
    xp[col] += h;
    xm[col] -= h;
    Vector fp = map(xp);
    Vector fm = map(xm);
    if (fp.dim() != fm.dim()) {
      throw EvalError("fd_jacobian: map output dimension varies");
    }
    if (col == 0) j = Matrix(fp.dim(), n);
    for (std::size_t r = 0; r < fp.dim(); ++r) {
      j(r, col) = (fp[r] - fm[r]) / (2.0 * h);
    }
  }
  return j;
}

Matrix fd_jacobian(const VectorMap& map, const Vector& x) {
  return fd_jacobian(map, x, default_fd_step(x));
}

VectorField::VectorField(std::string name, std::size_t dim, VectorMap eval,
                         MatrixMap jacobian)
    : name_(std::move(name)),
      dim_(dim),
      eval_(std::move(eval)),
      jac_(std::move(jacobian)) {
  if (dim_ == 0) throw DimensionError("VectorField: dimension must be positive");
  if (!eval_) throw DomainError("VectorField: missing evaluation function");
}

VectorField VectorField::from_expressions(std::string name,
                                          const std::vector<ExprPtr>& components,
                                          std::size_t dim) {
  if (components.size() != dim) {
    throw DimensionError("VectorField: expected " + std::to_string(dim) +
                         " component expressions, got " +
                         std::to_string(components.size()));
  }
  auto comps = components;
  VectorMap eval = [comps, dim](const Vector& z) {
    EvalContext ctx{dim, z};
    Vector out(dim);
    for (std::size_t i = 0; i < dim; ++i) out[i] = eval_expr(*comps[i], ctx);
    return out;
  };
  return VectorField(std::move(name), dim, std::move(eval));
}

Vector VectorField::operator()(const Vector& z) const {
  if (z.dim() != dim_) {
    throw DimensionError("VectorField '" + name_ + "': point dimension " +
                         std::to_string(z.dim()) + " != " +
                         std::to_string(dim_));
  }
  Vector out = eval_(z);
  if (out.dim() != dim_) {
    throw EvalError("VectorField '" + name_ + "': component count mismatch");
  }
  if (!out.finite()) {
    throw EvalError("VectorField '" + name_ + "': non-finite value");
  }
  return out;
}

Matrix VectorField::jacobian(const Vector& z) const {
  if (jac_) return jac_(z);
  const VectorField& self = *this;
  return fd_jacobian([&self](const Vector& x) { return self(x); }, z);
}

DiffeoMap::DiffeoMap(std::size_t dim, VectorMap forward, VectorMap inverse,
                     MatrixMap jacobian)
    : dim_(dim),
      forward_(std::move(forward)),
      inverse_(std::move(inverse)),
      jac_(std::move(jacobian)) {
  if (dim_ == 0) throw DimensionError("DiffeoMap: dimension must be positive");
  if (!forward_) throw DomainError("DiffeoMap: missing forward map");
}

Vector DiffeoMap::forward(const Vector& w) const {
  if (w.dim() != dim_) {
    throw DimensionError("DiffeoMap: input dimension mismatch");
  }
  Vector out = forward_(w);
  if (out.dim() != dim_ || !out.finite()) {
    throw EvalError("DiffeoMap: forward map produced an invalid value");
  }
  return out;
}

Vector DiffeoMap::inverse(const Vector& z) const {
  if (!inverse_) throw DomainError("DiffeoMap: no inverse available");
  if (z.dim() != dim_) {
    throw DimensionError("DiffeoMap: input dimension mismatch");
  }
  Vector out = inverse_(z);
  if (out.dim() != dim_ || !out.finite()) {
    throw EvalError("DiffeoMap: inverse map produced an invalid value");
  }
  return out;
}

Matrix DiffeoMap::jacobian(const Vector& w) const {
  if (jac_) return jac_(w);
  const DiffeoMap& self = *this;
  return fd_jacobian([&self](const Vector& x) { return self.forward(x); }, w);
}

void DiffeoMap::validate_inverse_near(const Vector& w0, double radius) const {
  if (!inverse_) return;
  std::vector<Vector> probes{w0};
  for (std::size_t i = 0; i < dim_; ++i) {
    Vector p = w0;
    p[i] += radius;
    probes.push_back(p);
    p[i] -= 2.0 * radius;
    probes.push_back(p);
  }
  for (const Vector& w : probes) {
    Vector z = forward(w);
    Vector back = inverse(z);
    if (norm(back - w) > 1e-8 * std::max(1.0, norm(w))) {
      throw DomainError(
          "DiffeoMap: supplied inverse disagrees with the forward map near "
          "the base point");
    }
  }
}

IVP::IVP(VectorField field_in, Vector p0_in, double t0_in)
    : field(std::move(field_in)), p0(std::move(p0_in)), t0(t0_in) {
  if (p0.dim() != field.dim()) {
    throw DimensionError("IVP: initial point dimension != field dimension");
  }
  if (!p0.finite() || !std::isfinite(t0)) {
    throw DomainError("IVP: non-finite initial data");
  }
}

namespace {

// 1 + (z2 - z1^2)^(2/3) via cbrt so negative arguments stay real and exact
// integer cases stay exact.
double two_thirds_pow(double w) {
  double c = std::cbrt(w);
  return c * c;
}

VectorField make_parabola_field() {
  VectorMap eval = [](const Vector& z) {
    return Vector{1.0, 1.0 + two_thirds_pow(z[1] - z[0] * z[0])};
  };
  // Differentiable off S = {z2 = z1^2}; entries blow up on S.
  MatrixMap jac = [](const Vector& z) {
    double w = z[1] - z[0] * z[0];
    double c = (2.0 / 3.0) / std::cbrt(w);
    Matrix j(2, 2);
    j(1, 0) = c * (-2.0 * z[0]);
    j(1, 1) = c;
    return j;
  };
  return VectorField("parabola-field", 2, eval, jac);
}

VectorField make_peano_field() {
  VectorMap eval = [](const Vector& z) {
    return Vector{1.0, two_thirds_pow(z[1])};
  };
  MatrixMap jac = [](const Vector& z) {
    Matrix j(2, 2);
    j(1, 1) = (2.0 / 3.0) / std::cbrt(z[1]);
    return j;
  };
  return VectorField("peano-field", 2, eval, jac);
}

VectorField make_identity_field() {
  VectorMap eval = [](const Vector& z) { return z; };
  MatrixMap jac = [](const Vector& z) { return Matrix::identity(z.dim()); };
  return VectorField("identity-field", 2, eval, jac);
}

VectorField make_linear_field() {
  VectorMap eval = [](const Vector& z) { return Vector{1.0, z[1]}; };
  MatrixMap jac = [](const Vector&) {
    Matrix j(2, 2);
    j(1, 1) = 1.0;
    return j;
  };
  return VectorField("linear-field", 2, eval, jac);
}

VectorField make_trig_field() {
  VectorMap eval = [](const Vector& z) {
    return Vector{1.0 + std::sin(z[1]), std::cos(z[0])};
  };
  MatrixMap jac = [](const Vector& z) {
    Matrix j(2, 2);
    j(0, 1) = std::cos(z[1]);
    j(1, 0) = -std::sin(z[0]);
    return j;
  };
  return VectorField("trig-field", 2, eval, jac);
}

}  // namespace

VectorField registry_field(const std::string& name) {
  if (name == "parabola-field") return make_parabola_field();
  if (name == "peano-field") return make_peano_field();
  if (name == "identity-field") return make_identity_field();
  if (name == "linear-field") return make_linear_field();
  if (name == "trig-field") return make_trig_field();
  throw UnknownNameError("no registry field named '" + name + "'");
}

std::vector<std::string> registry_field_names() {
  return {"parabola-field", "peano-field", "identity-field", "linear-field",
          "trig-field"};
}

std::vector<std::string> registry_smooth_field_names() {
  return {"identity-field", "linear-field", "trig-field"};
}

}  // namespace foliant
