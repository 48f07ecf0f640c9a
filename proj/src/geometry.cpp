#include "foliant/geometry.hpp"

#include <cmath>

#include "foliant/errors.hpp"

namespace foliant {

namespace {

void require_unit(const Vector& v, const char* name) {
  if (std::abs(norm(v) - 1.0) > 1e-9) {
    throw DomainError(std::string(name) + " must be a unit vector");
  }
}

}  // namespace

Matrix skew_outer(const Vector& x, const Vector& y) {
  if (x.dim() != y.dim()) {
    throw DimensionError("skew_outer: vector dimensions differ");
  }
  std::size_t n = x.dim();
  Matrix k(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      k(i, j) = y[i] * x[j] - x[i] * y[j];
    }
  }
  return k;
}

Matrix rotation_between(const Vector& u, const Vector& v, double antipodal_tol) {
  if (u.dim() != v.dim()) {
    throw DimensionError("rotation_between: vector dimensions differ");
  }
  require_unit(u, "u");
  require_unit(v, "v");
  double c = 1.0 + dot(u, v);
  if (c <= antipodal_tol) {
    throw AntipodalError(
        "rotation_between: antipodal pair (v ~ -u), the rotation formula has "
        "a pole here");
  }
  Matrix k = skew_outer(u, v);
  return Matrix::identity(u.dim()) + k + (1.0 / c) * (k * k);
}

Matrix rotation_limit_probe(const Vector& u, const Vector& wbar, double t) {
  require_unit(u, "u");
  require_unit(wbar, "wbar");
  if (std::abs(dot(u, wbar)) > 1e-10) {
    throw DomainError("rotation_limit_probe: wbar must be orthogonal to u");
  }
  if (!(t > 0.0 && t <= 1e-2)) {
    throw DomainError("rotation_limit_probe: t must lie in (0, 1e-2]");
  }
  Vector w = t * wbar - u;
  // Probing the pole is the point here: 1 + <u,v> ~ t^2/2, which dips below
  // the default refusal tolerance for small t, so only a machine-level
  // guard applies.
  return rotation_between(u, normalized(w), 1e-14);
}

ProjectivePoint::ProjectivePoint(const Vector& v) {
  rep_ = normalized(v);
  for (std::size_t i = 0; i < rep_.dim(); ++i) {
    if (std::abs(rep_[i]) > 1e-12) {
      if (rep_[i] < 0.0) {
        rep_ = -rep_;
        flipped_ = true;
      }
      break;
    }
  }
}

OrthonormalBasis hyperplane_basis(const ProjectivePoint& v) {
  std::size_t dim = v.dim();
  if (dim < 2) {
    throw DimensionError("hyperplane_basis: ambient dimension must be >= 2");
  }
  Vector rep = v.rep();
  Vector e1 = Vector::unit(dim, 0);
  // Canonical representatives never point along -e1, but guard anyway for
  // raw callers.
  if (1.0 + rep[0] <= kAntipodalTol) rep = -rep;
  Matrix r = rotation_between(e1, rep);
  OrthonormalBasis basis;
  basis.normal = rep;
  basis.columns.reserve(dim - 1);
  for (std::size_t j = 1; j < dim; ++j) basis.columns.push_back(r.col(j));
  return basis;
}

OrthonormalBasis orthonormalize_hyperplane(
    const std::vector<Vector>& spanning) {
  if (spanning.empty()) {
    throw DimensionError("orthonormalize_hyperplane: no spanning vectors");
  }
  std::size_t dim = spanning[0].dim();
  if (spanning.size() != dim - 1) {
    throw DimensionError(
        "orthonormalize_hyperplane: a hyperplane in dimension " +
        std::to_string(dim) + " needs " + std::to_string(dim - 1) +
        " spanning vectors");
  }
  std::vector<Vector> cols;
  cols.reserve(dim - 1);
  for (const Vector& v : spanning) {
    if (v.dim() != dim) {
      throw DimensionError("orthonormalize_hyperplane: mixed dimensions");
    }
    Vector w = v;
    for (const Vector& c : cols) w = w - dot(w, c) * c;
    double n = norm(w);
    if (n <= 1e-10) {
      throw DomainError(
          "orthonormalize_hyperplane: spanning vectors are dependent");
    }
    cols.push_back((1.0 / n) * w);
  }
  // Complete with the leftover direction from the standard basis.
  Vector normal;
  for (std::size_t axis = 0; axis < dim; ++axis) {
    Vector w = Vector::unit(dim, axis);
    for (const Vector& c : cols) w = w - dot(w, c) * c;
    double n = norm(w);
    if (n > 1e-6) {
      normal = (1.0 / n) * w;
      break;
    }
  }
  if (normal.dim() == 0) {
    throw DomainError("orthonormalize_hyperplane: could not complete basis");
  }
  // Deterministic sign: first nonzero coordinate positive.
  for (std::size_t i = 0; i < dim; ++i) {
    if (std::abs(normal[i]) > 1e-12) {
      if (normal[i] < 0.0) normal = -normal;
      break;
    }
  }
  return OrthonormalBasis{std::move(cols), std::move(normal)};
}

std::vector<Vector> lift_path(const std::vector<ProjectivePoint>& samples) {
  if (samples.empty()) throw DomainError("lift_path: empty sample list");
  const double min_cos = std::cos(3.14159265358979323846 / 4.0);
  std::vector<Vector> out;
  out.reserve(samples.size());
  out.push_back(samples[0].rep());
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].dim() != samples[0].dim()) {
      throw DimensionError("lift_path: mixed dimensions");
    }
    Vector r = samples[i].rep();
    double c = dot(out.back(), r);
    if (std::abs(c) < min_cos) {
      throw LiftError(
          "lift_path: angular gap between consecutive samples reaches pi/4 "
          "(curve under-sampled)");
    }
    out.push_back(c >= 0.0 ? r : -r);
  }
  return out;
}

}  // namespace foliant
