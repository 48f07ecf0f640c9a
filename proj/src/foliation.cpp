#include "foliant/foliation.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "foliant/errors.hpp"

namespace foliant {

const char* to_string(FoliationKind k) {
  switch (k) {
    case FoliationKind::Affine: return "affine";
    case FoliationKind::Graph: return "graph";
    case FoliationKind::Curve: return "curve";
  }
  return "?";
}

Foliation::Foliation(DiffeoMap map, Vector base, FoliationKind kind)
    : map_(std::move(map)), base_(std::move(base)), kind_(kind) {
  if (base_.dim() != map_.dim()) {
    throw DimensionError("Foliation: base point dimension mismatch");
  }
  Vector origin(map_.dim());
  if (norm(map_.forward(origin) - base_) > 1e-10 * std::max(1.0, norm(base_))) {
    throw DomainError("Foliation: map does not send the origin to the base point");
  }
  double det = mat_det(map_.jacobian(origin));
  if (!(std::abs(det) > 1e-8)) {
    throw DomainError("Foliation: Jacobian at the origin is numerically singular");
  }
}

Matrix Foliation::frame_matrix(double s) const {
  if (!frame_) {
    throw DomainError("Foliation: no frame map (not curve-built)");
  }
  return frame_(s);
}

void Foliation::set_frame(std::function<Matrix(double)> frame,
                          std::pair<double, double> interval, bool shrunk) {
  frame_ = std::move(frame);
  interval_ = interval;
  shrunk_ = shrunk;
}

Foliation affine_foliation(const Vector& p0, const Vector& w,
                           const OrthonormalBasis& V) {
  std::size_t dim = p0.dim();
  if (w.dim() != dim || V.columns.size() != dim - 1) {
    throw DimensionError("affine_foliation: dimension mismatch");
  }
  Vector w_perp = w;
  for (const Vector& b : V.columns) w_perp = w_perp - dot(w, b) * b;
  if (norm(w_perp) <= 1e-8) {
    throw DomainError(
        "affine_foliation: sweep direction lies in the leaf hyperplane "
        "(degenerate frame)");
  }
  std::vector<Vector> cols;
  cols.push_back(w);
  for (const Vector& b : V.columns) cols.push_back(b);
  Matrix b = Matrix::from_columns(cols);
  Matrix binv = mat_inverse(b);
  VectorMap forward = [p0, b](const Vector& sy) { return p0 + b * sy; };
  VectorMap inverse = [p0, binv](const Vector& z) { return binv * (z - p0); };
  MatrixMap jac = [b](const Vector&) { return b; };
  DiffeoMap map(dim, forward, inverse, jac);
  map.validate_inverse_near(Vector(dim), 0.1);
  return Foliation(std::move(map), p0, FoliationKind::Affine);
}

Foliation graph_foliation(std::size_t n, ScalarMap g,
                          std::function<Vector(const Vector&)> grad_g) {
  if (n == 0) throw DimensionError("graph_foliation: n must be positive");
  std::size_t dim = n + 1;
  auto eval_g = [g, n](const Vector& y) {
    if (y.dim() != n) throw DimensionError("graph_foliation: g argument dim");
    double v = g(y);
    if (!std::isfinite(v)) throw EvalError("graph_foliation: g is non-finite");
    return v;
  };
  VectorMap forward = [eval_g, n, dim](const Vector& sy) {
    Vector y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = sy[i + 1];
    Vector z(dim);
    for (std::size_t i = 0; i < n; ++i) z[i] = y[i];
    z[n] = sy[0] + eval_g(y);
    return z;
  };
  VectorMap inverse = [eval_g, n, dim](const Vector& z) {
    Vector y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = z[i];
    Vector sy(dim);
    sy[0] = z[n] - eval_g(y);
    for (std::size_t i = 0; i < n; ++i) sy[i + 1] = y[i];
    return sy;
  };
  auto grad = grad_g;
  if (!grad) {
    grad = [eval_g, n](const Vector& y) {
      Vector out(n);
      double h = default_fd_step(y);
      for (std::size_t i = 0; i < n; ++i) {
        Vector yp = y, ym = y;
        yp[i] += h;
        ym[i] -= h;
        out[i] = (eval_g(yp) - eval_g(ym)) / (2.0 * h);
      }
      return out;
    };
  }
  MatrixMap jac = [grad, n, dim](const Vector& sy) {
    Vector y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = sy[i + 1];
    Vector dg = grad(y);
    Matrix j(dim, dim);
    for (std::size_t i = 0; i < n; ++i) j(i, i + 1) = 1.0;
    j(n, 0) = 1.0;
    for (std::size_t i = 0; i < n; ++i) j(n, i + 1) = dg[i];
    return j;
  };
  Vector base(dim);
  base[n] = eval_g(Vector(n));
  DiffeoMap map(dim, forward, inverse, jac);
  map.validate_inverse_near(Vector(dim), 0.1);
  return Foliation(std::move(map), base, FoliationKind::Graph);
}

namespace {

Vector gamma1_derivative(const CurveFrame& frame, double t) {
  if (frame.gamma1_deriv) return frame.gamma1_deriv(t);
  double h = 1e-6;
  return (1.0 / (2.0 * h)) * (frame.gamma1(t + h) - frame.gamma1(t - h));
}

}  // namespace

Foliation curve_foliation(const CurveFrame& frame, int samples) {
  if (!frame.gamma1 || !frame.gamma2) {
    throw DomainError("curve_foliation: frame is missing gamma1/gamma2");
  }
  if (samples < 2) throw DomainError("curve_foliation: need at least 2 samples");
  if (!(frame.t_min <= 0.0 && 0.0 <= frame.t_max && frame.t_min < frame.t_max)) {
    throw DomainError("curve_foliation: parameter interval must contain 0");
  }

  std::vector<double> ts = linspace(frame.t_min, frame.t_max, samples);
  std::vector<ProjectivePoint> pps;
  pps.reserve(ts.size());
  for (double t : ts) pps.push_back(frame.gamma2(t));
  std::vector<Vector> lift = lift_path(pps);

  std::size_t dim = lift[0].dim();
  std::size_t i0 = 0;
  for (std::size_t i = 1; i < ts.size(); ++i) {
    if (std::abs(ts[i]) < std::abs(ts[i0])) i0 = i;
  }
  // Global sign choice: the lifted normal at the sample nearest 0 points
  // away from -e1 (the lift through v0 != -e1).
  if (lift[i0][0] < 0.0) {
    for (Vector& v : lift) v = -v;
  }
  // Shrink the working interval before the rotation formula's pole at
  // <e1, lifted normal> = -1.
  const double pole_guard = -1.0 + 1e-6;
  std::size_t lo = i0, hi = i0;
  while (lo > 0 && lift[lo - 1][0] > pole_guard) --lo;
  while (hi + 1 < lift.size() && lift[hi + 1][0] > pole_guard) ++hi;
  bool shrunk = (lo > 0) || (hi + 1 < lift.size());
  if (lift[i0][0] <= pole_guard) {
    throw DomainError(
        "curve_foliation: leaf normal at 0 is antipodal to e1 even after the "
        "sign choice");
  }

  std::vector<double> kept_ts(ts.begin() + lo, ts.begin() + hi + 1);
  std::vector<Vector> kept_lift(lift.begin() + lo, lift.begin() + hi + 1);

  // Speed sanity on the kept samples: arc-length parameterization is not
  // enforced, but the speed must stay within [0.5, 2].
  for (double t : kept_ts) {
    double speed = norm(gamma1_derivative(frame, t));
    if (!(speed >= 0.5 && speed <= 2.0)) {
      throw DomainError(
          "curve_foliation: |gamma1'| leaves [0.5, 2] at t = " +
          std::to_string(t) + " (re-parameterize the curve)");
    }
  }

  double s_lo = kept_ts.front(), s_hi = kept_ts.back();
  auto gamma2 = frame.gamma2;
  // A(s) evaluated on demand; sign of the representative follows the
  // nearest lifted sample so the frame stays continuous in s.
  auto frame_at = [gamma2, kept_ts, kept_lift, s_lo, s_hi,
                   dim](double s) -> Matrix {
    double slack = 1e-3 * (s_hi - s_lo) + 1e-9;
    if (s < s_lo - slack || s > s_hi + slack) {
      throw DomainError(
          "curve_foliation: parameter outside the working interval");
    }
    std::size_t nearest = 0;
    double best = std::abs(kept_ts[0] - s);
    for (std::size_t i = 1; i < kept_ts.size(); ++i) {
      double d = std::abs(kept_ts[i] - s);
      if (d < best) {
        best = d;
        nearest = i;
      }
    }
    Vector r = gamma2(s).rep();
    if (dot(r, kept_lift[nearest]) < 0.0) r = -r;
    return rotation_between(Vector::unit(dim, 0), r);
  };

  // Transversality at 0 (condition (iii)): the curve tangent must not be
  // perpendicular to the lifted leaf normal.
  Matrix a0 = frame_at(0.0);
  Vector normal0 = a0.col(0);
  Vector d10 = gamma1_derivative(frame, 0.0);
  if (std::abs(dot(d10, normal0)) <= 1e-6) {
    throw TransversalityError(
        "curve_foliation: gamma1'(0) is perpendicular to the leaf normal "
        "gamma2(0); the frame is not transversal at 0");
  }

  auto gamma1 = frame.gamma1;
  VectorMap forward = [gamma1, frame_at, dim](const Vector& sy) {
    if (sy.dim() != dim) {
      throw DimensionError("curve foliation: input dimension mismatch");
    }
    Vector embedded(dim);
    for (std::size_t i = 1; i < dim; ++i) embedded[i] = sy[i];
    return gamma1(sy[0]) + frame_at(sy[0]) * embedded;
  };

  Vector base = frame.gamma1(0.0);
  DiffeoMap map(dim, forward);
  Foliation fol(std::move(map), base, FoliationKind::Curve);
  fol.set_frame(frame_at, {s_lo, s_hi}, shrunk);
  return fol;
}

Foliation identity_foliation(const Vector& p0) {
  std::size_t dim = p0.dim();
  if (dim < 2) throw DimensionError("identity_foliation: dimension must be >= 2");
  OrthonormalBasis v;
  for (std::size_t i = 1; i < dim; ++i) v.columns.push_back(Vector::unit(dim, i));
  v.normal = Vector::unit(dim, 0);
  return affine_foliation(p0, Vector::unit(dim, 0), v);
}

Foliation registry_foliation(const std::string& name) {
  if (name == "parabola-foliation") {
    ScalarMap g = [](const Vector& y) { return y[0] * y[0]; };
    auto grad = [](const Vector& y) { return Vector{2.0 * y[0]}; };
    return graph_foliation(1, g, grad);
  }
  if (name == "identity-foliation") {
    return identity_foliation(Vector(2));
  }
  throw UnknownNameError("no registry foliation named '" + name + "'");
}

CurveFrame registry_frame(const std::string& name) {
  if (name == "parabola-frame") {
    // A transversal frame for the parabola field: the curve crosses S at
    // the origin while the leaf normal tracks the normal of S at the foot
    // x = 0.6 t.  Condition (iii) value at 0 is -0.8.
    CurveFrame f;
    f.gamma1 = [](double t) { return Vector{0.6 * t, -0.8 * t}; };
    f.gamma1_deriv = [](double) { return Vector{0.6, -0.8}; };
    f.gamma2 = [](double t) {
      return ProjectivePoint(Vector{-1.2 * t, 1.0});
    };
    f.t_min = -0.4;
    f.t_max = 0.4;
    return f;
  }
  if (name == "parabola-tangent-frame") {
    // gamma1 runs along S itself with gamma2 the normal of S: the slices
    // are tangent lines, and the frame fails transversality at 0.
    CurveFrame f;
    f.gamma1 = [](double t) { return Vector{t, t * t}; };
    f.gamma1_deriv = [](double t) { return Vector{1.0, 2.0 * t}; };
    f.gamma2 = [](double t) {
      return ProjectivePoint(Vector{-2.0 * t, 1.0});
    };
    f.t_min = -0.5;
    f.t_max = 0.5;
    return f;
  }
  throw UnknownNameError("no registry frame named '" + name + "'");
}

}  // namespace foliant
