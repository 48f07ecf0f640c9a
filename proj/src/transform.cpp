#include "foliant/transform.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "foliant/errors.hpp"
#include "foliant/rng.hpp"

namespace foliant {

namespace {

using detail::StrataAcc;

Matrix inverted_jacobian(const Foliation& phi, const Vector& w) {
  Matrix j = phi.jacobian(w);
  if (std::abs(mat_det(j)) <= 1e-10) {
    throw SingularMatrixError(
        "foliation Jacobian is singular at the queried point");
  }
  return mat_inverse(j);
}

Vector clamp_box(Vector v, double r) {
  for (std::size_t i = 0; i < v.dim(); ++i) {
    v[i] = std::clamp(v[i], -r, r);
  }
  return v;
}

}  // namespace

PulledBackField pullback_field(const VectorField& f, const Foliation& phi) {
  if (f.dim() != phi.dim()) {
    throw DimensionError("pullback_field: field and foliation dimensions differ");
  }
  // Copy semantics keep the pulled-back field self-contained.
  auto phi_copy = std::make_shared<Foliation>(phi);
  auto f_copy = std::make_shared<VectorField>(f);
  VectorMap eval = [phi_copy, f_copy](const Vector& w) {
    return inverted_jacobian(*phi_copy, w) * (*f_copy)(phi_copy->forward(w));
  };
  return PulledBackField{
      VectorField("pullback(" + f.name() + ")", f.dim(), std::move(eval))};
}

TransversalityResult transversality(const VectorField& f, const Foliation& phi) {
  if (f.dim() != phi.dim()) {
    throw DimensionError("transversality: field and foliation dimensions differ");
  }
  Matrix inv = inverted_jacobian(phi, Vector(phi.dim()));
  TransversalityResult result;
  result.normal = inv.row(0);
  result.value = dot(result.normal, f(phi.base()));
  return result;
}

LipschitzEstimate lipschitz_fixing_first(const VectorMap& g, std::size_t dim_in,
                                         const SampleParams& params) {
  if (params.budget < 100) {
    throw DomainError("lipschitz_fixing_first: budget must be at least 100");
  }
  if (dim_in < 2) {
    throw DimensionError(
        "lipschitz_fixing_first: need a pinned coordinate plus at least one "
        "free coordinate");
  }
  if (!(params.region > 0.0)) {
    throw DomainError("lipschitz_fixing_first: region must be positive");
  }
  const double r = params.region;
  std::size_t n = dim_in - 1;

  Rng rng(params.seed);
  StrataAcc acc(r);
  const double probe_sep = detail::noise_probe_separation(r, r);
  const double sep_floor =
      std::max(detail::separation_floor(r, r), params.min_separation);

  bool have_best = false;
  double best_s = 0.0;
  Vector best_mid(n);
  int probes_done = 0;

  auto assemble = [n](double s, const Vector& coords) {
    Vector w(n + 1);
    w[0] = s;
    for (std::size_t i = 0; i < n; ++i) w[i + 1] = coords[i];
    return w;
  };

  // Ulp-scale probe: variation at this separation is evaluation noise.
  auto probe_noise = [&](double s, const Vector& anchor) {
    if (probes_done >= 64) return;
    ++probes_done;
    Vector x = clamp_box(anchor, r);
    Vector y = clamp_box(x + probe_sep * rng.unit_vector(n), r);
    Vector gx = g(assemble(s, x));
    Vector gy = g(assemble(s, y));
    acc.note_value(std::max(norm_max(gx), norm_max(gy)));
    acc.note_noise(norm(gx - gy));
  };

  auto record = [&](double s, const Vector& a, const Vector& c) {
    double d = norm(a - c);
    if (d <= 0.0) return;
    Vector gx = g(assemble(s, a));
    Vector gy = g(assemble(s, c));
    if (gx.dim() != gy.dim()) {
      throw EvalError("lipschitz_fixing_first: map output dimension varies");
    }
    acc.note_value(std::max(norm_max(gx), norm_max(gy)));
    double num = norm(gx - gy);
    if (acc.is_fine(d) && num < acc.numerator_gate()) return;
    if (acc.add(num / d, d)) {
      best_s = s;
      best_mid = 0.5 * (a + c);
      have_best = true;
      if (acc.is_fine(d)) probe_noise(best_s, best_mid);
    }
  };

  for (int i = 0; i < 4; ++i) probe_noise(0.0, Vector(n));

  int free_pairs = params.budget / 2;
  for (int i = 0; i < free_pairs; ++i) {
    double s = rng.uniform(-r, r);
    record(s, rng.in_box(n, r), rng.in_box(n, r));
  }
  if (have_best) probe_noise(best_s, best_mid);

  int forced_pairs = params.budget - free_pairs;
  for (int j = 0; j < forced_pairs; ++j) {
    double frac = forced_pairs > 1 ? double(j) / double(forced_pairs - 1) : 0.0;
    double e = detail::kForcedExpMin +
               (detail::kForcedExpMax - detail::kForcedExpMin) * frac;
    double d = std::max(r * std::pow(2.0, -e), sep_floor);
    double s = 0.0;
    Vector anchor(n);
    switch (j % 3) {
      case 0:
        break;  // diagonal limit at the origin of the (s,y) box
      case 1:
        if (have_best) {
          s = best_s;
          anchor = best_mid;
        }
        break;
      default:
        s = rng.uniform(-r, r);
        anchor = rng.in_box(n, r * (1.0 - 1.0 / 256.0));
        break;
    }
    Vector x = clamp_box(anchor + rng.in_ball(n, d), r);
    Vector dir = rng.unit_vector(n);
    Vector y = clamp_box(x + d * dir, r);
    if (norm(x - y) <= 0.0) y = clamp_box(x - d * dir, r);
    record(s, x, y);
  }

  LipschitzEstimate est;
  est.constant = acc.best();
  est.region = r;
  est.pairs_used = acc.pairs();
  est.strata = acc.stats();
  est.blowup = acc.blowup();
  est.seed = params.seed;
  return est;
}

LipschitzEstimate lipschitz_along_direction(const ScalarMap& f, const Vector& p0,
                                            const Vector& u,
                                            const SampleParams& params) {
  if (p0.dim() != 2 || u.dim() != 2) {
    throw DimensionError("lipschitz_along_direction: expects dimension 2");
  }
  if (norm(u) <= 0.0) {
    throw DomainError("lipschitz_along_direction: direction must be nonzero");
  }
  Vector uhat = normalized(u);
  Vector wperp{-uhat[1], uhat[0]};
  // (a, b) -> f(p0 + a w⊥ + b û); the pinned coordinate a fixes the line,
  // b moves along u.
  VectorMap g = [f, p0, uhat, wperp](const Vector& ab) {
    return Vector{f(p0 + ab[0] * wperp + ab[1] * uhat)};
  };
  return lipschitz_fixing_first(g, 2, params);
}

}  // namespace foliant
