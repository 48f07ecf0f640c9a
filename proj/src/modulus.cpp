#include "foliant/modulus.hpp"

#include <algorithm>
#include <cmath>

#include "foliant/errors.hpp"
#include "foliant/rng.hpp"

namespace foliant {

namespace {

using detail::StrataAcc;

Vector clamp_into_ball(Vector c, double radius) {
  double n = norm(c);
  if (n > radius && n > 0.0) c = (radius / n) * c;
  return c;
}

}  // namespace

ModulusEstimate modulus_sample(const VectorField& field, const ModulusQuery& q) {
  if (q.budget < 100) {
    throw DomainError("modulus_sample: budget must be at least 100 pairs");
  }
  if (!(q.delta > 0.0) || !std::isfinite(q.delta)) {
    throw DomainError("modulus_sample: delta must be positive");
  }
  if (q.p.dim() != field.dim() || q.v.dim() != field.dim()) {
    throw DimensionError("modulus_sample: p, v and field dimensions differ");
  }

  OrthonormalBasis basis = hyperplane_basis(q.v);
  std::size_t n = basis.columns.size();
  Matrix b = Matrix::from_columns(basis.columns);
  const Vector& p = q.p;
  auto slice_point = [&](const Vector& coords) { return p + b * coords; };

  Rng rng(q.seed);
  StrataAcc acc(q.delta);
  const double probe_sep = detail::noise_probe_separation(q.delta, norm_max(p));
  const double sep_floor = detail::separation_floor(q.delta, norm_max(p));

  // Running argmax pair in slice coordinates; forced-fine pairs zoom onto
  // its midpoint so kinks away from p are resolved at depth too.
  bool have_best = false;
  Vector best_mid(n);
  int probes_done = 0;

  // Ulp-scale probe at an anchor: any observed variation is evaluation
  // noise (rounding dust through kinks, FD noise), not signal.
  auto probe_noise = [&](const Vector& anchor_coords) {
    if (probes_done >= 64) return;
    ++probes_done;
    Vector x = clamp_into_ball(anchor_coords, q.delta);
    Vector y = clamp_into_ball(x + probe_sep * rng.unit_vector(n), q.delta);
    Vector fx = field(slice_point(x));
    Vector fy = field(slice_point(y));
    acc.note_value(std::max(norm_max(fx), norm_max(fy)));
    acc.note_noise(norm(fx - fy));
  };

  auto record = [&](const Vector& a, const Vector& c) {
    Vector x = slice_point(a);
    Vector y = slice_point(c);
    double d = norm(x - y);  // ambient separation, same space as the values
    if (d <= 0.0) return;
    Vector fx = field(x);
    Vector fy = field(y);
    acc.note_value(std::max(norm_max(fx), norm_max(fy)));
    double num = norm(fx - fy);
    if (acc.is_fine(d) && num < acc.numerator_gate()) return;
    if (acc.add(num / d, d)) {
      best_mid = 0.5 * (a + c);
      have_best = true;
      if (acc.is_fine(d)) probe_noise(best_mid);
    }
  };

  for (int i = 0; i < 4; ++i) probe_noise(Vector(n));

  int free_pairs = q.budget / 2;
  for (int i = 0; i < free_pairs; ++i) {
    record(rng.in_ball(n, q.delta), rng.in_ball(n, q.delta));
  }
  if (have_best) probe_noise(best_mid);

  int forced_pairs = q.budget - free_pairs;
  for (int j = 0; j < forced_pairs; ++j) {
    double frac = forced_pairs > 1 ? double(j) / double(forced_pairs - 1) : 0.0;
    double e = detail::kForcedExpMin +
               (detail::kForcedExpMax - detail::kForcedExpMin) * frac;
    double d = std::max(q.delta * std::pow(2.0, -e), sep_floor);
    Vector anchor(n);
    switch (j % 3) {
      case 0:
        break;  // the diagonal limit at p itself
      case 1:
        if (have_best) anchor = best_mid;
        break;
      default:
        anchor = rng.in_ball(n, q.delta * (1.0 - 1.0 / 256.0));
        break;
    }
    Vector x = clamp_into_ball(anchor + rng.in_ball(n, d), q.delta);
    Vector dir = rng.unit_vector(n);
    Vector y = x + d * dir;
    if (norm(y) > q.delta) y = x - d * dir;
    y = clamp_into_ball(y, q.delta);
    record(x, y);
  }

  ModulusEstimate est;
  est.value = acc.best();
  est.delta = q.delta;
  est.pairs_used = acc.pairs();
  est.strata = acc.stats();
  est.blowup = acc.blowup();
  est.seed = q.seed;
  return est;
}

ModulusEstimate modulus_over_pairs(
    const VectorField& field, double delta,
    const std::vector<std::pair<Vector, Vector>>& pairs) {
  if (!(delta > 0.0)) throw DomainError("modulus_over_pairs: delta must be positive");
  StrataAcc acc(delta);
  for (const auto& [x, y] : pairs) {
    double d = norm(x - y);
    if (d <= 0.0) continue;
    Vector fx = field(x);
    Vector fy = field(y);
    acc.note_value(std::max(norm_max(fx), norm_max(fy)));
    acc.add(norm(fx - fy) / d, d);
  }
  ModulusEstimate est;
  est.value = acc.best();
  est.delta = delta;
  est.pairs_used = acc.pairs();
  est.strata = acc.stats();
  est.blowup = acc.blowup();
  est.seed = 0;
  return est;
}

double modulus_gradient(const VectorField& field, const Vector& p,
                        const ProjectivePoint& v) {
  if (p.dim() != field.dim() || v.dim() != field.dim()) {
    throw DimensionError("modulus_gradient: dimension mismatch");
  }
  Matrix j = field.jacobian(p);
  if (!j.finite()) {
    throw EvalError("modulus_gradient: Jacobian is non-finite at p");
  }
  Matrix b = Matrix::from_columns(hyperplane_basis(v).columns);
  return op_norm(j * b);
}

CurveModulusReport modulus_along_curve(const VectorField& field,
                                       const CurveFrame& frame, double delta,
                                       int budget, int samples,
                                       std::uint64_t seed) {
  if (samples < 16) {
    throw DomainError("modulus_along_curve: need at least 16 parameter samples");
  }
  CurveModulusReport report;
  report.params = linspace(frame.t_min, frame.t_max, samples);
  report.per_sample.reserve(report.params.size());
  for (std::size_t i = 0; i < report.params.size(); ++i) {
    double t = report.params[i];
    ModulusQuery q{frame.gamma1(t), frame.gamma2(t), delta, budget,
                   seed + std::uint64_t(i)};
    ModulusEstimate est = modulus_sample(field, q);
    report.max_value = std::max(report.max_value, est.value);
    report.any_blowup = report.any_blowup || est.blowup;
    report.per_sample.push_back(std::move(est));
  }
  return report;
}

}  // namespace foliant
