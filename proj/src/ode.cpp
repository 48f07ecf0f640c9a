#include "foliant/ode.hpp"

#include <algorithm>
#include <cmath>

#include "foliant/errors.hpp"
#include "foliant/rng.hpp"

namespace foliant {

Trajectory integrate_rk4(const IVP& ivp, double t_end, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw DomainError("integrate_rk4: step must be positive");
  }
  double span = t_end - ivp.t0;
  double nsteps_d = std::ceil(std::abs(span) / step - 1e-12);
  if (nsteps_d > 1e7) {
    throw DomainError("integrate_rk4: step count exceeds 1e7");
  }
  long long nsteps = std::max(1LL, static_cast<long long>(nsteps_d));
  double dir = span < 0.0 ? -1.0 : 1.0;

  const VectorField& f = ivp.field;
  Trajectory traj;
  traj.step = step;
  traj.times.reserve(std::size_t(nsteps) + 1);
  traj.states.reserve(std::size_t(nsteps) + 1);
  traj.times.push_back(ivp.t0);
  traj.states.push_back(ivp.p0);

  Vector z = ivp.p0;
  double t = ivp.t0;
  for (long long i = 0; i < nsteps; ++i) {
    double remaining = t_end - t;
    double h = dir * std::min(step, std::abs(remaining));
    if (h == 0.0) break;
    Vector k1 = f(z);
    Vector k2 = f(z + (h / 2.0) * k1);
    Vector k3 = f(z + (h / 2.0) * k2);
    Vector k4 = f(z + h * k3);
    z = z + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t = (i + 1 == nsteps) ? t_end : t + h;
    if (!z.finite()) {
      throw EvalError("integrate_rk4: state became non-finite at t = " +
                      std::to_string(t));
    }
    traj.times.push_back(t);
    traj.states.push_back(z);
  }
  return traj;
}

std::vector<Vector> funnel_directions(std::size_t dim, int count,
                                      std::uint64_t seed) {
  std::vector<Vector> dirs;
  dirs.reserve(std::size_t(count));
  if (dim == 2) {
    for (int j = 0; j < count; ++j) {
      double a = 2.0 * 3.14159265358979323846 * double(j) / double(count);
      dirs.push_back(Vector{std::cos(a), std::sin(a)});
    }
  } else {
    Rng rng(seed);
    for (int j = 0; j < count; ++j) dirs.push_back(rng.unit_vector(dim));
  }
  return dirs;
}

std::vector<FunnelReport> funnel(const IVP& ivp,
                                 const std::vector<double>& epsilons,
                                 double t_end, double step, int directions,
                                 std::uint64_t seed) {
  if (directions < 1) throw DomainError("funnel: need at least one direction");
  std::vector<Vector> dirs = funnel_directions(ivp.p0.dim(), directions, seed);
  std::vector<FunnelReport> reports;
  reports.reserve(epsilons.size());
  for (double eps : epsilons) {
    if (eps < 0.0) throw DomainError("funnel: epsilon must be nonnegative");
    std::vector<Trajectory> trajs;
    if (eps == 0.0) {
      trajs.push_back(integrate_rk4(ivp, t_end, step));
    } else {
      for (const Vector& d : dirs) {
        IVP perturbed(ivp.field, ivp.p0 + eps * d, ivp.t0);
        trajs.push_back(integrate_rk4(perturbed, t_end, step));
      }
    }
    FunnelReport rep;
    rep.epsilon = eps;
    rep.trajectories = int(trajs.size());
    rep.times = trajs[0].times;
    rep.diameter.resize(rep.times.size(), 0.0);
    for (std::size_t k = 0; k < rep.times.size(); ++k) {
      double dmax = 0.0;
      for (std::size_t i = 0; i < trajs.size(); ++i) {
        for (std::size_t j = i + 1; j < trajs.size(); ++j) {
          dmax = std::max(dmax, norm(trajs[i].states[k] - trajs[j].states[k]));
        }
      }
      rep.diameter[k] = dmax;
    }
    rep.final_diameter = rep.diameter.empty() ? 0.0 : rep.diameter.back();
    reports.push_back(std::move(rep));
  }
  return reports;
}

double residual(const VectorField& f,
                const std::function<Vector(double)>& candidate,
                const std::vector<double>& grid) {
  if (grid.empty()) throw DomainError("residual: empty grid");
  const double h = 1e-6;
  double worst = 0.0;
  for (double t : grid) {
    Vector derivative = (1.0 / (2.0 * h)) * (candidate(t + h) - candidate(t - h));
    worst = std::max(worst, norm(derivative - f(candidate(t))));
  }
  return worst;
}

}  // namespace foliant
