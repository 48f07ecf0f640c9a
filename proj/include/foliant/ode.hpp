#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "foliant/field.hpp"

// Integration harnesses: fixed-step RK4 trajectories, perturbation funnels
// around the initial point, and residual verification of closed-form
// candidate solutions (the honest way to exhibit non-uniqueness; an
// integrator would silently pick one solution).

namespace foliant {

struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> states;
  double step = 0.0;
  std::string method = "rk4";
};

// Classical fixed-step RK4 from t0 to t_end; t_end < t0 integrates in
// reversed time.  The final step is shortened to land on t_end exactly.
Trajectory integrate_rk4(const IVP& ivp, double t_end, double step);

struct FunnelReport {
  double epsilon = 0.0;
  int trajectories = 0;
  std::vector<double> times;
  std::vector<double> diameter;  // max pairwise state distance per time
  double final_diameter = 0.0;
};

// Evenly spread unit directions: equal angles in dimension 2, seeded unit
// vectors otherwise.
std::vector<Vector> funnel_directions(std::size_t dim, int count,
                                      std::uint64_t seed);

// Integrates from p0 + eps * d_i over funnel_directions.  eps = 0 produces
// the single unperturbed trajectory.
std::vector<FunnelReport> funnel(const IVP& ivp,
                                 const std::vector<double>& epsilons,
                                 double t_end, double step, int directions,
                                 std::uint64_t seed = 42);

// max over the grid of |candidate'(t) - F(candidate(t))| with a central
// finite-difference derivative (h = 1e-6).
double residual(const VectorField& f,
                const std::function<Vector(double)>& candidate,
                const std::vector<double>& grid);

}  // namespace foliant
