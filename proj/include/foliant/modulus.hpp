#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "foliant/field.hpp"
#include "foliant/foliation.hpp"
#include "foliant/geometry.hpp"
#include "foliant/sampling.hpp"

// Estimation of the modulus of continuity ω_F(p, v, δ): the supremum of
// |F(x)-F(y)| / |x-y| over pairs in the δ-ball around p lying in the
// hyperplane through p perpendicular to v.  Sampling yields a lower bound;
// ω = +∞ is reported through the blow-up flag instead.

namespace foliant {

struct ModulusQuery {
  Vector p;
  ProjectivePoint v;
  double delta = 1e-3;
  int budget = 4096;  // pair count, >= 100
  std::uint64_t seed = 42;
};

struct ModulusEstimate {
  double value = 0.0;  // max observed quotient (lower bound of the sup)
  double delta = 0.0;
  int pairs_used = 0;
  std::vector<StratumStat> strata;  // populated strata, scales decreasing
  bool blowup = false;
  std::uint64_t seed = 0;
};

ModulusEstimate modulus_sample(const VectorField& field, const ModulusQuery& q);

// Estimate over an explicit pair list (diagnostic/oracle hook; also used to
// exercise the nested-sample monotonicity of the max).
ModulusEstimate modulus_over_pairs(
    const VectorField& field, double delta,
    const std::vector<std::pair<Vector, Vector>>& pairs);

// Smooth-case oracle: spectral norm of J_F(p) restricted to the hyperplane
// perpendicular to v (equals sup over unit w ⊥ v of |D_w F(p)|).
double modulus_gradient(const VectorField& field, const Vector& p,
                        const ProjectivePoint& v);

struct CurveModulusReport {
  std::vector<double> params;               // sampled parameter values
  std::vector<ModulusEstimate> per_sample;  // one estimate per parameter
  double max_value = 0.0;
  bool any_blowup = false;
};

// Uniform-bound evidence along a frame: ω_F(γ1(t), γ2(t), δ) sampled at
// `samples` (>= 16) evenly spaced parameters.
CurveModulusReport modulus_along_curve(const VectorField& field,
                                       const CurveFrame& frame, double delta,
                                       int budget, int samples = 17,
                                       std::uint64_t seed = 42);

}  // namespace foliant
