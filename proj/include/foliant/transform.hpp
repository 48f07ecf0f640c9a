#pragma once

#include <cstdint>
#include <vector>

#include "foliant/field.hpp"
#include "foliant/foliation.hpp"
#include "foliant/sampling.hpp"

// Coordinate-change machinery: pullback of a field through a foliation,
// the transversality functional at the base point, and sampled
// Lipschitz-when-fixing-the-first-variable estimates for condition (C2).

namespace foliant {

// h(w) = Φ'(w)^{-1} F(Φ(w)), the field in (s,y) coordinates.
struct PulledBackField {
  VectorField field;
};

PulledBackField pullback_field(const VectorField& f, const Foliation& phi);

struct TransversalityResult {
  double value = 0.0;  // e1ᵀ Φ'(0)^{-1} F(p0)
  Vector normal;       // row 1 of Φ'(0)^{-1}: normal of the leaf at p0
};

TransversalityResult transversality(const VectorField& f, const Foliation& phi);

struct SampleParams {
  double region = 0.25;  // box radius around 0
  int budget = 4096;     // pair count, >= 100
  std::uint64_t seed = 42;
  // Absolute lower bound on pair separations; 0 means the FP-noise floor.
  // Raised by the checker for maps backed by FD Jacobians, whose noise
  // would otherwise masquerade as quotient growth.
  double min_separation = 0.0;
};

struct LipschitzEstimate {
  double constant = 0.0;  // max observed quotient (lower bound)
  double region = 0.0;
  int pairs_used = 0;
  std::vector<StratumStat> strata;
  bool blowup = false;
  std::uint64_t seed = 0;
};

// sup |g(s,x) - g(s,y)| / |x-y| over sampled s and pairs x != y in the box
// [-r, r]^{dim_in}, first coordinate pinned per pair.
LipschitzEstimate lipschitz_fixing_first(const VectorMap& g, std::size_t dim_in,
                                         const SampleParams& params);

// One-parameter variant for the Stettner-Nowak condition: quotients
// |f(q) - f(q + k u/|u|)| / |k| over a box around p0.
LipschitzEstimate lipschitz_along_direction(const ScalarMap& f, const Vector& p0,
                                            const Vector& u,
                                            const SampleParams& params);

}  // namespace foliant
