#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "foliant/linalg.hpp"

// Shared machinery for stratified difference-quotient sampling.  Pairs are
// binned by separation into dyadic strata scale * 2^-k, k = 0..12 (the
// finest stratum absorbs everything smaller).  The blow-up flag fires when
// the maxima grow by a factor >= 2 across the window of the last four
// strata, i.e. max(finest) >= 2 * max(four dyadic levels coarser).  A
// genuine power-law divergence |quotient| ~ separation^(-1/3) gives an
// ideal window ratio of 2^(4/3) ~ 2.5; smooth maps give ~ 1.
//
// Evaluation noise also grows like 1/separation when divided by ever finer
// gaps (rounding dust, cancellation amplified through kinks, FD Jacobian
// noise), so growth alone is not enough.  Two guards separate signal from
// dust: (1) the coarse end of the window must clear a significance floor
// tied to the observed value scale, and (2) callers measure the map's own
// noise amplitude with ulp-scale probe pairs and discard fine pairs whose
// numerator does not rise above it.

namespace foliant {

struct StratumStat {
  double scale = 0.0;
  double max_quotient = 0.0;
  int pairs = 0;
};

namespace detail {

inline constexpr int kStrata = 13;
// Forced-fine separations scale * 2^-e over this dyadic exponent window.
inline constexpr double kForcedExpMin = 8.0;
inline constexpr double kForcedExpMax = 38.0;

int stratum_of(double base_scale, double separation);

class StrataAcc {
 public:
  explicit StrataAcc(double base_scale) : base_(base_scale) {}

  // Returns true when this pair became the running argmax.
  bool add(double quotient, double separation);

  // Track the magnitude of evaluated map values (sets the dust floor).
  void note_value(double magnitude);
  // Track the observed evaluation-noise amplitude from a probe pair.
  void note_noise(double amplitude);

  // Fine pairs (separation below base * 2^-8) contribute only when their
  // difference norm clears this threshold.
  double numerator_gate() const;
  bool is_fine(double separation) const { return separation < base_ / 256.0; }

  double best() const { return best_; }
  bool blowup() const;
  int pairs() const { return pairs_; }
  std::vector<StratumStat> stats() const;  // populated strata, coarse->fine

 private:
  double base_;
  std::array<double, kStrata> maxq_{};
  std::array<int, kStrata> count_{};
  double best_ = 0.0;
  double value_scale_ = 0.0;
  double noise_ = 0.0;
  int pairs_ = 0;
};

// Ulp-scale separation used by noise probe pairs near points of the given
// magnitude.
double noise_probe_separation(double scale, double magnitude);

// Smallest separation for real pairs (well above the probe scale).
double separation_floor(double scale, double magnitude);

}  // namespace detail
}  // namespace foliant
