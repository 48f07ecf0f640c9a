#include "foliant/sampling.hpp"

#include <cfloat>
#include <cmath>

namespace foliant {
namespace detail {

int stratum_of(double base_scale, double separation) {
  if (separation <= 0.0 || base_scale <= 0.0) return kStrata - 1;
  int k = int(std::floor(std::log2(base_scale / separation)));
  if (k < 0) return 0;
  if (k >= kStrata) return kStrata - 1;
  return k;
}

bool StrataAcc::add(double quotient, double separation) {
  int k = stratum_of(base_, separation);
  ++count_[std::size_t(k)];
  ++pairs_;
  if (quotient > maxq_[std::size_t(k)]) maxq_[std::size_t(k)] = quotient;
  if (quotient > best_) {
    best_ = quotient;
    return true;
  }
  return false;
}

void StrataAcc::note_value(double magnitude) {
  if (magnitude > value_scale_) value_scale_ = magnitude;
}

void StrataAcc::note_noise(double amplitude) {
  if (amplitude > noise_) noise_ = amplitude;
}

double StrataAcc::numerator_gate() const {
  return 16.0 * (noise_ + 4.0 * DBL_EPSILON * (1.0 + value_scale_));
}

bool StrataAcc::blowup() const {
  int finest = -1;
  for (int k = kStrata - 1; k >= 0; --k) {
    if (count_[std::size_t(k)] > 0) {
      finest = k;
      break;
    }
  }
  if (finest < 4) return false;
  int back = finest - 4;
  if (count_[std::size_t(back)] == 0) return false;
  double mb = maxq_[std::size_t(back)];
  // Quotients below the dust floor are indistinguishable from rounding
  // noise amplified by 1/separation.
  double floor = 1e-6 * std::max(1.0, value_scale_) / base_;
  if (!(mb > floor)) return false;
  return maxq_[std::size_t(finest)] >= 2.0 * mb;
}

std::vector<StratumStat> StrataAcc::stats() const {
  std::vector<StratumStat> out;
  for (int k = 0; k < kStrata; ++k) {
    if (count_[std::size_t(k)] == 0) continue;
    out.push_back(StratumStat{base_ * std::pow(2.0, -double(k)),
                              maxq_[std::size_t(k)], count_[std::size_t(k)]});
  }
  return out;
}

double noise_probe_separation(double scale, double magnitude) {
  return 4.0 * DBL_EPSILON * (1.0 + magnitude + scale);
}

double separation_floor(double scale, double magnitude) {
  return 256.0 * noise_probe_separation(scale, magnitude);
}

}  // namespace detail
}  // namespace foliant
