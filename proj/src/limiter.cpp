#include "thermo/limiter.hpp"

#include <algorithm>
#include <cmath>

namespace thermo {

LimiterState limiter_tick(const LimiterState& state, double tension_meas,
                          double tension_limit, const LimiterConfig& cfg) {
  const double d = std::abs(tension_meas - tension_limit);
  LimiterState next = state;
  if (tension_meas > tension_limit) {
    next.offset += std::min(cfg.gain * d - state.offset, cfg.rate_plus * d);
  } else {
    next.offset += std::max(-state.offset, -cfg.rate_minus * d);
  }
  return next;
}

double apply_offset(double length_ref, const LimiterState& state) {
  return length_ref + state.offset;
}

}  // namespace thermo
