#pragma once

namespace thermo {

struct LimiterConfig {
  double rate_minus = 0.001;  ///< restore coefficient [mm/N per tick]
  double rate_plus = 0.003;   ///< elongation coefficient [mm/N per tick]
  double gain = 2.0;          ///< D_gain, elongation target [mm/N]
  double period = 0.008;      ///< tick period [s]
};

struct LimiterState {
  double offset = 0.0;  ///< current elongation dl [mm], never negative
};

/// One limiter tick. With d = |f - f_limit|:
///   tension over the limit:  dl += min(gain*d - dl, rate_plus*d)
///   otherwise:               dl += max(-dl, -rate_minus*d)
/// The second branch can never push dl below zero.
LimiterState limiter_tick(const LimiterState& state, double tension_meas,
                          double tension_limit, const LimiterConfig& cfg);

/// Length command actually sent: reference plus the elongation offset
/// (more negative commands pull tighter, so adding dl relaxes the muscle).
double apply_offset(double length_ref, const LimiterState& state);

}  // namespace thermo
