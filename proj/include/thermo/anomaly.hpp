#pragma once

#include <array>

#include "thermo/thermal_model.hpp"

namespace thermo {

struct AnomalyConfig {
  double threshold = 1.0;              ///< D_detect
  std::array<double, 4> reference{};   ///< P1..P4 at arm time
};

enum class Verdict { Normal, Anomaly };

/// Drift score: RMSE of P1..P4 against the armed reference. P5 tracks the
/// ambient temperature and may legitimately move, so it is excluded.
double anomaly_score(const ThermalParams& params, const AnomalyConfig& cfg);

/// Anomaly iff the score strictly exceeds the threshold.
Verdict anomaly_check(const ThermalParams& params, const AnomalyConfig& cfg);

/// Freezes the current P1..P4 as the reference. Call once the learner has
/// settled (or immediately, when the model is known to start converged).
AnomalyConfig anomaly_arm(const ThermalParams& params,
                          double threshold = 1.0);

}  // namespace thermo
