#include "thermo/anomaly.hpp"

#include <cmath>

namespace thermo {

double anomaly_score(const ThermalParams& params, const AnomalyConfig& cfg) {
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double delta = params.learned[i] - cfg.reference[i];
    sum += delta * delta;
  }
  return std::sqrt(sum / 4.0);
}

Verdict anomaly_check(const ThermalParams& params, const AnomalyConfig& cfg) {
  return anomaly_score(params, cfg) > cfg.threshold ? Verdict::Anomaly
                                                    : Verdict::Normal;
}

AnomalyConfig anomaly_arm(const ThermalParams& params, double threshold) {
  AnomalyConfig cfg;
  cfg.threshold = threshold;
  for (int i = 0; i < 4; ++i) {
    cfg.reference[i] = params.learned[i];
  }
  return cfg;
}

}  // namespace thermo
