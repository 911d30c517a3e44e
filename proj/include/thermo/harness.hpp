#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "thermo/actuator_sim.hpp"
#include "thermo/anomaly.hpp"
#include "thermo/controller.hpp"
#include "thermo/estimator.hpp"
#include "thermo/learner.hpp"
#include "thermo/limiter.hpp"
#include "thermo/thermal_model.hpp"

namespace thermo {

enum class ScenarioId {
  SimLearn,    ///< online learning against a perturbed plant
  SimQuant,    ///< 10-plant quantitative evaluation, both c1 seeds
  SimFault,    ///< learning under an injected fault, drift detection
  SimControl,  ///< receding-horizon ceiling control from a hot start
  ClosedLoop,  ///< controller + limiter against the elastic muscle
  Replay,      ///< offline pass over a recorded telemetry file
};

enum class MotorId { EC4pole90W, EC16_60W, Custom };

struct ScenarioConfig {
  ScenarioId id = ScenarioId::SimLearn;
  double duration = 3600.0;  ///< [s]
  std::uint64_t seed = 0;
  MotorId motor = MotorId::EC4pole90W;
  std::string custom_motor_path;  ///< JSON spec, used when motor == Custom
  std::string motor_label = "motor0";
  std::string out_dir = ".";

  std::array<double, 5> p_sim = {0.5, 0.5, -0.5, -0.5, 0.5};
  double plant_ambient = 30.0;     ///< true ambient [degC]
  double model_ambient = 30.0;     ///< ambient assumed by the model [degC]
  double dt_plant = 0.02;          ///< [s]
  double initial_temp = 30.0;      ///< initial c1 = c2 [degC]
  FaultMode fault;                 ///< SimFault only
  bool seed_with_true_core = false;  ///< window seed from plant truth
  double walk_min = 10.0;          ///< excitation tension floor [N]
  double walk_max = 200.0;         ///< excitation tension ceiling [N]
  double initial_tension = 100.0;  ///< walk starting point [N]

  EstimatorConfig estimator;
  LearnerConfig learner;
  ControllerConfig controller;
  LimiterConfig limiter;
  double anomaly_threshold = 1.0;

  double muscle_stiffness = 12.5;    ///< ClosedLoop [N/mm]
  double muscle_command = -16.0;     ///< ClosedLoop length reference [mm]

  std::optional<ThermalParams> initial_params;  ///< model override (else P=0)
  std::string params_path;   ///< snapshot JSON to preload the model from
  std::string replay_input;  ///< telemetry CSV, Replay only
  bool emit_telemetry = false;  ///< also write estimator-rate telemetry CSV
};

struct RmsePoint {
  double time = 0.0;
  double rmse4 = 0.0;  ///< over P1..P4 vs the plant truth
  double rmse5 = 0.0;  ///< over P1..P5 vs the plant truth
};

struct ScenarioReport {
  ThermalParams final_params;
  std::vector<RmsePoint> rmse_series;   ///< one point per learner update
  double first_update_time = -1.0;      ///< [s], -1 if no update ran
  double first_anomaly_time = -1.0;     ///< [s], -1 if never flagged
  double max_core_true = 0.0;           ///< peak plant c1 [degC]
  double time_core_reached = -1.0;      ///< first t with plant c1 >= 78 degC
  double tail_mean_limit = 0.0;         ///< mean plan head, last 20% of run
  double tail_mean_tension = 0.0;       ///< mean applied f, last 20% of run
  // SimQuant: mean 5-parameter RMSE over the plants at 0,10,...,60 min.
  std::vector<double> quant_mean_estimated;
  std::vector<double> quant_mean_true_seeded;
  std::string trace_path;
  std::string snapshot_path;
  std::string telemetry_path;
};

ScenarioReport run_scenario(const ScenarioConfig& cfg);

/// One line of a recorded telemetry file (CSV header `t,c2,f`).
struct TelemetryRecord {
  double time;
  double housing;
  double tension;
};

/// Throws std::runtime_error with the offending line number on malformed
/// input, an empty file, or non-monotone timestamps.
std::vector<TelemetryRecord> load_telemetry(const std::string& path);

std::string params_to_json(const ThermalParams& params,
                           const std::string& motor_id, double timestamp);
ThermalParams params_from_json_text(const std::string& text);

std::string config_to_json(const ScenarioConfig& cfg);
/// Applies the fields present in the JSON document on top of `base`.
ScenarioConfig config_from_json(const std::string& text,
                                ScenarioConfig base = {});

MotorSpec motor_spec_for(const ScenarioConfig& cfg);

}  // namespace thermo
