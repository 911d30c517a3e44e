#include "thermo/harness.hpp"

#include <cmath>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace thermo {

namespace {

using nlohmann::json;

std::string fmt(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

/// Telemetry keeps full precision so an offline replay of the file lands on
/// the same learned parameters as the live run.
std::string fmt_precise(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12f", value);
  return buf;
}

class TraceWriter {
 public:
  explicit TraceWriter(const std::string& path) : out_(path) {
    if (!out_) {
      throw std::runtime_error("cannot open trace file: " + path);
    }
    out_ << "time_s,f_cmd,f_true,f_obs,c1_true,c2_true,c2_obs,c1_est,"
            "f_limit,dl,g,verdict\n";
  }

  void row(double t, double f_cmd, double f_true, double f_obs,
           double c1_true, double c2_true, double c2_obs, double c1_est,
           double f_limit, double dl, double g, Verdict verdict) {
    out_ << fmt(t) << ',' << fmt(f_cmd) << ',' << fmt(f_true) << ','
         << fmt(f_obs) << ',' << fmt(c1_true) << ',' << fmt(c2_true) << ','
         << fmt(c2_obs) << ',' << fmt(c1_est) << ',' << fmt(f_limit) << ','
         << fmt(dl) << ',' << fmt(g) << ','
         << (verdict == Verdict::Anomaly ? "anomaly" : "normal") << '\n';
  }

 private:
  std::ofstream out_;
};

double rmse_against(const std::array<double, 5>& learned,
                    const std::array<double, 5>& truth, int count) {
  double sum = 0.0;
  for (int i = 0; i < count; ++i) {
    const double d = learned[i] - truth[i];
    sum += d * d;
  }
  return std::sqrt(sum / count);
}

struct LearnSimOptions {
  PlantConfig plant;
  ThermalState initial_state;
  ThermalParams model;
  EstimatorConfig est_cfg;
  LearnerConfig lrn_cfg;
  double duration = 3600.0;
  std::uint64_t seed = 0;
  bool use_true_core = false;
  double walk_min = 10.0;
  double walk_max = 200.0;
  double initial_tension = 100.0;
  double anomaly_threshold = 1.0;
  TraceWriter* trace = nullptr;
  std::ofstream* telemetry = nullptr;
};

struct LearnSimResult {
  ThermalParams params;
  std::vector<RmsePoint> rmse_series;
  double first_update = -1.0;
  double first_anomaly = -1.0;
};

/// Window accumulator: emits a window of the latest n_seq samples every
/// `stride` samples, so consecutive windows overlap by n_seq - stride.
class WindowBuilder {
 public:
  WindowBuilder(int n_seq, int stride) : n_seq_(n_seq), stride_(stride) {}

  std::optional<SampleWindow> add(double time, double core, double housing,
                                  double tension) {
    times_.push_back(time);
    core_.push_back(core);
    housing_.push_back(housing);
    tension_.push_back(tension);
    while (times_.size() > static_cast<std::size_t>(n_seq_)) {
      times_.pop_front();
      core_.pop_front();
      housing_.pop_front();
      tension_.pop_front();
    }
    if (times_.size() < static_cast<std::size_t>(n_seq_) ||
        ++since_emit_ < stride_) {
      return std::nullopt;
    }
    since_emit_ = 0;
    SampleWindow window;
    window.start_time = times_.front();
    window.core_est.assign(core_.begin(), core_.end());
    window.housing.assign(housing_.begin(), housing_.end());
    window.tension.assign(tension_.begin(), tension_.end());
    return window;
  }

 private:
  int n_seq_;
  int stride_;
  int since_emit_ = 0;
  std::deque<double> times_, core_, housing_, tension_;
};

/// Lockstep learning loop shared by the sim-learn, sim-quant, and sim-fault
/// scenarios: plant and estimator at dt_plant, excitation walk and sample
/// recording at dt_data, one learner update per completed window once the
/// batch buffer is warm.
LearnSimResult run_learning_sim(const LearnSimOptions& opt) {
  Plant plant(opt.plant, opt.initial_state);
  std::mt19937_64 rng(opt.seed);

  const int steps_per_sample =
      static_cast<int>(std::lround(opt.lrn_cfg.dt_data / opt.plant.dt));
  const int total_steps =
      static_cast<int>(std::lround(opt.duration / opt.plant.dt));

  double f_cmd = opt.initial_tension;
  ThermalParams model = opt.model;
  EstimatorState est =
      estimator_init(plant.observe(f_cmd).housing, opt.est_cfg);
  const AnomalyConfig detector = anomaly_arm(model, opt.anomaly_threshold);

  BatchBuffer buffer;
  WindowBuilder builder(opt.lrn_cfg.n_seq, opt.lrn_cfg.window_stride);
  LearnSimResult result;
  double g = anomaly_score(model, detector);

  for (int k = 0; k <= total_steps; ++k) {
    const double t = k * opt.plant.dt;
    const bool sample_time = k % steps_per_sample == 0;
    const double c2_obs = plant.observe(f_cmd).housing;

    if (sample_time) {
      f_cmd = random_tension_walk(rng, f_cmd, opt.walk_min, opt.walk_max);
    }
    const double f_obs = f_cmd;
    if (opt.telemetry != nullptr) {
      *opt.telemetry << fmt(t) << ',' << fmt_precise(c2_obs) << ','
                     << fmt_precise(f_obs) << '\n';
    }

    if (sample_time) {
      const double core_sample =
          opt.use_true_core ? plant.truth().core : est.core_estimate;
      if (std::optional<SampleWindow> window =
              builder.add(t, core_sample, c2_obs, f_obs)) {
        const bool ready =
            learner_push(buffer, std::move(*window), opt.lrn_cfg.n_batch);
        if (ready) {
          model = learner_update(buffer, model, opt.lrn_cfg);
          if (result.first_update < 0.0) {
            result.first_update = t;
          }
          g = anomaly_score(model, detector);
          if (result.first_anomaly < 0.0 && g > opt.anomaly_threshold) {
            result.first_anomaly = t;
          }
          result.rmse_series.push_back(
              {t, rmse_against(model.learned, opt.plant.p_sim, 4),
               rmse_against(model.learned, opt.plant.p_sim, 5)});
        }
      }
      if (opt.trace != nullptr) {
        const double f_true =
            opt.plant.fault.kind == FaultMode::Kind::StuckTension
                ? opt.plant.fault.value
                : f_cmd;
        opt.trace->row(t, f_cmd, f_true, f_obs, plant.truth().core,
                       plant.truth().housing, c2_obs, est.core_estimate,
                       std::nan(""), std::nan(""), g,
                       g > opt.anomaly_threshold ? Verdict::Anomaly
                                                 : Verdict::Normal);
      }
    }

    if (k == total_steps) break;
    est = estimator_tick(est, c2_obs, f_obs, model, opt.est_cfg);
    plant.step(f_cmd);
  }
  result.params = model;
  return result;
}

ThermalParams initial_model(const ScenarioConfig& cfg) {
  if (cfg.initial_params) {
    return *cfg.initial_params;
  }
  if (!cfg.params_path.empty()) {
    std::ifstream in(cfg.params_path);
    if (!in) {
      throw std::runtime_error("cannot open params file: " + cfg.params_path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return params_from_json_text(ss.str());
  }
  return params_from_spec(motor_spec_for(cfg), cfg.model_ambient);
}

PlantConfig plant_config(const ScenarioConfig& cfg) {
  PlantConfig plant;
  plant.spec = motor_spec_for(cfg);
  plant.p_sim = cfg.p_sim;
  plant.ambient = cfg.plant_ambient;
  plant.dt = cfg.dt_plant;
  plant.fault = cfg.fault;
  return plant;
}

std::string out_path(const ScenarioConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

void write_snapshot(const ScenarioConfig& cfg, const ThermalParams& params,
                    double timestamp, ScenarioReport& report) {
  report.snapshot_path = out_path(cfg, "params.json");
  std::ofstream out(report.snapshot_path);
  out << params_to_json(params, cfg.motor_label, timestamp) << '\n';
}

ScenarioReport run_sim_learn(const ScenarioConfig& cfg) {
  ScenarioReport report;
  report.trace_path = out_path(cfg, "trace.csv");
  TraceWriter trace(report.trace_path);

  std::ofstream telemetry;
  if (cfg.emit_telemetry) {
    report.telemetry_path = out_path(cfg, "telemetry.csv");
    telemetry.open(report.telemetry_path);
    telemetry << "t,c2,f\n";
  }

  LearnSimOptions opt;
  opt.plant = plant_config(cfg);
  opt.initial_state = {cfg.initial_temp, cfg.initial_temp};
  opt.model = initial_model(cfg);
  opt.est_cfg = cfg.estimator;
  opt.lrn_cfg = cfg.learner;
  opt.duration = cfg.duration;
  opt.seed = cfg.seed;
  opt.use_true_core = cfg.seed_with_true_core;
  opt.walk_min = cfg.walk_min;
  opt.walk_max = cfg.walk_max;
  opt.initial_tension = cfg.initial_tension;
  opt.anomaly_threshold = cfg.anomaly_threshold;
  opt.trace = &trace;
  opt.telemetry = cfg.emit_telemetry ? &telemetry : nullptr;

  const LearnSimResult result = run_learning_sim(opt);
  report.final_params = result.params;
  report.rmse_series = result.rmse_series;
  report.first_update_time = result.first_update;
  report.first_anomaly_time = result.first_anomaly;
  write_snapshot(cfg, result.params, cfg.duration, report);
  return report;
}

ScenarioReport run_sim_quant(const ScenarioConfig& cfg) {
  ScenarioReport report;
  constexpr int kPlants = 10;
  const int checkpoints = static_cast<int>(cfg.duration / 600.0) + 1;
  report.quant_mean_estimated.assign(checkpoints, 0.0);
  report.quant_mean_true_seeded.assign(checkpoints, 0.0);

  std::mt19937_64 perturb_rng(cfg.seed);
  std::vector<std::array<double, 5>> plant_params;
  for (int i = 0; i < kPlants; ++i) {
    plant_params.push_back(perturbed_params(perturb_rng, 0.5));
  }

  for (int variant = 0; variant < 2; ++variant) {
    auto& means = variant == 0 ? report.quant_mean_estimated
                               : report.quant_mean_true_seeded;
    for (int i = 0; i < kPlants; ++i) {
      LearnSimOptions opt;
      opt.plant = plant_config(cfg);
      opt.plant.p_sim = plant_params[i];
      opt.initial_state = {cfg.initial_temp, cfg.initial_temp};
      opt.model = initial_model(cfg);
      opt.est_cfg = cfg.estimator;
      opt.lrn_cfg = cfg.learner;
      opt.duration = cfg.duration;
      opt.seed = cfg.seed + 1000 + i;  // same excitation for both variants
      opt.use_true_core = variant == 1;
      opt.walk_min = cfg.walk_min;
      opt.walk_max = cfg.walk_max;
      opt.initial_tension = cfg.initial_tension;
      const LearnSimResult run = run_learning_sim(opt);

      // RMSE at each 10-minute checkpoint: value of the latest update at or
      // before the checkpoint (0.5 by construction before any update).
      for (int c = 0; c < checkpoints; ++c) {
        const double checkpoint = c * 600.0;
        double value = 0.5;
        for (const RmsePoint& point : run.rmse_series) {
          if (point.time <= checkpoint) {
            value = point.rmse5;
          } else {
            break;
          }
        }
        means[c] += value / kPlants;
      }
    }
  }

  report.trace_path = out_path(cfg, "quant_summary.csv");
  std::ofstream out(report.trace_path);
  out << "checkpoint_min,mean_rmse_estimated_c1,mean_rmse_true_c1\n";
  for (int c = 0; c < checkpoints; ++c) {
    out << c * 10 << ',' << fmt(report.quant_mean_estimated[c]) << ','
        << fmt(report.quant_mean_true_seeded[c]) << '\n';
  }
  return report;
}

ScenarioReport run_sim_control(const ScenarioConfig& cfg) {
  ScenarioReport report;
  report.trace_path = out_path(cfg, "trace.csv");
  TraceWriter trace(report.trace_path);

  Plant plant(plant_config(cfg), {cfg.initial_temp, cfg.initial_temp});
  const ThermalParams model = initial_model(cfg);
  EstimatorState est = estimator_init(plant.observe(0.0).housing,
                                      cfg.estimator);
  const AnomalyConfig detector = anomaly_arm(model, cfg.anomaly_threshold);

  const int steps_per_control =
      static_cast<int>(std::lround(cfg.controller.dt / cfg.dt_plant));
  const int total_steps =
      static_cast<int>(std::lround(cfg.duration / cfg.dt_plant));

  TensionPlan plan;
  bool have_plan = false;
  double f_cmd = 0.0;
  double limit_sum = 0.0;
  int limit_count = 0;
  const double tail_start = 0.8 * cfg.duration;
  report.max_core_true = plant.truth().core;

  for (int k = 0; k <= total_steps; ++k) {
    const double t = k * cfg.dt_plant;
    const double c2_obs = plant.observe(f_cmd).housing;
    if (k % steps_per_control == 0) {
      const ThermalState current{est.core_estimate, c2_obs};
      plan = controller_tick(have_plan ? &plan : nullptr, current, model,
                             cfg.controller);
      have_plan = true;
      f_cmd = plan.limits.front();
      if (t >= tail_start) {
        limit_sum += f_cmd;
        ++limit_count;
      }
      trace.row(t, f_cmd, f_cmd, f_cmd, plant.truth().core,
                plant.truth().housing, c2_obs, est.core_estimate, f_cmd, 0.0,
                anomaly_score(model, detector), Verdict::Normal);
    }
    report.max_core_true = std::max(report.max_core_true, plant.truth().core);
    if (report.time_core_reached < 0.0 && plant.truth().core >= 78.0) {
      report.time_core_reached = t;
    }
    if (k == total_steps) break;
    est = estimator_tick(est, c2_obs, f_cmd, model, cfg.estimator);
    plant.step(f_cmd);
  }
  report.tail_mean_limit = limit_count > 0 ? limit_sum / limit_count : 0.0;
  report.tail_mean_tension = report.tail_mean_limit;
  report.final_params = model;
  return report;
}

ScenarioReport run_closed_loop(const ScenarioConfig& cfg) {
  ScenarioReport report;
  report.trace_path = out_path(cfg, "trace.csv");
  TraceWriter trace(report.trace_path);

  Plant plant(plant_config(cfg), {cfg.initial_temp, cfg.initial_temp});
  const ThermalParams model = initial_model(cfg);
  const ElasticMuscle muscle{cfg.muscle_stiffness};
  LimiterState limiter;
  EstimatorState est;

  // Base clock fine enough to schedule the 8 ms limiter and the 20 ms
  // plant/estimator without drift.
  const double base_dt = 0.004;
  const int plant_every =
      static_cast<int>(std::lround(cfg.dt_plant / base_dt));
  const int limiter_every =
      static_cast<int>(std::lround(cfg.limiter.period / base_dt));
  const int control_every =
      static_cast<int>(std::lround(cfg.controller.dt / base_dt));
  const int trace_every = static_cast<int>(std::lround(1.0 / base_dt));
  const int total_steps =
      static_cast<int>(std::lround(cfg.duration / base_dt));

  double f_now = elastic_tension(muscle, cfg.muscle_command);
  est = estimator_init(plant.observe(f_now).housing, cfg.estimator);
  const AnomalyConfig detector = anomaly_arm(model, cfg.anomaly_threshold);

  TensionPlan plan;
  bool have_plan = false;
  double f_limit = cfg.controller.tension_max;
  double limit_sum = 0.0, tension_sum = 0.0;
  int tail_count = 0;
  const double tail_start = 0.8 * cfg.duration;
  report.max_core_true = plant.truth().core;

  for (int k = 0; k <= total_steps; ++k) {
    const double t = k * base_dt;
    const double c2_obs = plant.observe(f_now).housing;
    if (k % control_every == 0) {
      const ThermalState current{est.core_estimate, c2_obs};
      plan = controller_tick(have_plan ? &plan : nullptr, current, model,
                             cfg.controller);
      have_plan = true;
      f_limit = plan.limits.front();
    }
    if (k % limiter_every == 0) {
      limiter = limiter_tick(limiter, f_now, f_limit, cfg.limiter);
      f_now = elastic_tension(
          muscle, apply_offset(cfg.muscle_command, limiter));
    }
    if (k % trace_every == 0) {
      trace.row(t, f_now, f_now, f_now, plant.truth().core,
                plant.truth().housing, c2_obs, est.core_estimate, f_limit,
                limiter.offset, anomaly_score(model, detector),
                Verdict::Normal);
    }
    if (t >= tail_start) {
      limit_sum += f_limit;
      tension_sum += f_now;
      ++tail_count;
    }
    report.max_core_true = std::max(report.max_core_true, plant.truth().core);
    if (report.time_core_reached < 0.0 && plant.truth().core >= 78.0) {
      report.time_core_reached = t;
    }
    if (k == total_steps) break;
    if (k % plant_every == 0) {
      est = estimator_tick(est, c2_obs, f_now, model, cfg.estimator);
      plant.step(f_now);
    }
  }
  report.tail_mean_limit = tail_count > 0 ? limit_sum / tail_count : 0.0;
  report.tail_mean_tension = tail_count > 0 ? tension_sum / tail_count : 0.0;
  report.final_params = model;
  return report;
}

ScenarioReport run_replay(const ScenarioConfig& cfg) {
  const std::vector<TelemetryRecord> records =
      load_telemetry(cfg.replay_input);
  ScenarioReport report;
  report.trace_path = out_path(cfg, "trace.csv");
  TraceWriter trace(report.trace_path);

  ThermalParams model = initial_model(cfg);
  EstimatorState est = estimator_init(records.front().housing, cfg.estimator);
  est.last_update = records.front().time;
  const AnomalyConfig detector = anomaly_arm(model, cfg.anomaly_threshold);

  BatchBuffer buffer;
  WindowBuilder builder(cfg.learner.n_seq, cfg.learner.window_stride);
  double next_sample = records.front().time;
  double g = anomaly_score(model, detector);
  const TelemetryRecord* prev = nullptr;

  for (const TelemetryRecord& rec : records) {
    if (prev != nullptr) {
      est = estimator_advance(est, rec.time, prev->housing, prev->tension,
                              model, cfg.estimator);
    }
    if (rec.time >= next_sample - 1e-9) {
      next_sample += cfg.learner.dt_data;
      if (std::optional<SampleWindow> window = builder.add(
              rec.time, est.core_estimate, rec.housing, rec.tension)) {
        const bool ready =
            learner_push(buffer, std::move(*window), cfg.learner.n_batch);
        if (ready) {
          model = learner_update(buffer, model, cfg.learner);
          if (report.first_update_time < 0.0) {
            report.first_update_time = rec.time;
          }
          g = anomaly_score(model, detector);
          if (report.first_anomaly_time < 0.0 &&
              g > cfg.anomaly_threshold) {
            report.first_anomaly_time = rec.time;
          }
        }
      }
      trace.row(rec.time, rec.tension, rec.tension, rec.tension,
                std::nan(""), std::nan(""), rec.housing, est.core_estimate,
                std::nan(""), std::nan(""), g,
                g > cfg.anomaly_threshold ? Verdict::Anomaly
                                          : Verdict::Normal);
    }
    prev = &rec;
  }
  report.final_params = model;
  write_snapshot(cfg, model, records.back().time, report);
  return report;
}

}  // namespace

MotorSpec motor_spec_for(const ScenarioConfig& cfg) {
  switch (cfg.motor) {
    case MotorId::EC4pole90W:
      return MotorSpec::ec4pole_90w();
    case MotorId::EC16_60W:
      return MotorSpec::ec16_60w();
    case MotorId::Custom: {
      std::ifstream in(cfg.custom_motor_path);
      if (!in) {
        throw std::runtime_error("cannot open motor spec: " +
                                 cfg.custom_motor_path);
      }
      json doc = json::parse(in);
      MotorSpec spec{doc.at("C1").get<double>(), doc.at("C2").get<double>(),
                     doc.at("R1").get<double>(), doc.at("R2").get<double>(),
                     doc.at("K").get<double>(), std::nullopt};
      spec.validate();
      return spec;
    }
  }
  throw std::logic_error("unknown motor id");
}

ScenarioReport run_scenario(const ScenarioConfig& cfg) {
  if (!(cfg.duration > 0.0)) {
    throw std::invalid_argument("scenario: duration must be positive");
  }
  switch (cfg.id) {
    case ScenarioId::SimLearn:
      return run_sim_learn(cfg);
    case ScenarioId::SimQuant:
      return run_sim_quant(cfg);
    case ScenarioId::SimFault:
      return run_sim_learn(cfg);  // fault comes in through cfg.fault
    case ScenarioId::SimControl:
      return run_sim_control(cfg);
    case ScenarioId::ClosedLoop:
      return run_closed_loop(cfg);
    case ScenarioId::Replay:
      return run_replay(cfg);
  }
  throw std::logic_error("unknown scenario id");
}

std::vector<TelemetryRecord> load_telemetry(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open telemetry file: " + path);
  }
  std::vector<TelemetryRecord> records;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("t,", 0) == 0) {
      continue;  // header
    }
    if (line.empty()) continue;
    TelemetryRecord rec{};
    char extra;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf%c", &rec.time, &rec.housing,
                    &rec.tension, &extra) != 3) {
      throw std::runtime_error("telemetry parse error at line " +
                               std::to_string(line_no));
    }
    if (!records.empty() && rec.time <= records.back().time) {
      throw std::runtime_error("non-monotone timestamp at line " +
                               std::to_string(line_no));
    }
    records.push_back(rec);
  }
  if (records.empty()) {
    throw std::runtime_error("telemetry file has no records: " + path);
  }
  return records;
}

std::string params_to_json(const ThermalParams& params,
                           const std::string& motor_id, double timestamp) {
  json doc;
  doc["schema"] = "thermo-params/1";
  doc["motor_id"] = motor_id;
  doc["timestamp"] = timestamp;
  doc["W"] = params.base;
  doc["P"] = params.learned;
  return doc.dump(2);
}

ThermalParams params_from_json_text(const std::string& text) {
  json doc = json::parse(text);
  if (doc.value("schema", "") != "thermo-params/1") {
    throw std::runtime_error("unrecognized parameter snapshot schema");
  }
  ThermalParams params;
  params.base = doc.at("W").get<std::array<double, 5>>();
  params.learned = doc.at("P").get<std::array<double, 5>>();
  return params;
}

namespace {

const char* scenario_name(ScenarioId id) {
  switch (id) {
    case ScenarioId::SimLearn: return "sim-learn";
    case ScenarioId::SimQuant: return "sim-quant";
    case ScenarioId::SimFault: return "sim-fault";
    case ScenarioId::SimControl: return "sim-control";
    case ScenarioId::ClosedLoop: return "closed-loop";
    case ScenarioId::Replay: return "replay";
  }
  return "?";
}

const char* motor_name(MotorId id) {
  switch (id) {
    case MotorId::EC4pole90W: return "ec4pole-90w";
    case MotorId::EC16_60W: return "ec16-60w";
    case MotorId::Custom: return "custom";
  }
  return "?";
}

}  // namespace

std::string config_to_json(const ScenarioConfig& cfg) {
  json doc;
  doc["scenario"] = scenario_name(cfg.id);
  doc["duration_s"] = cfg.duration;
  doc["seed"] = cfg.seed;
  doc["motor"] = motor_name(cfg.motor);
  doc["custom_motor_path"] = cfg.custom_motor_path;
  doc["motor_label"] = cfg.motor_label;
  doc["out_dir"] = cfg.out_dir;
  doc["p_sim"] = cfg.p_sim;
  doc["plant_ambient"] = cfg.plant_ambient;
  doc["model_ambient"] = cfg.model_ambient;
  doc["dt_plant"] = cfg.dt_plant;
  doc["initial_temp"] = cfg.initial_temp;
  doc["walk_min"] = cfg.walk_min;
  doc["walk_max"] = cfg.walk_max;
  doc["initial_tension"] = cfg.initial_tension;
  doc["seed_with_true_core"] = cfg.seed_with_true_core;
  doc["emit_telemetry"] = cfg.emit_telemetry;
  doc["params_path"] = cfg.params_path;
  doc["replay_input"] = cfg.replay_input;

  switch (cfg.fault.kind) {
    case FaultMode::Kind::None:
      doc["fault"] = {{"kind", "none"}};
      break;
    case FaultMode::Kind::StuckSensor:
      doc["fault"] = {{"kind", "stuck-sensor"}, {"value", cfg.fault.value}};
      break;
    case FaultMode::Kind::StuckTension:
      doc["fault"] = {{"kind", "stuck-tension"}, {"value", cfg.fault.value}};
      break;
  }

  doc["estimator"] = {
      {"dt", cfg.estimator.dt},
      {"init_policy",
       cfg.estimator.init_policy ==
               EstimatorConfig::InitPolicy::FirstHousingReading
           ? "first-housing-reading"
           : "fixed-ambient"},
      {"fixed_ambient", cfg.estimator.fixed_ambient}};
  doc["learner"] = {{"dt_data", cfg.learner.dt_data},
                    {"n_seq", cfg.learner.n_seq},
                    {"window_stride", cfg.learner.window_stride},
                    {"n_batch", cfg.learner.n_batch},
                    {"alpha", cfg.learner.alpha},
                    {"grad_clip", cfg.learner.grad_clip}};
  doc["controller"] = {{"dt", cfg.controller.dt},
                       {"horizon", cfg.controller.horizon},
                       {"core_max", cfg.controller.core_max},
                       {"tension_weight", cfg.controller.tension_weight},
                       {"step_size", cfg.controller.step_size},
                       {"tension_min", cfg.controller.tension_min},
                       {"tension_max", cfg.controller.tension_max},
                       {"iters_per_tick", cfg.controller.iters_per_tick},
                       {"improvement_tol", cfg.controller.improvement_tol}};
  doc["limiter"] = {{"rate_minus", cfg.limiter.rate_minus},
                    {"rate_plus", cfg.limiter.rate_plus},
                    {"gain", cfg.limiter.gain},
                    {"period", cfg.limiter.period}};
  doc["anomaly_threshold"] = cfg.anomaly_threshold;
  doc["muscle_stiffness"] = cfg.muscle_stiffness;
  doc["muscle_command"] = cfg.muscle_command;
  return doc.dump(2);
}

ScenarioConfig config_from_json(const std::string& text, ScenarioConfig cfg) {
  json doc = json::parse(text);

  if (doc.contains("scenario")) {
    const std::string name = doc["scenario"].get<std::string>();
    if (name == "sim-learn") cfg.id = ScenarioId::SimLearn;
    else if (name == "sim-quant") cfg.id = ScenarioId::SimQuant;
    else if (name == "sim-fault") cfg.id = ScenarioId::SimFault;
    else if (name == "sim-control") cfg.id = ScenarioId::SimControl;
    else if (name == "closed-loop") cfg.id = ScenarioId::ClosedLoop;
    else if (name == "replay") cfg.id = ScenarioId::Replay;
    else throw std::runtime_error("unknown scenario: " + name);
  }
  cfg.duration = doc.value("duration_s", cfg.duration);
  cfg.seed = doc.value("seed", cfg.seed);
  if (doc.contains("motor")) {
    const std::string name = doc["motor"].get<std::string>();
    if (name == "ec4pole-90w") cfg.motor = MotorId::EC4pole90W;
    else if (name == "ec16-60w") cfg.motor = MotorId::EC16_60W;
    else if (name == "custom") cfg.motor = MotorId::Custom;
    else throw std::runtime_error("unknown motor: " + name);
  }
  cfg.custom_motor_path = doc.value("custom_motor_path", cfg.custom_motor_path);
  cfg.motor_label = doc.value("motor_label", cfg.motor_label);
  cfg.out_dir = doc.value("out_dir", cfg.out_dir);
  if (doc.contains("p_sim")) {
    cfg.p_sim = doc["p_sim"].get<std::array<double, 5>>();
  }
  cfg.plant_ambient = doc.value("plant_ambient", cfg.plant_ambient);
  cfg.model_ambient = doc.value("model_ambient", cfg.model_ambient);
  cfg.dt_plant = doc.value("dt_plant", cfg.dt_plant);
  cfg.initial_temp = doc.value("initial_temp", cfg.initial_temp);
  cfg.walk_min = doc.value("walk_min", cfg.walk_min);
  cfg.walk_max = doc.value("walk_max", cfg.walk_max);
  cfg.initial_tension = doc.value("initial_tension", cfg.initial_tension);
  cfg.seed_with_true_core =
      doc.value("seed_with_true_core", cfg.seed_with_true_core);
  cfg.emit_telemetry = doc.value("emit_telemetry", cfg.emit_telemetry);
  cfg.params_path = doc.value("params_path", cfg.params_path);
  cfg.replay_input = doc.value("replay_input", cfg.replay_input);

  if (doc.contains("fault")) {
    const json& fault = doc["fault"];
    const std::string kind = fault.value("kind", "none");
    if (kind == "none") {
      cfg.fault = FaultMode::none();
    } else if (kind == "stuck-sensor") {
      cfg.fault = FaultMode::stuck_sensor(fault.at("value").get<double>());
    } else if (kind == "stuck-tension") {
      cfg.fault = FaultMode::stuck_tension(fault.at("value").get<double>());
    } else {
      throw std::runtime_error("unknown fault kind: " + kind);
    }
  }
  if (doc.contains("estimator")) {
    const json& est = doc["estimator"];
    cfg.estimator.dt = est.value("dt", cfg.estimator.dt);
    cfg.estimator.fixed_ambient =
        est.value("fixed_ambient", cfg.estimator.fixed_ambient);
    if (est.contains("init_policy")) {
      const std::string policy = est["init_policy"].get<std::string>();
      cfg.estimator.init_policy =
          policy == "fixed-ambient"
              ? EstimatorConfig::InitPolicy::FixedAmbient
              : EstimatorConfig::InitPolicy::FirstHousingReading;
    }
  }
  if (doc.contains("learner")) {
    const json& lrn = doc["learner"];
    cfg.learner.dt_data = lrn.value("dt_data", cfg.learner.dt_data);
    cfg.learner.n_seq = lrn.value("n_seq", cfg.learner.n_seq);
    cfg.learner.window_stride =
        lrn.value("window_stride", cfg.learner.window_stride);
    cfg.learner.n_batch = lrn.value("n_batch", cfg.learner.n_batch);
    cfg.learner.alpha = lrn.value("alpha", cfg.learner.alpha);
    cfg.learner.grad_clip = lrn.value("grad_clip", cfg.learner.grad_clip);
  }
  if (doc.contains("controller")) {
    const json& ctl = doc["controller"];
    cfg.controller.dt = ctl.value("dt", cfg.controller.dt);
    cfg.controller.horizon = ctl.value("horizon", cfg.controller.horizon);
    cfg.controller.core_max = ctl.value("core_max", cfg.controller.core_max);
    cfg.controller.tension_weight =
        ctl.value("tension_weight", cfg.controller.tension_weight);
    cfg.controller.step_size =
        ctl.value("step_size", cfg.controller.step_size);
    cfg.controller.tension_min =
        ctl.value("tension_min", cfg.controller.tension_min);
    cfg.controller.tension_max =
        ctl.value("tension_max", cfg.controller.tension_max);
    cfg.controller.iters_per_tick =
        ctl.value("iters_per_tick", cfg.controller.iters_per_tick);
    cfg.controller.improvement_tol =
        ctl.value("improvement_tol", cfg.controller.improvement_tol);
  }
  if (doc.contains("limiter")) {
    const json& lim = doc["limiter"];
    cfg.limiter.rate_minus = lim.value("rate_minus", cfg.limiter.rate_minus);
    cfg.limiter.rate_plus = lim.value("rate_plus", cfg.limiter.rate_plus);
    cfg.limiter.gain = lim.value("gain", cfg.limiter.gain);
    cfg.limiter.period = lim.value("period", cfg.limiter.period);
  }
  cfg.anomaly_threshold =
      doc.value("anomaly_threshold", cfg.anomaly_threshold);
  cfg.muscle_stiffness = doc.value("muscle_stiffness", cfg.muscle_stiffness);
  cfg.muscle_command = doc.value("muscle_command", cfg.muscle_command);
  return cfg;
}

}  // namespace thermo
