// Command-line front end for the thermal model pipeline: simulated
// scenarios, telemetry replay, and configuration dumps.

#include <cstdio>
#include <deque>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "thermo/harness.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out_dir = ".";
  std::string motor = "ec4pole-90w";
  double duration = -1.0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "JSON config file");
  cmd->add_option("--seed", args.seed, "RNG seed")
      ->each([&args](const std::string&) { args.seed_set = true; });
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--motor", args.motor,
                  "motor id: ec4pole-90w | ec16-60w | custom");
  cmd->add_option("--duration", args.duration, "simulated duration [s]");
}

thermo::ScenarioConfig build_config(const CommonArgs& args,
                                    thermo::ScenarioId id,
                                    double default_duration) {
  thermo::ScenarioConfig cfg;
  cfg.id = id;
  cfg.duration = default_duration;
  if (!args.config_path.empty()) {
    std::ifstream in(args.config_path);
    if (!in) {
      throw std::runtime_error("cannot open config: " + args.config_path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    cfg = thermo::config_from_json(ss.str(), cfg);
    cfg.id = id;  // the subcommand wins over the file
  }
  if (args.seed_set) cfg.seed = args.seed;
  cfg.out_dir = args.out_dir;
  if (args.motor == "ec4pole-90w") cfg.motor = thermo::MotorId::EC4pole90W;
  else if (args.motor == "ec16-60w") cfg.motor = thermo::MotorId::EC16_60W;
  else if (args.motor == "custom") cfg.motor = thermo::MotorId::Custom;
  else throw std::runtime_error("unknown motor: " + args.motor);
  if (args.duration > 0.0) cfg.duration = args.duration;
  return cfg;
}

void print_report(const thermo::ScenarioConfig& cfg,
                  const thermo::ScenarioReport& report) {
  std::printf("scenario finished (%.0f s simulated)\n", cfg.duration);
  if (!report.trace_path.empty()) {
    std::printf("  trace: %s\n", report.trace_path.c_str());
  }
  if (!report.snapshot_path.empty()) {
    std::printf("  params: %s\n", report.snapshot_path.c_str());
  }
  if (!report.telemetry_path.empty()) {
    std::printf("  telemetry: %s\n", report.telemetry_path.c_str());
  }
  if (!report.rmse_series.empty()) {
    std::printf("  param RMSE (P1..P4): initial 0.5 -> final %.4f\n",
                report.rmse_series.back().rmse4);
  }
  if (report.first_update_time >= 0.0) {
    std::printf("  first learner update at t=%.0f s\n",
                report.first_update_time);
  }
  if (report.first_anomaly_time >= 0.0) {
    std::printf("  first anomaly at t=%.0f s\n", report.first_anomaly_time);
  }
  if (cfg.id == thermo::ScenarioId::SimControl ||
      cfg.id == thermo::ScenarioId::ClosedLoop) {
    std::printf("  max plant core temperature: %.2f degC\n",
                report.max_core_true);
    std::printf("  tail mean tension limit: %.1f N\n",
                report.tail_mean_limit);
  }
  if (!report.quant_mean_estimated.empty()) {
    std::printf("  checkpoint mean RMSE (estimated c1 seed):");
    for (double v : report.quant_mean_estimated) std::printf(" %.3f", v);
    std::printf("\n  checkpoint mean RMSE (true c1 seed):     ");
    for (double v : report.quant_mean_true_seeded) std::printf(" %.3f", v);
    std::printf("\n");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Motor core temperature estimation, online thermal model "
               "learning, anomaly detection, and tension-limit control"};
  app.require_subcommand(1);

  struct Sub {
    CLI::App* cmd;
    thermo::ScenarioId id;
    double default_duration;
    CommonArgs args;
  };
  std::deque<Sub> subs;  // stable addresses for the option bindings
  auto add_scenario = [&](const char* name, const char* help,
                          thermo::ScenarioId id, double duration) -> Sub& {
    subs.push_back({app.add_subcommand(name, help), id, duration, {}});
    add_common(subs.back().cmd, subs.back().args);
    return subs.back();
  };

  add_scenario("sim-learn",
               "online learning against a perturbed simulated plant",
               thermo::ScenarioId::SimLearn, 3600.0);
  auto& quant = add_scenario(
      "sim-quant", "10-plant quantitative learning evaluation",
      thermo::ScenarioId::SimQuant, 3600.0);
  (void)quant;
  auto& fault = add_scenario("sim-fault",
                             "learning under an injected fault",
                             thermo::ScenarioId::SimFault, 3600.0);
  std::string fault_kind = "stuck-sensor";
  double fault_value = 30.0;
  fault.cmd->add_option("--fault", fault_kind,
                        "stuck-sensor | stuck-tension");
  fault.cmd->add_option("--fault-value", fault_value,
                        "reported degC or applied N");
  auto& control = add_scenario("sim-control",
                               "receding-horizon ceiling control",
                               thermo::ScenarioId::SimControl, 600.0);
  std::string control_params;
  double control_initial = 60.0;
  control.cmd->add_option("--params", control_params,
                          "parameter snapshot JSON for the model");
  control.cmd->add_option("--initial-temp", control_initial,
                          "initial c1 = c2 [degC]");
  auto& closed = add_scenario("closed-loop",
                              "controller and limiter against the elastic "
                              "muscle plant",
                              thermo::ScenarioId::ClosedLoop, 3000.0);
  (void)closed;
  auto& replay = add_scenario("replay", "offline pass over recorded telemetry",
                              thermo::ScenarioId::Replay, 1.0);
  std::string replay_file;
  replay.cmd->add_option("file", replay_file, "telemetry CSV (t,c2,f)")
      ->required();

  CLI::App* dump = app.add_subcommand(
      "dump-config", "print the effective configuration as JSON");
  CommonArgs dump_args;
  add_common(dump, dump_args);
  std::string dump_scenario = "sim-learn";
  dump->add_option("--scenario", dump_scenario, "scenario to dump");

  CLI11_PARSE(app, argc, argv);

  try {
    if (dump->parsed()) {
      auto cfg = build_config(dump_args, thermo::ScenarioId::SimLearn, 3600.0);
      cfg = thermo::config_from_json("{\"scenario\": \"" + dump_scenario +
                                         "\"}",
                                     cfg);
      std::cout << thermo::config_to_json(cfg) << "\n";
      return 0;
    }
    for (Sub& sub : subs) {
      if (!sub.cmd->parsed()) continue;
      thermo::ScenarioConfig cfg =
          build_config(sub.args, sub.id, sub.default_duration);
      if (sub.id == thermo::ScenarioId::SimLearn) {
        cfg.emit_telemetry = true;
      }
      if (sub.id == thermo::ScenarioId::SimFault) {
        if (fault_kind == "stuck-sensor") {
          cfg.fault = thermo::FaultMode::stuck_sensor(fault_value);
        } else if (fault_kind == "stuck-tension") {
          cfg.fault = thermo::FaultMode::stuck_tension(fault_value);
        } else {
          throw std::runtime_error("unknown fault kind: " + fault_kind);
        }
        cfg.p_sim = {0.0, 0.0, 0.0, 0.0, 0.0};
      }
      if (sub.id == thermo::ScenarioId::SimControl) {
        cfg.params_path = control_params;
        cfg.initial_temp = control_initial;
      }
      if (sub.id == thermo::ScenarioId::ClosedLoop) {
        cfg.p_sim = {0.0, 0.0, 0.0, 0.0, 0.0};
      }
      if (sub.id == thermo::ScenarioId::Replay) {
        cfg.replay_input = replay_file;
      }
      const thermo::ScenarioReport report = thermo::run_scenario(cfg);
      print_report(cfg, report);
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
