#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "relsim/errors.hpp"
#include "relsim/report.hpp"
#include "relsim/runner.hpp"
#include "relsim/scenario.hpp"

namespace {

struct RunOverrides {
  std::optional<unsigned> total_replicas;
  std::optional<unsigned> max_replicas;
  std::optional<unsigned> min_replicas;
  std::optional<std::string> monitoring_time;
  std::optional<std::string> action_time;
  std::optional<double> max_cpu;
  std::optional<double> min_cpu;
  std::optional<std::string> scaling;
};

// Mirrors the controller's environment-variable interface: flags override
// the scenario file. Changing the replica budget re-splits the initial
// replicas as evenly as possible across the declared versions.
void apply_overrides(relsim::Scenario& scenario, const RunOverrides& o) {
  if (o.total_replicas) {
    scenario.config.total_replicas = *o.total_replicas;
    const auto n = static_cast<unsigned>(scenario.versions.size());
    if (n > 0) {
      const unsigned base = *o.total_replicas / n;
      const unsigned extra = *o.total_replicas % n;
      for (unsigned i = 0; i < n; ++i)
        scenario.versions[i].initial_replicas = base + (i < extra ? 1 : 0);
    }
  }
  if (o.max_replicas) scenario.config.max_replicas = *o.max_replicas;
  if (o.min_replicas) scenario.config.min_replicas = *o.min_replicas;
  if (o.monitoring_time)
    scenario.config.monitoring_time_s =
        relsim::parse_duration_s(*o.monitoring_time);
  if (o.action_time)
    scenario.config.action_time_s = relsim::parse_duration_s(*o.action_time);
  if (o.max_cpu) scenario.config.max_cpu_pct = *o.max_cpu;
  if (o.min_cpu) scenario.config.min_cpu_pct = *o.min_cpu;
  if (o.scaling) {
    if (*o.scaling == "on" || *o.scaling == "true")
      scenario.config.scaling_enabled = true;
    else if (*o.scaling == "off" || *o.scaling == "false")
      scenario.config.scaling_enabled = false;
    else
      throw relsim::ValidationError("--scaling expects on or off");
  }
  relsim::validate_scenario(scenario);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "relsim - reliability-aware replica controller for multi-version "
      "services, closed-loop against a simulated cluster"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string trace_path;
  RunOverrides overrides;

  CLI::App* run = app.add_subcommand("run", "run a scenario, write its trace");
  run->add_option("scenario", scenario_path, "scenario JSON file")
      ->required();
  run->add_option("--out", trace_path, "trace CSV output path")->required();
  run->add_option("--total-replicas", overrides.total_replicas,
                  "override the replica budget (re-splits initial replicas)");
  run->add_option("--max-replicas", overrides.max_replicas,
                  "override the upper replica bound");
  run->add_option("--min-replicas", overrides.min_replicas,
                  "override the lower replica bound");
  run->add_option("--monitoring-time", overrides.monitoring_time,
                  "override the monitoring interval (e.g. 30s)");
  run->add_option("--action-time", overrides.action_time,
                  "override the action interval (e.g. 2m)");
  run->add_option("--max-cpu", overrides.max_cpu,
                  "override the scale-out CPU threshold (percent)");
  run->add_option("--min-cpu", overrides.min_cpu,
                  "override the scale-in CPU threshold (percent)");
  run->add_option("--scaling", overrides.scaling,
                  "toggle total-replica autoscaling: on/off");

  std::string report_path;
  CLI::App* report =
      app.add_subcommand("report", "recompute the summary from a trace");
  report->add_option("trace", report_path, "trace CSV file")->required();

  std::string validate_path;
  CLI::App* validate =
      app.add_subcommand("validate", "parse and validate a scenario file");
  validate->add_option("scenario", validate_path, "scenario JSON file")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      relsim::Scenario scenario = relsim::load_scenario(scenario_path);
      apply_overrides(scenario, overrides);
      std::cout << relsim::run_scenario(scenario, trace_path);
    } else if (report->parsed()) {
      std::cout << relsim::report_trace(report_path);
    } else if (validate->parsed()) {
      relsim::load_scenario(validate_path);
      std::cout << "scenario valid: " << validate_path << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
