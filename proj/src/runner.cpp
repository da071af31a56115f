#include "relsim/runner.hpp"

#include <string>
#include <vector>

#include "relsim/autoscaler.hpp"
#include "relsim/cluster.hpp"
#include "relsim/report.hpp"
#include "relsim/trace.hpp"

namespace relsim {

std::string run_scenario(const Scenario& scenario,
                         const std::filesystem::path& trace_path) {
  validate_scenario(scenario);

  const std::vector<VersionId> roster = scenario.roster();
  SimCluster cluster(roster, scenario.initial_plan(), scenario.model,
                     scenario.chaos, scenario.workload, scenario.seed);
  Controller controller(scenario.config, roster, scenario.initial_plan());

  // Before the first action tick every version scores 1: traffic starts
  // evenly split.
  std::vector<double> initial_scores(roster.size(), 1.0);
  SmoothWrr router(derive_weights(initial_scores));

  TraceWriter trace(trace_path, roster);
  std::vector<std::vector<MetricSample>> monitor_batch(roster.size());
  double last_cpu = 0.0;

  for (SimTime t = 0; t < scenario.duration_s; ++t) {
    StepResult step = cluster.step(t, router);
    for (const ChaosTransition& transition : step.chaos_transitions) {
      const ChaosSpec& spec = scenario.chaos[transition.spec_index];
      trace.chaos(t, std::string(to_string(spec.kind)) + ":" +
                         spec.target.name + ":" +
                         (transition.started ? "start" : "stop"));
    }
    for (std::size_t v = 0; v < roster.size(); ++v)
      monitor_batch[v].insert(monitor_batch[v].end(),
                              step.samples_by_version[v].begin(),
                              step.samples_by_version[v].end());

    const SimTime now = t + 1;
    if (now % scenario.config.monitoring_time_s == 0) {
      last_cpu = cluster.observed_cpu();
      controller.monitoring_tick(last_cpu, monitor_batch);
      trace.monitor(now, last_cpu,
                    scaling_action(last_cpu, scenario.config));
      for (auto& batch : monitor_batch) batch.clear();
    }
    if (now % scenario.config.action_time_s == 0) {
      const ActionResult result = controller.action_tick(now);
      cluster.apply_plan(result.plan);
      router.reconfigure(result.scores);
      trace.action(now, last_cpu, result, router.table());
      trace.reconfig(now, router.table());
    }
  }

  return report_trace(trace_path);
}

}  // namespace relsim
