#pragma once

#include <cstdint>
#include <vector>

#include "relsim/chaos.hpp"
#include "relsim/loadbalancer.hpp"
#include "relsim/rng.hpp"
#include "relsim/types.hpp"
#include "relsim/workload.hpp"

namespace relsim {

/// Pod performance model. The paper's subject application runs on real
/// hardware; this linear stand-in only has to reproduce the control-plane
/// behaviour: CPU proportional to request rate with saturation at 100%,
/// and response times that inflate once CPU passes the queueing knee.
struct ClusterModelParams {
  double cpu_cost_pct_per_rps = 2.5;
  double base_response_ms = 50.0;
  double base_memory_mb = 100.0;
  double queue_knee_pct = 70.0;
  double inflation_ms_per_pct = 10.0;

  bool operator==(const ClusterModelParams&) const = default;
};

enum class PodStatus { Running, Killed };

struct Pod {
  PodStatus status = PodStatus::Running;
  SimTime killed_until = 0;
  double base_memory_mb = 0.0;
  double extra_memory_mb = 0.0;
  std::uint32_t restart_count = 0;
  // Derived per tick.
  std::uint32_t requests = 0;
  double cpu_pct = 0.0;
  double response_ms = 0.0;
  bool restarted_this_tick = false;
};

struct StepCounters {
  std::uint64_t generated = 0;
  std::uint64_t served = 0;
  std::uint64_t rerouted_served = 0;
  std::uint64_t dropped = 0;
};

/// Duty-state flip of one chaos spec during a tick.
struct ChaosTransition {
  std::size_t spec_index = 0;
  bool started = false;
};

struct StepResult {
  std::vector<std::vector<MetricSample>> samples_by_version;
  StepCounters counters;
  std::vector<ChaosTransition> chaos_transitions;
};

/// Deterministic discrete-event stand-in for the multi-version cluster:
/// runs pods per version, generates the workload, injects chaos and emits
/// one MetricSample per running pod per one-second tick.
class SimCluster {
 public:
  SimCluster(std::vector<VersionId> roster, const ReplicaPlan& initial_plan,
             ClusterModelParams model, std::vector<ChaosSpec> chaos,
             WorkloadProfile workload, std::uint64_t seed);

  /// Simulates the second [t, t+1). Routing goes through the router: a
  /// request whose selected version has no running pod is pushed to the
  /// next selection and counted as rerouted; with no running pod anywhere
  /// it is dropped.
  StepResult step(SimTime t, SmoothWrr& router);

  /// Creates/removes pods per version to match the plan. Removals take
  /// Killed pods first, then the highest-index Running pods; new pods
  /// start Running at base memory.
  void apply_plan(const ReplicaPlan& plan);

  /// Mean per-pod CPU across all Running pods, from the most recent tick.
  /// Throws NoRunningPods when every pod is down.
  double observed_cpu() const;

  const std::vector<VersionId>& roster() const { return roster_; }
  const std::vector<std::vector<Pod>>& pods() const { return pods_; }
  const std::vector<ChaosSpec>& chaos() const { return chaos_; }

 private:
  std::vector<VersionId> roster_;
  std::vector<std::vector<Pod>> pods_;
  ClusterModelParams model_;
  std::vector<ChaosSpec> chaos_;
  std::vector<bool> chaos_on_duty_;
  WorkloadProfile workload_;
  std::uint64_t seed_;
  std::vector<std::size_t> rr_cursor_;
  double request_carry_ = 0.0;

  std::size_t version_index(const VersionId& id) const;
};

}  // namespace relsim
