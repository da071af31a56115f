#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace relsim {

/// Simulated clock, integer seconds. There is no wall-clock anywhere in the
/// controller or the simulator.
using SimTime = std::int64_t;

/// Number of replicas (pods) of one version.
using ReplicaCount = std::uint32_t;

/// Identifier of one software version of the controlled service,
/// e.g. "frontend-faulty". Unique within a cluster.
struct VersionId {
  std::string name;

  auto operator<=>(const VersionId&) const = default;
};

/// One observation of a single pod at a single tick.
struct MetricSample {
  SimTime timestamp = 0;
  double response_time_ms = 0.0;
  double memory_mb = 0.0;
  bool restart_event = false;

  bool operator==(const MetricSample&) const = default;
};

/// Per-version aggregates over one time window [window_start, window_end).
/// response_time_mean_ms is reporting-only; scoring reads the restart count
/// and the two variability aggregates.
struct MetricWindow {
  VersionId version;
  SimTime window_start = 0;
  SimTime window_end = 0;
  std::uint32_t restart_count = 0;
  double response_time_stddev_ms = 0.0;
  double memory_stddev_mb = 0.0;
  double response_time_mean_ms = 0.0;

  bool operator==(const MetricWindow&) const = default;
};

/// Weights of the three reliability metrics. Must sum to 1.
struct ReliabilityWeights {
  double restart_weight = 0.5;
  double memory_weight = 0.3;
  double response_time_weight = 0.2;

  bool operator==(const ReliabilityWeights&) const = default;
};

/// The defaults used throughout: restarts 0.5, memory 0.3, response time 0.2.
inline ReliabilityWeights default_weights() { return ReliabilityWeights{}; }

/// Replica counts per version, index-aligned with the cluster's version
/// roster. Plain value type: copies are independent.
struct ReplicaPlan {
  std::vector<ReplicaCount> counts;

  ReplicaCount total() const {
    ReplicaCount sum = 0;
    for (ReplicaCount c : counts) sum += c;
    return sum;
  }

  bool operator==(const ReplicaPlan&) const = default;
};

enum class ScaleAction { Increase, Decrease, NoChange };

const char* to_string(ScaleAction action);

/// Controller parameters (timers, replica bounds, CPU thresholds, weights).
struct ControllerConfig {
  SimTime monitoring_time_s = 30;
  SimTime action_time_s = 120;
  ReplicaCount total_replicas = 9;
  ReplicaCount max_replicas = 24;
  ReplicaCount min_replicas = 3;
  double max_cpu_pct = 60.0;
  double min_cpu_pct = 20.0;
  bool scaling_enabled = true;
  ReliabilityWeights weights;

  bool operator==(const ControllerConfig&) const = default;
};

/// One version's view inside the controller after an action tick.
struct VersionState {
  VersionId id;
  ReplicaCount replicas = 1;
  MetricWindow window;
  double reliability_score = 1.0;

  bool operator==(const VersionState&) const = default;
};

/// Throws InvalidUtility unless weights are each in [0,1] and sum to 1
/// within 1e-9.
void validate_weights(const ReliabilityWeights& weights);

/// Returns cfg unchanged iff every ControllerConfig invariant holds,
/// otherwise throws InvalidConfig naming the violated constraint.
const ControllerConfig& validate_config(const ControllerConfig& cfg);

}  // namespace relsim
