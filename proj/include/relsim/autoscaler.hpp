#pragma once

#include <span>
#include <vector>

#include "relsim/allocation.hpp"
#include "relsim/types.hpp"

namespace relsim {

/// Scaling votes collected since the last action tick, one per monitoring
/// tick. Cleared after every action tick.
struct ScaleHistory {
  std::vector<ScaleAction> actions;
};

/// Threshold vote for one CPU observation: above max_cpu -> Increase,
/// below min_cpu -> Decrease, otherwise NoChange. Both comparisons are
/// strict.
ScaleAction scaling_action(double cpu_pct, const ControllerConfig& cfg);

/// Majority-style decision over one action window's votes. More than two
/// Decrease votes win; failing that, more than one Increase vote wins;
/// otherwise NoChange. The asymmetry damps scale-in more than scale-out.
ScaleAction decide_scale_based_on_history(const ScaleHistory& history);

/// Everything one action tick produces, in roster order.
struct ActionResult {
  ScaleAction decision = ScaleAction::NoChange;
  ReplicaCount total_replicas = 0;
  std::vector<MetricWindow> windows;
  std::vector<double> scores;
  ReplicaPlan plan;
  DiversityFactor df = DiversityFactor::uniform();
};

/// The reliability controller. Single logical actor: feed it one
/// monitoring_tick per MONITORING_TIME and one action_tick per ACTION_TIME
/// of simulated time (monitoring first when the two coincide).
class Controller {
 public:
  Controller(ControllerConfig cfg, std::vector<VersionId> roster,
             ReplicaPlan initial_plan);

  /// Records the scaling vote for this CPU observation and buffers the
  /// samples observed per version since the previous monitoring tick.
  void monitoring_tick(
      double observed_cpu_pct,
      std::span<const std::vector<MetricSample>> samples_by_version);

  /// Decides the total-replica change from the collected history (only
  /// applied while scaling is enabled, and always clamped to the replica
  /// bounds), rescores every version over the elapsed action window,
  /// reallocates the budget and clears the history.
  ActionResult action_tick(SimTime now);

  const ControllerConfig& config() const { return cfg_; }
  ReplicaCount total_replicas() const { return total_; }
  const ScaleHistory& history() const { return history_; }
  const ReplicaPlan& plan() const { return plan_; }
  const std::vector<VersionId>& roster() const { return roster_; }
  const std::vector<VersionState>& versions() const { return versions_; }

 private:
  ControllerConfig cfg_;
  std::vector<VersionId> roster_;
  ReplicaCount total_;
  ScaleHistory history_;
  std::vector<std::vector<MetricSample>> pending_samples_;
  ReplicaPlan plan_;
  std::vector<VersionState> versions_;
  SimTime window_start_ = 0;
};

}  // namespace relsim
