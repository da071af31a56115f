#include "relsim/autoscaler.hpp"

#include <stdexcept>

#include "relsim/errors.hpp"
#include "relsim/metrics.hpp"
#include "relsim/scoring.hpp"

namespace relsim {

ScaleAction scaling_action(double cpu_pct, const ControllerConfig& cfg) {
  if (!(cpu_pct >= 0.0 && cpu_pct <= 100.0))
    throw std::invalid_argument("cpu_pct must lie in [0,100]");
  if (cpu_pct > cfg.max_cpu_pct) return ScaleAction::Increase;
  if (cpu_pct < cfg.min_cpu_pct) return ScaleAction::Decrease;
  return ScaleAction::NoChange;
}

ScaleAction decide_scale_based_on_history(const ScaleHistory& history) {
  int increase_count = 0;
  int decrease_count = 0;
  for (ScaleAction action : history.actions) {
    if (action == ScaleAction::Increase) ++increase_count;
    else if (action == ScaleAction::Decrease) ++decrease_count;
  }
  if (decrease_count > 2) return ScaleAction::Decrease;
  if (increase_count > 1) return ScaleAction::Increase;
  return ScaleAction::NoChange;
}

Controller::Controller(ControllerConfig cfg, std::vector<VersionId> roster,
                       ReplicaPlan initial_plan)
    : cfg_(validate_config(cfg)),
      roster_(std::move(roster)),
      total_(cfg.total_replicas),
      plan_(std::move(initial_plan)) {
  if (roster_.empty())
    throw std::invalid_argument("controller requires >= 1 version");
  if (plan_.counts.size() != roster_.size())
    throw std::invalid_argument("initial plan does not match the roster");
  if (plan_.total() != total_)
    throw std::invalid_argument("initial plan does not sum to total_replicas");
  pending_samples_.resize(roster_.size());
  versions_.reserve(roster_.size());
  for (std::size_t i = 0; i < roster_.size(); ++i)
    versions_.push_back(VersionState{roster_[i], plan_.counts[i],
                                     MetricWindow{roster_[i]}, 1.0});
}

void Controller::monitoring_tick(
    double observed_cpu_pct,
    std::span<const std::vector<MetricSample>> samples_by_version) {
  if (samples_by_version.size() != roster_.size())
    throw std::invalid_argument("sample batch does not match the roster");
  const std::size_t tick_ratio =
      static_cast<std::size_t>(cfg_.action_time_s / cfg_.monitoring_time_s);
  if (history_.actions.size() >= tick_ratio)
    throw std::logic_error("monitoring tick overran the action interval");

  history_.actions.push_back(scaling_action(observed_cpu_pct, cfg_));
  for (std::size_t i = 0; i < roster_.size(); ++i)
    pending_samples_[i].insert(pending_samples_[i].end(),
                               samples_by_version[i].begin(),
                               samples_by_version[i].end());
}

ActionResult Controller::action_tick(SimTime now) {
  if (now <= window_start_)
    throw std::invalid_argument("action tick must advance simulated time");

  ActionResult result;
  result.decision = decide_scale_based_on_history(history_);
  if (cfg_.scaling_enabled) {
    if (result.decision == ScaleAction::Increase && total_ < cfg_.max_replicas)
      ++total_;
    else if (result.decision == ScaleAction::Decrease &&
             total_ > cfg_.min_replicas)
      --total_;
  }
  result.total_replicas = total_;

  result.windows.reserve(roster_.size());
  for (std::size_t i = 0; i < roster_.size(); ++i)
    result.windows.push_back(
        aggregate_window(pending_samples_[i], window_start_, now, roster_[i]));
  result.scores = score_all(result.windows, cfg_.weights);
  result.plan = adjust_replica_distribution(result.scores, total_);
  result.df = diversity_factor(result.plan);

  plan_ = result.plan;
  for (std::size_t i = 0; i < roster_.size(); ++i) {
    versions_[i].replicas = result.plan.counts[i];
    versions_[i].window = result.windows[i];
    versions_[i].reliability_score = result.scores[i];
  }

  history_.actions.clear();
  for (auto& samples : pending_samples_) samples.clear();
  window_start_ = now;
  return result;
}

}  // namespace relsim
