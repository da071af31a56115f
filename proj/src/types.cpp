#include "relsim/types.hpp"

#include <cmath>
#include <sstream>

#include "relsim/errors.hpp"

namespace relsim {

const char* to_string(ScaleAction action) {
  switch (action) {
    case ScaleAction::Increase:
      return "increase";
    case ScaleAction::Decrease:
      return "decrease";
    case ScaleAction::NoChange:
      return "no_change";
  }
  return "no_change";
}

void validate_weights(const ReliabilityWeights& weights) {
  const double values[] = {weights.restart_weight, weights.memory_weight,
                           weights.response_time_weight};
  const char* names[] = {"restart_weight", "memory_weight",
                         "response_time_weight"};
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    if (!(values[i] >= 0.0 && values[i] <= 1.0)) {
      std::ostringstream msg;
      msg << names[i] << " must lie in [0,1], got " << values[i];
      throw InvalidConfig(msg.str());
    }
    sum += values[i];
  }
  if (std::fabs(sum - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "weights must sum to 1 within 1e-9, got " << sum;
    throw InvalidConfig(msg.str());
  }
}

const ControllerConfig& validate_config(const ControllerConfig& cfg) {
  if (cfg.monitoring_time_s <= 0)
    throw InvalidConfig("monitoring_time_s must be positive");
  if (cfg.action_time_s <= 0)
    throw InvalidConfig("action_time_s must be positive");
  if (cfg.action_time_s % cfg.monitoring_time_s != 0)
    throw InvalidConfig(
        "action_time_s must be a positive integer multiple of "
        "monitoring_time_s");
  if (cfg.min_replicas > cfg.total_replicas)
    throw InvalidConfig("min_replicas must not exceed total_replicas");
  if (cfg.total_replicas > cfg.max_replicas)
    throw InvalidConfig("total_replicas must not exceed max_replicas");
  if (!(cfg.min_cpu_pct >= 0.0))
    throw InvalidConfig("min_cpu_pct must be >= 0");
  if (!(cfg.min_cpu_pct < cfg.max_cpu_pct))
    throw InvalidConfig("min_cpu_pct must be strictly below max_cpu_pct");
  if (!(cfg.max_cpu_pct <= 100.0))
    throw InvalidConfig("max_cpu_pct must be <= 100");
  validate_weights(cfg.weights);
  return cfg;
}

}  // namespace relsim
