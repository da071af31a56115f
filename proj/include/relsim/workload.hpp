#pragma once

#include <cstdint>
#include <vector>

#include "relsim/types.hpp"

namespace relsim {

/// Piecewise-constant open workload: `users` concurrent users from `at_s`
/// onwards, each issuing requests_per_user_per_s requests per second.
struct WorkloadStep {
  SimTime at_s = 0;
  std::uint32_t users = 0;

  bool operator==(const WorkloadStep&) const = default;
};

struct WorkloadProfile {
  double requests_per_user_per_s = 1.0;
  /// Optional multiplicative jitter on the per-tick request rate, in
  /// percent, drawn from the scenario seed. 0 keeps the rate exact.
  double jitter_pct = 0.0;
  std::vector<WorkloadStep> steps;

  std::uint32_t users_at(SimTime t) const {
    std::uint32_t users = 0;
    for (const WorkloadStep& step : steps) {
      if (step.at_s > t) break;
      users = step.users;
    }
    return users;
  }

  bool operator==(const WorkloadProfile&) const = default;
};

}  // namespace relsim
