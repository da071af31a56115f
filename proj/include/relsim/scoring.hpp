#pragma once

#include <span>
#include <vector>

#include "relsim/types.hpp"

namespace relsim {

/// Weighted reliability score of one version from its three per-metric
/// utilities. Result lies in [0,1]. Throws InvalidUtility if any utility is
/// outside [0,1].
double reliability_score(double u_response_time, double u_restarts,
                         double u_memory, const ReliabilityWeights& weights);

/// Scores every version of one action window: builds the normalization
/// context across all windows, normalizes each metric and combines the
/// utilities. All windows must cover the same interval. With identical
/// windows every score is 1.
std::vector<double> score_all(std::span<const MetricWindow> windows,
                              const ReliabilityWeights& weights);

}  // namespace relsim
