#pragma once

#include <span>
#include <vector>

#include "relsim/types.hpp"

namespace relsim {

/// Min/max of one raw metric across all versions for the current window.
/// Lower raw values are better: the minimum maps to utility 1, the maximum
/// to 0. A degenerate range (max == min) maps everything to 1.
struct MetricRange {
  double min_value = 0.0;
  double max_value = 0.0;

  double utility(double value) const {
    if (max_value <= min_value) return 1.0;
    return 1.0 - (value - min_value) / (max_value - min_value);
  }
};

/// The normalization context shared by all versions of one scoring pass:
/// one range per monitored metric.
struct NormalizationContext {
  MetricRange restarts;
  MetricRange response_time_stddev;
  MetricRange memory_stddev;
};

NormalizationContext make_normalization_context(
    std::span<const MetricWindow> windows);

/// Folds raw samples of one version into a MetricWindow over [start, end).
/// restart_count counts samples flagged as restarts; the two variability
/// aggregates are population standard deviations (0 with fewer than two
/// samples). Throws EmptyWindowDuration if end <= start.
MetricWindow aggregate_window(std::span<const MetricSample> samples,
                              SimTime start, SimTime end,
                              const VersionId& version);

/// Min-max normalizes one raw metric across versions into utilities in
/// [0,1], inverted so that the lowest raw value scores 1. All-equal inputs
/// normalize to 1 for every version.
std::vector<double> normalize_metric(std::span<const double> values);

}  // namespace relsim
