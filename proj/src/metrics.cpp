#include "relsim/metrics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "relsim/errors.hpp"

namespace relsim {

namespace {

// Welford's online variance; returns the population standard deviation.
class RunningStddev {
 public:
  void add(double x) {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }

  double value() const {
    if (count_ < 2) return 0.0;
    return std::sqrt(m2_ / static_cast<double>(count_));
  }

  double mean() const { return count_ == 0 ? 0.0 : mean_; }

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace

NormalizationContext make_normalization_context(
    std::span<const MetricWindow> windows) {
  if (windows.empty())
    throw std::invalid_argument("normalization context requires >= 1 version");
  NormalizationContext ctx;
  ctx.restarts.min_value = std::numeric_limits<double>::infinity();
  ctx.restarts.max_value = -std::numeric_limits<double>::infinity();
  ctx.response_time_stddev = ctx.restarts;
  ctx.memory_stddev = ctx.restarts;
  for (const MetricWindow& w : windows) {
    const double restarts = static_cast<double>(w.restart_count);
    ctx.restarts.min_value = std::min(ctx.restarts.min_value, restarts);
    ctx.restarts.max_value = std::max(ctx.restarts.max_value, restarts);
    ctx.response_time_stddev.min_value =
        std::min(ctx.response_time_stddev.min_value, w.response_time_stddev_ms);
    ctx.response_time_stddev.max_value =
        std::max(ctx.response_time_stddev.max_value, w.response_time_stddev_ms);
    ctx.memory_stddev.min_value =
        std::min(ctx.memory_stddev.min_value, w.memory_stddev_mb);
    ctx.memory_stddev.max_value =
        std::max(ctx.memory_stddev.max_value, w.memory_stddev_mb);
  }
  return ctx;
}

MetricWindow aggregate_window(std::span<const MetricSample> samples,
                              SimTime start, SimTime end,
                              const VersionId& version) {
  if (end <= start)
    throw EmptyWindowDuration("metric window must have positive duration");

  MetricWindow window;
  window.version = version;
  window.window_start = start;
  window.window_end = end;

  RunningStddev response_time;
  RunningStddev memory;
  for (const MetricSample& s : samples) {
    assert(s.timestamp >= start && s.timestamp < end);
    if (s.restart_event) ++window.restart_count;
    response_time.add(s.response_time_ms);
    memory.add(s.memory_mb);
  }
  window.response_time_stddev_ms = response_time.value();
  window.memory_stddev_mb = memory.value();
  window.response_time_mean_ms = response_time.mean();
  return window;
}

std::vector<double> normalize_metric(std::span<const double> values) {
  if (values.empty())
    throw std::invalid_argument("normalize_metric requires >= 1 version");
  MetricRange range{values[0], values[0]};
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("metric values must be finite and >= 0");
    range.min_value = std::min(range.min_value, v);
    range.max_value = std::max(range.max_value, v);
  }
  std::vector<double> utilities;
  utilities.reserve(values.size());
  for (double v : values) utilities.push_back(range.utility(v));
  return utilities;
}

}  // namespace relsim
