#include "relsim/scoring.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "relsim/errors.hpp"
#include "relsim/metrics.hpp"

namespace relsim {

namespace {

void check_utility(const char* name, double u) {
  if (!(u >= 0.0 && u <= 1.0)) {
    std::ostringstream msg;
    msg << name << " must lie in [0,1], got " << u;
    throw InvalidUtility(msg.str());
  }
}

}  // namespace

double reliability_score(double u_response_time, double u_restarts,
                         double u_memory, const ReliabilityWeights& weights) {
  check_utility("u_response_time", u_response_time);
  check_utility("u_restarts", u_restarts);
  check_utility("u_memory", u_memory);
  validate_weights(weights);
  const double score = weights.response_time_weight * u_response_time +
                       weights.restart_weight * u_restarts +
                       weights.memory_weight * u_memory;
  // Weight sums are validated to 1 within 1e-9, so the raw sum can poke a
  // hair outside [0,1].
  return std::clamp(score, 0.0, 1.0);
}

std::vector<double> score_all(std::span<const MetricWindow> windows,
                              const ReliabilityWeights& weights) {
  if (windows.empty())
    throw std::invalid_argument("score_all requires >= 1 version");
  for (const MetricWindow& w : windows) {
    if (w.window_start != windows[0].window_start ||
        w.window_end != windows[0].window_end)
      throw std::invalid_argument(
          "score_all requires all windows to cover the same interval");
  }

  const NormalizationContext ctx = make_normalization_context(windows);
  std::vector<double> scores;
  scores.reserve(windows.size());
  for (const MetricWindow& w : windows) {
    const double u_rt =
        ctx.response_time_stddev.utility(w.response_time_stddev_ms);
    const double u_restarts =
        ctx.restarts.utility(static_cast<double>(w.restart_count));
    const double u_mem = ctx.memory_stddev.utility(w.memory_stddev_mb);
    scores.push_back(reliability_score(u_rt, u_restarts, u_mem, weights));
  }
  return scores;
}

}  // namespace relsim
