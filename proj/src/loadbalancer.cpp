#include "relsim/loadbalancer.hpp"

#include <cmath>
#include <stdexcept>

namespace relsim {

namespace {

// The classic current-value recurrence. Exact per-cycle counts, but with
// near-half weights it can bunch a non-dominant version (ties resolve back
// into the previous pick), e.g. (7,4,4) yields a,b,c,a,a,...
std::vector<std::size_t> current_value_cycle(const std::vector<int>& weights,
                                             std::int64_t weight_total) {
  const std::size_t n = weights.size();
  std::vector<std::int64_t> current(n, 0);
  std::vector<std::size_t> cycle;
  cycle.reserve(static_cast<std::size_t>(weight_total));
  for (std::int64_t r = 0; r < weight_total; ++r) {
    std::size_t selected = 0;
    for (std::size_t i = 0; i < n; ++i) {
      current[i] += weights[i];
      if (current[i] > current[selected]) selected = i;
    }
    current[selected] -= weight_total;
    cycle.push_back(selected);
  }
  return cycle;
}

// Largest-remaining-quota scheduling, never picking the previous version
// unless it is the only one left. Produces a repeat-free arrangement
// whenever one exists (max weight <= sum of the others); with a dominant
// weight only the dominant version repeats.
std::vector<std::size_t> largest_remaining_cycle(
    const std::vector<int>& weights, std::int64_t weight_total) {
  const std::size_t n = weights.size();
  std::vector<int> remaining = weights;
  std::vector<std::size_t> cycle;
  cycle.reserve(static_cast<std::size_t>(weight_total));
  std::size_t previous = n;
  for (std::int64_t r = 0; r < weight_total; ++r) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == previous || remaining[i] == 0) continue;
      if (best == n || remaining[i] > remaining[best]) best = i;
    }
    if (best == n) best = previous;  // only the previous version is left
    cycle.push_back(best);
    --remaining[best];
    previous = best;
  }
  return cycle;
}

bool violates_smoothness(const std::vector<std::size_t>& cycle,
                         const std::vector<int>& weights,
                         std::int64_t weight_total) {
  for (std::size_t i = 1; i < cycle.size(); ++i) {
    if (cycle[i] != cycle[i - 1]) continue;
    const int w = weights[cycle[i]];
    if (!(w > weight_total - w)) return true;
  }
  return false;
}

}  // namespace

WeightTable derive_weights(std::span<const double> scores) {
  if (scores.empty())
    throw std::invalid_argument("derive_weights requires >= 1 version");
  WeightTable table;
  table.weights.reserve(scores.size());
  for (double score : scores) {
    const long w = std::lround(100.0 * score);
    table.weights.push_back(static_cast<int>(std::max(1L, w)));
  }
  return table;
}

SmoothWrr::SmoothWrr(WeightTable table) : table_(std::move(table)) {
  if (table_.weights.empty())
    throw std::invalid_argument("weight table must not be empty");
  for (int w : table_.weights)
    if (w < 1) throw std::invalid_argument("weights must be >= 1");
  rebuild_schedule();
}

void SmoothWrr::rebuild_schedule() {
  cursor_ = 0;
  std::int64_t weight_total = 0;
  for (int w : table_.weights) weight_total += w;
  schedule_ = current_value_cycle(table_.weights, weight_total);
  if (violates_smoothness(schedule_, table_.weights, weight_total))
    schedule_ = largest_remaining_cycle(table_.weights, weight_total);
}

std::size_t SmoothWrr::next_version() {
  const std::size_t pick = schedule_[cursor_];
  cursor_ = (cursor_ + 1) % schedule_.size();
  return pick;
}

void SmoothWrr::reconfigure(std::span<const double> scores) {
  const std::uint64_t generation = table_.generation + 1;
  table_ = derive_weights(scores);
  table_.generation = generation;
  rebuild_schedule();
}

}  // namespace relsim
