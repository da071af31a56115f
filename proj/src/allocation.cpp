#include "relsim/allocation.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "relsim/errors.hpp"

namespace relsim {

ReplicaPlan adjust_replica_distribution(std::span<const double> scores,
                                        ReplicaCount total) {
  const std::size_t n = scores.size();
  if (n == 0) throw std::invalid_argument("no versions to allocate");
  if (total < n)
    throw InfeasibleBudget(
        "replica budget is smaller than the number of versions");

  double score_sum = 0.0;
  for (double s : scores) {
    if (!(s >= 0.0)) throw std::invalid_argument("scores must be >= 0");
    score_sum += s;
  }
  if (score_sum <= 0.0)
    throw AllScoresZero("proportional shares undefined when all scores are 0");

  std::vector<ReplicaCount> counts(n);
  std::vector<double> fractional(n);
  std::vector<bool> floor_raised(n, false);
  std::int64_t allocated = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double proportional =
        static_cast<double>(total) * scores[i] / score_sum;
    double base = std::floor(proportional);
    fractional[i] = proportional - base;
    if (base < 1.0) {
      base = 1.0;
      floor_raised[i] = true;
    }
    counts[i] = static_cast<ReplicaCount>(base);
    allocated += counts[i];
  }

  std::int64_t difference = allocated - static_cast<std::int64_t>(total);
  if (difference < 0) {
    // Deficit: hand the missing replicas to the largest fractional parts.
    // Versions lifted by the min-one floor already sit above their share
    // and do not compete. One pass always suffices.
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < n; ++i)
      if (!floor_raised[i]) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (fractional[a] != fractional[b]) return fractional[a] > fractional[b];
      return a < b;
    });
    assert(-difference <= static_cast<std::int64_t>(order.size()));
    for (std::size_t k = 0; difference < 0; ++k) {
      ++counts[order[k]];
      ++difference;
    }
  } else if (difference > 0) {
    // Surplus caused by the min-one floor: reclaim from the smallest
    // fractional parts, skipping versions already at 1, cycling until the
    // budget is restored.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (fractional[a] != fractional[b]) return fractional[a] < fractional[b];
      return a < b;
    });
    while (difference > 0) {
      bool changed = false;
      for (std::size_t idx : order) {
        if (counts[idx] > 1) {
          --counts[idx];
          changed = true;
          if (--difference == 0) break;
        }
      }
      // total >= n guarantees some version stays above the floor until
      // the surplus is gone.
      assert(changed);
      if (!changed) break;
    }
  }

  return ReplicaPlan{std::move(counts)};
}

DiversityFactor diversity_factor(const ReplicaPlan& plan) {
  const std::size_t n = plan.counts.size();
  if (n == 0) throw std::invalid_argument("diversity factor of an empty plan");

  double mean = 0.0;
  for (ReplicaCount c : plan.counts) mean += static_cast<double>(c);
  mean /= static_cast<double>(n);

  double sum_sq = 0.0;
  for (ReplicaCount c : plan.counts) {
    const double dev = static_cast<double>(c) - mean;
    sum_sq += dev * dev;
  }
  const double sigma = std::sqrt(sum_sq / static_cast<double>(n));
  if (sigma == 0.0) return DiversityFactor::uniform();
  return DiversityFactor::of(1.0 / sigma);
}

}  // namespace relsim
