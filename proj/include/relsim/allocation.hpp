#pragma once

#include <optional>
#include <span>

#include "relsim/types.hpp"

namespace relsim {

/// Reciprocal of the population standard deviation of a replica
/// distribution. A perfectly even distribution (sigma = 0) is reported as
/// the distinguished Uniform marker instead of a number.
class DiversityFactor {
 public:
  static DiversityFactor uniform() { return DiversityFactor(std::nullopt); }
  static DiversityFactor of(double value) { return DiversityFactor(value); }

  bool is_uniform() const { return !value_.has_value(); }

  /// Only valid when !is_uniform().
  double value() const { return *value_; }

  bool operator==(const DiversityFactor&) const = default;

 private:
  explicit DiversityFactor(std::optional<double> value) : value_(value) {}

  std::optional<double> value_;
};

/// Distributes `total` replicas across versions proportionally to their
/// reliability scores:
///   1. proportional share p_v = total * score_v / sum(scores)
///   2. base count = floor(p_v), fractional part retained
///   3. zero bases are raised to 1 (every version keeps at least a replica)
///   4. any deficit against `total` is repaired by incrementing versions in
///      descending fractional-part order, skipping versions the floor in
///      step 3 already lifted above their share; any surplus by
///      decrementing versions in ascending fractional-part order while
///      their count exceeds 1, cycling until resolved. Ties in either
///      order break by ascending version index.
/// The result always sums to `total`, every count is >= 1, and a higher
/// score never receives fewer replicas than a lower one.
///
/// Throws InfeasibleBudget if total < number of versions and AllScoresZero
/// if the scores sum to 0.
ReplicaPlan adjust_replica_distribution(std::span<const double> scores,
                                        ReplicaCount total);

/// Diversity Factor of a plan: 1 / population stddev of the counts, or
/// Uniform when the stddev is 0.
DiversityFactor diversity_factor(const ReplicaPlan& plan);

}  // namespace relsim
