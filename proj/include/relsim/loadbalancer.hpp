#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "relsim/types.hpp"

namespace relsim {

/// Per-version routing weights, index-aligned with the version roster.
/// The generation counter increments on every reconfiguration.
struct WeightTable {
  std::vector<int> weights;
  std::uint64_t generation = 0;

  bool operator==(const WeightTable&) const = default;
};

/// weight_v = max(1, round(100 * score_v)). Every live version keeps a
/// weight of at least 1 so it always receives some traffic.
WeightTable derive_weights(std::span<const double> scores);

/// Smooth weighted round-robin over versions. One scheduling cycle spans
/// sum(weights) selections in which each version appears exactly weight_v
/// times, interleaved without bursts: a version is never selected twice in
/// a row within a cycle unless its weight exceeds the combined weight of
/// everyone else.
///
/// The cycle is generated by the current-value recurrence (add every weight
/// to its running value, take the maximum with ties to the lowest index,
/// subtract the weight total from the winner). For a small minority of
/// tables that recurrence bunches a non-dominant version; those cycles are
/// rebuilt by a largest-remaining-quota pass that provably avoids repeats
/// whenever the weights make that possible.
class SmoothWrr {
 public:
  explicit SmoothWrr(WeightTable table);

  /// Selects the version index for the next request.
  std::size_t next_version();

  /// Installs weights derived from the given scores, restarts the cycle
  /// and bumps the generation counter.
  void reconfigure(std::span<const double> scores);

  const WeightTable& table() const { return table_; }

  /// One full scheduling cycle (sum of weights selections).
  std::span<const std::size_t> cycle() const { return schedule_; }

 private:
  WeightTable table_;
  std::vector<std::size_t> schedule_;
  std::size_t cursor_ = 0;

  void rebuild_schedule();
};

}  // namespace relsim
