#include "relsim/loadbalancer.hpp"

#include <vector>

#include "doctest.h"
#include "relsim/rng.hpp"

using namespace relsim;

TEST_CASE("derive_weights maps scores to percent weights") {
  const auto uniform = derive_weights(std::vector<double>{1.0, 1.0, 1.0});
  CHECK(uniform.weights == std::vector<int>{100, 100, 100});

  const auto mixed = derive_weights(std::vector<double>{0.5, 1.0, 1.0});
  CHECK(mixed.weights == std::vector<int>{50, 100, 100});

  // A dead score still gets the floor weight of 1.
  const auto floored = derive_weights(std::vector<double>{0.0});
  CHECK(floored.weights == std::vector<int>{1});
}

TEST_CASE("smooth WRR interleaves a 2:1:1 table") {
  SmoothWrr router(WeightTable{{2, 1, 1}, 0});
  std::vector<std::size_t> picks;
  for (int i = 0; i < 4; ++i) picks.push_back(router.next_version());
  CHECK(picks == std::vector<std::size_t>{0, 1, 2, 0});
}

TEST_CASE("equal weights rotate strictly") {
  SmoothWrr router(WeightTable{{1, 1, 1}, 0});
  for (int cycle = 0; cycle < 5; ++cycle) {
    CHECK(router.next_version() == 0);
    CHECK(router.next_version() == 1);
    CHECK(router.next_version() == 2);
  }
}

TEST_CASE("a single version receives every request") {
  SmoothWrr router(WeightTable{{7}, 0});
  for (int i = 0; i < 10; ++i) CHECK(router.next_version() == 0);
}

TEST_CASE("reconfigure derives new weights, resets state, bumps generation") {
  SmoothWrr router(derive_weights(std::vector<double>{1.0, 1.0}));
  CHECK(router.table().generation == 0);
  (void)router.next_version();

  router.reconfigure(std::vector<double>{1.0, 0.5});
  CHECK(router.table().generation == 1);
  CHECK(router.table().weights == std::vector<int>{100, 50});
  // Reset state: first pick goes to the heaviest version again.
  CHECK(router.next_version() == 0);

  router.reconfigure(std::vector<double>{1.0, 0.5});
  CHECK(router.table().generation == 2);
  CHECK(router.table().weights == std::vector<int>{100, 50});
}

TEST_CASE("a bunching current-value cycle is repaired") {
  // The raw current-value recurrence yields a,b,c,a,a,... for (7,4,4): the
  // all-tied state resolves back into the previous pick. The repaired cycle
  // keeps exact counts without the repeat.
  SmoothWrr router(WeightTable{{7, 4, 4}, 0});
  const auto cycle = router.cycle();
  REQUIRE(cycle.size() == 15);
  std::vector<int> counts(3, 0);
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    ++counts[cycle[i]];
    if (i > 0) CHECK(cycle[i] != cycle[i - 1]);
  }
  CHECK(counts == std::vector<int>{7, 4, 4});
}

TEST_CASE("a dominant weight repeats, minorities never do") {
  SmoothWrr router(WeightTable{{8, 1, 2}, 0});
  const auto cycle = router.cycle();
  REQUIRE(cycle.size() == 11);
  for (std::size_t i = 1; i < cycle.size(); ++i) {
    if (cycle[i] == cycle[i - 1]) CHECK(cycle[i] == 0);
  }
}

TEST_CASE("cycle fairness and smoothness over random tables") {
  SplitMix64 rng(0x5eed0005);
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = rng.next_between(1, 6);
    WeightTable table;
    std::int64_t weight_sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      table.weights.push_back(static_cast<int>(rng.next_between(1, 100)));
      weight_sum += table.weights.back();
    }

    SmoothWrr router(table);
    std::vector<std::int64_t> counts(n, 0);
    std::vector<std::int64_t> second_cycle_counts(n, 0);
    std::size_t previous = n;
    for (std::int64_t r = 0; r < 2 * weight_sum; ++r) {
      const std::size_t pick = router.next_version();
      if (r < weight_sum) {
        ++counts[pick];
        // Within a cycle only a dominant weight may repeat back-to-back.
        if (r > 0 && pick == previous)
          CHECK(table.weights[pick] > weight_sum - table.weights[pick]);
        previous = pick;
      } else {
        ++second_cycle_counts[pick];
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(counts[i] == table.weights[i]);
      CHECK(second_cycle_counts[i] == table.weights[i]);
    }
  }
}
