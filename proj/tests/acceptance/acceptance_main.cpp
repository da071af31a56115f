// Acceptance suite: replays the two bundled experiment scenarios and the
// randomized/exhaustive property batteries, printing one pass/fail line per
// criterion. Exits non-zero if any criterion fails.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "relsim/allocation.hpp"
#include "relsim/loadbalancer.hpp"
#include "relsim/metrics.hpp"
#include "relsim/rng.hpp"
#include "relsim/runner.hpp"
#include "relsim/scenario.hpp"
#include "relsim/scoring.hpp"
#include "relsim/trace.hpp"

using namespace relsim;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& name,
               const std::function<std::string()>& body) {
  std::string failure;
  try {
    failure = body();
  } catch (const std::exception& e) {
    failure = std::string("exception: ") + e.what();
  }
  if (failure.empty()) {
    std::cout << "[PASS] criterion " << number << ": " << name << "\n";
  } else {
    std::cout << "[FAIL] criterion " << number << ": " << name << " -- "
              << failure << "\n";
    ++g_failures;
  }
}

std::filesystem::path g_scenario_dir;
std::filesystem::path g_work_dir;

struct ActionRow {
  SimTime time = 0;
  ReplicaCount total = 0;
  std::vector<ReplicaCount> replicas;
};

std::vector<ActionRow> action_rows(const TraceData& trace) {
  std::vector<ActionRow> rows;
  for (const TraceRecord& r : trace.records) {
    if (r.kind != TraceKind::Action) continue;
    ActionRow row;
    row.time = r.time_s;
    row.total = r.total_replicas.value_or(0);
    for (const TraceVersionCells& cells : r.versions)
      row.replicas.push_back(cells.replicas.value_or(0));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string plan_str(const std::vector<ReplicaCount>& counts) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < counts.size(); ++i)
    out << (i ? "," : "") << counts[i];
  out << ")";
  return out.str();
}

// ---------------------------------------------------------------------------
// Experiment traces (shared by criteria 1-5 and 10).

TraceData run_to_trace(const Scenario& scenario, const std::string& name) {
  const auto path = g_work_dir / name;
  run_scenario(scenario, path);
  return read_trace(path);
}

std::string criterion1_baseline() {
  Scenario scenario = load_scenario(g_scenario_dir / "experiment1.json");
  scenario.chaos.clear();
  scenario.duration_s = 1800;
  const TraceData trace = run_to_trace(scenario, "acc_exp1_nochaos.csv");
  const auto rows = action_rows(trace);
  if (rows.size() != 10)
    return "expected 10 action ticks over 30 min, saw " +
           std::to_string(rows.size());
  for (const ActionRow& row : rows) {
    if (row.replicas != std::vector<ReplicaCount>{5, 5, 5})
      return "plan " + plan_str(row.replicas) + " at t=" +
             std::to_string(row.time) + ", expected (5,5,5)";
  }
  return "";
}

// Shared full experiment-1 trace.
std::optional<TraceData> g_exp1_trace;

const TraceData& exp1_trace() {
  if (!g_exp1_trace) {
    const Scenario scenario =
        load_scenario(g_scenario_dir / "experiment1.json");
    g_exp1_trace = run_to_trace(scenario, "acc_exp1.csv");
  }
  return *g_exp1_trace;
}

std::string criterion2_pod_chaos() {
  // Pod chaos on the faulty version runs over (1800, 3240].
  const auto rows = action_rows(exp1_trace());
  const SimTime onset = 1800, stop = 3240;

  SimTime demoted_at = -1;
  for (const ActionRow& row : rows) {
    if (row.time <= onset || row.time > stop) continue;
    if (row.replicas[0] >= 2 && row.replicas[0] <= 4) {
      demoted_at = row.time;
      break;
    }
  }
  if (demoted_at < 0) return "faulty version never demoted to 3 +/- 1";
  if (demoted_at > onset + 3 * 180)
    return "demotion at t=" + std::to_string(demoted_at) +
           ", later than 3 action ticks after onset";

  for (const ActionRow& row : rows) {
    if (row.time < demoted_at || row.time > stop) continue;
    if (!(row.replicas[0] < row.replicas[1] &&
          row.replicas[0] < row.replicas[2]))
      return "faulty not the strict minimum at t=" +
             std::to_string(row.time) + ": " + plan_str(row.replicas);
    if (row.replicas[0] < 2 || row.replicas[0] > 4)
      return "faulty left 3 +/- 1 at t=" + std::to_string(row.time);
    if (row.total != 15) return "budget drifted from 15";
  }
  return "";
}

std::string criterion3_combined_chaos() {
  // All three chaos specs run over (5880, 6960].
  const auto rows = action_rows(exp1_trace());
  const std::array<ReplicaCount, 3> target{3, 6, 6};

  std::vector<ActionRow> phase;
  for (const ActionRow& row : rows)
    if (row.time > 5880 && row.time <= 6960) phase.push_back(row);
  if (phase.size() < 3) return "fewer than 3 action ticks in the phase";

  std::size_t streak = 0;
  std::size_t best_streak = 0;
  const std::vector<ReplicaCount>* previous = nullptr;
  for (const ActionRow& row : phase) {
    bool within = true;
    for (std::size_t v = 0; v < 3; ++v) {
      const int delta = static_cast<int>(row.replicas[v]) -
                        static_cast<int>(target[v]);
      if (delta < -1 || delta > 1) within = false;
    }
    if (within && (previous == nullptr || row.replicas == *previous)) {
      ++streak;
    } else if (within) {
      streak = 1;
    } else {
      streak = 0;
    }
    best_streak = std::max(best_streak, streak);
    previous = &row.replicas;
  }
  if (best_streak < 3)
    return "no stable within-tolerance plan for 3 consecutive ticks (best "
           "streak " +
           std::to_string(best_streak) + ")";
  return "";
}

std::string criterion4_recovery() {
  // All chaos stops at 6960; 16 min + 2 action ticks = 1320 s allowance.
  const auto rows = action_rows(exp1_trace());
  const SimTime stop = 6960;
  const SimTime deadline = stop + 16 * 60 + 2 * 180;

  for (const ActionRow& row : rows) {
    if (row.time <= stop) continue;
    if (row.time > deadline) break;
    if (row.replicas == std::vector<ReplicaCount>{5, 5, 5}) return "";
  }
  return "plan did not return to (5,5,5) within 16 min +/- 2 action ticks";
}

std::string criterion5_threshold_scaling() {
  const Scenario scenario = load_scenario(g_scenario_dir / "experiment2.json");
  const TraceData trace = run_to_trace(scenario, "acc_exp2.csv");

  std::map<SimTime, double> monitor_cpu;
  for (const TraceRecord& r : trace.records)
    if (r.kind == TraceKind::Monitor && r.cpu_pct)
      monitor_cpu[r.time_s] = *r.cpu_pct;

  const auto rows = action_rows(trace);
  if (rows.empty()) return "no action records";

  ReplicaCount minimum = rows[0].total, maximum = rows[0].total;
  ReplicaCount previous = scenario.config.total_replicas;
  for (const ActionRow& row : rows) {
    minimum = std::min(minimum, row.total);
    maximum = std::max(maximum, row.total);
    if (row.total < 3 || row.total > 24)
      return "total " + std::to_string(row.total) + " left [3,24] at t=" +
             std::to_string(row.time);
    const int step = static_cast<int>(row.total) - static_cast<int>(previous);
    if (step < -1 || step > 1)
      return "total jumped by " + std::to_string(step) + " at t=" +
             std::to_string(row.time);

    bool all_high = true, all_low = true;
    for (SimTime m = row.time - 90; m <= row.time; m += 30) {
      auto it = monitor_cpu.find(m);
      if (it == monitor_cpu.end())
        return "missing monitor record at t=" + std::to_string(m);
      all_high = all_high && it->second > 60.0;
      all_low = all_low && it->second < 20.0;
    }
    if (all_high) {
      const ReplicaCount expected = std::min<ReplicaCount>(previous + 1, 24);
      if (row.total != expected)
        return "sustained cpu>60 at t=" + std::to_string(row.time) +
               " but total " + std::to_string(row.total) + " != " +
               std::to_string(expected);
    }
    if (all_low) {
      const ReplicaCount expected =
          previous <= 3 ? 3 : static_cast<ReplicaCount>(previous - 1);
      if (row.total != expected)
        return "sustained cpu<20 at t=" + std::to_string(row.time) +
               " but total " + std::to_string(row.total) + " != " +
               std::to_string(expected);
    }
    previous = row.total;
  }
  if (minimum != 3) return "scale-in never reached the floor of 3";
  if (maximum != 24) return "scale-out never reached the cap of 24";
  return "";
}

// ---------------------------------------------------------------------------
// Property batteries.

std::string criterion6_diversity_floor() {
  SplitMix64 rng(0xacce9701);
  for (int round = 0; round < 1000; ++round) {
    const std::size_t n = rng.next_between(3, 8);
    const auto total = static_cast<ReplicaCount>(rng.next_between(n, 50));
    std::vector<double> scores;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      scores.push_back(rng.next_range(0.0, 1.0));
      sum += scores.back();
    }
    if (sum == 0.0) scores[0] = 1.0;
    const ReplicaPlan plan = adjust_replica_distribution(scores, total);
    if (plan.total() != total)
      return "budget violated in round " + std::to_string(round);
    for (ReplicaCount c : plan.counts)
      if (c < 1) return "floor violated in round " + std::to_string(round);
  }
  return "";
}

// Brute-force oracle: enumerate every count vector >= 1 summing to the
// budget, keep the minimal total deviation from the proportional shares and
// break ties with the fractional-order rule (direction-dependent priority).
std::vector<std::vector<ReplicaCount>> compositions(std::size_t n,
                                                    ReplicaCount total) {
  std::vector<std::vector<ReplicaCount>> out;
  std::vector<ReplicaCount> current(n, 1);
  std::function<void(std::size_t, ReplicaCount)> recurse =
      [&](std::size_t index, ReplicaCount remaining) {
        if (index + 1 == n) {
          current[index] = remaining;
          out.push_back(current);
          return;
        }
        const auto slots = static_cast<ReplicaCount>(n - index - 1);
        for (ReplicaCount c = 1; c + slots <= remaining; ++c) {
          current[index] = c;
          recurse(index + 1, remaining - c);
        }
      };
  recurse(0, total);
  return out;
}

std::vector<ReplicaCount> oracle_allocate(const std::vector<double>& scores,
                                          ReplicaCount total,
                                          const std::vector<std::vector<ReplicaCount>>& candidates) {
  const std::size_t n = scores.size();
  double sum = 0.0;
  for (double s : scores) sum += s;
  std::vector<double> shares(n), fractional(n);
  std::vector<bool> floor_raised(n, false);
  std::int64_t floored_total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    shares[i] = static_cast<double>(total) * scores[i] / sum;
    const double base = std::floor(shares[i]);
    fractional[i] = shares[i] - base;
    floor_raised[i] = base < 1.0;
    floored_total += static_cast<std::int64_t>(std::max(base, 1.0));
  }

  double best_dev = 0.0;
  std::vector<const std::vector<ReplicaCount>*> minimizers;
  for (const auto& candidate : candidates) {
    double dev = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      dev += std::fabs(static_cast<double>(candidate[i]) - shares[i]);
    if (minimizers.empty() || dev < best_dev - 1e-9) {
      best_dev = dev;
      minimizers.clear();
      minimizers.push_back(&candidate);
    } else if (dev <= best_dev + 1e-9) {
      minimizers.push_back(&candidate);
    }
  }

  // Priority order among tied minimizers: extra replicas land on the
  // largest fractional parts first (deficit; floor-lifted versions rank
  // last, they are already above their share); reclaimed replicas come
  // from the smallest fractional parts first (surplus). Index ascending
  // on ties.
  const bool surplus = floored_total > static_cast<std::int64_t>(total);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (!surplus && floor_raised[a] != floor_raised[b])
      return floor_raised[b];
    if (fractional[a] != fractional[b])
      return surplus ? fractional[a] < fractional[b]
                     : fractional[a] > fractional[b];
    return a < b;
  });

  const std::vector<ReplicaCount>* best = minimizers.front();
  for (const auto* candidate : minimizers) {
    for (std::size_t idx : order) {
      if ((*candidate)[idx] == (*best)[idx]) continue;
      const bool candidate_wins = surplus
                                      ? (*candidate)[idx] < (*best)[idx]
                                      : (*candidate)[idx] > (*best)[idx];
      if (candidate_wins) best = candidate;
      break;
    }
  }
  return *best;
}

std::string criterion7_apportionment_oracle() {
  // Exhaustive: 1..4 versions, budgets up to 12, scores on a 0.05 grid.
  std::uint64_t checked = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<int> grid(n, 0);
    for (ReplicaCount total = static_cast<ReplicaCount>(n); total <= 12;
         ++total) {
      const auto candidates = compositions(n, total);
      std::fill(grid.begin(), grid.end(), 0);
      while (true) {
        int level_sum = 0;
        for (int g : grid) level_sum += g;
        if (level_sum > 0) {
          std::vector<double> scores;
          scores.reserve(n);
          for (int g : grid) scores.push_back(0.05 * g);
          const ReplicaPlan plan = adjust_replica_distribution(scores, total);
          const auto expected = oracle_allocate(scores, total, candidates);
          ++checked;
          if (plan.counts != expected) {
            std::ostringstream out;
            out << "mismatch for scores (";
            for (std::size_t i = 0; i < n; ++i)
              out << (i ? "," : "") << scores[i];
            out << ") total " << total << ": got " << plan_str(plan.counts)
                << ", oracle " << plan_str(expected);
            return out.str();
          }
        }
        // Advance the odometer.
        std::size_t digit = 0;
        while (digit < n && ++grid[digit] > 20) grid[digit++] = 0;
        if (digit == n) break;
      }
    }
  }
  if (checked < 1000000) return "exhaustive sweep unexpectedly small";
  return "";
}

std::string criterion8_normalization_and_scores() {
  SplitMix64 rng(0xacce9702);
  const ReliabilityWeights weights = default_weights();
  for (int round = 0; round < 1000; ++round) {
    const std::size_t n = rng.next_between(2, 6);
    std::vector<double> restarts, rt_stddev, mem_stddev;
    for (std::size_t i = 0; i < n; ++i) {
      restarts.push_back(static_cast<double>(rng.next_between(0, 12)));
      rt_stddev.push_back(rng.next_range(0.0, 900.0));
      mem_stddev.push_back(rng.next_range(0.0, 60.0));
    }

    const auto u_restarts = normalize_metric(restarts);
    const auto u_rt = normalize_metric(rt_stddev);
    const auto u_mem = normalize_metric(mem_stddev);
    std::vector<double> scores;
    for (std::size_t i = 0; i < n; ++i) {
      for (double u : {u_restarts[i], u_rt[i], u_mem[i]})
        if (u < 0.0 || u > 1.0)
          return "utility out of [0,1] in round " + std::to_string(round);
      scores.push_back(
          reliability_score(u_rt[i], u_restarts[i], u_mem[i], weights));
      if (scores.back() < 0.0 || scores.back() > 1.0)
        return "score out of [0,1] in round " + std::to_string(round);
    }

    // Monotonicity in each utility.
    const double u = rng.next_range(0.0, 0.99);
    const double bump = rng.next_range(1e-4, 0.01);
    const double base = reliability_score(u, u, u, weights);
    if (!(reliability_score(u + bump, u, u, weights) > base) ||
        !(reliability_score(u, u + bump, u, weights) > base) ||
        !(reliability_score(u, u, u + bump, weights) > base))
      return "score not monotone in round " + std::to_string(round);

    // Affine rescaling of raw metrics leaves the plan unchanged.
    const auto total =
        static_cast<ReplicaCount>(rng.next_between(n, 30));
    const ReplicaPlan plan = adjust_replica_distribution(scores, total);

    const double scale = rng.next_range(0.2, 9.0);
    const double offset = rng.next_range(0.0, 200.0);
    auto rescale = [&](std::vector<double> values) {
      for (double& v : values) v = scale * v + offset;
      return values;
    };
    const auto r_restarts = normalize_metric(rescale(restarts));
    const auto r_rt = normalize_metric(rescale(rt_stddev));
    const auto r_mem = normalize_metric(rescale(mem_stddev));
    std::vector<double> rescaled_scores;
    for (std::size_t i = 0; i < n; ++i)
      rescaled_scores.push_back(
          reliability_score(r_rt[i], r_restarts[i], r_mem[i], weights));
    if (adjust_replica_distribution(rescaled_scores, total) != plan)
      return "plan changed under affine rescaling in round " +
             std::to_string(round);
  }
  return "";
}

std::string criterion9_wrr_fairness() {
  SplitMix64 rng(0xacce9703);
  for (int round = 0; round < 400; ++round) {
    const std::size_t n = rng.next_between(1, 6);
    WeightTable table;
    std::int64_t weight_sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      table.weights.push_back(static_cast<int>(rng.next_between(1, 100)));
      weight_sum += table.weights.back();
    }
    SmoothWrr router(table);
    std::vector<std::int64_t> counts(n, 0);
    std::size_t previous = n;
    for (std::int64_t r = 0; r < weight_sum; ++r) {
      const std::size_t pick = router.next_version();
      ++counts[pick];
      if (pick == previous &&
          !(table.weights[pick] > weight_sum - table.weights[pick]))
        return "burst without a dominant weight in round " +
               std::to_string(round);
      previous = pick;
    }
    for (std::size_t i = 0; i < n; ++i)
      if (counts[i] != table.weights[i])
        return "cycle counts != weights in round " + std::to_string(round);
  }
  return "";
}

std::string criterion10_determinism() {
  for (const char* name : {"experiment1.json", "experiment2.json"}) {
    const Scenario scenario = load_scenario(g_scenario_dir / name);
    const auto path_a = g_work_dir / (std::string("acc_det_a_") + name + ".csv");
    const auto path_b = g_work_dir / (std::string("acc_det_b_") + name + ".csv");
    const std::string summary_a = run_scenario(scenario, path_a);
    const std::string summary_b = run_scenario(scenario, path_b);

    std::ifstream a(path_a, std::ios::binary), b(path_b, std::ios::binary);
    std::ostringstream text_a, text_b;
    text_a << a.rdbuf();
    text_b << b.rdbuf();
    if (text_a.str() != text_b.str())
      return std::string("trace bytes differ for ") + name;
    if (summary_a != summary_b)
      return std::string("summaries differ for ") + name;
  }
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance_tests <scenario-dir> [work-dir]\n";
    return 2;
  }
  g_scenario_dir = argv[1];
  g_work_dir = argc > 2 ? std::filesystem::path(argv[2])
                        : std::filesystem::temp_directory_path();
  std::filesystem::create_directories(g_work_dir);

  criterion(1, "baseline equilibrium stays (5,5,5)", criterion1_baseline);
  criterion(2, "pod chaos demotes the faulty version", criterion2_pod_chaos);
  criterion(3, "combined chaos settles near (3,6,6)",
            criterion3_combined_chaos);
  criterion(4, "plan recovers after chaos stops", criterion4_recovery);
  criterion(5, "threshold scaling honours bounds and steps",
            criterion5_threshold_scaling);
  criterion(6, "diversity floor and exact budget", criterion6_diversity_floor);
  criterion(7, "allocation matches the brute-force apportionment oracle",
            criterion7_apportionment_oracle);
  criterion(8, "normalization and score bounds, monotonicity, rescaling",
            criterion8_normalization_and_scores);
  criterion(9, "smooth WRR fairness and smoothness", criterion9_wrr_fairness);
  criterion(10, "bundled scenarios replay byte-identically",
            criterion10_determinism);

  if (g_failures > 0) {
    std::cout << g_failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all acceptance criteria passed\n";
  return 0;
}
