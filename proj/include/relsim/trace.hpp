#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relsim/allocation.hpp"
#include "relsim/autoscaler.hpp"
#include "relsim/loadbalancer.hpp"
#include "relsim/types.hpp"

namespace relsim {

enum class TraceKind { Monitor, Action, Reconfig, Chaos };

const char* to_string(TraceKind kind);

/// One parsed trace row. Per-version cells are empty (nullopt) on rows that
/// do not carry them (monitor/chaos rows).
struct TraceVersionCells {
  std::optional<double> score;
  std::optional<ReplicaCount> replicas;
  std::optional<std::uint32_t> restarts_window;
  std::optional<double> rt_mean_ms;
  std::optional<double> rt_stddev_ms;
  std::optional<double> mem_stddev_mb;
  std::optional<int> lb_weight;
};

struct TraceRecord {
  SimTime time_s = 0;
  TraceKind kind = TraceKind::Monitor;
  std::optional<double> cpu_pct;
  std::string decision;
  std::optional<ReplicaCount> total_replicas;
  std::vector<TraceVersionCells> versions;
  /// "uniform", or the numeric DF as written.
  std::optional<std::string> df;
};

struct TraceData {
  std::vector<std::string> version_names;
  std::vector<TraceRecord> records;
};

/// Streams trace records to a CSV file with a versioned header. Records at
/// the same timestamp keep emission order (monitor, action, reconfig,
/// chaos). Rows are flushed as they are written so a failed run leaves a
/// usable partial trace.
class TraceWriter {
 public:
  TraceWriter(const std::filesystem::path& path,
              std::span<const VersionId> roster);

  void monitor(SimTime t, double cpu_pct, ScaleAction vote);
  void action(SimTime t, double cpu_pct, const ActionResult& result,
              const WeightTable& weights);
  void reconfig(SimTime t, const WeightTable& weights);
  void chaos(SimTime t, const std::string& label);

 private:
  std::ofstream out_;
  std::size_t version_count_;
};

/// Reads a trace file back. Throws MalformedTrace on a missing/foreign
/// header, an empty record section or rows that do not parse.
TraceData read_trace(const std::filesystem::path& path);

/// Formats a double the way trace cells are written ("%.6g").
std::string format_number(double value);

}  // namespace relsim
