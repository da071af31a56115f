#include "relsim/trace.hpp"

#include <cstdio>
#include <sstream>

#include "relsim/errors.hpp"

namespace relsim {

namespace {

constexpr const char* kMagic = "#relsim-trace-v1";

const char* kVersionColumns[] = {"score",      "replicas",     "restarts_window",
                                 "rt_mean_ms", "rt_stddev_ms", "mem_stddev_mb",
                                 "lb_weight"};
constexpr std::size_t kVersionColumnCount = 7;

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

TraceKind parse_kind(const std::string& text) {
  if (text == "monitor") return TraceKind::Monitor;
  if (text == "action") return TraceKind::Action;
  if (text == "reconfig") return TraceKind::Reconfig;
  if (text == "chaos") return TraceKind::Chaos;
  throw MalformedTrace("unknown record kind '" + text + "'");
}

template <typename T>
std::optional<T> parse_cell(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::istringstream in(text);
  T value;
  in >> value;
  if (in.fail()) throw MalformedTrace("bad cell '" + text + "'");
  return value;
}

}  // namespace

const char* to_string(TraceKind kind) {
  switch (kind) {
    case TraceKind::Monitor:
      return "monitor";
    case TraceKind::Action:
      return "action";
    case TraceKind::Reconfig:
      return "reconfig";
    case TraceKind::Chaos:
      return "chaos";
  }
  return "monitor";
}

std::string format_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

TraceWriter::TraceWriter(const std::filesystem::path& path,
                         std::span<const VersionId> roster)
    : out_(path), version_count_(roster.size()) {
  if (!out_) throw Error("cannot open trace file for writing: " + path.string());
  out_ << kMagic << "\n";
  out_ << "time_s,kind,cpu_pct,decision,total_replicas";
  for (const VersionId& v : roster)
    for (const char* column : kVersionColumns)
      out_ << "," << v.name << "." << column;
  out_ << ",df\n";
  out_.flush();
}

void TraceWriter::monitor(SimTime t, double cpu_pct, ScaleAction vote) {
  out_ << t << ",monitor," << format_number(cpu_pct) << ","
       << to_string(vote) << ",";
  for (std::size_t i = 0; i < version_count_ * kVersionColumnCount; ++i)
    out_ << ",";
  out_ << ",\n";
  out_.flush();
}

void TraceWriter::action(SimTime t, double cpu_pct, const ActionResult& result,
                         const WeightTable& weights) {
  out_ << t << ",action," << format_number(cpu_pct) << ","
       << to_string(result.decision) << "," << result.total_replicas;
  for (std::size_t i = 0; i < version_count_; ++i) {
    const MetricWindow& w = result.windows[i];
    out_ << "," << format_number(result.scores[i]) << ","
         << result.plan.counts[i] << "," << w.restart_count << ","
         << format_number(w.response_time_mean_ms) << ","
         << format_number(w.response_time_stddev_ms) << ","
         << format_number(w.memory_stddev_mb) << "," << weights.weights[i];
  }
  out_ << ",";
  if (result.df.is_uniform())
    out_ << "uniform";
  else
    out_ << format_number(result.df.value());
  out_ << "\n";
  out_.flush();
}

void TraceWriter::reconfig(SimTime t, const WeightTable& weights) {
  out_ << t << ",reconfig,,gen=" << weights.generation << ",";
  for (std::size_t i = 0; i < version_count_; ++i)
    out_ << ",,,,,,," << weights.weights[i];
  out_ << ",\n";
  out_.flush();
}

void TraceWriter::chaos(SimTime t, const std::string& label) {
  out_ << t << ",chaos,," << label << ",";
  for (std::size_t i = 0; i < version_count_ * kVersionColumnCount; ++i)
    out_ << ",";
  out_ << ",\n";
  out_.flush();
}

TraceData read_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MalformedTrace("cannot open trace file: " + path.string());

  std::string line;
  if (!std::getline(in, line) || line != kMagic)
    throw MalformedTrace("missing trace header magic");
  if (!std::getline(in, line))
    throw MalformedTrace("missing trace column header");

  TraceData data;
  const std::vector<std::string> header = split_csv(line);
  if (header.size() < 6 || header.front() != "time_s" || header.back() != "df")
    throw MalformedTrace("unexpected trace column header");
  const std::size_t version_cells = header.size() - 6;
  if (version_cells % kVersionColumnCount != 0)
    throw MalformedTrace("unexpected trace column header");
  const std::size_t version_count = version_cells / kVersionColumnCount;
  for (std::size_t v = 0; v < version_count; ++v) {
    const std::string& column = header[5 + v * kVersionColumnCount];
    const std::size_t dot = column.rfind('.');
    if (dot == std::string::npos)
      throw MalformedTrace("unexpected per-version column '" + column + "'");
    data.version_names.push_back(column.substr(0, dot));
  }

  SimTime previous_time = -1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_csv(line);
    if (cells.size() != header.size())
      throw MalformedTrace("row has " + std::to_string(cells.size()) +
                           " cells, expected " +
                           std::to_string(header.size()));
    TraceRecord record;
    const auto time = parse_cell<SimTime>(cells[0]);
    if (!time) throw MalformedTrace("row without timestamp");
    record.time_s = *time;
    if (record.time_s < previous_time)
      throw MalformedTrace("records are not time-ordered");
    previous_time = record.time_s;
    record.kind = parse_kind(cells[1]);
    record.cpu_pct = parse_cell<double>(cells[2]);
    record.decision = cells[3];
    record.total_replicas = parse_cell<ReplicaCount>(cells[4]);
    for (std::size_t v = 0; v < version_count; ++v) {
      const std::size_t base = 5 + v * kVersionColumnCount;
      TraceVersionCells vc;
      vc.score = parse_cell<double>(cells[base]);
      vc.replicas = parse_cell<ReplicaCount>(cells[base + 1]);
      vc.restarts_window = parse_cell<std::uint32_t>(cells[base + 2]);
      vc.rt_mean_ms = parse_cell<double>(cells[base + 3]);
      vc.rt_stddev_ms = parse_cell<double>(cells[base + 4]);
      vc.mem_stddev_mb = parse_cell<double>(cells[base + 5]);
      vc.lb_weight = parse_cell<int>(cells[base + 6]);
      record.versions.push_back(vc);
    }
    if (!cells.back().empty()) record.df = cells.back();
    data.records.push_back(std::move(record));
  }
  if (data.records.empty())
    throw MalformedTrace("trace contains no records");
  return data;
}

}  // namespace relsim
