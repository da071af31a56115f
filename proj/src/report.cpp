#include "relsim/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "relsim/errors.hpp"

namespace relsim {

namespace {

double nearest_rank(const std::vector<double>& sorted, double quantile) {
  const std::size_t n = sorted.size();
  const std::size_t rank = static_cast<std::size_t>(
      std::ceil(quantile * static_cast<double>(n)));
  return sorted[std::min(n - 1, rank == 0 ? 0 : rank - 1)];
}

}  // namespace

std::string summarize_trace(const TraceData& trace) {
  std::size_t monitor_count = 0, action_count = 0, reconfig_count = 0,
              chaos_count = 0;
  const TraceRecord* last_action = nullptr;
  const TraceRecord* previous_action = nullptr;
  std::vector<std::uint64_t> restart_totals(trace.version_names.size(), 0);
  std::vector<double> rt_means;
  std::vector<double> df_values;
  std::size_t df_uniform_ticks = 0;
  std::ostringstream scaling_lines;
  std::size_t scaling_events = 0;

  for (const TraceRecord& record : trace.records) {
    switch (record.kind) {
      case TraceKind::Monitor:
        ++monitor_count;
        break;
      case TraceKind::Reconfig:
        ++reconfig_count;
        break;
      case TraceKind::Chaos:
        ++chaos_count;
        break;
      case TraceKind::Action: {
        ++action_count;
        for (std::size_t v = 0; v < record.versions.size(); ++v) {
          if (record.versions[v].restarts_window)
            restart_totals[v] += *record.versions[v].restarts_window;
          if (record.versions[v].rt_mean_ms)
            rt_means.push_back(*record.versions[v].rt_mean_ms);
        }
        if (record.df) {
          if (*record.df == "uniform")
            ++df_uniform_ticks;
          else
            df_values.push_back(std::stod(*record.df));
        }
        if (previous_action && previous_action->total_replicas &&
            record.total_replicas &&
            *record.total_replicas != *previous_action->total_replicas) {
          ++scaling_events;
          const bool up =
              *record.total_replicas > *previous_action->total_replicas;
          scaling_lines << "  scale_event:       t=" << record.time_s << " "
                        << (up ? "increase" : "decrease")
                        << " total=" << *record.total_replicas << "\n";
        }
        previous_action = &record;
        last_action = &record;
        break;
      }
    }
  }

  std::ostringstream out;
  out << "relsim run summary\n";
  out << "  duration_s:        " << trace.records.back().time_s << "\n";
  out << "  records:           " << trace.records.size() << " (monitor="
      << monitor_count << " action=" << action_count
      << " reconfig=" << reconfig_count << " chaos=" << chaos_count << ")\n";
  out << "  action_ticks:      " << action_count << "\n";
  out << "  versions:          ";
  for (std::size_t v = 0; v < trace.version_names.size(); ++v)
    out << (v ? " " : "") << trace.version_names[v];
  out << "\n";

  if (last_action) {
    out << "  final_total:       ";
    if (last_action->total_replicas)
      out << *last_action->total_replicas;
    else
      out << "n/a";
    out << "\n";
    out << "  final_plan:        ";
    for (std::size_t v = 0; v < trace.version_names.size(); ++v) {
      out << (v ? " " : "") << trace.version_names[v] << "=";
      if (last_action->versions[v].replicas)
        out << *last_action->versions[v].replicas;
      else
        out << "?";
    }
    out << "\n";
    out << "  final_df:          "
        << (last_action->df ? *last_action->df : std::string("n/a")) << "\n";
  } else {
    out << "  final_total:       n/a (no action records)\n";
  }

  out << "  df_numeric_range:  ";
  if (df_values.empty()) {
    out << "n/a";
  } else {
    const auto [lo, hi] = std::minmax_element(df_values.begin(),
                                              df_values.end());
    out << format_number(*lo) << " .. " << format_number(*hi);
  }
  out << " (uniform at " << df_uniform_ticks << "/" << action_count
      << " action ticks)\n";

  out << "  restart_totals:    ";
  for (std::size_t v = 0; v < trace.version_names.size(); ++v)
    out << (v ? " " : "") << trace.version_names[v] << "="
        << restart_totals[v];
  out << "\n";

  out << "  rt_window_mean_ms: ";
  if (rt_means.empty()) {
    out << "n/a\n";
  } else {
    double sum = 0.0;
    for (double v : rt_means) sum += v;
    std::sort(rt_means.begin(), rt_means.end());
    out << "mean=" << format_number(sum / static_cast<double>(rt_means.size()))
        << " p50=" << format_number(nearest_rank(rt_means, 0.50))
        << " p95=" << format_number(nearest_rank(rt_means, 0.95)) << "\n";
  }

  out << "  scaling_events:    " << scaling_events << "\n";
  out << scaling_lines.str();
  return out.str();
}

std::string report_trace(const std::filesystem::path& trace_path) {
  return summarize_trace(read_trace(trace_path));
}

}  // namespace relsim
