#pragma once

#include <filesystem>
#include <string>

#include "relsim/trace.hpp"

namespace relsim {

/// Builds the human-readable run summary from parsed trace records:
/// final plan, pooled response-time statistics, restart totals, the DF
/// trajectory and every applied scaling event.
std::string summarize_trace(const TraceData& trace);

/// read_trace + summarize_trace.
std::string report_trace(const std::filesystem::path& trace_path);

}  // namespace relsim
