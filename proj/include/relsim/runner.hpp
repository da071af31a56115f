#pragma once

#include <filesystem>
#include <string>

#include "relsim/scenario.hpp"

namespace relsim {

/// Executes the simulation/controller loop for the scenario's duration and
/// writes the trace to trace_path. Returns the run summary, recomputed from
/// the written trace so that `report` on the same file prints the identical
/// text.
std::string run_scenario(const Scenario& scenario,
                         const std::filesystem::path& trace_path);

}  // namespace relsim
