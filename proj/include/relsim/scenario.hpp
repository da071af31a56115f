#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "relsim/chaos.hpp"
#include "relsim/cluster.hpp"
#include "relsim/types.hpp"
#include "relsim/workload.hpp"

namespace relsim {

/// Initial replica assignment of one version.
struct VersionSpec {
  VersionId id;
  ReplicaCount initial_replicas = 1;

  bool operator==(const VersionSpec&) const = default;
};

/// A complete, runnable experiment description. See docs in README.md for
/// the JSON schema.
struct Scenario {
  ControllerConfig config;
  std::vector<VersionSpec> versions;
  std::vector<ChaosSpec> chaos;
  WorkloadProfile workload;
  ClusterModelParams model;
  SimTime duration_s = 0;
  std::uint64_t seed = 0;

  std::vector<VersionId> roster() const;
  ReplicaPlan initial_plan() const;

  bool operator==(const Scenario&) const = default;
};

/// Throws ValidationError naming the violated invariant.
void validate_scenario(const Scenario& scenario);

/// Parses a scenario from JSON text. Throws ParseError (syntax or field
/// problems, with location) or ValidationError (invariant violations).
Scenario parse_scenario(const std::string& text);

/// Serializes a scenario back to JSON. load(write(s)) == s.
std::string write_scenario(const Scenario& scenario);

Scenario load_scenario(const std::filesystem::path& path);
void save_scenario(const Scenario& scenario,
                   const std::filesystem::path& path);

/// Parses "30", "30s", "2m" or "1h" into seconds.
SimTime parse_duration_s(const std::string& text);

}  // namespace relsim
