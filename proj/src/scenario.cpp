#include "relsim/scenario.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "relsim/errors.hpp"

namespace relsim {

namespace {

using nlohmann::json;

std::string field_path(const std::string& scope, const char* field) {
  return scope.empty() ? std::string(field) : scope + "." + field;
}

const json& require(const json& j, const char* field,
                    const std::string& scope) {
  auto it = j.find(field);
  if (it == j.end())
    throw ParseError("missing field '" + field_path(scope, field) + "'");
  return *it;
}

template <typename T>
T get_as(const json& j, const char* field, const std::string& scope) {
  try {
    return require(j, field, scope).get<T>();
  } catch (const json::type_error& e) {
    throw ParseError("field '" + field_path(scope, field) +
                     "': " + e.what());
  }
}

template <typename T>
T get_or(const json& j, const char* field, const std::string& scope,
         T fallback) {
  if (!j.contains(field)) return fallback;
  return get_as<T>(j, field, scope);
}

ChaosKind parse_chaos_kind(const std::string& text, const std::string& scope) {
  if (text == "pod-kill") return ChaosKind::PodKill;
  if (text == "http-delay") return ChaosKind::HttpDelay;
  if (text == "memory-stress") return ChaosKind::MemoryStress;
  throw ParseError("field '" + scope +
                   ".kind': expected pod-kill, http-delay or memory-stress, "
                   "got '" +
                   text + "'");
}

bool valid_version_name(const std::string& name) {
  if (name.empty()) return false;
  for (char c : name) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
          c == '_' || c == '.'))
      return false;
  }
  return true;
}

}  // namespace

std::vector<VersionId> Scenario::roster() const {
  std::vector<VersionId> ids;
  ids.reserve(versions.size());
  for (const VersionSpec& v : versions) ids.push_back(v.id);
  return ids;
}

ReplicaPlan Scenario::initial_plan() const {
  ReplicaPlan plan;
  plan.counts.reserve(versions.size());
  for (const VersionSpec& v : versions) plan.counts.push_back(v.initial_replicas);
  return plan;
}

void validate_scenario(const Scenario& scenario) {
  try {
    validate_config(scenario.config);
  } catch (const InvalidConfig& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }

  if (scenario.versions.empty())
    throw ValidationError("at least one version is required");
  for (const VersionSpec& v : scenario.versions) {
    if (!valid_version_name(v.id.name))
      throw ValidationError("version names must be non-empty [A-Za-z0-9._-]");
    if (v.initial_replicas < 1)
      throw ValidationError("every version needs at least one initial replica");
  }
  for (std::size_t a = 0; a < scenario.versions.size(); ++a)
    for (std::size_t b = a + 1; b < scenario.versions.size(); ++b)
      if (scenario.versions[a].id == scenario.versions[b].id)
        throw ValidationError("version names must be unique");

  if (scenario.initial_plan().total() != scenario.config.total_replicas)
    throw ValidationError("initial replicas must sum to total_replicas");
  if (scenario.config.min_replicas < scenario.versions.size())
    throw ValidationError(
        "min_replicas must cover at least one replica per version");

  if (scenario.duration_s <= 0)
    throw ValidationError("duration_s must be positive");

  for (const ChaosSpec& spec : scenario.chaos) {
    bool known = false;
    for (const VersionSpec& v : scenario.versions)
      if (v.id == spec.target) known = true;
    if (!known)
      throw ValidationError("chaos target '" + spec.target.name +
                            "' is not a declared version");
    if (spec.period_s <= 0) throw ValidationError("chaos period_s must be > 0");
    if (spec.duration_s <= 0)
      throw ValidationError("chaos duration_s must be > 0");
    if (spec.duration_s > spec.period_s)
      throw ValidationError("chaos duration_s must not exceed period_s");
    if (spec.start_s < 0 || spec.stop_s <= spec.start_s)
      throw ValidationError("chaos requires 0 <= start_s < stop_s");
    if (spec.kind == ChaosKind::HttpDelay && !(spec.delay_ms > 0))
      throw ValidationError("http-delay chaos requires delay_ms > 0");
    if (spec.kind == ChaosKind::MemoryStress &&
        !(spec.workers > 0 && spec.mb_per_worker > 0))
      throw ValidationError(
          "memory-stress chaos requires workers > 0 and mb_per_worker > 0");
  }

  if (!(scenario.workload.requests_per_user_per_s >= 0))
    throw ValidationError("requests_per_user_per_s must be >= 0");
  if (scenario.workload.jitter_pct < 0 || scenario.workload.jitter_pct >= 100)
    throw ValidationError("jitter_pct must lie in [0, 100)");
  for (std::size_t i = 0; i < scenario.workload.steps.size(); ++i) {
    if (scenario.workload.steps[i].at_s < 0)
      throw ValidationError("workload step times must be >= 0");
    if (i > 0 && scenario.workload.steps[i].at_s <=
                     scenario.workload.steps[i - 1].at_s)
      throw ValidationError("workload step times must be strictly increasing");
  }

  const ClusterModelParams& m = scenario.model;
  if (!(m.cpu_cost_pct_per_rps > 0 && m.base_response_ms > 0 &&
        m.base_memory_mb > 0 && m.queue_knee_pct > 0 &&
        m.inflation_ms_per_pct > 0))
    throw ValidationError("model parameters must all be positive");
  if (!(m.queue_knee_pct < 100))
    throw ValidationError("queue_knee_pct must be below 100");
}

Scenario parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }

  Scenario scenario;

  const json& jc = require(j, "config", "");
  scenario.config.monitoring_time_s =
      get_as<SimTime>(jc, "monitoring_time_s", "config");
  scenario.config.action_time_s =
      get_as<SimTime>(jc, "action_time_s", "config");
  scenario.config.total_replicas =
      get_as<ReplicaCount>(jc, "total_replicas", "config");
  scenario.config.max_replicas =
      get_as<ReplicaCount>(jc, "max_replicas", "config");
  scenario.config.min_replicas =
      get_as<ReplicaCount>(jc, "min_replicas", "config");
  scenario.config.max_cpu_pct = get_as<double>(jc, "max_cpu_pct", "config");
  scenario.config.min_cpu_pct = get_as<double>(jc, "min_cpu_pct", "config");
  scenario.config.scaling_enabled =
      get_as<bool>(jc, "scaling_enabled", "config");
  if (jc.contains("weights")) {
    const json& jw = jc["weights"];
    scenario.config.weights.restart_weight =
        get_as<double>(jw, "restart", "config.weights");
    scenario.config.weights.memory_weight =
        get_as<double>(jw, "memory", "config.weights");
    scenario.config.weights.response_time_weight =
        get_as<double>(jw, "response_time", "config.weights");
  }

  for (const json& jv : get_as<std::vector<json>>(j, "versions", "")) {
    VersionSpec v;
    v.id.name = get_as<std::string>(jv, "name", "versions[]");
    v.initial_replicas =
        get_as<ReplicaCount>(jv, "initial_replicas", "versions[]");
    scenario.versions.push_back(std::move(v));
  }

  if (j.contains("chaos")) {
    for (const json& js : j["chaos"]) {
      ChaosSpec spec;
      spec.kind = parse_chaos_kind(get_as<std::string>(js, "kind", "chaos[]"),
                                   "chaos[]");
      spec.target.name = get_as<std::string>(js, "target", "chaos[]");
      spec.period_s = get_as<SimTime>(js, "period_s", "chaos[]");
      spec.duration_s = get_as<SimTime>(js, "duration_s", "chaos[]");
      spec.start_s = get_as<SimTime>(js, "start_s", "chaos[]");
      spec.stop_s = get_as<SimTime>(js, "stop_s", "chaos[]");
      spec.enabled = get_or<bool>(js, "enabled", "chaos[]", true);
      if (spec.kind == ChaosKind::HttpDelay)
        spec.delay_ms = get_as<double>(js, "delay_ms", "chaos[]");
      if (spec.kind == ChaosKind::MemoryStress) {
        spec.workers = get_as<std::uint32_t>(js, "workers", "chaos[]");
        spec.mb_per_worker = get_as<double>(js, "mb_per_worker", "chaos[]");
      }
      scenario.chaos.push_back(std::move(spec));
    }
  }

  const json& jw = require(j, "workload", "");
  scenario.workload.requests_per_user_per_s =
      get_as<double>(jw, "requests_per_user_per_s", "workload");
  scenario.workload.jitter_pct =
      get_or<double>(jw, "jitter_pct", "workload", 0.0);
  for (const json& jstep : get_as<std::vector<json>>(jw, "steps", "workload")) {
    WorkloadStep step;
    step.at_s = get_as<SimTime>(jstep, "at_s", "workload.steps[]");
    step.users = get_as<std::uint32_t>(jstep, "users", "workload.steps[]");
    scenario.workload.steps.push_back(step);
  }

  const json& jm = require(j, "model", "");
  scenario.model.cpu_cost_pct_per_rps =
      get_as<double>(jm, "cpu_cost_pct_per_rps", "model");
  scenario.model.base_response_ms =
      get_as<double>(jm, "base_response_ms", "model");
  scenario.model.base_memory_mb =
      get_as<double>(jm, "base_memory_mb", "model");
  scenario.model.queue_knee_pct =
      get_as<double>(jm, "queue_knee_pct", "model");
  scenario.model.inflation_ms_per_pct =
      get_as<double>(jm, "inflation_ms_per_pct", "model");

  scenario.duration_s = get_as<SimTime>(j, "duration_s", "");
  scenario.seed = get_or<std::uint64_t>(j, "seed", "", 0);

  validate_scenario(scenario);
  return scenario;
}

std::string write_scenario(const Scenario& s) {
  json j;
  j["config"] = {
      {"monitoring_time_s", s.config.monitoring_time_s},
      {"action_time_s", s.config.action_time_s},
      {"total_replicas", s.config.total_replicas},
      {"max_replicas", s.config.max_replicas},
      {"min_replicas", s.config.min_replicas},
      {"max_cpu_pct", s.config.max_cpu_pct},
      {"min_cpu_pct", s.config.min_cpu_pct},
      {"scaling_enabled", s.config.scaling_enabled},
      {"weights",
       {{"restart", s.config.weights.restart_weight},
        {"memory", s.config.weights.memory_weight},
        {"response_time", s.config.weights.response_time_weight}}},
  };
  j["versions"] = json::array();
  for (const VersionSpec& v : s.versions)
    j["versions"].push_back(
        {{"name", v.id.name}, {"initial_replicas", v.initial_replicas}});
  j["chaos"] = json::array();
  for (const ChaosSpec& spec : s.chaos) {
    json js = {{"kind", to_string(spec.kind)},
               {"target", spec.target.name},
               {"period_s", spec.period_s},
               {"duration_s", spec.duration_s},
               {"start_s", spec.start_s},
               {"stop_s", spec.stop_s},
               {"enabled", spec.enabled}};
    if (spec.kind == ChaosKind::HttpDelay) js["delay_ms"] = spec.delay_ms;
    if (spec.kind == ChaosKind::MemoryStress) {
      js["workers"] = spec.workers;
      js["mb_per_worker"] = spec.mb_per_worker;
    }
    j["chaos"].push_back(std::move(js));
  }
  j["workload"] = {
      {"requests_per_user_per_s", s.workload.requests_per_user_per_s},
      {"jitter_pct", s.workload.jitter_pct},
      {"steps", json::array()}};
  for (const WorkloadStep& step : s.workload.steps)
    j["workload"]["steps"].push_back(
        {{"at_s", step.at_s}, {"users", step.users}});
  j["model"] = {{"cpu_cost_pct_per_rps", s.model.cpu_cost_pct_per_rps},
                {"base_response_ms", s.model.base_response_ms},
                {"base_memory_mb", s.model.base_memory_mb},
                {"queue_knee_pct", s.model.queue_knee_pct},
                {"inflation_ms_per_pct", s.model.inflation_ms_per_pct}};
  j["duration_s"] = s.duration_s;
  j["seed"] = s.seed;
  return j.dump(2) + "\n";
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open scenario file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

void save_scenario(const Scenario& scenario,
                   const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out)
    throw ParseError("cannot write scenario file: " + path.string());
  out << write_scenario(scenario);
}

SimTime parse_duration_s(const std::string& text) {
  if (text.empty()) throw ValidationError("empty duration");
  std::size_t pos = 0;
  long long value = 0;
  try {
    value = std::stoll(text, &pos);
  } catch (const std::exception&) {
    throw ValidationError("invalid duration '" + text + "'");
  }
  if (value < 0) throw ValidationError("duration must be >= 0");
  if (pos == text.size()) return value;
  if (pos + 1 != text.size())
    throw ValidationError("invalid duration '" + text + "'");
  switch (text[pos]) {
    case 's':
      return value;
    case 'm':
      return value * 60;
    case 'h':
      return value * 3600;
    default:
      throw ValidationError("invalid duration suffix in '" + text +
                            "' (use s, m or h)");
  }
}

}  // namespace relsim
