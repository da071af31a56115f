#include "relsim/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "relsim/errors.hpp"

namespace relsim {

const char* to_string(ChaosKind kind) {
  switch (kind) {
    case ChaosKind::PodKill:
      return "pod-kill";
    case ChaosKind::HttpDelay:
      return "http-delay";
    case ChaosKind::MemoryStress:
      return "memory-stress";
  }
  return "pod-kill";
}

SimCluster::SimCluster(std::vector<VersionId> roster,
                       const ReplicaPlan& initial_plan,
                       ClusterModelParams model, std::vector<ChaosSpec> chaos,
                       WorkloadProfile workload, std::uint64_t seed)
    : roster_(std::move(roster)),
      model_(model),
      chaos_(std::move(chaos)),
      chaos_on_duty_(chaos_.size(), false),
      workload_(std::move(workload)),
      seed_(seed),
      rr_cursor_(roster_.size(), 0) {
  if (roster_.empty())
    throw std::invalid_argument("cluster requires >= 1 version");
  if (initial_plan.counts.size() != roster_.size())
    throw std::invalid_argument("initial plan does not match the roster");
  pods_.resize(roster_.size());
  apply_plan(initial_plan);
  for (const ChaosSpec& spec : chaos_) {
    if (version_index(spec.target) == roster_.size())
      throw std::invalid_argument("chaos spec targets an unknown version");
  }
}

std::size_t SimCluster::version_index(const VersionId& id) const {
  for (std::size_t i = 0; i < roster_.size(); ++i)
    if (roster_[i] == id) return i;
  return roster_.size();
}

void SimCluster::apply_plan(const ReplicaPlan& plan) {
  if (plan.counts.size() != roster_.size())
    throw std::invalid_argument("plan does not match the roster");
  for (std::size_t v = 0; v < roster_.size(); ++v) {
    auto& version_pods = pods_[v];
    const std::size_t target = plan.counts[v];
    while (version_pods.size() > target) {
      auto killed = std::find_if(
          version_pods.begin(), version_pods.end(),
          [](const Pod& p) { return p.status == PodStatus::Killed; });
      if (killed != version_pods.end())
        version_pods.erase(killed);
      else
        version_pods.pop_back();
    }
    while (version_pods.size() < target) {
      Pod pod;
      pod.base_memory_mb = model_.base_memory_mb;
      version_pods.push_back(pod);
    }
  }
}

StepResult SimCluster::step(SimTime t, SmoothWrr& router) {
  StepResult result;
  result.samples_by_version.resize(roster_.size());

  // Recoveries first: a pod whose kill window ended comes back Running and
  // counts one restart.
  for (auto& version_pods : pods_) {
    for (Pod& pod : version_pods) {
      pod.restarted_this_tick = false;
      if (pod.status == PodStatus::Killed && pod.killed_until <= t) {
        pod.status = PodStatus::Running;
        pod.restarted_this_tick = true;
        ++pod.restart_count;
      }
    }
  }

  // Chaos duty transitions, then per-version fault effects for this tick.
  std::vector<double> delay_ms(roster_.size(), 0.0);
  std::vector<double> extra_mb(roster_.size(), 0.0);
  for (std::size_t c = 0; c < chaos_.size(); ++c) {
    const ChaosSpec& spec = chaos_[c];
    const bool duty = spec.on_duty(t);
    if (duty != chaos_on_duty_[c]) {
      result.chaos_transitions.push_back(ChaosTransition{c, duty});
      chaos_on_duty_[c] = duty;
    }
    const bool kill_onset = spec.kind == ChaosKind::PodKill && spec.enabled &&
                            t >= spec.start_s && t < spec.stop_s &&
                            (t - spec.start_s) % spec.period_s == 0;
    if (kill_onset) {
      const std::size_t v = version_index(spec.target);
      for (Pod& pod : pods_[v]) {
        pod.status = PodStatus::Killed;
        pod.killed_until = std::max(pod.killed_until, t + spec.duration_s);
        pod.restarted_this_tick = false;
      }
    }
    if (duty) {
      const std::size_t v = version_index(spec.target);
      if (spec.kind == ChaosKind::HttpDelay) delay_ms[v] += spec.delay_ms;
      if (spec.kind == ChaosKind::MemoryStress)
        extra_mb[v] += static_cast<double>(spec.workers) * spec.mb_per_worker;
    }
  }
  for (std::size_t v = 0; v < roster_.size(); ++v)
    for (Pod& pod : pods_[v]) pod.extra_memory_mb = extra_mb[v];

  // Route this second's requests.
  std::vector<std::vector<std::size_t>> running(roster_.size());
  for (std::size_t v = 0; v < roster_.size(); ++v) {
    for (std::size_t p = 0; p < pods_[v].size(); ++p) {
      pods_[v][p].requests = 0;
      if (pods_[v][p].status == PodStatus::Running) running[v].push_back(p);
    }
  }

  double rate = static_cast<double>(workload_.users_at(t)) *
                workload_.requests_per_user_per_s;
  if (workload_.jitter_pct > 0.0 && rate > 0.0) {
    SplitMix64 rng(seed_ ^ static_cast<std::uint64_t>(t));
    rate *= 1.0 + (workload_.jitter_pct / 100.0) * rng.next_range(-1.0, 1.0);
  }
  request_carry_ += rate;
  auto requests = static_cast<std::uint64_t>(std::floor(request_carry_));
  request_carry_ -= static_cast<double>(requests);

  result.counters.generated = requests;
  for (std::uint64_t r = 0; r < requests; ++r) {
    std::size_t v = router.next_version();
    if (!running[v].empty()) {
      ++result.counters.served;
    } else {
      bool found = false;
      for (std::size_t attempt = 1; attempt < roster_.size(); ++attempt) {
        v = router.next_version();
        if (!running[v].empty()) {
          found = true;
          break;
        }
      }
      if (!found) {
        ++result.counters.dropped;
        continue;
      }
      ++result.counters.rerouted_served;
    }
    const std::size_t p = running[v][rr_cursor_[v] % running[v].size()];
    ++rr_cursor_[v];
    ++pods_[v][p].requests;
  }

  // Per-pod load model and sample emission. Killed pods serve nothing and
  // emit nothing.
  for (std::size_t v = 0; v < roster_.size(); ++v) {
    for (Pod& pod : pods_[v]) {
      if (pod.status != PodStatus::Running) {
        pod.cpu_pct = 0.0;
        continue;
      }
      pod.cpu_pct = std::min(
          100.0, static_cast<double>(pod.requests) * model_.cpu_cost_pct_per_rps);
      pod.response_ms =
          model_.base_response_ms + delay_ms[v] +
          std::max(0.0, pod.cpu_pct - model_.queue_knee_pct) *
              model_.inflation_ms_per_pct;
      result.samples_by_version[v].push_back(MetricSample{
          t, pod.response_ms, pod.base_memory_mb + pod.extra_memory_mb,
          pod.restarted_this_tick});
    }
  }
  return result;
}

double SimCluster::observed_cpu() const {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& version_pods : pods_) {
    for (const Pod& pod : version_pods) {
      if (pod.status == PodStatus::Running) {
        sum += pod.cpu_pct;
        ++count;
      }
    }
  }
  if (count == 0) throw NoRunningPods("no running pods to observe");
  return sum / static_cast<double>(count);
}

}  // namespace relsim
