#pragma once

#include <cstdint>

#include "relsim/types.hpp"

namespace relsim {

enum class ChaosKind { PodKill, HttpDelay, MemoryStress };

const char* to_string(ChaosKind kind);

/// One scheduled fault against a single version. While the spec is enabled
/// and the clock is inside [start_s, stop_s), the fault is on duty for the
/// first duration_s seconds of every period_s cycle, the first cycle
/// beginning at start_s.
///
/// PodKill kills every pod of the target for the duty window; each pod
/// counts one restart when it comes back. HttpDelay adds delay_ms to every
/// response the target serves while on duty. MemoryStress adds
/// workers * mb_per_worker megabytes to each target pod while on duty.
struct ChaosSpec {
  ChaosKind kind = ChaosKind::PodKill;
  VersionId target;
  SimTime period_s = 180;
  SimTime duration_s = 30;
  SimTime start_s = 0;
  SimTime stop_s = 0;
  bool enabled = true;
  // HttpDelay
  double delay_ms = 0.0;
  // MemoryStress
  std::uint32_t workers = 0;
  double mb_per_worker = 0.0;

  bool on_duty(SimTime t) const {
    if (!enabled || t < start_s || t >= stop_s) return false;
    return (t - start_s) % period_s < duration_s;
  }

  bool operator==(const ChaosSpec&) const = default;
};

}  // namespace relsim
