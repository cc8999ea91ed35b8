#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "uavmec/model.hpp"

namespace uavmec {

// One UE's choice: run locally (uav == slot == 0) or offload to a 1-based
// (uav, slot) pair. Field order drives the canonical ordering used for
// tie-breaking everywhere: local first, then (uav, slot) lexicographic.
struct Action {
  ActionKind kind = ActionKind::Local;
  int uav = 0;
  int slot = 0;

  static Action local() { return {}; }
  static Action offload(int uav, int slot) { return {ActionKind::Offload, uav, slot}; }
  bool is_local() const { return kind == ActionKind::Local; }

  friend auto operator<=>(const Action&, const Action&) = default;
};

struct Ue {
  UePosition pos;
  Task task;
  double tx_power_w = 1.0;
  double k = 1e-27;
  double v = 3.0;
};

// A full problem input. The radio/compute blocks carry the shared defaults;
// each UE record additionally holds its own transmit power and CPU constants
// so heterogeneous populations need no side tables.
struct Instance {
  std::vector<Ue> ues;
  std::vector<UavTrajectory> uavs;
  RadioParams radio;
  ComputeParams compute;

  int num_ues() const { return static_cast<int>(ues.size()); }
  int num_uavs() const { return static_cast<int>(uavs.size()); }
  int total_slots() const;
  int num_actions() const { return 1 + total_slots(); }

  // Flat 0-based index of (uav, slot) among all slots of all UAVs.
  int slot_index(int uav, int slot) const;
  // Dense action ordinal: 0 = local, then UAV 1 slots 1..T_1, UAV 2, ...
  int action_index(const Action& a) const;
  Action action_at(int index) const;
};

// Throws std::invalid_argument naming the offending field.
void validate_instance(const Instance& inst);

// Per-(UAV, slot) load accumulated while an assignment is built one UE at a
// time. Pure bookkeeping; the admission checks live in feasible_actions.
class CapacityState {
 public:
  CapacityState() = default;
  explicit CapacityState(const Instance& inst);

  int ue_count(int uav, int slot) const;
  double freq_used_hz(int uav, int slot) const;
  void commit(const Action& a, double freq_hz);    // local commits nothing
  void uncommit(const Action& a, double freq_hz);  // reverse of commit
  void reset();

 private:
  int flat(int uav, int slot) const;

  std::vector<int> offsets_;  // per UAV, start into the flat slot arrays
  std::vector<int> counts_;
  std::vector<double> freq_hz_;
};

// Minimal UAV frequency that still meets the deadline after the upload, or
// nullopt when the upload alone exceeds the deadline.
std::optional<double> min_offload_freq(const Task& task, double rate_bps, double t_max_s);

// Minimal local frequency meeting the deadline.
double min_local_freq(const Task& task, double t_max_s);

// Uplink rate from a UE to a UAV in a given slot, using the UE's own transmit
// power.
double offload_rate(const Instance& inst, int ue, int uav, int slot);

// Energy of an action under its minimal frequency allocation.
double action_energy(const Instance& inst, int ue, const Action& a);

struct FeasibleAction {
  Action action;
  int action_index = 0;  // dense ordinal within the instance
  double min_freq_hz = 0.0;
};

// Everything the UE can do given the current load: local is always present,
// plus each (uav, slot) whose deadline is reachable and whose slot still has
// headcount and frequency headroom for the minimal allocation. Canonical
// order (local first, then (uav, slot) lexicographic).
std::vector<FeasibleAction> feasible_actions(const Instance& inst, int ue,
                                             const CapacityState& cap);
void feasible_actions(const Instance& inst, int ue, const CapacityState& cap,
                      std::vector<FeasibleAction>& out);

struct UeDecision {
  Action action;
  double freq_hz = 0.0;
};

// Decision variables for the whole instance, one entry per UE in UE order.
struct Assignment {
  std::vector<UeDecision> decisions;
};

// constraint: 1 malformed action/frequency, 2 wrong entry count, 3 slot
// headcount exceeded, 4 slot frequency budget exceeded, 5 deadline missed.
// ue is 0-based; uav/slot are 1-based; -1 marks a field not applicable.
struct Violation {
  int constraint = 0;
  int ue = -1;
  int uav = -1;
  int slot = -1;
  double measured = 0.0;
  double bound = 0.0;
};

struct ConstraintReport {
  std::vector<Violation> violations;

  bool feasible() const { return violations.empty(); }
  std::string to_text() const;  // one violation per line
};

// Absolute slack when comparing completion times against the deadline; covers
// the rounding in minimal-frequency allocations, which land on the deadline
// exactly in real arithmetic.
inline constexpr double kDeadlineSlackS = 1e-9;

// Relative slack on the per-slot frequency budget; absorbs commit/uncommit
// rounding residue in searchers that roll capacity back.
inline constexpr double kFreqSlackRel = 1e-9;

ConstraintReport check_assignment(const Instance& inst, const Assignment& asg);

// Total UE-side energy of a complete assignment; local entries are billed at
// their allocated frequency, offload entries at the UE's upload cost.
double objective_energy(const Instance& inst, const Assignment& asg);

}  // namespace uavmec
