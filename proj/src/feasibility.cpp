#include "uavmec/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace uavmec {

int Instance::total_slots() const {
  int total = 0;
  for (const auto& u : uavs) total += u.num_slots;
  return total;
}

int Instance::slot_index(int uav, int slot) const {
  int offset = 0;
  for (int j = 1; j < uav; ++j) offset += uavs[j - 1].num_slots;
  return offset + (slot - 1);
}

int Instance::action_index(const Action& a) const {
  if (a.is_local()) return 0;
  return 1 + slot_index(a.uav, a.slot);
}

Action Instance::action_at(int index) const {
  if (index < 0) {
    throw std::out_of_range("action_at: index " + std::to_string(index) +
                            " outside 0.." + std::to_string(num_actions() - 1));
  }
  if (index == 0) return Action::local();
  int rest = index - 1;
  for (int j = 1; j <= num_uavs(); ++j) {
    const int slots = uavs[j - 1].num_slots;
    if (rest < slots) return Action::offload(j, rest + 1);
    rest -= slots;
  }
  throw std::out_of_range("action_at: index " + std::to_string(index) +
                          " outside 0.." + std::to_string(num_actions() - 1));
}

namespace {

void require_positive(double x, const char* field) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::invalid_argument(std::string("instance: ") + field + " must be finite and > 0");
  }
}

void require_finite(double x, const char* field) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument(std::string("instance: ") + field + " must be finite");
  }
}

}  // namespace

void validate_instance(const Instance& inst) {
  require_positive(inst.radio.bandwidth_hz, "radio.bandwidth_hz");
  require_positive(inst.radio.tx_power_w, "radio.tx_power_w");
  require_positive(inst.radio.g0, "radio.g0");
  require_positive(inst.radio.big_g0, "radio.big_g0");
  require_positive(inst.radio.noise_power_w, "radio.noise_power_w");
  if (!(inst.radio.alpha() > 0.0) || !std::isfinite(inst.radio.alpha())) {
    throw std::invalid_argument("instance: radio alpha must be finite and > 0");
  }
  if (inst.compute.k < 0.0 || !std::isfinite(inst.compute.k)) {
    throw std::invalid_argument("instance: compute.k must be finite and >= 0");
  }
  if (inst.compute.v < 1.0 || !std::isfinite(inst.compute.v)) {
    throw std::invalid_argument("instance: compute.v must be finite and >= 1");
  }
  require_positive(inst.compute.f_max_hz, "compute.f_max_hz");
  if (inst.compute.slot_ue_cap < 1) {
    throw std::invalid_argument("instance: compute.slot_ue_cap must be >= 1");
  }
  require_positive(inst.compute.t_max_s, "compute.t_max_s");
  for (std::size_t j = 0; j < inst.uavs.size(); ++j) {
    const auto& u = inst.uavs[j];
    const std::string where = "uavs[" + std::to_string(j) + "].";
    if (u.radius_m < 0.0 || !std::isfinite(u.radius_m)) {
      throw std::invalid_argument("instance: " + where + "radius_m must be finite and >= 0");
    }
    require_positive(u.altitude_m, (where + "altitude_m").c_str());
    if (u.num_slots < 1) {
      throw std::invalid_argument("instance: " + where + "num_slots must be >= 1");
    }
    require_finite(u.center_x_m, (where + "center_x_m").c_str());
    require_finite(u.center_y_m, (where + "center_y_m").c_str());
    require_finite(u.phase_rad, (where + "phase_rad").c_str());
  }
  for (std::size_t i = 0; i < inst.ues.size(); ++i) {
    const auto& ue = inst.ues[i];
    const std::string where = "ues[" + std::to_string(i) + "].";
    require_finite(ue.pos.x_m, (where + "pos.x_m").c_str());
    require_finite(ue.pos.y_m, (where + "pos.y_m").c_str());
    require_positive(ue.task.data_bits, (where + "task.data_bits").c_str());
    require_positive(ue.task.cycles, (where + "task.cycles").c_str());
    require_positive(ue.tx_power_w, (where + "tx_power_w").c_str());
    if (ue.k < 0.0 || !std::isfinite(ue.k)) {
      throw std::invalid_argument("instance: " + where + "k must be finite and >= 0");
    }
    if (ue.v < 1.0 || !std::isfinite(ue.v)) {
      throw std::invalid_argument("instance: " + where + "v must be finite and >= 1");
    }
  }
}

CapacityState::CapacityState(const Instance& inst) {
  offsets_.reserve(inst.uavs.size());
  int offset = 0;
  for (const auto& u : inst.uavs) {
    offsets_.push_back(offset);
    offset += u.num_slots;
  }
  counts_.assign(offset, 0);
  freq_hz_.assign(offset, 0.0);
}

int CapacityState::flat(int uav, int slot) const {
  return offsets_.at(uav - 1) + (slot - 1);
}

int CapacityState::ue_count(int uav, int slot) const { return counts_.at(flat(uav, slot)); }

double CapacityState::freq_used_hz(int uav, int slot) const {
  return freq_hz_.at(flat(uav, slot));
}

void CapacityState::commit(const Action& a, double freq_hz) {
  if (a.is_local()) return;
  const int i = flat(a.uav, a.slot);
  counts_[i] += 1;
  freq_hz_[i] += freq_hz;
}

void CapacityState::uncommit(const Action& a, double freq_hz) {
  if (a.is_local()) return;
  const int i = flat(a.uav, a.slot);
  counts_[i] -= 1;
  freq_hz_[i] -= freq_hz;
}

void CapacityState::reset() {
  std::fill(counts_.begin(), counts_.end(), 0);
  std::fill(freq_hz_.begin(), freq_hz_.end(), 0.0);
}

std::optional<double> min_offload_freq(const Task& task, double rate_bps, double t_max_s) {
  if (!(rate_bps > 0.0)) throw std::domain_error("min_offload_freq: rate must be > 0");
  const double slack_s = t_max_s - task.data_bits / rate_bps;
  if (!(slack_s > 0.0)) return std::nullopt;  // upload alone misses the deadline
  return task.cycles / slack_s;
}

double min_local_freq(const Task& task, double t_max_s) {
  if (!(t_max_s > 0.0)) throw std::domain_error("min_local_freq: deadline must be > 0");
  return task.cycles / t_max_s;
}

double offload_rate(const Instance& inst, int ue, int uav, int slot) {
  const Ue& u = inst.ues.at(ue);
  const Vec3 p = uav_position(inst.uavs.at(uav - 1), slot);
  RadioParams rp = inst.radio;
  rp.tx_power_w = u.tx_power_w;
  return data_rate(rp, horizontal_distance(u.pos, p.x_m, p.y_m), p.z_m);
}

double action_energy(const Instance& inst, int ue, const Action& a) {
  const Ue& u = inst.ues.at(ue);
  if (a.is_local()) {
    const double f = min_local_freq(u.task, inst.compute.t_max_s);
    return local_energy(u.k, u.v, f, u.task.cycles);
  }
  const double rate = offload_rate(inst, ue, a.uav, a.slot);
  return offload_energy(u.tx_power_w, transmission_time(u.task.data_bits, rate));
}

void feasible_actions(const Instance& inst, int ue, const CapacityState& cap,
                      std::vector<FeasibleAction>& out) {
  out.clear();
  const Ue& u = inst.ues.at(ue);
  const ComputeParams& cp = inst.compute;
  out.push_back({Action::local(), 0, min_local_freq(u.task, cp.t_max_s)});
  int index = 1;
  for (int j = 1; j <= inst.num_uavs(); ++j) {
    for (int t = 1; t <= inst.uavs[j - 1].num_slots; ++t, ++index) {
      const double rate = offload_rate(inst, ue, j, t);
      const auto fmin = min_offload_freq(u.task, rate, cp.t_max_s);
      if (!fmin || !std::isfinite(*fmin)) continue;
      if (cap.ue_count(j, t) >= cp.slot_ue_cap) continue;
      if (cap.freq_used_hz(j, t) + *fmin > cp.f_max_hz) continue;
      out.push_back({Action::offload(j, t), index, *fmin});
    }
  }
}

std::vector<FeasibleAction> feasible_actions(const Instance& inst, int ue,
                                             const CapacityState& cap) {
  std::vector<FeasibleAction> out;
  feasible_actions(inst, ue, cap, out);
  return out;
}

std::string ConstraintReport::to_text() const {
  std::ostringstream os;
  for (const auto& v : violations) {
    os << 'C' << v.constraint;
    if (v.ue >= 0) os << " ue=" << v.ue;
    if (v.uav >= 0) os << " uav=" << v.uav;
    if (v.slot >= 0) os << " slot=" << v.slot;
    os << " measured=" << v.measured << " bound=" << v.bound << '\n';
  }
  return os.str();
}

ConstraintReport check_assignment(const Instance& inst, const Assignment& asg) {
  ConstraintReport report;
  const int n = inst.num_ues();
  const int given = static_cast<int>(asg.decisions.size());
  if (given != n) {
    report.violations.push_back({2, -1, -1, -1, static_cast<double>(given),
                                 static_cast<double>(n)});
  }
  CapacityState load(inst);
  const ComputeParams& cp = inst.compute;
  const int limit = std::min(n, given);
  for (int i = 0; i < limit; ++i) {
    const UeDecision& d = asg.decisions[i];
    const Ue& u = inst.ues[i];
    bool shape_ok;
    if (d.action.is_local()) {
      shape_ok = d.action.uav == 0 && d.action.slot == 0;
    } else {
      shape_ok = d.action.uav >= 1 && d.action.uav <= inst.num_uavs() &&
                 d.action.slot >= 1 &&
                 d.action.slot <= inst.uavs[d.action.uav - 1].num_slots;
    }
    if (!shape_ok) {
      report.violations.push_back({1, i, d.action.uav, d.action.slot, 0.0, 0.0});
      continue;
    }
    if (!(d.freq_hz > 0.0) || !std::isfinite(d.freq_hz)) {
      report.violations.push_back({1, i, d.action.uav, d.action.slot, d.freq_hz, 0.0});
      continue;
    }
    double total_s;
    if (d.action.is_local()) {
      total_s = total_time(ActionKind::Local, 0.0, compute_time(u.task.cycles, d.freq_hz));
    } else {
      const double rate = offload_rate(inst, i, d.action.uav, d.action.slot);
      total_s = total_time(ActionKind::Offload,
                           transmission_time(u.task.data_bits, rate),
                           compute_time(u.task.cycles, d.freq_hz));
      load.commit(d.action, d.freq_hz);
    }
    if (total_s > cp.t_max_s + kDeadlineSlackS) {
      report.violations.push_back({5, i, d.action.uav, d.action.slot, total_s, cp.t_max_s});
    }
  }
  for (int j = 1; j <= inst.num_uavs(); ++j) {
    for (int t = 1; t <= inst.uavs[j - 1].num_slots; ++t) {
      const int count = load.ue_count(j, t);
      if (count > cp.slot_ue_cap) {
        report.violations.push_back({3, -1, j, t, static_cast<double>(count),
                                     static_cast<double>(cp.slot_ue_cap)});
      }
      const double used = load.freq_used_hz(j, t);
      if (used > cp.f_max_hz * (1.0 + kFreqSlackRel)) {
        report.violations.push_back({4, -1, j, t, used, cp.f_max_hz});
      }
    }
  }
  return report;
}

double objective_energy(const Instance& inst, const Assignment& asg) {
  if (static_cast<int>(asg.decisions.size()) != inst.num_ues()) {
    throw std::invalid_argument("objective_energy: assignment must cover every UE");
  }
  double sum_j = 0.0;
  for (int i = 0; i < inst.num_ues(); ++i) {
    const UeDecision& d = asg.decisions[i];
    const Ue& u = inst.ues[i];
    if (d.action.is_local()) {
      sum_j += local_energy(u.k, u.v, d.freq_hz, u.task.cycles);
    } else {
      const double rate = offload_rate(inst, i, d.action.uav, d.action.slot);
      sum_j += offload_energy(u.tx_power_w, transmission_time(u.task.data_bits, rate));
    }
  }
  return sum_j;
}

}  // namespace uavmec
