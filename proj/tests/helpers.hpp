#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "uavmec/baselines.hpp"
#include "uavmec/scenario.hpp"

namespace uavmec {
namespace testutil {

// One UAV circling the origin with default radio/compute parameters.
inline Instance base_instance(int num_slots = 12) {
  Instance inst;
  UavTrajectory uav;
  uav.center_x_m = 0.0;
  uav.center_y_m = 0.0;
  uav.radius_m = 800.0;
  uav.altitude_m = 350.0;
  uav.num_slots = num_slots;
  uav.phase_rad = 0.0;
  inst.uavs.push_back(uav);
  return inst;
}

inline Ue make_ue(double x, double y, double data_bits, double cycles) {
  Ue ue;
  ue.pos = {x, y};
  ue.task = {data_bits, cycles};
  return ue;
}

inline Instance generated(const std::string& preset_name, int n, std::uint64_t seed,
                          DataUnit unit = DataUnit::Kibibit,
                          NoiseMode mode = NoiseMode::Total) {
  ScenarioSpec spec = preset(preset_name, n, unit, mode);
  spec.seed = seed;
  return generate(spec);
}

struct BruteResult {
  Assignment assignment;
  double energy_j = 0.0;
};

// Exhaustive reference search. Candidates and capacity bookkeeping are
// recomputed here from the raw link and compute equations so the result is
// independent of the pruned search and of the feasibility filters it uses.
inline std::optional<BruteResult> brute_force_min(const Instance& inst) {
  const int n = inst.num_ues();
  const double t_max = inst.compute.t_max_s;

  struct Cand {
    Action action;
    double freq_hz = 0.0;
    double energy_j = 0.0;
  };
  std::vector<std::vector<Cand>> cands(n);
  for (int i = 0; i < n; ++i) {
    const Ue& ue = inst.ues[static_cast<std::size_t>(i)];
    Cand local;
    local.action = Action::local();
    local.freq_hz = ue.task.cycles / t_max;
    local.energy_j = ue.k * std::pow(local.freq_hz, ue.v - 1.0) * ue.task.cycles;
    cands[i].push_back(local);
    for (int j = 1; j <= inst.num_uavs(); ++j) {
      const UavTrajectory& uav = inst.uavs[static_cast<std::size_t>(j - 1)];
      for (int t = 1; t <= uav.num_slots; ++t) {
        const Vec3 p = uav_position(uav, t);
        const double dist = std::hypot(p.x_m - ue.pos.x_m, p.y_m - ue.pos.y_m);
        RadioParams radio = inst.radio;
        radio.tx_power_w = ue.tx_power_w;
        const double rate = data_rate(radio, dist, p.z_m);
        const double t_tr = ue.task.data_bits / rate;
        const double slack = t_max - t_tr;
        if (!(slack > 0.0)) continue;
        Cand c;
        c.action = Action::offload(j, t);
        c.freq_hz = ue.task.cycles / slack;
        if (!std::isfinite(c.freq_hz)) continue;
        c.energy_j = ue.tx_power_w * t_tr;
        cands[i].push_back(c);
      }
    }
  }

  std::optional<BruteResult> best;
  std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
  const int num_cells = inst.num_uavs() * inst.total_slots();
  std::vector<int> counts(static_cast<std::size_t>(num_cells), 0);
  std::vector<double> freqs(static_cast<std::size_t>(num_cells), 0.0);
  while (true) {
    std::fill(counts.begin(), counts.end(), 0);
    std::fill(freqs.begin(), freqs.end(), 0.0);
    bool ok = true;
    double total = 0.0;
    for (int i = 0; i < n && ok; ++i) {
      const Cand& c = cands[i][pick[static_cast<std::size_t>(i)]];
      total += c.energy_j;
      if (!c.action.is_local()) {
        const int cell = inst.slot_index(c.action.uav, c.action.slot);
        counts[static_cast<std::size_t>(cell)] += 1;
        freqs[static_cast<std::size_t>(cell)] += c.freq_hz;
        if (counts[static_cast<std::size_t>(cell)] > inst.compute.slot_ue_cap ||
            freqs[static_cast<std::size_t>(cell)] > inst.compute.f_max_hz) {
          ok = false;
        }
      }
    }
    if (ok && (!best || total < best->energy_j)) {
      BruteResult r;
      r.energy_j = total;
      r.assignment.decisions.resize(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        const Cand& c = cands[i][pick[static_cast<std::size_t>(i)]];
        r.assignment.decisions[static_cast<std::size_t>(i)] = {c.action, c.freq_hz};
      }
      best = std::move(r);
    }
    int pos = n - 1;
    while (pos >= 0) {
      pick[static_cast<std::size_t>(pos)] += 1;
      if (pick[static_cast<std::size_t>(pos)] < cands[pos].size()) break;
      pick[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  if (n == 0) return BruteResult{};
  return best;
}

inline double mean(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

inline double sample_variance(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

inline double welch_t(const std::vector<double>& a, const std::vector<double>& b) {
  const double va = sample_variance(a) / static_cast<double>(a.size());
  const double vb = sample_variance(b) / static_cast<double>(b.size());
  const double denom = std::sqrt(va + vb);
  const double diff = mean(a) - mean(b);
  if (denom == 0.0) {
    if (diff == 0.0) return 0.0;
    return diff > 0.0 ? std::numeric_limits<double>::infinity()
                      : -std::numeric_limits<double>::infinity();
  }
  return diff / denom;
}

inline bool rel_close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace testutil
}  // namespace uavmec
