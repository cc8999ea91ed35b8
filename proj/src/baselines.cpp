#include "uavmec/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "uavmec/rng.hpp"

namespace uavmec {

std::string to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::ES: return "ES";
    case SolverKind::LE: return "LE";
    case SolverKind::RO: return "RO";
    case SolverKind::GO: return "GO";
    case SolverKind::RLAA: return "RLAA";
  }
  throw std::logic_error("to_string: bad SolverKind");
}

std::optional<SolverKind> parse_solver(std::string_view s) {
  if (s == "ES") return SolverKind::ES;
  if (s == "LE") return SolverKind::LE;
  if (s == "RO") return SolverKind::RO;
  if (s == "GO") return SolverKind::GO;
  if (s == "RLAA") return SolverKind::RLAA;
  return std::nullopt;
}

Assignment solve_le(const Instance& inst) {
  Assignment asg;
  asg.decisions.reserve(inst.ues.size());
  for (const Ue& ue : inst.ues) {
    asg.decisions.push_back({Action::local(), min_local_freq(ue.task, inst.compute.t_max_s)});
  }
  return asg;
}

Assignment solve_ro(const Instance& inst, std::uint64_t seed, bool include_local_in_draw) {
  Rng rng(seed);
  CapacityState cap(inst);
  Assignment asg;
  asg.decisions.reserve(inst.ues.size());
  std::vector<FeasibleAction> cands;
  for (int i = 0; i < inst.num_ues(); ++i) {
    feasible_actions(inst, i, cap, cands);
    // cands[0] is always the local action.
    std::size_t pick;
    if (include_local_in_draw) {
      pick = rng.uniform_index(cands.size());
    } else if (cands.size() > 1) {
      pick = 1 + rng.uniform_index(cands.size() - 1);
    } else {
      pick = 0;
    }
    const FeasibleAction& chosen = cands[pick];
    cap.commit(chosen.action, chosen.min_freq_hz);
    asg.decisions.push_back({chosen.action, chosen.min_freq_hz});
  }
  return asg;
}

Assignment solve_go(const Instance& inst) {
  CapacityState cap(inst);
  Assignment asg;
  asg.decisions.reserve(inst.ues.size());
  std::vector<FeasibleAction> cands;
  for (int i = 0; i < inst.num_ues(); ++i) {
    feasible_actions(inst, i, cap, cands);
    std::size_t pick = 0;  // local fallback
    double best_dist_m = std::numeric_limits<double>::infinity();
    for (std::size_t c = 1; c < cands.size(); ++c) {
      const Action& a = cands[c].action;
      const Vec3 p = uav_position(inst.uavs[a.uav - 1], a.slot);
      const double horiz_m = horizontal_distance(inst.ues[i].pos, p.x_m, p.y_m);
      const double dist_m = std::hypot(horiz_m, p.z_m);
      if (dist_m < best_dist_m) {
        best_dist_m = dist_m;
        pick = c;
      }
    }
    const FeasibleAction& chosen = cands[pick];
    cap.commit(chosen.action, chosen.min_freq_hz);
    asg.decisions.push_back({chosen.action, chosen.min_freq_hz});
  }
  return asg;
}

namespace {

struct EsCandidate {
  Action action;
  double min_freq_hz = 0.0;
  double energy_j = 0.0;
};

struct EsSearch {
  const Instance& inst;
  std::uint64_t node_budget;
  std::vector<std::vector<EsCandidate>> candidates;  // per UE, ascending energy
  std::vector<double> suffix_min_j;                  // remaining unconstrained minima
  CapacityState cap;
  std::vector<UeDecision> path;
  std::vector<UeDecision> best_path;
  double best_j = std::numeric_limits<double>::infinity();
  std::uint64_t nodes = 0;
  bool exhausted = false;

  EsSearch(const Instance& inst_, std::uint64_t budget)
      : inst(inst_), node_budget(budget), cap(inst_), path(inst_.num_ues()) {
    const int n = inst.num_ues();
    candidates.resize(n);
    const CapacityState empty_cap(inst);
    std::vector<FeasibleAction> fa;
    for (int i = 0; i < n; ++i) {
      feasible_actions(inst, i, empty_cap, fa);
      auto& list = candidates[i];
      list.reserve(fa.size());
      for (const FeasibleAction& f : fa) {
        list.push_back({f.action, f.min_freq_hz, action_energy(inst, i, f.action)});
      }
      std::stable_sort(list.begin(), list.end(),
                       [](const EsCandidate& a, const EsCandidate& b) {
                         return a.energy_j < b.energy_j;
                       });
    }
    suffix_min_j.assign(n + 1, 0.0);
    for (int i = n - 1; i >= 0; --i) {
      suffix_min_j[i] = suffix_min_j[i + 1] + candidates[i].front().energy_j;
    }
  }

  void dfs(int ue, double partial_j) {
    if (ue == inst.num_ues()) {
      if (partial_j < best_j) {
        best_j = partial_j;
        best_path = path;
      }
      return;
    }
    const ComputeParams& cp = inst.compute;
    for (const EsCandidate& c : candidates[ue]) {
      if (++nodes > node_budget) {
        exhausted = true;
        return;
      }
      // Candidates are sorted by energy, so once the bound fails it fails
      // for every later sibling as well.
      if (partial_j + c.energy_j + suffix_min_j[ue + 1] >= best_j) break;
      if (!c.action.is_local()) {
        if (cap.ue_count(c.action.uav, c.action.slot) >= cp.slot_ue_cap) continue;
        if (cap.freq_used_hz(c.action.uav, c.action.slot) + c.min_freq_hz > cp.f_max_hz) {
          continue;
        }
      }
      path[ue] = {c.action, c.min_freq_hz};
      cap.commit(c.action, c.min_freq_hz);
      dfs(ue + 1, partial_j + c.energy_j);
      cap.uncommit(c.action, c.min_freq_hz);
      if (exhausted) return;
    }
  }
};

}  // namespace

std::optional<EsResult> solve_es(const Instance& inst, std::uint64_t node_budget) {
  EsSearch search(inst, node_budget);
  search.dfs(0, 0.0);
  if (search.exhausted) return std::nullopt;
  return EsResult{Assignment{std::move(search.best_path)}, search.best_j, search.nodes};
}

SolveOutcome run_solver(SolverKind kind, const Instance& inst, const SolveOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  SolveOutcome outcome;
  switch (kind) {
    case SolverKind::ES: {
      if (auto result = solve_es(inst, opts.es_node_budget)) {
        outcome.assignment = std::move(result->assignment);
      }
      break;
    }
    case SolverKind::LE:
      outcome.assignment = solve_le(inst);
      break;
    case SolverKind::RO:
      outcome.assignment = solve_ro(inst, opts.seed, opts.ro_include_local);
      break;
    case SolverKind::GO:
      outcome.assignment = solve_go(inst);
      break;
    case SolverKind::RLAA: {
      RlaaParams params = opts.rlaa;
      params.rng_seed = opts.seed;
      outcome.assignment = train(inst, params).assignment;
      break;
    }
  }
  if (outcome.assignment) {
    outcome.energy_j = objective_energy(inst, *outcome.assignment);
  }
  outcome.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return outcome;
}

}  // namespace uavmec
