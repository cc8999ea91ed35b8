#include "uavmec/rlaa.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace uavmec {

std::uint64_t hash_state(const Instance& inst, const StateVector& sv) {
  // FNV-1a over dense action ordinals, with a splitmix-style finalizer.
  std::uint64_t h = 14695981039346656037ull;
  for (const Action& a : sv) {
    h ^= static_cast<std::uint64_t>(inst.action_index(a)) + 1;
    h *= 1099511628211ull;
  }
  h ^= h >> 30;
  h *= 0xbf58476d1ce4e5b9ull;
  h ^= h >> 27;
  return h;
}

std::uint64_t state_key(const Instance& inst, StateKeying keying, const StateVector& sv,
                        int ue) {
  return keying == StateKeying::PerUe ? static_cast<std::uint64_t>(ue)
                                      : hash_state(inst, sv);
}

double QTable::value(std::uint64_t state_key, int action_index) const {
  const auto it = rows_.find(state_key);
  if (it == rows_.end()) return 0.0;
  return it->second.at(action_index);
}

void QTable::set_value(std::uint64_t state_key, int action_index, double v) {
  auto [it, inserted] = rows_.try_emplace(state_key);
  if (inserted) it->second.assign(num_actions_, 0.0);
  it->second.at(action_index) = v;
}

std::vector<QTable::Entry> QTable::entries() const {
  std::vector<Entry> out;
  out.reserve(rows_.size() * static_cast<std::size_t>(num_actions_));
  for (const auto& [key, row] : rows_) {
    for (int a = 0; a < static_cast<int>(row.size()); ++a) {
      out.push_back({key, a, row[a]});
    }
  }
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) {
    if (a.state_key != b.state_key) return a.state_key < b.state_key;
    return a.action_index < b.action_index;
  });
  return out;
}

double reward(double energy_j) {
  if (!(energy_j > 0.0)) throw std::domain_error("reward: energy must be > 0");
  return 1.0 / energy_j;
}

FeasibleAction select_action(const QTable& q, std::uint64_t state_key,
                             const std::vector<FeasibleAction>& candidates, double epsilon,
                             Rng& rng) {
  if (candidates.empty()) throw std::logic_error("select_action: empty candidate set");
  if (rng.uniform01() < epsilon) {
    return candidates[rng.uniform_index(candidates.size())];
  }
  std::size_t best = 0;
  double best_v = q.value(state_key, candidates[0].action_index);
  for (std::size_t c = 1; c < candidates.size(); ++c) {
    const double v = q.value(state_key, candidates[c].action_index);
    if (v > best_v) {
      best_v = v;
      best = c;
    }
  }
  return candidates[best];
}

double q_update(QTable& q, std::uint64_t state_key, int action_index, double reward_z,
                std::uint64_t next_state_key,
                const std::vector<FeasibleAction>& next_candidates, double beta,
                double gamma) {
  double max_next = 0.0;
  bool have_next = false;
  for (const FeasibleAction& c : next_candidates) {
    const double v = q.value(next_state_key, c.action_index);
    if (!have_next || v > max_next) {
      max_next = v;
      have_next = true;
    }
  }
  if (!have_next) max_next = 0.0;
  const double old_v = q.value(state_key, action_index);
  const double new_v = old_v + beta * (reward_z + gamma * max_next - old_v);
  q.set_value(state_key, action_index, new_v);
  return new_v;
}

namespace {

void validate_params(const RlaaParams& p) {
  auto unit = [](double x, const char* field) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw std::invalid_argument(std::string("rlaa: ") + field + " must be in [0, 1]");
    }
  };
  unit(p.epsilon, "epsilon");
  unit(p.beta, "beta");
  unit(p.gamma, "gamma");
  if (p.max_episodes < 0) throw std::invalid_argument("rlaa: max_episodes must be >= 0");
}

double episode_epsilon(const RlaaParams& p, int episode) {
  if (!p.epsilon_decay || p.max_episodes <= 1) return p.epsilon;
  const double frac =
      static_cast<double>(episode) / static_cast<double>(p.max_episodes - 1);
  return p.epsilon * (1.0 - frac);
}

}  // namespace

TrainResult train(const Instance& inst, const RlaaParams& params) {
  validate_params(params);
  const int n = inst.num_ues();
  TrainResult out;
  QTable q(inst.num_actions());
  Rng rng(params.rng_seed);
  StateVector state(n, Action::local());
  CapacityState cap(inst);
  const CapacityState empty_cap(inst);
  out.trace.reserve(params.max_episodes);

  std::vector<FeasibleAction> cands, next_cands;
  if (n > 0) feasible_actions(inst, 0, empty_cap, cands);

  for (int episode = 0; episode < params.max_episodes; ++episode) {
    const double eps_used = episode_epsilon(params, episode);
    cap.reset();
    double episode_energy_j = 0.0;
    // Entering iteration i, cands holds UE i's feasible set under the
    // capacity committed so far; the lookahead below keeps it current.
    for (int i = 0; i < n; ++i) {
      const std::uint64_t key = state_key(inst, params.keying, state, i);
      const FeasibleAction chosen = select_action(q, key, cands, eps_used, rng);
      cap.commit(chosen.action, chosen.min_freq_hz);
      const double energy_j = action_energy(inst, i, chosen.action);
      episode_energy_j += energy_j;
      state[i] = chosen.action;
      std::uint64_t next_key;
      if (i + 1 < n) {
        feasible_actions(inst, i + 1, cap, next_cands);
        next_key = state_key(inst, params.keying, state, i + 1);
      } else {
        // Wrap to UE 0 of the next episode, which starts from empty capacity.
        feasible_actions(inst, 0, empty_cap, next_cands);
        next_key = state_key(inst, params.keying, state, 0);
      }
      q_update(q, key, chosen.action_index, reward(energy_j), next_key, next_cands,
               params.beta, params.gamma);
      cands.swap(next_cands);
    }
    out.trace.push_back({episode, episode_energy_j, eps_used});
  }

  out.assignment = extract_policy(q, inst, params.keying);
  out.qtable = std::move(q);
  return out;
}

Assignment extract_policy(const QTable& q, const Instance& inst, StateKeying keying) {
  const int n = inst.num_ues();
  Assignment asg;
  asg.decisions.reserve(n);
  CapacityState cap(inst);
  StateVector state(n, Action::local());
  std::vector<FeasibleAction> cands;
  for (int i = 0; i < n; ++i) {
    feasible_actions(inst, i, cap, cands);
    const std::uint64_t key = state_key(inst, keying, state, i);
    std::size_t best = 0;
    double best_v = q.value(key, cands[0].action_index);
    for (std::size_t c = 1; c < cands.size(); ++c) {
      const double v = q.value(key, cands[c].action_index);
      if (v > best_v) {
        best_v = v;
        best = c;
      }
    }
    const FeasibleAction& pick = cands[best];
    cap.commit(pick.action, pick.min_freq_hz);
    asg.decisions.push_back({pick.action, pick.min_freq_hz});
    state[i] = pick.action;
  }
  return asg;
}

std::string trace_to_csv(const std::vector<EpisodeStats>& trace) {
  std::ostringstream os;
  os << "episode,total_energy_j,epsilon_used\n";
  char buf[64];
  for (const EpisodeStats& s : trace) {
    os << s.episode << ',';
    std::snprintf(buf, sizeof buf, "%.17g", s.total_energy_j);
    os << buf << ',';
    std::snprintf(buf, sizeof buf, "%.17g", s.epsilon_used);
    os << buf << '\n';
  }
  return os.str();
}

std::string qtable_to_text(const QTable& q, const Instance& inst) {
  std::ostringstream os;
  char buf[64];
  for (const QTable::Entry& e : q.entries()) {
    const Action a = inst.action_at(e.action_index);
    os << "state=" << e.state_key << " action=";
    if (a.is_local()) {
      os << "local";
    } else {
      os << a.uav << ':' << a.slot;
    }
    std::snprintf(buf, sizeof buf, "%.17g", e.value);
    os << " value=" << buf << '\n';
  }
  return os.str();
}

}  // namespace uavmec
