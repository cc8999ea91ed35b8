#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "uavmec/feasibility.hpp"
#include "uavmec/rng.hpp"

namespace uavmec {

// How learning states are keyed. PerUe keys on the UE index alone, which
// keeps the table at N rows and is the operating default. JointHash keys on a
// hash of the whole decision vector for a finer-grained state space.
enum class StateKeying { PerUe, JointHash };

struct RlaaParams {
  double epsilon = 0.9;  // exploration probability
  double beta = 0.2;     // learning rate
  double gamma = 0.9;    // reward decay
  int max_episodes = 10000;
  std::uint64_t rng_seed = 1;
  StateKeying keying = StateKeying::PerUe;
  bool epsilon_decay = false;  // linear decay to 0 over the episodes
};

// Current decision of every UE, in UE order.
using StateVector = std::vector<Action>;

std::uint64_t hash_state(const Instance& inst, const StateVector& sv);
std::uint64_t state_key(const Instance& inst, StateKeying keying, const StateVector& sv,
                        int ue);

// Action-value store. Rows materialize on first write; absent cells read 0.
class QTable {
 public:
  QTable() = default;
  explicit QTable(int num_actions) : num_actions_(num_actions) {}

  int num_actions() const { return num_actions_; }
  double value(std::uint64_t state_key, int action_index) const;
  void set_value(std::uint64_t state_key, int action_index, double v);

  struct Entry {
    std::uint64_t state_key = 0;
    int action_index = 0;
    double value = 0.0;
  };
  // All cells of materialized rows, sorted by (state_key, action_index).
  std::vector<Entry> entries() const;

 private:
  int num_actions_ = 0;
  std::unordered_map<std::uint64_t, std::vector<double>> rows_;
};

// 1 / energy; rejects non-positive energies.
double reward(double energy_j);

// Epsilon-greedy draw over the candidate list, which must be in canonical
// order; greedy ties go to the earliest candidate.
FeasibleAction select_action(const QTable& q, std::uint64_t state_key,
                             const std::vector<FeasibleAction>& candidates, double epsilon,
                             Rng& rng);

// One-cell update toward reward + gamma * max over the successor candidates;
// returns the new value.
double q_update(QTable& q, std::uint64_t state_key, int action_index, double reward_z,
                std::uint64_t next_state_key,
                const std::vector<FeasibleAction>& next_candidates, double beta,
                double gamma);

struct EpisodeStats {
  int episode = 0;
  double total_energy_j = 0.0;
  double epsilon_used = 0.0;
};

struct TrainResult {
  Assignment assignment;
  std::vector<EpisodeStats> trace;
  QTable qtable;
};

// Episodic sweep: every episode walks the UEs in index order against a fresh
// capacity state, choosing epsilon-greedily among the currently feasible
// actions at minimal frequency, and updates one Q cell per UE. The final
// assignment is the greedy policy rolled out from scratch.
TrainResult train(const Instance& inst, const RlaaParams& params);

Assignment extract_policy(const QTable& q, const Instance& inst,
                          StateKeying keying = StateKeying::PerUe);

std::string trace_to_csv(const std::vector<EpisodeStats>& trace);
std::string qtable_to_text(const QTable& q, const Instance& inst);

}  // namespace uavmec
