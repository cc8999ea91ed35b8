#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "uavmec/feasibility.hpp"
#include "uavmec/rlaa.hpp"

namespace uavmec {

enum class SolverKind { ES, LE, RO, GO, RLAA };

std::string to_string(SolverKind kind);
std::optional<SolverKind> parse_solver(std::string_view s);

// Everyone computes at home, at the minimal deadline-meeting frequency.
Assignment solve_le(const Instance& inst);

// Uniform draw over the currently feasible offload actions, walking UEs in
// index order; falls back to local when no offload fits. With
// include_local_in_draw, local joins the draw instead of being a fallback.
Assignment solve_ro(const Instance& inst, std::uint64_t seed,
                    bool include_local_in_draw = false);

// Nearest feasible (UAV, slot) by 3-D distance, ties to the earliest action;
// local when no offload fits.
Assignment solve_go(const Instance& inst);

inline constexpr std::uint64_t kDefaultEsNodeBudget = 100'000'000;

struct EsResult {
  Assignment assignment;
  double energy_j = 0.0;
  std::uint64_t nodes_visited = 0;
};

// Exact search: depth-first over per-UE candidates sorted by ascending
// energy, pruning branches whose lower bound (accumulated energy plus the sum
// of the remaining UEs' unconstrained minima) cannot beat the incumbent.
// Returns nullopt when the node budget runs out; never an approximate answer.
std::optional<EsResult> solve_es(const Instance& inst,
                                 std::uint64_t node_budget = kDefaultEsNodeBudget);

struct SolveOptions {
  std::uint64_t seed = 1;  // RO draw stream; overrides rlaa.rng_seed for RLAA
  RlaaParams rlaa;
  std::uint64_t es_node_budget = kDefaultEsNodeBudget;
  bool ro_include_local = false;
};

struct SolveOutcome {
  std::optional<Assignment> assignment;  // empty = refused (ES budget)
  double energy_j = 0.0;
  double wall_time_s = 0.0;
};

SolveOutcome run_solver(SolverKind kind, const Instance& inst, const SolveOptions& opts);

}  // namespace uavmec
