#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "uavmec/baselines.hpp"
#include "uavmec/scenario.hpp"

namespace uavmec {

// Whether result rows carry measured wall times. None writes zeros, keeping
// sweep outputs byte-identical across runs; Measured is opt-in.
enum class TimingMode { None, Measured };

struct ExperimentSpec {
  std::string preset_name = "fig2";
  std::vector<int> n_values;
  std::vector<SolverKind> solvers;
  int replications = 10;
  std::uint64_t base_seed = 1;
  RlaaParams rlaa;
  std::uint64_t es_node_budget = kDefaultEsNodeBudget;
  bool ro_include_local = false;
  DataUnit data_unit = DataUnit::Kibibit;
  NoiseMode noise_mode = NoiseMode::Total;
  TimingMode timing = TimingMode::None;
  int jobs = 1;
};

struct ResultRow {
  std::string preset_name;
  int n = 0;
  SolverKind solver = SolverKind::LE;
  std::uint64_t seed = 0;  // solver-stream seed of the row
  int replication = 0;
  double total_energy_j = 0.0;
  double wall_time_s = 0.0;
  bool feasible = false;
  bool skipped = false;  // ES refused within its node budget
};

// Instance stream: every solver of one (preset, n, replication) cell sees the
// same instance, so cross-solver comparisons are paired.
std::uint64_t instance_seed(std::uint64_t base, std::string_view preset, int n,
                            int replication);
// Solver stream: per-row seed for stochastic solvers.
std::uint64_t solver_seed(std::uint64_t base, std::string_view preset, int n,
                          SolverKind solver, int replication);

// Runs every (n, solver, replication) cell, verifies each produced assignment
// against the full constraint set before recording it, and returns rows
// sorted by (n, solver, replication). An infeasible solver output aborts with
// the violation report; it is never silently dropped.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

// results_csv: one row per cell. aggregate_csv: mean/stddev per
// (preset, n, solver) over the non-skipped rows.
void emit_csv(const std::vector<ResultRow>& rows, const std::filesystem::path& results_csv,
              const std::filesystem::path& aggregate_csv);

struct OraclePoint {
  int n = 0;
  int replications = 0;
  double mean_es_j = 0.0;
  double mean_rlaa_j = 0.0;
  double relative_gap = 0.0;  // (rlaa - es) / es
  bool pass = false;
};

// Paired small-N comparison of the learned solver against exhaustive search:
// pass means the mean learned energy stays within the tolerance of the mean
// optimum. An ES budget refusal fails the point.
std::vector<OraclePoint> run_oracle(const ExperimentSpec& spec, double tolerance);

void save_assignment(const Assignment& asg, const std::filesystem::path& path);
Assignment load_assignment(const std::filesystem::path& path);

}  // namespace uavmec
