#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "uavmec/harness.hpp"

namespace {

using namespace uavmec;

// Exit codes: 0 success, 1 usage or I/O error, 2 infeasibility or search
// refusal, 3 oracle failure.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitOracle = 3;

struct CommonOpts {
  std::string preset = "fig2";
  std::string data_unit = "kibibit";
  std::string noise_mode = "total";
  std::uint64_t seed = 1;
  int episodes = 4000;
  double epsilon = 0.9;
  double beta = 0.2;
  double gamma = 0.9;
  std::string keying = "perue";
  bool epsilon_decay = false;
  std::uint64_t budget = kDefaultEsNodeBudget;
  bool ro_include_local = false;
};

void add_rlaa_options(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--episodes", opts.episodes, "training episodes")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--epsilon", opts.epsilon, "exploration probability")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--beta", opts.beta, "learning rate")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--gamma", opts.gamma, "reward decay")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--keying", opts.keying, "state keying")
      ->check(CLI::IsMember({"perue", "jointhash"}));
  cmd->add_flag("--epsilon-decay", opts.epsilon_decay, "decay epsilon linearly to 0");
}

void add_scenario_options(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--preset", opts.preset, "scenario geometry")
      ->check(CLI::IsMember({"fig2", "fig3", "fig4"}));
  cmd->add_option("--data-unit", opts.data_unit, "bits per KB of payload")
      ->check(CLI::IsMember({"kibibit", "kibibyte"}));
  cmd->add_option("--noise-mode", opts.noise_mode, "noise figure reading")
      ->check(CLI::IsMember({"total", "psd"}));
}

RlaaParams rlaa_params(const CommonOpts& opts) {
  RlaaParams params;
  params.epsilon = opts.epsilon;
  params.beta = opts.beta;
  params.gamma = opts.gamma;
  params.max_episodes = opts.episodes;
  params.rng_seed = opts.seed;
  params.keying = opts.keying == "jointhash" ? StateKeying::JointHash : StateKeying::PerUe;
  params.epsilon_decay = opts.epsilon_decay;
  return params;
}

int cmd_generate(const CommonOpts& opts, int n, const std::string& out) {
  ScenarioSpec spec = preset(opts.preset, n, *parse_data_unit(opts.data_unit),
                             *parse_noise_mode(opts.noise_mode));
  spec.seed = opts.seed;
  save_instance(generate(spec), out);
  std::printf("wrote %s\n", out.c_str());
  return kExitOk;
}

int cmd_solve(const CommonOpts& opts, const std::string& instance_path,
              const std::string& solver_name, const std::string& out) {
  const Instance inst = load_instance(instance_path);
  const SolverKind kind = *parse_solver(solver_name);
  SolveOptions solve_opts;
  solve_opts.seed = opts.seed;
  solve_opts.rlaa = rlaa_params(opts);
  solve_opts.es_node_budget = opts.budget;
  solve_opts.ro_include_local = opts.ro_include_local;
  const SolveOutcome outcome = run_solver(kind, inst, solve_opts);
  if (!outcome.assignment) {
    std::fprintf(stderr, "exhaustive search refused: node budget %llu exceeded\n",
                 static_cast<unsigned long long>(opts.budget));
    return kExitInfeasible;
  }
  const ConstraintReport report = check_assignment(inst, *outcome.assignment);
  if (!report.feasible()) {
    std::fprintf(stderr, "solver produced an infeasible assignment:\n%s",
                 report.to_text().c_str());
    return kExitInfeasible;
  }
  if (!out.empty()) save_assignment(*outcome.assignment, out);
  std::printf("%.12g J\n", outcome.energy_j);
  return kExitOk;
}

int cmd_verify(const std::string& instance_path, const std::string& assignment_path) {
  const Instance inst = load_instance(instance_path);
  const Assignment asg = load_assignment(assignment_path);
  const ConstraintReport report = check_assignment(inst, asg);
  if (!report.feasible()) {
    std::fprintf(stderr, "%s", report.to_text().c_str());
    return kExitInfeasible;
  }
  std::printf("feasible\n");
  return kExitOk;
}

int cmd_sweep(const CommonOpts& opts, const std::vector<int>& n_values,
              const std::vector<std::string>& solver_names, int reps,
              const std::string& timing, int jobs, const std::string& out_dir) {
  ExperimentSpec spec;
  spec.preset_name = opts.preset;
  spec.n_values = n_values;
  for (const std::string& name : solver_names) spec.solvers.push_back(*parse_solver(name));
  spec.replications = reps;
  spec.base_seed = opts.seed;
  spec.rlaa = rlaa_params(opts);
  spec.es_node_budget = opts.budget;
  spec.ro_include_local = opts.ro_include_local;
  spec.data_unit = *parse_data_unit(opts.data_unit);
  spec.noise_mode = *parse_noise_mode(opts.noise_mode);
  spec.timing = timing == "measured" ? TimingMode::Measured : TimingMode::None;
  spec.jobs = jobs;
  const std::vector<ResultRow> rows = run_experiment(spec);
  std::filesystem::create_directories(out_dir);
  const auto results_path = std::filesystem::path(out_dir) / "results.csv";
  const auto aggregate_path = std::filesystem::path(out_dir) / "aggregate.csv";
  emit_csv(rows, results_path, aggregate_path);
  std::printf("wrote %s and %s\n", results_path.c_str(), aggregate_path.c_str());
  return kExitOk;
}

int cmd_oracle(const CommonOpts& opts, const std::vector<int>& n_values, int reps,
               double tolerance) {
  ExperimentSpec spec;
  spec.preset_name = opts.preset;
  spec.n_values = n_values;
  spec.solvers = {SolverKind::ES, SolverKind::RLAA};
  spec.replications = reps;
  spec.base_seed = opts.seed;
  spec.rlaa = rlaa_params(opts);
  spec.es_node_budget = opts.budget;
  spec.data_unit = *parse_data_unit(opts.data_unit);
  spec.noise_mode = *parse_noise_mode(opts.noise_mode);
  const std::vector<OraclePoint> points = run_oracle(spec, tolerance);
  bool all_pass = true;
  for (const OraclePoint& p : points) {
    std::printf("n=%d reps=%d mean_es=%.12g J mean_learned=%.12g J gap=%.4f%% %s\n", p.n,
                p.replications, p.mean_es_j, p.mean_rlaa_j, p.relative_gap * 100.0,
                p.pass ? "pass" : "FAIL");
    all_pass = all_pass && p.pass;
  }
  return all_pass ? kExitOk : kExitOracle;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-UAV edge offloading: scenario generation, solvers, experiments"};
  app.require_subcommand(1);

  CommonOpts opts;
  int n = 10;
  int reps = 10;
  int jobs = 1;
  double tolerance = 0.02;
  std::string instance_path, assignment_path, out, out_dir = "out";
  std::string solver_name = "RLAA";
  std::string timing = "none";
  std::vector<int> n_values{3, 4, 5};
  std::vector<std::string> solver_names{"LE", "RO", "GO", "RLAA"};

  CLI::App* gen = app.add_subcommand("generate", "generate a scenario instance file");
  add_scenario_options(gen, opts);
  gen->add_option("--n", n, "number of UEs")->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", opts.seed, "generation seed");
  gen->add_option("--out", out, "instance file to write")->required();

  CLI::App* solve = app.add_subcommand("solve", "solve one instance file");
  solve->add_option("--instance", instance_path, "instance file")->required();
  solve->add_option("--solver", solver_name, "solver")
      ->transform(CLI::IsMember({"ES", "LE", "RO", "GO", "RLAA"}, CLI::ignore_case));
  solve->add_option("--seed", opts.seed, "stochastic solver seed");
  solve->add_option("--budget", opts.budget, "exhaustive search node budget");
  solve->add_flag("--include-local", opts.ro_include_local,
                  "random solver draws local too");
  add_rlaa_options(solve, opts);
  solve->add_option("--out", out, "assignment file to write");

  CLI::App* verify = app.add_subcommand("verify", "check an assignment against an instance");
  verify->add_option("--instance", instance_path, "instance file")->required();
  verify->add_option("--assignment", assignment_path, "assignment file")->required();

  CLI::App* sweep = app.add_subcommand("sweep", "run an experiment grid and emit CSVs");
  add_scenario_options(sweep, opts);
  sweep->add_option("--n", n_values, "UE counts")->delimiter(',');
  sweep->add_option("--solvers", solver_names, "solvers to run")
      ->delimiter(',')
      ->transform(CLI::IsMember({"ES", "LE", "RO", "GO", "RLAA"}, CLI::ignore_case));
  sweep->add_option("--reps", reps, "replications per point")->check(CLI::PositiveNumber);
  sweep->add_option("--seed", opts.seed, "base seed");
  sweep->add_option("--budget", opts.budget, "exhaustive search node budget");
  sweep->add_flag("--include-local", opts.ro_include_local,
                  "random solver draws local too");
  add_rlaa_options(sweep, opts);
  sweep->add_option("--timing", timing, "wall time column content")
      ->check(CLI::IsMember({"none", "measured"}));
  sweep->add_option("--jobs", jobs, "parallel workers")->check(CLI::PositiveNumber);
  sweep->add_option("--out", out_dir, "output directory");

  CLI::App* oracle = app.add_subcommand(
      "oracle", "compare the learned solver against exhaustive search at small N");
  add_scenario_options(oracle, opts);
  oracle->add_option("--n", n_values, "UE counts")->delimiter(',');
  oracle->add_option("--reps", reps, "replications per point")
      ->check(CLI::PositiveNumber);
  oracle->add_option("--seed", opts.seed, "base seed");
  oracle->add_option("--budget", opts.budget, "exhaustive search node budget");
  oracle->add_option("--tolerance", tolerance, "allowed relative mean-energy gap")
      ->check(CLI::PositiveNumber);
  add_rlaa_options(oracle, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_generate(opts, n, out);
    if (solve->parsed()) return cmd_solve(opts, instance_path, solver_name, out);
    if (verify->parsed()) return cmd_verify(instance_path, assignment_path);
    if (sweep->parsed()) {
      return cmd_sweep(opts, n_values, solver_names, reps, timing, jobs, out_dir);
    }
    if (oracle->parsed()) return cmd_oracle(opts, n_values, reps, tolerance);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
