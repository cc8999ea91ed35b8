#include "uavmec/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace uavmec {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) { return splitmix(h ^ v); }

std::uint64_t mix_str(std::uint64_t h, std::string_view s) {
  for (const char c : s) h = mix(h, static_cast<unsigned char>(c));
  return h;
}

constexpr std::uint64_t kInstanceStream = 0;
constexpr std::uint64_t kSolverStream = 1;

std::uint64_t derive(std::uint64_t base, std::string_view preset, int n, int replication,
                     std::uint64_t stream, std::uint64_t solver_tag) {
  std::uint64_t h = splitmix(base);
  h = mix_str(h, preset);
  h = mix(h, static_cast<std::uint64_t>(n));
  h = mix(h, static_cast<std::uint64_t>(replication));
  h = mix(h, stream);
  h = mix(h, solver_tag);
  return h;
}

}  // namespace

std::uint64_t instance_seed(std::uint64_t base, std::string_view preset, int n,
                            int replication) {
  return derive(base, preset, n, replication, kInstanceStream, 0);
}

std::uint64_t solver_seed(std::uint64_t base, std::string_view preset, int n,
                          SolverKind solver, int replication) {
  return derive(base, preset, n, replication, kSolverStream,
                static_cast<std::uint64_t>(solver) + 1);
}

namespace {

struct Cell {
  int n = 0;
  SolverKind solver = SolverKind::LE;
  int replication = 0;
};

ResultRow run_cell(const ExperimentSpec& spec, const Cell& cell) {
  ScenarioSpec sspec =
      preset(spec.preset_name, cell.n, spec.data_unit, spec.noise_mode);
  sspec.seed = instance_seed(spec.base_seed, spec.preset_name, cell.n, cell.replication);
  const Instance inst = generate(sspec);

  SolveOptions opts;
  opts.seed =
      solver_seed(spec.base_seed, spec.preset_name, cell.n, cell.solver, cell.replication);
  opts.rlaa = spec.rlaa;
  opts.es_node_budget = spec.es_node_budget;
  opts.ro_include_local = spec.ro_include_local;

  const SolveOutcome outcome = run_solver(cell.solver, inst, opts);

  ResultRow row;
  row.preset_name = spec.preset_name;
  row.n = cell.n;
  row.solver = cell.solver;
  row.seed = opts.seed;
  row.replication = cell.replication;
  if (!outcome.assignment) {
    row.skipped = true;
    return row;
  }
  const ConstraintReport report = check_assignment(inst, *outcome.assignment);
  if (!report.feasible()) {
    throw std::runtime_error("run_experiment: solver " + to_string(cell.solver) +
                             " produced an infeasible assignment (preset " +
                             spec.preset_name + ", n=" + std::to_string(cell.n) +
                             ", replication " + std::to_string(cell.replication) + "):\n" +
                             report.to_text());
  }
  row.total_energy_j = objective_energy(inst, *outcome.assignment);
  row.wall_time_s = spec.timing == TimingMode::Measured ? outcome.wall_time_s : 0.0;
  row.feasible = true;
  return row;
}

void validate_experiment(const ExperimentSpec& spec) {
  if (spec.n_values.empty()) {
    throw std::invalid_argument("experiment: n_values must be non-empty");
  }
  for (const int n : spec.n_values) {
    if (n < 0) throw std::invalid_argument("experiment: n values must be >= 0");
  }
  if (spec.solvers.empty()) {
    throw std::invalid_argument("experiment: solvers must be non-empty");
  }
  if (spec.replications < 1) {
    throw std::invalid_argument("experiment: replications must be >= 1");
  }
  if (spec.jobs < 1) throw std::invalid_argument("experiment: jobs must be >= 1");
  for (const SolverKind s : spec.solvers) {
    if (s == SolverKind::ES && spec.es_node_budget < 1) {
      throw std::invalid_argument("experiment: ES requires a node budget >= 1");
    }
  }
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
  validate_experiment(spec);
  std::vector<Cell> cells;
  for (const int n : spec.n_values) {
    for (const SolverKind solver : spec.solvers) {
      for (int rep = 0; rep < spec.replications; ++rep) {
        cells.push_back({n, solver, rep});
      }
    }
  }
  std::vector<ResultRow> rows(cells.size());
  const int workers = std::min<int>(spec.jobs, static_cast<int>(cells.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) rows[i] = run_cell(spec, cells[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= cells.size()) return;
          try {
            rows[i] = run_cell(spec, cells[i]);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
            return;
          }
        }
      });
    }
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }
  std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    if (a.n != b.n) return a.n < b.n;
    if (a.solver != b.solver) return static_cast<int>(a.solver) < static_cast<int>(b.solver);
    return a.replication < b.replication;
  });
  return rows;
}

namespace {

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

void emit_csv(const std::vector<ResultRow>& rows, const std::filesystem::path& results_csv,
              const std::filesystem::path& aggregate_csv) {
  std::ostringstream results;
  results << "preset,n,solver,seed,replication,total_energy_j,wall_time_s,feasible,status\n";
  for (const ResultRow& r : rows) {
    results << r.preset_name << ',' << r.n << ',' << to_string(r.solver) << ',' << r.seed
            << ',' << r.replication << ',';
    if (r.skipped) {
      results << ",,,skipped\n";
    } else {
      results << fmt17(r.total_energy_j) << ',' << fmt17(r.wall_time_s) << ','
              << (r.feasible ? "true" : "false") << ",ok\n";
    }
  }
  write_text(results_csv, results.str());

  // Aggregate in first-appearance order of (preset, n, solver); rows arrive
  // sorted from run_experiment, so groups are contiguous.
  std::ostringstream aggregate;
  aggregate << "preset,n,solver,replications,mean_energy_j,stddev_energy_j\n";
  std::size_t i = 0;
  while (i < rows.size()) {
    std::size_t j = i;
    int count = 0;
    double sum = 0.0;
    while (j < rows.size() && rows[j].preset_name == rows[i].preset_name &&
           rows[j].n == rows[i].n && rows[j].solver == rows[i].solver) {
      if (!rows[j].skipped) {
        count += 1;
        sum += rows[j].total_energy_j;
      }
      ++j;
    }
    if (count > 0) {
      const double mean = sum / count;
      double ss = 0.0;
      for (std::size_t r = i; r < j; ++r) {
        if (rows[r].skipped) continue;
        const double d = rows[r].total_energy_j - mean;
        ss += d * d;
      }
      const double stddev = count > 1 ? std::sqrt(ss / (count - 1)) : 0.0;
      aggregate << rows[i].preset_name << ',' << rows[i].n << ','
                << to_string(rows[i].solver) << ',' << count << ',' << fmt17(mean) << ','
                << fmt17(stddev) << '\n';
    }
    i = j;
  }
  write_text(aggregate_csv, aggregate.str());
}

std::vector<OraclePoint> run_oracle(const ExperimentSpec& spec, double tolerance) {
  validate_experiment(spec);
  std::vector<OraclePoint> points;
  for (const int n : spec.n_values) {
    OraclePoint point;
    point.n = n;
    point.replications = spec.replications;
    double sum_es = 0.0;
    double sum_rlaa = 0.0;
    bool es_refused = false;
    for (int rep = 0; rep < spec.replications; ++rep) {
      ScenarioSpec sspec = preset(spec.preset_name, n, spec.data_unit, spec.noise_mode);
      sspec.seed = instance_seed(spec.base_seed, spec.preset_name, n, rep);
      const Instance inst = generate(sspec);

      const auto es = solve_es(inst, spec.es_node_budget);
      if (!es) {
        es_refused = true;
        break;
      }
      sum_es += es->energy_j;

      RlaaParams params = spec.rlaa;
      params.rng_seed =
          solver_seed(spec.base_seed, spec.preset_name, n, SolverKind::RLAA, rep);
      const TrainResult learned = train(inst, params);
      const ConstraintReport report = check_assignment(inst, learned.assignment);
      if (!report.feasible()) {
        throw std::runtime_error("run_oracle: learned assignment infeasible:\n" +
                                 report.to_text());
      }
      sum_rlaa += objective_energy(inst, learned.assignment);
    }
    if (es_refused) {
      point.pass = false;
      points.push_back(point);
      continue;
    }
    point.mean_es_j = sum_es / spec.replications;
    point.mean_rlaa_j = sum_rlaa / spec.replications;
    point.relative_gap = (point.mean_rlaa_j - point.mean_es_j) / point.mean_es_j;
    point.pass = point.mean_rlaa_j <= point.mean_es_j * (1.0 + tolerance);
    points.push_back(point);
  }
  return points;
}

void save_assignment(const Assignment& asg, const std::filesystem::path& path) {
  nlohmann::json j;
  j["decisions"] = nlohmann::json::array();
  for (std::size_t i = 0; i < asg.decisions.size(); ++i) {
    const UeDecision& d = asg.decisions[i];
    j["decisions"].push_back({{"ue", i},
                              {"uav", d.action.uav},
                              {"slot", d.action.slot},
                              {"freq_hz", d.freq_hz}});
  }
  write_text(path, j.dump(2) + "\n");
}

Assignment load_assignment(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  Assignment asg;
  try {
    const nlohmann::json j = nlohmann::json::parse(buf.str());
    for (const nlohmann::json& jd : j.at("decisions")) {
      UeDecision d;
      const int uav = jd.at("uav").get<int>();
      const int slot = jd.at("slot").get<int>();
      d.action = (uav == 0 && slot == 0) ? Action::local() : Action::offload(uav, slot);
      d.freq_hz = jd.at("freq_hz").get<double>();
      asg.decisions.push_back(d);
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
  return asg;
}

}  // namespace uavmec
