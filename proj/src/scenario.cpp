#include "uavmec/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "uavmec/rng.hpp"

namespace uavmec {

using nlohmann::json;

double kb_to_bits(double kb, DataUnit unit) {
  return kb * (unit == DataUnit::Kibibit ? 1024.0 : 8192.0);
}

std::string to_string(DataUnit unit) {
  return unit == DataUnit::Kibibit ? "kibibit" : "kibibyte";
}

std::optional<DataUnit> parse_data_unit(std::string_view s) {
  if (s == "kibibit") return DataUnit::Kibibit;
  if (s == "kibibyte") return DataUnit::Kibibyte;
  return std::nullopt;
}

std::string to_string(NoiseMode mode) {
  return mode == NoiseMode::Total ? "total" : "psd";
}

std::optional<NoiseMode> parse_noise_mode(std::string_view s) {
  if (s == "total") return NoiseMode::Total;
  if (s == "psd") return NoiseMode::Psd;
  return std::nullopt;
}

namespace {

void spec_positive(double x, const char* field) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::invalid_argument(std::string("scenario: ") + field + " must be finite and > 0");
  }
}

}  // namespace

void validate_spec(const ScenarioSpec& spec) {
  if (spec.num_ues < 0) throw std::invalid_argument("scenario: num_ues must be >= 0");
  if (spec.radius_m < 0.0 || !std::isfinite(spec.radius_m)) {
    throw std::invalid_argument("scenario: radius_m must be finite and >= 0");
  }
  if (spec.num_slots < 1) throw std::invalid_argument("scenario: num_slots must be >= 1");
  for (std::size_t j = 0; j < spec.uav_centers.size(); ++j) {
    if (!(spec.uav_centers[j].z_m > 0.0)) {
      throw std::invalid_argument("scenario: uav_centers[" + std::to_string(j) +
                                  "].z_m must be > 0");
    }
  }
  if (!(spec.ue_region.x_min_m < spec.ue_region.x_max_m)) {
    throw std::invalid_argument("scenario: ue_region x_min_m must be < x_max_m");
  }
  if (!(spec.ue_region.y_min_m < spec.ue_region.y_max_m)) {
    throw std::invalid_argument("scenario: ue_region y_min_m must be < y_max_m");
  }
  spec_positive(spec.data_min_bits, "data_min_bits");
  spec_positive(spec.data_max_bits, "data_max_bits");
  if (spec.data_min_bits > spec.data_max_bits) {
    throw std::invalid_argument("scenario: data_min_bits must be <= data_max_bits");
  }
  spec_positive(spec.cycles_min, "cycles_min");
  spec_positive(spec.cycles_max, "cycles_max");
  if (spec.cycles_min > spec.cycles_max) {
    throw std::invalid_argument("scenario: cycles_min must be <= cycles_max");
  }
  spec_positive(spec.radio.bandwidth_hz, "radio.bandwidth_hz");
  spec_positive(spec.radio.tx_power_w, "radio.tx_power_w");
  spec_positive(spec.radio.g0, "radio.g0");
  spec_positive(spec.radio.big_g0, "radio.big_g0");
  spec_positive(spec.radio.noise_power_w, "radio.noise_power_w");
  spec_positive(spec.compute.f_max_hz, "compute.f_max_hz");
  spec_positive(spec.compute.t_max_s, "compute.t_max_s");
  if (spec.compute.slot_ue_cap < 1) {
    throw std::invalid_argument("scenario: compute.slot_ue_cap must be >= 1");
  }
  if (spec.compute.k < 0.0) throw std::invalid_argument("scenario: compute.k must be >= 0");
  if (spec.compute.v < 1.0) throw std::invalid_argument("scenario: compute.v must be >= 1");
}

Instance generate(const ScenarioSpec& spec) {
  validate_spec(spec);
  Instance inst;
  inst.radio = spec.radio;
  inst.compute = spec.compute;
  inst.uavs.reserve(spec.uav_centers.size());
  for (const Vec3& c : spec.uav_centers) {
    inst.uavs.push_back({c.x_m, c.y_m, spec.radius_m, c.z_m, spec.num_slots, spec.phase_rad});
  }
  Rng rng(spec.seed);
  inst.ues.reserve(spec.num_ues);
  for (int i = 0; i < spec.num_ues; ++i) {
    Ue ue;
    ue.pos.x_m = rng.uniform_real(spec.ue_region.x_min_m, spec.ue_region.x_max_m);
    ue.pos.y_m = rng.uniform_real(spec.ue_region.y_min_m, spec.ue_region.y_max_m);
    ue.task.data_bits = rng.uniform_real(spec.data_min_bits, spec.data_max_bits);
    ue.task.cycles = rng.uniform_real(spec.cycles_min, spec.cycles_max);
    ue.tx_power_w = spec.radio.tx_power_w;
    ue.k = spec.compute.k;
    ue.v = spec.compute.v;
    inst.ues.push_back(ue);
  }
  validate_instance(inst);
  return inst;
}

ScenarioSpec preset(const std::string& name, int n_ues, DataUnit data_unit,
                    NoiseMode noise_mode) {
  std::vector<Vec3> centers;
  if (name == "fig2") {
    centers = {{1200.0, 1200.0, 350.0}, {-1200.0, -1200.0, 350.0}};
  } else if (name == "fig3") {
    centers = {{1200.0, 1200.0, 350.0}, {-1200.0, -1200.0, 350.0}, {-1200.0, 1200.0, 350.0}};
  } else if (name == "fig4") {
    centers = {{1200.0, 1200.0, 350.0},
               {-1200.0, -1200.0, 350.0},
               {-1200.0, 1200.0, 350.0},
               {1200.0, -1200.0, 350.0},
               {0.0, 0.0, 350.0}};
  } else {
    throw std::invalid_argument("preset: unknown name '" + name + "'");
  }
  ScenarioSpec spec;
  spec.num_ues = n_ues;
  spec.uav_centers = std::move(centers);
  spec.radius_m = 800.0;
  spec.num_slots = 12;
  spec.phase_rad = 0.0;
  spec.ue_region = {-2000.0, 2000.0, -1000.0, 1000.0};
  spec.data_min_bits = kb_to_bits(100.0, data_unit);
  spec.data_max_bits = kb_to_bits(1000.0, data_unit);
  spec.cycles_min = 1e8;
  spec.cycles_max = 1e9;
  spec.radio.bandwidth_hz = 1e6;
  spec.radio.tx_power_w = 1.0;
  spec.radio.g0 = 1.42e-4;
  spec.radio.big_g0 = 2.2846;
  spec.radio.noise_power_w = noise_power_watts(-90.0, noise_mode, spec.radio.bandwidth_hz);
  spec.compute.k = 1e-27;
  spec.compute.v = 3.0;
  spec.compute.f_max_hz = 150e9;
  spec.compute.slot_ue_cap = 150;
  spec.compute.t_max_s = 1.0;
  spec.seed = 1;
  return spec;
}

namespace {

json radio_to_json(const RadioParams& rp) {
  return {{"bandwidth_hz", rp.bandwidth_hz},
          {"tx_power_w", rp.tx_power_w},
          {"g0", rp.g0},
          {"big_g0", rp.big_g0},
          {"noise_power_w", rp.noise_power_w}};
}

RadioParams radio_from_json(const json& j) {
  RadioParams rp;
  rp.bandwidth_hz = j.at("bandwidth_hz").get<double>();
  rp.tx_power_w = j.at("tx_power_w").get<double>();
  rp.g0 = j.at("g0").get<double>();
  rp.big_g0 = j.at("big_g0").get<double>();
  rp.noise_power_w = j.at("noise_power_w").get<double>();
  return rp;
}

json compute_to_json(const ComputeParams& cp) {
  return {{"k", cp.k},
          {"v", cp.v},
          {"f_max_hz", cp.f_max_hz},
          {"slot_ue_cap", cp.slot_ue_cap},
          {"t_max_s", cp.t_max_s}};
}

ComputeParams compute_from_json(const json& j) {
  ComputeParams cp;
  cp.k = j.at("k").get<double>();
  cp.v = j.at("v").get<double>();
  cp.f_max_hz = j.at("f_max_hz").get<double>();
  cp.slot_ue_cap = j.at("slot_ue_cap").get<int>();
  cp.t_max_s = j.at("t_max_s").get<double>();
  return cp;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

std::string to_json(const Instance& inst) {
  json j;
  j["radio"] = radio_to_json(inst.radio);
  j["compute"] = compute_to_json(inst.compute);
  j["uavs"] = json::array();
  for (const auto& u : inst.uavs) {
    j["uavs"].push_back({{"center_x_m", u.center_x_m},
                         {"center_y_m", u.center_y_m},
                         {"radius_m", u.radius_m},
                         {"altitude_m", u.altitude_m},
                         {"num_slots", u.num_slots},
                         {"phase_rad", u.phase_rad}});
  }
  j["ues"] = json::array();
  for (const auto& ue : inst.ues) {
    j["ues"].push_back({{"x_m", ue.pos.x_m},
                        {"y_m", ue.pos.y_m},
                        {"data_bits", ue.task.data_bits},
                        {"cycles", ue.task.cycles},
                        {"tx_power_w", ue.tx_power_w},
                        {"k", ue.k},
                        {"v", ue.v}});
  }
  return j.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
  const json j = json::parse(text);
  Instance inst;
  inst.radio = radio_from_json(j.at("radio"));
  inst.compute = compute_from_json(j.at("compute"));
  for (const json& ju : j.at("uavs")) {
    UavTrajectory u;
    u.center_x_m = ju.at("center_x_m").get<double>();
    u.center_y_m = ju.at("center_y_m").get<double>();
    u.radius_m = ju.at("radius_m").get<double>();
    u.altitude_m = ju.at("altitude_m").get<double>();
    u.num_slots = ju.at("num_slots").get<int>();
    u.phase_rad = ju.at("phase_rad").get<double>();
    inst.uavs.push_back(u);
  }
  for (const json& je : j.at("ues")) {
    Ue ue;
    ue.pos.x_m = je.at("x_m").get<double>();
    ue.pos.y_m = je.at("y_m").get<double>();
    ue.task.data_bits = je.at("data_bits").get<double>();
    ue.task.cycles = je.at("cycles").get<double>();
    ue.tx_power_w = je.at("tx_power_w").get<double>();
    ue.k = je.at("k").get<double>();
    ue.v = je.at("v").get<double>();
    inst.ues.push_back(ue);
  }
  validate_instance(inst);
  return inst;
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
  write_file(path, to_json(inst));
}

Instance load_instance(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return instance_from_json(text);
  } catch (const json::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

std::string to_json(const ScenarioSpec& spec) {
  json j;
  j["num_ues"] = spec.num_ues;
  j["uav_centers"] = json::array();
  for (const auto& c : spec.uav_centers) {
    j["uav_centers"].push_back({{"x_m", c.x_m}, {"y_m", c.y_m}, {"z_m", c.z_m}});
  }
  j["radius_m"] = spec.radius_m;
  j["num_slots"] = spec.num_slots;
  j["phase_rad"] = spec.phase_rad;
  j["ue_region"] = {{"x_min_m", spec.ue_region.x_min_m},
                    {"x_max_m", spec.ue_region.x_max_m},
                    {"y_min_m", spec.ue_region.y_min_m},
                    {"y_max_m", spec.ue_region.y_max_m}};
  j["data_min_bits"] = spec.data_min_bits;
  j["data_max_bits"] = spec.data_max_bits;
  j["cycles_min"] = spec.cycles_min;
  j["cycles_max"] = spec.cycles_max;
  j["radio"] = radio_to_json(spec.radio);
  j["compute"] = compute_to_json(spec.compute);
  j["seed"] = spec.seed;
  return j.dump(2) + "\n";
}

ScenarioSpec spec_from_json(const std::string& text) {
  const json j = json::parse(text);
  ScenarioSpec spec;
  spec.num_ues = j.at("num_ues").get<int>();
  for (const json& jc : j.at("uav_centers")) {
    spec.uav_centers.push_back(
        {jc.at("x_m").get<double>(), jc.at("y_m").get<double>(), jc.at("z_m").get<double>()});
  }
  spec.radius_m = j.at("radius_m").get<double>();
  spec.num_slots = j.at("num_slots").get<int>();
  spec.phase_rad = j.at("phase_rad").get<double>();
  const json& jr = j.at("ue_region");
  spec.ue_region = {jr.at("x_min_m").get<double>(), jr.at("x_max_m").get<double>(),
                    jr.at("y_min_m").get<double>(), jr.at("y_max_m").get<double>()};
  spec.data_min_bits = j.at("data_min_bits").get<double>();
  spec.data_max_bits = j.at("data_max_bits").get<double>();
  spec.cycles_min = j.at("cycles_min").get<double>();
  spec.cycles_max = j.at("cycles_max").get<double>();
  spec.radio = radio_from_json(j.at("radio"));
  spec.compute = compute_from_json(j.at("compute"));
  spec.seed = j.at("seed").get<std::uint64_t>();
  validate_spec(spec);
  return spec;
}

void save_spec(const ScenarioSpec& spec, const std::filesystem::path& path) {
  write_file(path, to_json(spec));
}

ScenarioSpec load_spec(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return spec_from_json(text);
  } catch (const json::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

}  // namespace uavmec
