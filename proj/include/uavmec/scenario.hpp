#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uavmec/feasibility.hpp"

namespace uavmec {

// Interpretation of the "KB" task-size unit when building scenarios. The
// kibibit reading (1024 bits) keeps uplink payloads light enough that
// offloading stays the cheaper option across the reference geometries; the
// kibibyte reading (8192 bits) is retained for sensitivity runs.
enum class DataUnit { Kibibit, Kibibyte };

double kb_to_bits(double kb, DataUnit unit);

std::string to_string(DataUnit unit);
std::optional<DataUnit> parse_data_unit(std::string_view s);
std::string to_string(NoiseMode mode);
std::optional<NoiseMode> parse_noise_mode(std::string_view s);

struct Region {
  double x_min_m = -2000.0;
  double x_max_m = 2000.0;
  double y_min_m = -1000.0;
  double y_max_m = 1000.0;
};

struct ScenarioSpec {
  int num_ues = 0;
  std::vector<Vec3> uav_centers;  // x, y, altitude
  double radius_m = 800.0;
  int num_slots = 12;
  double phase_rad = 0.0;
  Region ue_region;
  double data_min_bits = 0.0;
  double data_max_bits = 0.0;
  double cycles_min = 1e8;
  double cycles_max = 1e9;
  RadioParams radio;
  ComputeParams compute;
  std::uint64_t seed = 1;
};

// Throws std::invalid_argument naming the offending field.
void validate_spec(const ScenarioSpec& spec);

// Draws UE positions, payload sizes, and cycle counts uniformly over the
// configured ranges; deterministic in the seed. Per UE the draw order is
// x, y, data, cycles.
Instance generate(const ScenarioSpec& spec);

// Reference geometries: fig2 = 2 UAVs, fig3 = 3, fig4 = 5, all flying 800 m
// circles at 350 m with 12 slots, with the standard radio/compute settings.
ScenarioSpec preset(const std::string& name, int n_ues,
                    DataUnit data_unit = DataUnit::Kibibit,
                    NoiseMode noise_mode = NoiseMode::Total);

std::string to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);
void save_instance(const Instance& inst, const std::filesystem::path& path);
Instance load_instance(const std::filesystem::path& path);

std::string to_json(const ScenarioSpec& spec);
ScenarioSpec spec_from_json(const std::string& text);
void save_spec(const ScenarioSpec& spec, const std::filesystem::path& path);
ScenarioSpec load_spec(const std::filesystem::path& path);

}  // namespace uavmec
