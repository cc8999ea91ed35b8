#include "uavmec/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace uavmec {

double noise_power_watts(double noise_dbm, NoiseMode mode, double bandwidth_hz) {
  const double watts = std::pow(10.0, (noise_dbm - 30.0) / 10.0);
  return mode == NoiseMode::Total ? watts : watts * bandwidth_hz;
}

Vec3 uav_position(const UavTrajectory& traj, int slot) {
  if (slot < 1 || slot > traj.num_slots) {
    throw std::domain_error("uav_position: slot " + std::to_string(slot) +
                            " outside 1.." + std::to_string(traj.num_slots));
  }
  const double theta = traj.phase_rad + 2.0 * std::numbers::pi *
                                            static_cast<double>(slot - 1) /
                                            static_cast<double>(traj.num_slots);
  return {traj.center_x_m + traj.radius_m * std::cos(theta),
          traj.center_y_m + traj.radius_m * std::sin(theta), traj.altitude_m};
}

double horizontal_distance(const UePosition& ue, double uav_x_m, double uav_y_m) {
  return std::hypot(uav_x_m - ue.x_m, uav_y_m - ue.y_m);
}

double data_rate(const RadioParams& rp, double horiz_dist_m, double altitude_m) {
  const double dist_sq = altitude_m * altitude_m + horiz_dist_m * horiz_dist_m;
  return rp.bandwidth_hz * std::log2(1.0 + rp.alpha() * rp.tx_power_w / dist_sq);
}

double transmission_time(double data_bits, double rate_bps) {
  if (!(rate_bps > 0.0)) throw std::domain_error("transmission_time: rate must be > 0");
  return data_bits / rate_bps;
}

double compute_time(double cycles, double freq_hz) {
  if (!(freq_hz > 0.0)) throw std::domain_error("compute_time: frequency must be > 0");
  return cycles / freq_hz;
}

double offload_energy(double tx_power_w, double t_tr_s) {
  return tx_power_w * t_tr_s;
}

double local_energy(double k, double v, double freq_hz, double cycles) {
  if (!(freq_hz > 0.0)) throw std::domain_error("local_energy: frequency must be > 0");
  return k * std::pow(freq_hz, v - 1.0) * cycles;
}

double total_time(ActionKind kind, double t_tr_s, double t_c_s) {
  return kind == ActionKind::Local ? t_c_s : t_tr_s + t_c_s;
}

}  // namespace uavmec
