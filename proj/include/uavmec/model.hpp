#pragma once

namespace uavmec {

// Uplink radio parameters. tx_power_w is the default per-UE transmit power;
// heterogeneous instances override it on the UE record.
struct RadioParams {
  double bandwidth_hz = 1e6;
  double tx_power_w = 1.0;
  double g0 = 1.42e-4;           // channel power gain at the 1 m reference distance
  double big_g0 = 2.2846;        // antenna/system gain constant
  double noise_power_w = 1e-12;  // total noise power over the band

  // Combined link constant g0 * G0 / sigma^2.
  double alpha() const { return g0 * big_g0 / noise_power_w; }
};

// Reading of a noise figure quoted in dBm: either the total in-band noise
// power, or a per-Hz density that gets integrated over the bandwidth.
enum class NoiseMode { Total, Psd };

double noise_power_watts(double noise_dbm, NoiseMode mode, double bandwidth_hz);

// One computation task: payload to upload and CPU work to run.
struct Task {
  double data_bits = 0.0;
  double cycles = 0.0;
};

// Ground-plane position, altitude 0.
struct UePosition {
  double x_m = 0.0;
  double y_m = 0.0;
};

// Circular flight path sampled at num_slots equally spaced angular positions;
// the UAV sits still at each sample point for the duration of the slot.
struct UavTrajectory {
  double center_x_m = 0.0;
  double center_y_m = 0.0;
  double radius_m = 800.0;
  double altitude_m = 350.0;
  int num_slots = 12;
  double phase_rad = 0.0;  // angle of slot 1
};

struct ComputeParams {
  double k = 1e-27;          // effective switched capacitance
  double v = 3.0;            // CPU power exponent
  double f_max_hz = 150e9;   // per-(UAV, slot) frequency budget
  int slot_ue_cap = 150;     // max UEs served per (UAV, slot)
  double t_max_s = 1.0;      // task completion deadline
};

enum class ActionKind { Local, Offload };

struct Vec3 {
  double x_m = 0.0;
  double y_m = 0.0;
  double z_m = 0.0;
};

// Hover point during a 1-based slot: angle = phase + 2*pi*(slot-1)/num_slots.
Vec3 uav_position(const UavTrajectory& traj, int slot);

double horizontal_distance(const UePosition& ue, double uav_x_m, double uav_y_m);

// Uplink rate B * log2(1 + alpha * P / (H^2 + R^2)) in bits/s.
double data_rate(const RadioParams& rp, double horiz_dist_m, double altitude_m);

double transmission_time(double data_bits, double rate_bps);

double compute_time(double cycles, double freq_hz);

// UE-side energy of an offload: transmit power times upload time. The UAV
// side's compute energy is not billed to the UE.
double offload_energy(double tx_power_w, double t_tr_s);

// Local execution energy k * f^(v-1) * cycles: power k*f^v held for cycles/f
// seconds.
double local_energy(double k, double v, double freq_hz, double cycles);

double total_time(ActionKind kind, double t_tr_s, double t_c_s);

}  // namespace uavmec
