#include <cmath>
#include <numbers>
#include <stdexcept>

#include "checks.hpp"
#include "doctest.h"
#include "uavmec/model.hpp"
#include "uavmec/rng.hpp"

using namespace uavmec;
using testutil::check_abs;
using testutil::check_rel;

namespace {

// Reference values computed independently at full double precision and frozen.
constexpr double kAlphaRef = 324413200.00000006;        // 1.42e-4 * 2.2846 / 1e-12
constexpr double kRateOverheadBps = 11371379.723612551;  // default link, R=0, H=350
constexpr double kPsdRateBps = 3815.5973272178117;       // noise 1e-6 W, R=0, H=350
constexpr double kUploadS = 0.072040510466723731;        // 819200 bits at kRateOverheadBps
constexpr double kUploadRoundedRateS = 0.072036581076327821;  // 819200 / 1.1372e7
constexpr double kDiagDistM = 4565.084884205331;  // (-2000,-1000) to (2000,1200)

}  // namespace

TEST_SUITE("model") {

TEST_CASE("noise quoted in dBm converts by mode") {
  check_rel(noise_power_watts(-90.0, NoiseMode::Total, 1e6), 1e-12, 1e-12);
  check_rel(noise_power_watts(-90.0, NoiseMode::Psd, 1e6), 1e-6, 1e-12);
  check_rel(noise_power_watts(0.0, NoiseMode::Total, 1e6), 1e-3, 1e-12);
  check_rel(noise_power_watts(30.0, NoiseMode::Total, 1e6), 1.0, 1e-12);
}

TEST_CASE("link constant combines gains against noise") {
  RadioParams rp;
  check_rel(rp.alpha(), kAlphaRef, 1e-12);
}

TEST_CASE("hover points walk the circle at equal angular spacing") {
  UavTrajectory traj;
  traj.center_x_m = 100.0;
  traj.center_y_m = -50.0;
  traj.radius_m = 800.0;
  traj.altitude_m = 350.0;
  traj.num_slots = 12;

  const Vec3 p1 = uav_position(traj, 1);
  check_abs(p1.x_m, 900.0, 1e-9);
  check_abs(p1.y_m, -50.0, 1e-9);
  check_abs(p1.z_m, 350.0, 0.0);

  const Vec3 p4 = uav_position(traj, 4);  // quarter turn
  check_abs(p4.x_m, 100.0, 1e-9);
  check_abs(p4.y_m, 750.0, 1e-9);

  const Vec3 p7 = uav_position(traj, 7);  // half turn
  check_abs(p7.x_m, -700.0, 1e-9);
  check_abs(p7.y_m, -50.0, 1e-9);

  for (int t = 1; t <= traj.num_slots; ++t) {
    const Vec3 p = uav_position(traj, t);
    check_rel(std::hypot(p.x_m - traj.center_x_m, p.y_m - traj.center_y_m), 800.0, 1e-12);
  }
}

TEST_CASE("phase offsets the first hover angle") {
  UavTrajectory traj;
  traj.phase_rad = std::numbers::pi / 2.0;
  const Vec3 p = uav_position(traj, 1);
  check_abs(p.x_m, 0.0, 1e-9);
  check_abs(p.y_m, 800.0, 1e-9);
}

TEST_CASE("slots outside the trajectory are rejected") {
  UavTrajectory traj;
  CHECK_THROWS_AS(uav_position(traj, 0), std::domain_error);
  CHECK_THROWS_AS(uav_position(traj, 13), std::domain_error);
  CHECK_NOTHROW(uav_position(traj, 12));
}

TEST_CASE("horizontal distance") {
  check_abs(horizontal_distance({0.0, 0.0}, 0.0, 0.0), 0.0, 0.0);
  check_rel(horizontal_distance({1.0, 2.0}, 4.0, 6.0), 5.0, 1e-15);
  check_rel(horizontal_distance({-2000.0, -1000.0}, 2000.0, 1200.0), kDiagDistM, 1e-12);

  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const double ax = rng.uniform_real(-3000.0, 3000.0);
    const double ay = rng.uniform_real(-3000.0, 3000.0);
    const double bx = rng.uniform_real(-3000.0, 3000.0);
    const double by = rng.uniform_real(-3000.0, 3000.0);
    CHECK(horizontal_distance({ax, ay}, bx, by) ==
          horizontal_distance({bx, by}, ax, ay));
    CHECK(horizontal_distance({ax, ay}, bx, by) >= 0.0);
  }
}

TEST_CASE("uplink rate at the reference link") {
  RadioParams rp;
  check_rel(data_rate(rp, 0.0, 350.0), kRateOverheadBps, 1e-12);
}

TEST_CASE("uplink rate with per-Hz noise integrated over the band") {
  RadioParams rp;
  rp.noise_power_w = noise_power_watts(-90.0, NoiseMode::Psd, rp.bandwidth_hz);
  check_rel(data_rate(rp, 0.0, 350.0), kPsdRateBps, 1e-12);
}

TEST_CASE("rate falls as the link stretches") {
  RadioParams rp;
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const double r = rng.uniform_real(0.0, 4000.0);
    const double h = rng.uniform_real(100.0, 1000.0);
    const double rate = data_rate(rp, r, h);
    CHECK(rate > 0.0);
    CHECK(std::isfinite(rate));
    CHECK(data_rate(rp, r + 50.0, h) < rate);
    CHECK(data_rate(rp, r, h + 50.0) < rate);
  }
}

TEST_CASE("rate scales linearly with bandwidth at fixed SNR") {
  RadioParams rp;
  const double base = data_rate(rp, 500.0, 350.0);
  rp.bandwidth_hz *= 3.0;
  check_rel(data_rate(rp, 500.0, 350.0), 3.0 * base, 1e-12);
}

TEST_CASE("zero link gain carries nothing") {
  RadioParams rp;
  rp.g0 = 0.0;
  check_abs(data_rate(rp, 500.0, 350.0), 0.0, 0.0);
}

TEST_CASE("transmission time") {
  check_rel(transmission_time(819200.0, kRateOverheadBps), kUploadS, 1e-12);
  check_rel(transmission_time(819200.0, 1.1372e7), kUploadRoundedRateS, 1e-12);
  check_abs(transmission_time(0.0, 1e6), 0.0, 0.0);
  check_rel(transmission_time(2e6, 1e6), 2.0, 1e-15);
  CHECK_THROWS_AS(transmission_time(1e6, 0.0), std::domain_error);
  CHECK_THROWS_AS(transmission_time(1e6, -1.0), std::domain_error);
}

TEST_CASE("compute time") {
  check_rel(compute_time(1e9, 1.0776e9), 0.92798812175204159, 1e-12);
  check_rel(compute_time(1e9, 1e9), 1.0, 1e-15);
  check_abs(compute_time(0.0, 1e9), 0.0, 0.0);
  CHECK_THROWS_AS(compute_time(1e9, 0.0), std::domain_error);
}

TEST_CASE("offload energy is transmit power held for the upload") {
  check_rel(offload_energy(1.0, kUploadS), kUploadS, 1e-15);
  check_rel(offload_energy(2.5, 0.4), 1.0, 1e-15);
  check_abs(offload_energy(1.0, 0.0), 0.0, 0.0);
}

TEST_CASE("local energy closed form") {
  check_rel(local_energy(1e-27, 3.0, 1e9, 1e9), 1.0, 1e-12);
  check_rel(local_energy(1e-27, 3.0, 1e8, 1e8), 1e-3, 1e-12);
  check_abs(local_energy(0.0, 3.0, 1e9, 1e9), 0.0, 0.0);
  CHECK_THROWS_AS(local_energy(1e-27, 3.0, 0.0, 1e9), std::domain_error);

  // v = 3 makes the energy quadratic in the clock.
  check_rel(local_energy(1e-27, 3.0, 2e9, 1e9), 4.0 * local_energy(1e-27, 3.0, 1e9, 1e9),
            1e-12);
}

TEST_CASE("completion time covers only the phases the action runs") {
  check_rel(total_time(ActionKind::Local, 0.5, 0.7), 0.7, 1e-15);
  check_rel(total_time(ActionKind::Offload, 0.5, 0.3), 0.8, 1e-15);
  check_rel(total_time(ActionKind::Offload, kUploadS, 1.0 - kUploadS), 1.0, 1e-15);
}

TEST_CASE("quantities stay finite over the operating ranges") {
  RadioParams rp;
  Rng rng(23);
  for (int i = 0; i < 2000; ++i) {
    const double r = rng.uniform_real(0.0, 5000.0);
    const double h = rng.uniform_real(100.0, 1000.0);
    const double data = rng.uniform_real(1e5, 1e7);
    const double cycles = rng.uniform_real(1e8, 1e9);
    const double freq = rng.uniform_real(1e6, 1.5e11);

    const double rate = data_rate(rp, r, h);
    const double t_tr = transmission_time(data, rate);
    const double t_c = compute_time(cycles, freq);
    CHECK(std::isfinite(rate));
    CHECK(std::isfinite(t_tr));
    CHECK(std::isfinite(t_c));
    CHECK(rate > 0.0);
    CHECK(t_tr > 0.0);
    CHECK(t_c > 0.0);
    CHECK(offload_energy(1.0, t_tr) >= 0.0);
    CHECK(local_energy(1e-27, 3.0, freq, cycles) > 0.0);
  }
}

}  // TEST_SUITE
