#include "owcsim/scenario.hpp"

#include <cmath>
#include <string>

#include "owcsim/error.hpp"
#include "owcsim/random.hpp"

namespace owcsim {

std::string_view to_string(System system) {
  return system == System::Vcsel ? "vcsel" : "led";
}

std::string_view to_string(RateModel model) {
  return model == RateModel::Shannon ? "shannon" : "ook";
}

namespace {

void require_finite_positive(double value, const char* key) {
  if (!std::isfinite(value) || value <= 0.0)
    throw ConfigError(key, "must be a finite value > 0");
}

bool is_finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

bool inside_footprint(const Room& room, const Vec3& p) {
  return p.x >= 0.0 && p.x <= room.width && p.y >= 0.0 && p.y <= room.depth;
}

}  // namespace

Scenario default_scenario() {
  Scenario scenario;
  scenario.aps = default_ap_grid(scenario.room, 8);
  return scenario;
}

void validate(const Scenario& s) {
  const Room& room = s.room;
  require_finite_positive(room.width, "room.width");
  require_finite_positive(room.depth, "room.depth");
  require_finite_positive(room.height, "room.height");
  require_finite_positive(room.receive_plane_height,
                          "room.receive_plane_height");
  if (room.receive_plane_height >= room.height)
    throw ConfigError("room.receive_plane_height",
                      "must be below the ceiling height");

  if (s.aps.empty()) throw ConfigError("system.n_aps", "must be >= 1");
  for (std::size_t i = 0; i < s.aps.size(); ++i) {
    const ApSpec& ap = s.aps[i];
    const std::string key = "aps[" + std::to_string(i) + "]";
    if (!is_finite(ap.position) || !inside_footprint(room, ap.position) ||
        ap.position.z != room.height)
      throw ConfigError(key, "access point must be on the ceiling inside the room");
    const double norm = std::sqrt(ap.orientation.x * ap.orientation.x +
                                  ap.orientation.y * ap.orientation.y +
                                  ap.orientation.z * ap.orientation.z);
    if (std::abs(norm - 1.0) > 1e-12 || ap.orientation.z >= 0.0)
      throw ConfigError(key, "orientation must be a unit vector pointing down");
  }

  const VcselArrayParams& v = s.vcsel;
  if (v.n_elements < 1) throw ConfigError("vcsel.n_elements", "must be >= 1");
  const int side = static_cast<int>(std::lround(std::sqrt(v.n_elements)));
  if (side * side != v.n_elements)
    throw ConfigError("vcsel.n_elements", "must be a perfect square");
  if (!std::isfinite(v.pitch) || v.pitch < 0.0)
    throw ConfigError("vcsel.pitch", "must be >= 0");
  require_finite_positive(v.beam_waist_w0, "vcsel.beam_waist_w0");
  require_finite_positive(v.wavelength, "vcsel.wavelength");
  require_finite_positive(v.lens_focal_length, "vcsel.lens_focal_length");
  require_finite_positive(v.vcsel_to_lens, "vcsel.vcsel_to_lens");
  require_finite_positive(v.lens_refractive_index,
                          "vcsel.lens_refractive_index");
  require_finite_positive(v.optical_power_per_element,
                          "vcsel.optical_power_per_element");
  require_finite_positive(v.electrical_power_per_element,
                          "vcsel.electrical_power_per_element");
  require_finite_positive(v.bandwidth_hz, "vcsel.bandwidth_hz");
  if (!std::isfinite(v.rin_db_per_hz) || v.rin_db_per_hz >= 0.0)
    throw ConfigError("vcsel.rin_db_per_hz", "must be < 0");

  const LedUnitParams& led = s.led;
  if (led.n_emitters < 1) throw ConfigError("led.n_emitters", "must be >= 1");
  if (!std::isfinite(led.lambertian_order_m) || led.lambertian_order_m < 1.0)
    throw ConfigError("led.lambertian_order_m", "must be >= 1");
  require_finite_positive(led.optical_power_per_emitter,
                          "led.optical_power_per_emitter");
  require_finite_positive(led.electrical_power_per_emitter,
                          "led.electrical_power_per_emitter");
  require_finite_positive(led.bandwidth_hz, "led.bandwidth_hz");

  const ReceiverParams& rx = s.receiver;
  require_finite_positive(rx.detector_area, "receiver.detector_area");
  require_finite_positive(rx.fov_half_angle, "receiver.fov_half_angle");
  if (rx.fov_half_angle > std::numbers::pi / 2.0)
    throw ConfigError("receiver.fov_half_angle", "fov_half_angle exceeds π/2");
  require_finite_positive(rx.responsivity_vcsel, "receiver.responsivity_vcsel");
  require_finite_positive(rx.responsivity_led, "receiver.responsivity_led");
  require_finite_positive(rx.load_resistance, "receiver.load_resistance");
  if (!std::isfinite(rx.tia_noise_figure_db) || rx.tia_noise_figure_db < 0.0)
    throw ConfigError("receiver.tia_noise_figure_db", "must be >= 0 dB");
  require_finite_positive(rx.temperature_k, "receiver.temperature_k");
  if (!std::isfinite(rx.background_current) || rx.background_current < 0.0)
    throw ConfigError("receiver.background_current", "must be >= 0");

  for (std::size_t i = 0; i < s.users.size(); ++i) {
    const Vec3& u = s.users[i];
    const std::string key = "system.users[" + std::to_string(i) + "]";
    if (!is_finite(u)) throw ConfigError(key, "non-finite coordinate");
    if (!inside_footprint(room, u))
      throw ConfigError(key, "user " + std::to_string(i) +
                                 " lies outside the room footprint");
    if (u.z != room.receive_plane_height)
      throw ConfigError(key, "user " + std::to_string(i) +
                                 " is not on the receive plane");
  }

  if (!(s.fec_ber_limit > 0.0 && s.fec_ber_limit < 0.5))
    throw ConfigError("system.fec_ber_limit", "must lie in (0, 0.5)");
}

std::vector<ApSpec> default_ap_grid(const Room& room, int n_aps) {
  if (n_aps < 1) throw ConfigError("system.n_aps", "must be >= 1");
  int nx = static_cast<int>(std::floor(std::sqrt(static_cast<double>(n_aps))));
  while (n_aps % nx != 0) --nx;
  const int ny = n_aps / nx;

  std::vector<ApSpec> aps;
  aps.reserve(static_cast<std::size_t>(n_aps));
  for (int ix = 0; ix < nx; ++ix) {
    for (int iy = 0; iy < ny; ++iy) {
      ApSpec ap;
      ap.position = {room.width * (ix + 0.5) / nx,
                     room.depth * (iy + 0.5) / ny, room.height};
      aps.push_back(ap);
    }
  }
  return aps;
}

std::vector<Vec3> place_users(const Room& room, int n_users,
                              std::uint64_t seed) {
  if (n_users < 1) throw ConfigError("n_users", "n_users must be ≥ 1");
  Xoshiro256ss rng(seed);
  std::vector<Vec3> users;
  users.reserve(static_cast<std::size_t>(n_users));
  for (int i = 0; i < n_users; ++i) {
    const double x = room.width * rng.uniform();
    const double y = room.depth * rng.uniform();
    users.push_back({x, y, room.receive_plane_height});
  }
  return users;
}

}  // namespace owcsim
