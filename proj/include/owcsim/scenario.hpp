#pragma once

#include <cstdint>
#include <numbers>
#include <string_view>
#include <vector>

namespace owcsim {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  bool operator==(const Vec3&) const = default;
};

enum class System { Vcsel, Led };

std::string_view to_string(System system);

enum class RateModel { Shannon, OokFec };

std::string_view to_string(RateModel model);

struct Room {
  double width = 5.0;
  double depth = 5.0;
  double height = 4.0;
  double receive_plane_height = 1.0;

  bool operator==(const Room&) const = default;
};

enum class ApKind { VcselArray, LedUnit };

/// Ceiling-mounted access point. Orientation is always straight down.
struct ApSpec {
  Vec3 position;
  ApKind kind = ApKind::VcselArray;
  Vec3 orientation{0.0, 0.0, -1.0};

  bool operator==(const ApSpec&) const = default;
};

struct VcselArrayParams {
  int n_elements = 25;
  double pitch = 10e-6;
  double beam_waist_w0 = 5e-6;
  double wavelength = 1550e-9;
  double lens_focal_length = 0.127e-3;
  double vcsel_to_lens = 0.133e-3;
  // Carried for reference; the thin-lens model uses the focal length only.
  double lens_refractive_index = 1.5;
  double optical_power_per_element = 10e-3;
  double electrical_power_per_element = 50e-3;
  double bandwidth_hz = 1.5e9;
  double rin_db_per_hz = -155.0;

  bool operator==(const VcselArrayParams&) const = default;
};

struct LedUnitParams {
  int n_emitters = 4;
  double lambertian_order_m = 1.0;
  double optical_power_per_emitter = 1.0;
  double electrical_power_per_emitter = 3.0;
  double bandwidth_hz = 20e6;

  bool operator==(const LedUnitParams&) const = default;
};

/// Photodetector and front end. The two systems work at different
/// wavelengths, so responsivity is held per system.
struct ReceiverParams {
  double detector_area = 1e-4;
  double fov_half_angle = std::numbers::pi / 3.0;
  double responsivity_vcsel = 0.9;
  double responsivity_led = 0.4;
  double load_resistance = 50.0;
  double tia_noise_figure_db = 5.0;
  double temperature_k = 300.0;
  double background_current = 10e-6;

  double responsivity(System system) const {
    return system == System::Vcsel ? responsivity_vcsel : responsivity_led;
  }

  bool operator==(const ReceiverParams&) const = default;
};

enum class RinMode {
  Aggregate,   // RIN applied to the total received photocurrent
  PerElement,  // independent RIN per array element, contributions add
};

struct NoiseOptions {
  bool include_signal_shot = false;
  RinMode rin_mode = RinMode::Aggregate;

  bool operator==(const NoiseOptions&) const = default;
};

struct Scenario {
  Room room;
  std::vector<ApSpec> aps;
  VcselArrayParams vcsel;
  LedUnitParams led;
  ReceiverParams receiver;
  NoiseOptions noise;
  // Optional fixed user positions. When empty, users are dropped at random.
  std::vector<Vec3> users;
  double fec_ber_limit = 1e-3;
  RateModel rate_model = RateModel::Shannon;

  int n_aps() const { return static_cast<int>(aps.size()); }

  bool operator==(const Scenario&) const = default;
};

/// Scenario with every default applied and the default 8-AP grid.
Scenario default_scenario();

/// Throws ConfigError naming the first violated invariant.
void validate(const Scenario& scenario);

/// Ceiling grid of nx * ny == n_aps cells with |nx - ny| minimal and
/// nx <= ny (nx counts along the width, ny along the depth). Each AP sits
/// at the center of its cell; order is x-major.
std::vector<ApSpec> default_ap_grid(const Room& room, int n_aps);

/// n_users positions uniform over the footprint at the receive plane.
/// Draws x then y per user from Xoshiro256ss(seed), so the first k users
/// are the same for any n_users >= k.
std::vector<Vec3> place_users(const Room& room, int n_users,
                              std::uint64_t seed);

}  // namespace owcsim
