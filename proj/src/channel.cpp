#include "owcsim/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "owcsim/optics.hpp"

namespace owcsim {

namespace {

struct LinkGeometry {
  double dx = 0.0;
  double dy = 0.0;
  double vertical = 0.0;
  double distance = 0.0;
  double cos_angle = 0.0;  // emission and incidence coincide: both face the z axis
};

LinkGeometry link_geometry(const ApSpec& ap, const Vec3& user) {
  LinkGeometry g;
  g.dx = user.x - ap.position.x;
  g.dy = user.y - ap.position.y;
  g.vertical = ap.position.z - user.z;
  if (!(g.vertical > 0.0))
    throw std::invalid_argument("user must be below the access point plane");
  g.distance = std::sqrt(g.dx * g.dx + g.dy * g.dy + g.vertical * g.vertical);
  g.cos_angle = g.vertical / g.distance;
  return g;
}

bool outside_fov(double cos_incid, double fov_half_angle) {
  return std::acos(std::min(cos_incid, 1.0)) > fov_half_angle;
}

}  // namespace

double vcsel_channel_gain(const ApSpec& ap, const VcselArrayParams& vcsel,
                          const ReceiverParams& receiver, const Vec3& user) {
  const LinkGeometry g = link_geometry(ap, user);
  if (outside_fov(g.cos_angle, receiver.fov_half_angle)) return 0.0;

  const optics::BeamState beam = optics::propagate_vcsel_element(vcsel, g.vertical);
  const double w = optics::beam_radius(beam);
  const double half_side = std::sqrt(receiver.detector_area) / 2.0;

  const int side = static_cast<int>(std::lround(std::sqrt(vcsel.n_elements)));
  const double center = (side - 1) / 2.0;
  double collected = 0.0;
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) {
      const double ex = (i - center) * vcsel.pitch;
      const double ey = (j - center) * vcsel.pitch;
      collected += optics::collect_power_square_aperture(
          g.dx - ex, g.dy - ey, w, beam.total_power, half_side);
    }
  }
  const double emitted = beam.total_power * vcsel.n_elements;
  return collected / emitted * g.cos_angle;
}

double led_channel_gain(const ApSpec& ap, const LedUnitParams& led,
                        const ReceiverParams& receiver, const Vec3& user) {
  const LinkGeometry g = link_geometry(ap, user);
  return optics::lambertian_los_gain(led.lambertian_order_m,
                                     receiver.detector_area, g.distance,
                                     g.cos_angle, g.cos_angle,
                                     receiver.fov_half_angle);
}

ChannelMatrix build_channel_matrix(const Scenario& scenario, System system,
                                   std::span<const Vec3> users) {
  ChannelMatrix h;
  h.system = system;
  h.gains.resize(static_cast<Eigen::Index>(users.size()), scenario.n_aps());
  for (std::size_t u = 0; u < users.size(); ++u) {
    for (int a = 0; a < scenario.n_aps(); ++a) {
      const ApSpec& ap = scenario.aps[static_cast<std::size_t>(a)];
      try {
        h.gains(static_cast<Eigen::Index>(u), a) =
            system == System::Vcsel
                ? vcsel_channel_gain(ap, scenario.vcsel, scenario.receiver, users[u])
                : led_channel_gain(ap, scenario.led, scenario.receiver, users[u]);
      } catch (const std::exception& e) {
        throw std::invalid_argument("channel (user " + std::to_string(u) +
                                    ", ap " + std::to_string(a) + "): " + e.what());
      }
    }
  }
  return h;
}

ChannelMatrix build_channel_matrix(const Scenario& scenario, System system) {
  return build_channel_matrix(scenario, system, scenario.users);
}

}  // namespace owcsim
