#pragma once

#include <Eigen/Dense>
#include <span>

#include "owcsim/scenario.hpp"

namespace owcsim {

/// LOS DC gains: rows are users, columns are APs. Entries are fractions of
/// the AP's emitted optical power that reach the user's detector.
struct ChannelMatrix {
  Eigen::MatrixXd gains;
  System system = System::Vcsel;

  int n_users() const { return static_cast<int>(gains.rows()); }
  int n_aps() const { return static_cast<int>(gains.cols()); }
};

/// Sum of the array elements' Gaussian spots collected by a square detector
/// of area `detector_area`, times cos(incidence), over total emitted power.
double vcsel_channel_gain(const ApSpec& ap, const VcselArrayParams& vcsel,
                          const ReceiverParams& receiver, const Vec3& user);

/// Lambertian LOS gain of a unit of co-located emitters. Every emitter has
/// the same pattern, so the collected fraction of the unit's total power is
/// the single-emitter gain.
double led_channel_gain(const ApSpec& ap, const LedUnitParams& led,
                        const ReceiverParams& receiver, const Vec3& user);

ChannelMatrix build_channel_matrix(const Scenario& scenario, System system,
                                   std::span<const Vec3> users);

/// Uses scenario.users.
ChannelMatrix build_channel_matrix(const Scenario& scenario, System system);

}  // namespace owcsim
