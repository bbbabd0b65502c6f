#pragma once

#include <optional>

#include "owcsim/scenario.hpp"

namespace owcsim {

inline constexpr double kBoltzmann = 1.380649e-23;       // J/K
inline constexpr double kElementaryCharge = 1.602176634e-19;  // C

/// Receiver noise variances in A^2.
struct NoiseBreakdown {
  double thermal_var = 0.0;
  double preamp_var = 0.0;
  double rin_var = 0.0;
  double background_shot_var = 0.0;
  /// 2 q i_sig B; stays 0 unless NoiseOptions::include_signal_shot is set.
  double signal_shot_var = 0.0;
  double total_std = 0.0;
};

/// `rin_db_per_hz` is empty for sources without laser RIN (LEDs).
/// `rin_sources` > 1 spreads the photocurrent over that many independent
/// emitters of equal strength, which divides the RIN variance by it.
NoiseBreakdown noise_components(const ReceiverParams& receiver, double bandwidth,
                                std::optional<double> rin_db_per_hz,
                                double signal_photocurrent,
                                const NoiseOptions& options = {}, int rin_sources = 1);

}  // namespace owcsim
