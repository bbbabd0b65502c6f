#include "owcsim/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace owcsim {

NoiseBreakdown noise_components(const ReceiverParams& receiver, double bandwidth,
                                std::optional<double> rin_db_per_hz,
                                double signal_photocurrent,
                                const NoiseOptions& options, int rin_sources) {
  if (!(bandwidth >= 0.0)) throw std::invalid_argument("noise: bandwidth must be >= 0");
  if (!(signal_photocurrent >= 0.0))
    throw std::invalid_argument("noise: signal photocurrent must be >= 0");
  if (receiver.background_current < 0.0)
    throw std::invalid_argument("noise: background current must be >= 0");
  if (rin_sources < 1) throw std::invalid_argument("noise: rin_sources must be >= 1");

  NoiseBreakdown n;
  const double johnson =
      4.0 * kBoltzmann * receiver.temperature_k * bandwidth / receiver.load_resistance;
  const double noise_factor = std::pow(10.0, receiver.tia_noise_figure_db / 10.0);
  n.thermal_var = johnson;
  n.preamp_var = (noise_factor - 1.0) * johnson;
  if (rin_db_per_hz) {
    n.rin_var = std::pow(10.0, *rin_db_per_hz / 10.0) * signal_photocurrent *
                signal_photocurrent * bandwidth / rin_sources;
  }
  n.background_shot_var = 2.0 * kElementaryCharge * receiver.background_current * bandwidth;
  if (options.include_signal_shot)
    n.signal_shot_var = 2.0 * kElementaryCharge * signal_photocurrent * bandwidth;
  n.total_std = std::sqrt(n.thermal_var + n.preamp_var + n.rin_var +
                          n.background_shot_var + n.signal_shot_var);
  return n;
}

}  // namespace owcsim
