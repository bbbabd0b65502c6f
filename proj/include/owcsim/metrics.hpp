#pragma once

#include <span>
#include <vector>

#include "owcsim/scenario.hpp"

namespace owcsim {

struct RateReport {
  std::vector<double> per_user_rate;  // bits/s, already duty-scaled
  std::vector<double> duty_factors;
  double sum_rate = 0.0;
};

struct EnergyReport {
  double consumed_power = 0.0;        // W
  double consumption_factor = 0.0;    // bits/J
  double consumption_factor_gb_per_mj = 0.0;
};

/// Gaussian tail Q(x) = erfc(x / sqrt 2) / 2.
double q_function(double x);

/// Smallest SINR meeting Q(sqrt(sinr)) <= ber_limit.
double ook_sinr_threshold(double ber_limit);

/// Shannon: B log2(1 + sinr). OokFec: B when the OOK BER Q(sqrt(sinr)) is
/// within the FEC limit, else 0.
double rate_per_user(double sinr, double bandwidth, RateModel model, double fec_ber_limit);

/// Scales each rate by its duty factor and sums.
RateReport aggregate_rates(std::span<const double> raw_rates, std::span<const double> duty);

/// Transmitter electrical power of every AP, all always on.
double consumed_power(const Scenario& scenario, System system);

EnergyReport consumption_factor(double sum_rate, double consumed_power);

}  // namespace owcsim
