#include "owcsim/metrics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "owcsim/error.hpp"

namespace owcsim {

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double ook_sinr_threshold(double ber_limit) {
  if (!(ber_limit > 0.0 && ber_limit < 0.5))
    throw std::invalid_argument("ook_sinr_threshold: ber_limit must be in (0, 0.5)");
  // Q is decreasing; bisect on x = sqrt(sinr).
  double lo = 0.0;
  double hi = 1.0;
  while (q_function(hi) > ber_limit) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (q_function(mid) > ber_limit ? lo : hi) = mid;
  }
  return hi * hi;
}

double rate_per_user(double sinr, double bandwidth, RateModel model, double fec_ber_limit) {
  if (!(sinr >= 0.0)) throw std::invalid_argument("rate_per_user: sinr must be >= 0");
  if (!(bandwidth > 0.0)) throw std::invalid_argument("rate_per_user: bandwidth must be > 0");
  if (model == RateModel::Shannon) return bandwidth * std::log2(1.0 + sinr);
  if (sinr == 0.0) return 0.0;
  return q_function(std::sqrt(sinr)) <= fec_ber_limit ? bandwidth : 0.0;
}

RateReport aggregate_rates(std::span<const double> raw_rates, std::span<const double> duty) {
  if (raw_rates.size() != duty.size())
    throw std::invalid_argument("aggregate_rates: size mismatch");
  RateReport r;
  r.duty_factors.assign(duty.begin(), duty.end());
  r.per_user_rate.resize(raw_rates.size());
  for (std::size_t i = 0; i < raw_rates.size(); ++i) {
    r.per_user_rate[i] = raw_rates[i] * duty[i];
    r.sum_rate += r.per_user_rate[i];
  }
  return r;
}

double consumed_power(const Scenario& scenario, System system) {
  if (scenario.aps.empty()) throw ConfigError("system.n_aps", "must be >= 1");
  const double per_ap =
      system == System::Vcsel
          ? scenario.vcsel.n_elements * scenario.vcsel.electrical_power_per_element
          : scenario.led.n_emitters * scenario.led.electrical_power_per_emitter;
  return per_ap * scenario.n_aps();
}

EnergyReport consumption_factor(double sum_rate, double consumed_power) {
  if (!(consumed_power > 0.0))
    throw std::invalid_argument("consumption_factor: consumed power must be > 0");
  EnergyReport e;
  e.consumed_power = consumed_power;
  e.consumption_factor = sum_rate / consumed_power;
  e.consumption_factor_gb_per_mj = e.consumption_factor * 1e-12;
  return e;
}

}  // namespace owcsim
