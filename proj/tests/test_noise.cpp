#include <doctest.h>

#include <cmath>

#include "owcsim/noise.hpp"

using namespace owcsim;

namespace {

bool within_rel(double got, double expected, double rel) {
  return std::abs(got - expected) <= rel * std::abs(expected);
}

ReceiverParams table_receiver() {
  ReceiverParams rx;  // 300 K, 50 ohm, NF 5 dB, 10 uA background
  return rx;
}

}  // namespace

TEST_CASE("noise_components reference values") {
  const ReceiverParams rx = table_receiver();
  const auto n = noise_components(rx, 1.5e9, -155.0, 1e-3);
  // 4 kB T B / R with CODATA kB
  CHECK(within_rel(n.thermal_var, 4.970e-13, 1e-3));
  // (10^0.5 - 1) * thermal
  CHECK(within_rel(n.preamp_var, 1.0746e-12, 1e-3));
  // 10^-15.5 * (1 mA)^2 * 1.5 GHz
  CHECK(within_rel(n.rin_var, 4.743e-13, 1e-3));
  // 2 q (10 uA) 1.5 GHz
  CHECK(within_rel(n.background_shot_var, 4.807e-15, 1e-3));
  CHECK(n.signal_shot_var == 0.0);

  const double sum = n.thermal_var + n.preamp_var + n.rin_var + n.background_shot_var;
  CHECK(within_rel(n.total_std * n.total_std, sum, 4e-16));
}

TEST_CASE("noise_components scaling properties") {
  const ReceiverParams rx = table_receiver();

  SUBCASE("linear in bandwidth") {
    const auto a = noise_components(rx, 1e8, -150.0, 2e-4);
    const auto b = noise_components(rx, 3e8, -150.0, 2e-4);
    CHECK(within_rel(b.thermal_var, 3 * a.thermal_var, 1e-15));
    CHECK(within_rel(b.preamp_var, 3 * a.preamp_var, 1e-15));
    CHECK(within_rel(b.rin_var, 3 * a.rin_var, 1e-15));
    CHECK(within_rel(b.background_shot_var, 3 * a.background_shot_var, 1e-15));
  }

  SUBCASE("zero bandwidth limit") {
    const auto z = noise_components(rx, 0.0, -150.0, 1e-3);
    CHECK(z.thermal_var == 0.0);
    CHECK(z.preamp_var == 0.0);
    CHECK(z.rin_var == 0.0);
    CHECK(z.background_shot_var == 0.0);
    CHECK(z.total_std == 0.0);
  }

  SUBCASE("RIN quadratic in photocurrent") {
    const auto a = noise_components(rx, 1e9, -155.0, 3e-4);
    const auto b = noise_components(rx, 1e9, -155.0, 6e-4);
    CHECK(b.rin_var == 4 * a.rin_var);
  }

  SUBCASE("without RIN the noise ignores the signal") {
    const auto a = noise_components(rx, 2e7, std::nullopt, 0.0);
    const auto b = noise_components(rx, 2e7, std::nullopt, 5e-3);
    CHECK(a.rin_var == 0.0);
    CHECK(a.total_std == b.total_std);
  }

  SUBCASE("per-element RIN divides by the element count") {
    const auto agg = noise_components(rx, 1e9, -155.0, 1e-3, {}, 1);
    const auto per = noise_components(rx, 1e9, -155.0, 1e-3, {}, 25);
    CHECK(within_rel(per.rin_var, agg.rin_var / 25, 1e-15));
  }

  SUBCASE("optional signal shot noise") {
    NoiseOptions opt;
    opt.include_signal_shot = true;
    const auto n = noise_components(rx, 1e9, std::nullopt, 1e-3, opt);
    CHECK(within_rel(n.signal_shot_var, 2 * kElementaryCharge * 1e-3 * 1e9, 1e-15));
  }
}

TEST_CASE("noise_components rejects negative inputs") {
  const ReceiverParams rx = table_receiver();
  CHECK_THROWS(noise_components(rx, -1.0, std::nullopt, 0.0));
  CHECK_THROWS(noise_components(rx, 1.0, std::nullopt, -1e-6));
  ReceiverParams bad = rx;
  bad.background_current = -1.0;
  CHECK_THROWS(noise_components(bad, 1.0, std::nullopt, 0.0));
}
