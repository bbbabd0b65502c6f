#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "owcsim/channel.hpp"
#include "owcsim/scenario.hpp"

namespace owcsim {

struct NoiseSummary {
  double thermal_var = 0.0;
  double preamp_var = 0.0;
  double rin_var_mean = 0.0;  // over served users
  double background_shot_var = 0.0;
};

/// One Monte Carlo realization for one system.
///
/// Users whose channel row is negligible (row norm at or below
/// kRankTolerance times the largest row norm in the drop) have no usable
/// link from any AP. They are marked unserved, get rate 0 and are left out
/// of scheduling and precoding; every other user is served.
struct DropResult {
  System system = System::Vcsel;
  int n_users = 0;
  int drop_index = 0;
  std::uint64_t seed = 0;
  std::vector<Vec3> users;

  bool failed = false;
  std::string failure_reason;

  std::vector<bool> served;
  std::vector<double> per_user_sinr;  // linear; 0 for unserved users
  std::vector<double> per_user_rate;  // bits/s, duty-scaled
  std::vector<double> duty_factors;
  double sum_rate = 0.0;
  double consumed_power = 0.0;
  double cf_bits_per_joule = 0.0;
  NoiseSummary noise;

  int served_count() const;
};

/// Per-(system, n_users) statistics over the drops that did not fail.
/// Standard deviations are sample (n - 1) deviations, 0 for a single drop.
struct CellSummary {
  System system = System::Vcsel;
  int n_users = 0;
  int n_drops = 0;
  int n_failed = 0;
  double mean_sum_rate = 0.0;
  double std_sum_rate = 0.0;
  double mean_cf = 0.0;
  double std_cf = 0.0;
  double consumed_power = 0.0;
  double mean_served = 0.0;

  int n_ok() const { return n_drops - n_failed; }
};

struct SweepResult {
  std::vector<DropResult> drops;  // ordered by (system, n_users, drop)
  std::vector<CellSummary> cells;
};

/// Users for a drop: the scenario's fixed users if it has any, otherwise a
/// uniform drop seeded by mix_drop_seed.
std::vector<Vec3> drop_users(const Scenario& scenario, int n_users, std::uint64_t seed);

/// Channel matrix a drop would see; used for debugging dumps.
ChannelMatrix drop_channel(const Scenario& scenario, System system, int n_users,
                           int drop_index, std::uint64_t base_seed);

DropResult run_drop(const Scenario& scenario, System system, int n_users, int drop_index,
                    std::uint64_t base_seed);

/// Aggregates raw records in order of first appearance of each cell.
std::vector<CellSummary> summarize(const std::vector<DropResult>& drops);

/// `threads` = 0 picks the hardware concurrency, 1 runs sequentially. The
/// result does not depend on it.
SweepResult sweep_users(const Scenario& scenario, std::vector<System> systems,
                        const std::vector<int>& user_counts, int n_drops,
                        std::uint64_t base_seed, unsigned threads = 0);

}  // namespace owcsim
