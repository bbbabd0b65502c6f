#include "owcsim/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>

#include "owcsim/error.hpp"
#include "owcsim/metrics.hpp"
#include "owcsim/noise.hpp"
#include "owcsim/precoding.hpp"
#include "owcsim/random.hpp"

namespace owcsim {

int DropResult::served_count() const {
  return static_cast<int>(std::count(served.begin(), served.end(), true));
}

std::vector<Vec3> drop_users(const Scenario& scenario, int n_users, std::uint64_t seed) {
  if (scenario.users.empty()) return place_users(scenario.room, n_users, seed);
  if (n_users < 1 || static_cast<std::size_t>(n_users) > scenario.users.size())
    throw ConfigError("system.users", "scenario defines " +
                                          std::to_string(scenario.users.size()) +
                                          " fixed users, " + std::to_string(n_users) +
                                          " requested");
  return {scenario.users.begin(), scenario.users.begin() + n_users};
}

ChannelMatrix drop_channel(const Scenario& scenario, System system, int n_users,
                           int drop_index, std::uint64_t base_seed) {
  const std::uint64_t seed = mix_drop_seed(base_seed, static_cast<std::uint64_t>(n_users),
                                           static_cast<std::uint64_t>(drop_index));
  const auto users = drop_users(scenario, n_users, seed);
  return build_channel_matrix(scenario, system, users);
}

namespace {

double bandwidth_of(const Scenario& s, System system) {
  return system == System::Vcsel ? s.vcsel.bandwidth_hz : s.led.bandwidth_hz;
}

std::optional<double> rin_of(const Scenario& s, System system) {
  if (system == System::Vcsel) return s.vcsel.rin_db_per_hz;
  return std::nullopt;
}

int rin_sources_of(const Scenario& s, System system) {
  if (system == System::Vcsel && s.noise.rin_mode == RinMode::PerElement)
    return s.vcsel.n_elements;
  return 1;
}

std::vector<int> coverage(const Eigen::MatrixXd& gains) {
  const Eigen::VectorXd row_norm = gains.rowwise().norm();
  const double best = gains.rows() ? row_norm.maxCoeff() : 0.0;
  std::vector<int> served;
  for (Eigen::Index u = 0; u < gains.rows(); ++u)
    if (best > 0.0 && row_norm(u) > kRankTolerance * best) served.push_back(static_cast<int>(u));
  return served;
}

}  // namespace

DropResult run_drop(const Scenario& scenario, System system, int n_users, int drop_index,
                    std::uint64_t base_seed) {
  DropResult r;
  r.system = system;
  r.n_users = n_users;
  r.drop_index = drop_index;
  r.seed = mix_drop_seed(base_seed, static_cast<std::uint64_t>(n_users),
                         static_cast<std::uint64_t>(drop_index));
  r.users = drop_users(scenario, n_users, r.seed);
  r.consumed_power = consumed_power(scenario, system);

  const auto n = static_cast<std::size_t>(n_users);
  r.served.assign(n, false);
  r.per_user_sinr.assign(n, 0.0);
  r.duty_factors.assign(n, 0.0);
  std::vector<double> raw_rate(n, 0.0);

  const ChannelMatrix h = build_channel_matrix(scenario, system, r.users);
  const std::vector<int> served = coverage(h.gains);
  for (int u : served) r.served[static_cast<std::size_t>(u)] = true;

  const double bandwidth = bandwidth_of(scenario, system);
  const double responsivity = scenario.receiver.responsivity(system);
  const NoiseBreakdown floor =
      noise_components(scenario.receiver, bandwidth, rin_of(scenario, system), 0.0,
                       scenario.noise, rin_sources_of(scenario, system));
  r.noise.thermal_var = floor.thermal_var;
  r.noise.preamp_var = floor.preamp_var;
  r.noise.background_shot_var = floor.background_shot_var;

  double rin_sum = 0.0;
  if (!served.empty()) {
    const auto groups = schedule_groups(static_cast<int>(served.size()), scenario.n_aps());
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      std::vector<int> members;
      for (int local : groups[gi].users) members.push_back(served[static_cast<std::size_t>(local)]);

      Eigen::MatrixXd hg(static_cast<Eigen::Index>(members.size()), h.gains.cols());
      for (std::size_t k = 0; k < members.size(); ++k)
        hg.row(static_cast<Eigen::Index>(k)) = h.gains.row(members[k]);

      PrecoderMatrix g;
      try {
        g = zf_precoder(hg);
      } catch (const RankDeficientError& e) {
        std::string who;
        for (int local : e.users()) {
          if (!who.empty()) who += ' ';
          who += std::to_string(members[static_cast<std::size_t>(local)]);
        }
        r.failed = true;
        r.failure_reason = "rank-deficient channel in group " + std::to_string(gi) +
                           " (users " + who + ")";
        break;
      }

      const Eigen::MatrixXd eff = effective_gains(hg, g.weights);
      const double p = allocate_power(scenario, system, static_cast<int>(members.size()));
      const std::vector<double> power(members.size(), p);

      // RIN depends on each user's own signal photocurrent, so the noise is
      // evaluated per user once the effective gain is known.
      std::vector<double> noise_std(members.size());
      for (std::size_t k = 0; k < members.size(); ++k) {
        const auto ki = static_cast<Eigen::Index>(k);
        const double i_sig = std::max(0.0, responsivity * p * eff(ki, ki));
        const NoiseBreakdown nb =
            noise_components(scenario.receiver, bandwidth, rin_of(scenario, system), i_sig,
                             scenario.noise, rin_sources_of(scenario, system));
        noise_std[k] = nb.total_std;
        rin_sum += nb.rin_var;
      }

      const SinrReport sinr = sinr_per_user(eff, power, responsivity, noise_std);
      for (std::size_t k = 0; k < members.size(); ++k) {
        const auto u = static_cast<std::size_t>(members[k]);
        r.per_user_sinr[u] = sinr.per_user_sinr[k];
        r.duty_factors[u] = groups[gi].duty_factor;
        raw_rate[u] = rate_per_user(sinr.per_user_sinr[k], bandwidth, scenario.rate_model,
                                    scenario.fec_ber_limit);
      }
    }
  }

  if (r.failed) {
    r.per_user_sinr.assign(n, 0.0);
    r.per_user_rate.assign(n, 0.0);
    return r;
  }

  const RateReport rates = aggregate_rates(raw_rate, r.duty_factors);
  r.per_user_rate = rates.per_user_rate;
  r.sum_rate = rates.sum_rate;
  r.cf_bits_per_joule = consumption_factor(r.sum_rate, r.consumed_power).consumption_factor;
  r.noise.rin_var_mean = served.empty() ? 0.0 : rin_sum / static_cast<double>(served.size());
  return r;
}

namespace {

struct Accumulator {
  CellSummary cell;
  std::vector<double> sum_rates;
  std::vector<double> cfs;
  double served_total = 0.0;
};

std::pair<double, double> mean_std(const std::vector<double>& v) {
  if (v.empty()) return {0.0, 0.0};
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  if (v.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(v.size() - 1))};
}

}  // namespace

std::vector<CellSummary> summarize(const std::vector<DropResult>& drops) {
  std::vector<Accumulator> acc;
  std::map<std::pair<int, int>, std::size_t> index;
  for (const DropResult& d : drops) {
    const auto key = std::make_pair(static_cast<int>(d.system), d.n_users);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, acc.size()).first;
      Accumulator a;
      a.cell.system = d.system;
      a.cell.n_users = d.n_users;
      a.cell.consumed_power = d.consumed_power;
      acc.push_back(std::move(a));
    }
    Accumulator& a = acc[it->second];
    ++a.cell.n_drops;
    if (d.failed) {
      ++a.cell.n_failed;
      continue;
    }
    a.sum_rates.push_back(d.sum_rate);
    a.cfs.push_back(d.cf_bits_per_joule);
    a.served_total += d.served_count();
  }

  std::vector<CellSummary> cells;
  for (Accumulator& a : acc) {
    std::tie(a.cell.mean_sum_rate, a.cell.std_sum_rate) = mean_std(a.sum_rates);
    std::tie(a.cell.mean_cf, a.cell.std_cf) = mean_std(a.cfs);
    a.cell.mean_served = a.cell.n_ok() > 0 ? a.served_total / a.cell.n_ok() : 0.0;
    cells.push_back(a.cell);
  }
  return cells;
}

SweepResult sweep_users(const Scenario& scenario, std::vector<System> systems,
                        const std::vector<int>& user_counts, int n_drops,
                        std::uint64_t base_seed, unsigned threads) {
  validate(scenario);
  if (systems.empty()) throw ConfigError("run.systems", "no system selected");
  if (user_counts.empty()) throw ConfigError("run.users", "empty user range");
  if (n_drops < 1) throw ConfigError("run.drops", "must be >= 1");
  for (int n : user_counts) {
    if (n < 1) throw ConfigError("run.users", "n_users must be ≥ 1");
    if (!scenario.users.empty()) drop_users(scenario, n, 0);
  }

  std::sort(systems.begin(), systems.end());
  systems.erase(std::unique(systems.begin(), systems.end()), systems.end());

  struct Job {
    System system;
    int n_users;
    int drop;
  };
  std::vector<Job> jobs;
  for (System s : systems)
    for (int n : user_counts)
      for (int d = 0; d < n_drops; ++d) jobs.push_back({s, n, d});

  SweepResult result;
  result.drops.resize(jobs.size());

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(jobs.size()));

  auto work = [&](std::size_t i) {
    const Job& j = jobs[i];
    result.drops[i] = run_drop(scenario, j.system, j.n_users, j.drop, base_seed);
  };

  if (threads <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::atomic<bool> errored{false};
    std::vector<std::thread> pool;
    std::mutex error_mutex;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < jobs.size() && !errored; i = next++) {
          try {
            work(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
            errored = true;
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  result.cells = summarize(result.drops);
  return result;
}

}  // namespace owcsim
