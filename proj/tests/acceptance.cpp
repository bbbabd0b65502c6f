#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "owcsim/cli.hpp"
#include "owcsim/metrics.hpp"
#include "owcsim/noise.hpp"
#include "owcsim/optics.hpp"
#include "owcsim/precoding.hpp"
#include "owcsim/random.hpp"
#include "owcsim/runner.hpp"

using namespace owcsim;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("%s criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool within(double got, double want, double rel) { return std::abs(got - want) <= rel * std::abs(want); }

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::string read(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void zf_nulls() {
  const auto t0 = std::chrono::steady_clock::now();
  Xoshiro256ss rng(2024);
  double worst = 0.0;
  int done = 0;
  for (int i = 0; i < 200; ++i) {
    const int n = 2 + i % 7;
    Eigen::MatrixXd h(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) h(r, c) = rng.uniform();
    const Eigen::MatrixXd hg = h * zf_precoder(h).weights;
    const double min_diag = hg.diagonal().cwiseAbs().minCoeff();
    double off = 0.0;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        if (r != c) off = std::max(off, std::abs(hg(r, c)));
    worst = std::max(worst, off / min_diag);
    ++done;
  }
  const double t = seconds_since(t0);
  report(1, done == 200 && worst <= 1e-9 && t < 5.0, "zero-forcing nulls on 200 random channels",
         fmt("worst off/diag %.3g, %.3f s", worst, t));
}

void optics_oracles() {
  const auto t0 = std::chrono::steady_clock::now();
  const double zr = optics::rayleigh_range(5e-6, 1550e-9);
  const bool zr_ok = std::abs(zr - 50.67e-6) <= 0.01e-6;

  Xoshiro256ss rng(77);
  double worst_aperture = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double w = 0.005 + 0.195 * rng.uniform();
    const double a = 0.002 + 0.048 * rng.uniform();
    const double x0 = (2 * rng.uniform() - 1) * (a + w);
    const double y0 = (2 * rng.uniform() - 1) * (a + w);
    const double got = optics::collect_power_square_aperture(x0, y0, w, 1.0, a);
    const double want = oracle::gaussian_on_square(x0, y0, w, 1.0, a);
    worst_aperture = std::max(worst_aperture, std::abs(got - want) / want);
  }

  const auto waist = optics::beam_at_waist(5e-6, 1550e-9, 1.0);
  double worst_radius = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double z = 5.0 * rng.uniform();
    const double got = optics::beam_radius(optics::transform_beam(waist, optics::FreeSpace{z}));
    const double want = oracle::radius_from_waist(5e-6, 1550e-9, z);
    worst_radius = std::max(worst_radius, std::abs(got - want) / want);
  }
  const double t = seconds_since(t0);
  report(2, zr_ok && worst_aperture <= 1e-6 && worst_radius <= 1e-12 && t < 30.0,
         "optics against independent oracles",
         fmt("z_R %.4f um, aperture rel err %.2g, radius rel err %.2g", zr * 1e6, worst_aperture,
             worst_radius) +
             fmt(", %.2f s", t));
}

void noise_values() {
  const ReceiverParams rx = default_scenario().receiver;
  const auto n = noise_components(rx, 1.5e9, -155.0, 1e-3);
  const bool values = within(n.thermal_var, 4.970e-13, 1e-3) &&
                      within(n.preamp_var, 1.0746e-12, 1e-3) &&
                      within(n.rin_var, 4.743e-13, 1e-3) &&
                      within(n.background_shot_var, 4.807e-15, 1e-3);
  const double rss = std::sqrt(n.thermal_var + n.preamp_var + n.rin_var + n.background_shot_var +
                               n.signal_shot_var);
  const bool identity = std::abs(n.total_std - rss) <= 4 * std::numeric_limits<double>::epsilon() * rss;
  report(3, values && identity, "receiver noise terms",
         fmt("thermal %.4e, preamp %.4e, rin %.4e", n.thermal_var, n.preamp_var, n.rin_var) +
             fmt(", bg %.4e A^2, total std %.6e A", n.background_shot_var, n.total_std));
}

void figure_claims() {
  const auto t0 = std::chrono::steady_clock::now();
  Scenario s = default_scenario();
  s.rate_model = RateModel::Shannon;
  const SweepResult r =
      sweep_users(s, {System::Vcsel, System::Led}, {2, 4, 6, 8, 10, 12}, 100, 42, 1);
  const double t = seconds_since(t0);

  std::vector<const CellSummary*> v, l;
  for (const CellSummary& c : r.cells) (c.system == System::Vcsel ? v : l).push_back(&c);

  bool rate_ok = t < 60.0, cf_ok = true, monotone = true;
  std::string rate_detail, cf_detail;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const bool above = v[i]->mean_sum_rate > l[i]->mean_sum_rate;
    rate_ok = rate_ok && above;
    rate_detail += (i ? ", " : "") + fmt("n=%.0f: %.3f vs %.3f Gb/s", v[i]->n_users,
                                         v[i]->mean_sum_rate * 1e-9, l[i]->mean_sum_rate * 1e-9) +
                   (above ? "" : " <--");
    cf_ok = cf_ok && v[i]->mean_cf > l[i]->mean_cf;
    if (i > 0 && v[i]->mean_cf < v[i - 1]->mean_cf) monotone = false;
    cf_detail += (i ? "," : "") + fmt("%.4g", v[i]->mean_cf * 1e-12);
  }
  const bool power_ok = consumed_power(s, System::Vcsel) == 10.0 && consumed_power(s, System::Led) == 96.0;
  report(4, rate_ok, "VCSEL sum rate above LED at every user count",
         rate_detail + fmt(", %.2f s", t));
  report(5, cf_ok && monotone && power_ok,
         "VCSEL consumption factor above LED and non-decreasing, powers 10 W and 96 W",
         "VCSEL CF Gb/mJ " + cf_detail + fmt(", powers %g W / %g W", consumed_power(s, System::Vcsel),
                                            consumed_power(s, System::Led)));
}

void ook_threshold() {
  const double oracle_root = oracle::ook_threshold_by_quadrature(1e-3);
  const double t = ook_sinr_threshold(1e-3);
  const double b = 1.5e9;
  const bool switches = rate_per_user(t * (1 - 1e-6), b, RateModel::OokFec, 1e-3) == 0.0 &&
                        rate_per_user(t * (1 + 1e-6), b, RateModel::OokFec, 1e-3) == b;
  report(6, switches && within(t, oracle_root, 1e-3), "OOK rate switches at the FEC threshold",
         fmt("threshold %.6f, oracle %.6f", t, oracle_root));
}

struct CliRun {
  int code;
  std::string err;
};

CliRun cli(const fs::path& out, const char* threads) {
  std::vector<const char*> argv{"owcsim", "--out", nullptr, "--threads", threads};
  const std::string dir = out.string();
  argv[2] = dir.c_str();
  std::ostringstream o, e;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), o, e);
  return {code, e.str()};
}

void determinism_and_spot() {
  const fs::path base = fs::temp_directory_path() / "owcsim_acceptance";
  fs::remove_all(base);
  const CliRun a = cli(base / "a", "0");
  const CliRun b = cli(base / "b", "0");
  const CliRun c = cli(base / "seq", "1");
  bool same = a.code == 0 && b.code == 0 && c.code == 0;
  for (const char* f : {"drops.csv", "summary.csv"}) {
    const std::string ref = read(base / "a" / f);
    same = same && !ref.empty() && ref == read(base / "b" / f) && ref == read(base / "seq" / f);
  }
  report(7, same, "byte-identical reruns, parallel equals sequential",
         same ? "drops.csv and summary.csv match" : "outputs differ");

  const SpotDiagnostic d = spot_diagnostic(default_scenario());
  const bool logged = a.err.find("vcsel array spot area at") != std::string::npos &&
                      a.err.find("reference 1.5 m^2") != std::string::npos;
  std::string line = a.err.substr(0, a.err.find('\n'));
  report(8, logged && d.computed_area > 0.0, "spot-size diagnostic emitted", line);
  fs::remove_all(base);
}

}  // namespace

int main() {
  zf_nulls();
  optics_oracles();
  noise_values();
  figure_claims();
  ook_threshold();
  determinism_and_spot();
  std::printf("%d of 8 criteria failed\n", failures);
  return failures ? 1 : 0;
}
