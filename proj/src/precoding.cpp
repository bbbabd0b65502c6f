#include "owcsim/precoding.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "owcsim/error.hpp"

namespace owcsim {

namespace {

// Rows whose weight in a null left-singular vector exceeds this are reported.
constexpr double kDependencyWeight = 1e-3;

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace

PrecoderMatrix zf_precoder(const Eigen::MatrixXd& h) {
  const Eigen::Index n_users = h.rows();
  const Eigen::Index n_aps = h.cols();
  if (n_users == 0) throw std::invalid_argument("zf_precoder: empty channel");
  if (n_users > n_aps) {
    throw RankDeficientError({}, "zero forcing needs n_users <= n_aps (got " +
                                     std::to_string(n_users) + " users, " +
                                     std::to_string(n_aps) + " APs)");
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double sigma_max = sigma(0);
  const double threshold = kRankTolerance * sigma_max;

  std::vector<int> dependent;
  std::vector<bool> flagged(static_cast<std::size_t>(n_users), false);
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    if (sigma_max > 0.0 && sigma(k) > threshold) continue;
    for (Eigen::Index u = 0; u < n_users; ++u) {
      if (std::abs(svd.matrixU()(u, k)) > kDependencyWeight &&
          !flagged[static_cast<std::size_t>(u)]) {
        flagged[static_cast<std::size_t>(u)] = true;
      }
    }
  }
  for (Eigen::Index u = 0; u < n_users; ++u)
    if (flagged[static_cast<std::size_t>(u)]) dependent.push_back(static_cast<int>(u));
  if (!dependent.empty()) {
    throw RankDeficientError(dependent, "rank-deficient channel; near-dependent users: " +
                                            join(dependent));
  }

  // pinv(H) = V diag(1/sigma) U^T
  const Eigen::MatrixXd pinv =
      svd.matrixV() * sigma.cwiseInverse().asDiagonal() * svd.matrixU().transpose();

  PrecoderMatrix g;
  g.column_norms = pinv.colwise().norm().transpose();
  g.weights = pinv;
  for (Eigen::Index c = 0; c < pinv.cols(); ++c) g.weights.col(c) /= g.column_norms(c);
  return g;
}

PrecoderMatrix zf_precoder(const ChannelMatrix& h) { return zf_precoder(h.gains); }

Eigen::MatrixXd effective_gains(const Eigen::MatrixXd& h, const Eigen::MatrixXd& g) {
  if (h.cols() != g.rows())
    throw std::invalid_argument("effective_gains: H and G are not conformable");
  return h * g;
}

double allocate_power(const Scenario& scenario, System system, int n_active_users) {
  if (n_active_users < 1)
    throw std::invalid_argument("allocate_power: need at least one active user");
  const double ap_total =
      system == System::Vcsel
          ? scenario.vcsel.n_elements * scenario.vcsel.optical_power_per_element
          : scenario.led.n_emitters * scenario.led.optical_power_per_emitter;
  return ap_total / n_active_users;
}

SinrReport sinr_per_user(const Eigen::MatrixXd& gains, std::span<const double> power,
                         double responsivity, std::span<const double> noise_std) {
  const auto n = static_cast<std::size_t>(gains.rows());
  if (gains.cols() != gains.rows() || power.size() != n)
    throw std::invalid_argument("sinr_per_user: shape mismatch");
  if (noise_std.size() != n && noise_std.size() != 1)
    throw std::invalid_argument("sinr_per_user: noise_std needs 1 or n_users entries");

  SinrReport report;
  report.per_user_sinr.resize(n);
  report.signal_photocurrent.resize(n);
  report.residual_interference_power.resize(n);
  report.noise_std.resize(n);
  for (std::size_t u = 0; u < n; ++u) {
    const double sigma = noise_std.size() == 1 ? noise_std[0] : noise_std[u];
    if (!(sigma > 0.0)) throw std::invalid_argument("sinr_per_user: noise_std must be > 0");
    const auto ui = static_cast<Eigen::Index>(u);
    const double signal = responsivity * power[u] * gains(ui, ui);
    double interference = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == u) continue;
      const double leak = responsivity * power[j] * gains(ui, static_cast<Eigen::Index>(j));
      interference += leak * leak;
    }
    report.signal_photocurrent[u] = signal;
    report.residual_interference_power[u] = interference;
    report.noise_std[u] = sigma;
    report.per_user_sinr[u] = signal * signal / (interference + sigma * sigma);
  }
  return report;
}

std::vector<UserGroup> schedule_groups(int n_users, int n_aps) {
  if (n_users < 1 || n_aps < 1)
    throw std::invalid_argument("schedule_groups: n_users and n_aps must be >= 1");
  const int n_groups = (n_users + n_aps - 1) / n_aps;
  std::vector<UserGroup> groups(static_cast<std::size_t>(n_groups));
  for (int u = 0; u < n_users; ++u) groups[static_cast<std::size_t>(u / n_aps)].users.push_back(u);
  for (auto& g : groups) g.duty_factor = 1.0 / n_groups;
  return groups;
}

}  // namespace owcsim
