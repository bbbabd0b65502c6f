#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "owcsim/channel.hpp"
#include "owcsim/scenario.hpp"

namespace owcsim {

/// Singular values at or below kRankTolerance * sigma_max count as zero.
inline constexpr double kRankTolerance = 1e-10;
/// Relative bound on residual inter-user coupling after zero forcing.
inline constexpr double kZfNullTolerance = 1e-9;

/// APs x users zero-forcing precoder with unit-norm columns.
struct PrecoderMatrix {
  Eigen::MatrixXd weights;
  /// Column norms of the right pseudo-inverse before normalization.
  Eigen::VectorXd column_norms;
};

struct SinrReport {
  std::vector<double> per_user_sinr;
  std::vector<double> signal_photocurrent;
  std::vector<double> residual_interference_power;
  std::vector<double> noise_std;
};

/// G = pinv(H) with each column scaled to unit norm. The pseudo-inverse comes
/// from an SVD. Throws RankDeficientError when H has more rows than columns
/// or sigma_min <= kRankTolerance * sigma_max.
PrecoderMatrix zf_precoder(const Eigen::MatrixXd& h);
PrecoderMatrix zf_precoder(const ChannelMatrix& h);

/// H * G: diagonal = per-user effective gains, off-diagonal = leakage.
Eigen::MatrixXd effective_gains(const Eigen::MatrixXd& h, const Eigen::MatrixXd& g);

/// Equal split of one AP's optical output over the active users.
double allocate_power(const Scenario& scenario, System system, int n_active_users);

/// SINR_u = i_u^2 / (sum_{j != u} i_{u<-j}^2 + noise_std_u^2), with
/// i_{u<-j} = responsivity * P_j * gains(u, j). `noise_std` holds one entry
/// per user, or a single entry shared by all.
SinrReport sinr_per_user(const Eigen::MatrixXd& gains, std::span<const double> power,
                         double responsivity, std::span<const double> noise_std);

struct UserGroup {
  std::vector<int> users;
  double duty_factor = 1.0;
};

/// Round-robin time sharing: users in index order, groups of at most n_aps.
std::vector<UserGroup> schedule_groups(int n_users, int n_aps);

}  // namespace owcsim
