#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "owcsim/channel.hpp"
#include "owcsim/runner.hpp"

namespace owcsim {

inline constexpr const char* kDropsHeader =
    "system,n_users,drop,seed,sum_rate_bps,consumed_power_w,cf_bits_per_joule,"
    "min_sinr_db,max_sinr_db,failed,thermal_var,preamp_var,rin_var_mean,bg_shot_var";

inline constexpr const char* kSummaryHeader =
    "system,n_users,n_drops,n_failed,mean_sum_rate_bps,std_sum_rate_bps,"
    "mean_cf_bits_per_joule,std_cf_bits_per_joule,mean_cf_gb_per_mj,std_cf_gb_per_mj,"
    "consumed_power_w,mean_served_users";

std::string drops_csv(const std::vector<DropResult>& drops);
std::string summary_csv(const std::vector<CellSummary>& cells);

/// Writes drops.csv and summary.csv into `dir` (created if missing).
void write_csv(const SweepResult& sweep, const std::filesystem::path& dir);

/// Row per user, column per AP, 17 significant digits.
std::string channel_csv(const ChannelMatrix& h);

struct PlotFiles {
  std::filesystem::path sum_rate;
  std::filesystem::path consumption_factor;
};

/// Sum rate (Gb/s) and consumption factor (Gb/mJ) versus number of users,
/// one polyline per system with +-1 std error bars, as standalone SVG.
std::string sum_rate_svg(const std::vector<CellSummary>& cells);
std::string consumption_factor_svg(const std::vector<CellSummary>& cells);
PlotFiles render_plots(const std::vector<CellSummary>& cells, const std::filesystem::path& dir);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace owcsim
