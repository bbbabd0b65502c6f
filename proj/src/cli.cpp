#include "owcsim/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <string>

#include "owcsim/config.hpp"
#include "owcsim/error.hpp"
#include "owcsim/optics.hpp"
#include "owcsim/report.hpp"
#include "owcsim/runner.hpp"

namespace owcsim {

SpotDiagnostic spot_diagnostic(const Scenario& scenario) {
  SpotDiagnostic d;
  d.link_distance = scenario.room.height - scenario.room.receive_plane_height;
  d.computed_area = optics::array_spot_area(scenario.vcsel, d.link_distance);
  return d;
}

void log_spot_diagnostic(const SpotDiagnostic& d, std::ostream& log) {
  log << "vcsel array spot area at " << d.link_distance << " m: " << std::setprecision(6)
      << d.computed_area << " m^2 (reference " << d.reference_area << " m^2)\n";
}

namespace {

struct Overrides {
  std::optional<std::string> system;
  std::optional<std::string> users;
  std::optional<int> drops;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> rate_model;
  std::optional<std::string> out;
  std::optional<unsigned> threads;
  bool plots = false;
  bool dump_channel = false;
};

void print_summary(const SweepResult& sweep, std::ostream& out) {
  out << std::left << std::setw(7) << "system" << std::right << std::setw(8) << "users"
      << std::setw(8) << "failed" << std::setw(16) << "sum rate Gb/s" << std::setw(14)
      << "CF Gb/mJ" << "\n";
  for (const CellSummary& c : sweep.cells) {
    out << std::left << std::setw(7) << to_string(c.system) << std::right << std::setw(8)
        << c.n_users << std::setw(8) << c.n_failed;
    if (c.n_ok() > 0) {
      out << std::setw(16) << std::setprecision(5) << c.mean_sum_rate * 1e-9 << std::setw(14)
          << c.mean_cf * 1e-12;
    } else {
      out << std::setw(16) << "-" << std::setw(14) << "-";
    }
    out << "\n";
  }
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monte Carlo simulator comparing VCSEL and LED optical wireless downlinks",
               "owcsim"};
  std::string config_path;
  Overrides o;
  app.add_option("--config", config_path, "Sectioned key = value configuration file");
  app.add_option("--system", o.system, "vcsel|led|both");
  app.add_option("--users", o.users, "User counts as A:B:STEP");
  app.add_option("--drops", o.drops, "Monte Carlo drops per user count");
  app.add_option("--seed", o.seed, "Base seed");
  app.add_option("--rate-model", o.rate_model, "shannon|ook");
  app.add_option("--out", o.out, "Output directory (default $OWCSIM_OUT or ./out)");
  app.add_option("--threads", o.threads, "Worker threads, 0 = all cores, 1 = sequential");
  app.add_flag("--plots", o.plots, "Write SVG plots");
  app.add_flag("--dump-channel", o.dump_channel,
               "Write the channel matrix of drop 0 for every (system, users) cell");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }

  Scenario scenario;
  RunConfig run;
  try {
    const RawConfig raw = config_path.empty() ? RawConfig{} : load_config_file(config_path);
    scenario = validate_config(raw);
    run = resolve_run_config(raw);
    run.config_path = config_path;
    if (o.system) run.systems = parse_systems(*o.system);
    if (o.users) run.user_counts = parse_user_range(*o.users);
    if (o.drops) {
      if (*o.drops < 1) throw ConfigError("--drops", "must be >= 1");
      run.n_drops = *o.drops;
    }
    if (o.seed) run.base_seed = *o.seed;
    if (o.rate_model) scenario.rate_model = parse_rate_model(*o.rate_model);
    if (o.out) run.output_dir = *o.out;
    if (o.threads) run.threads = *o.threads;
    if (o.plots) run.emit_plots = true;
    if (o.dump_channel) run.dump_channel = true;
    for (int n : run.user_counts)
      if (!scenario.users.empty()) drop_users(scenario, n, 0);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfigError;
  }

  try {
    log_spot_diagnostic(spot_diagnostic(scenario), err);

    const SweepResult sweep =
        sweep_users(scenario, run.systems, run.user_counts, run.n_drops, run.base_seed,
                    run.threads);
    const std::filesystem::path dir(run.output_dir);
    write_csv(sweep, dir);
    write_text_file(dir / "effective_config.ini", serialize_config(scenario, run));

    if (run.emit_plots) render_plots(sweep.cells, dir);
    if (run.dump_channel) {
      for (const CellSummary& c : sweep.cells) {
        const ChannelMatrix h = drop_channel(scenario, c.system, c.n_users, 0, run.base_seed);
        write_text_file(dir / ("channel_" + std::string(to_string(c.system)) + "_n" +
                               std::to_string(c.n_users) + "_d0.csv"),
                        channel_csv(h));
      }
    }
    print_summary(sweep, out);
    out << "wrote " << (dir / "drops.csv").string() << " and "
        << (dir / "summary.csv").string() << "\n";
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
  return kExitOk;
}

}  // namespace owcsim
