#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "owcsim/scenario.hpp"

namespace owcsim {

/// Sectioned `key = value` text, keyed by "section.key".
struct RawConfig {
  struct Entry {
    std::string value;
    int line = 0;
  };
  std::map<std::string, Entry> entries;

  bool contains(const std::string& key) const { return entries.count(key) != 0; }
};

/// Format:
///   # comment
///   [section]          one of: system room vcsel led receiver noise run
///   key = value        SI base units unless the key ends in _db/_db_per_hz
/// Unknown sections or keys, lines without '=', duplicate keys and values
/// that do not parse as the key's type are ConfigErrors carrying the line.
RawConfig parse_config(std::string_view text);

RawConfig load_config_file(const std::string& path);

/// Builds a Scenario from defaults overridden by `raw` and validates it.
/// Only the scenario sections are read; [run] is handled by
/// resolve_run_config.
Scenario validate_config(const RawConfig& raw);

struct RunConfig {
  std::string config_path;
  std::vector<System> systems{System::Vcsel, System::Led};
  std::vector<int> user_counts{2, 4, 6, 8, 10, 12};
  int n_drops = 100;
  std::uint64_t base_seed = 42;
  std::string output_dir = "out";
  bool emit_plots = false;
  bool dump_channel = false;
  unsigned threads = 0;

  bool operator==(const RunConfig&) const = default;
};

/// Defaults, then OWCSIM_OUT for the output directory, then [run] keys.
RunConfig resolve_run_config(const RawConfig& raw);

/// "A:B:STEP" or "A" -> ascending list; throws "empty user range" when it
/// would be empty.
std::vector<int> parse_user_range(std::string_view spec);
std::string format_user_range(const std::vector<int>& counts);

/// "vcsel", "led" or "both".
std::vector<System> parse_systems(std::string_view spec);
RateModel parse_rate_model(std::string_view spec);

/// Full effective configuration in the parse_config format. Parsing it back
/// reproduces `scenario` and `run` exactly.
std::string serialize_config(const Scenario& scenario, const RunConfig& run);

}  // namespace owcsim
