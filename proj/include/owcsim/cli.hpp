#pragma once

#include <ostream>

#include "owcsim/scenario.hpp"

namespace owcsim {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitRuntimeError = 2;

/// Reference footprint of the VCSEL array on the receive plane, m^2.
inline constexpr double kReferenceSpotArea = 1.5;

/// One-line report of the computed VCSEL array spot area next to the
/// reference value.
struct SpotDiagnostic {
  double computed_area = 0.0;
  double reference_area = kReferenceSpotArea;
  double link_distance = 0.0;
};

SpotDiagnostic spot_diagnostic(const Scenario& scenario);
void log_spot_diagnostic(const SpotDiagnostic& d, std::ostream& log);

/// Entry point of the `owcsim` tool. Exit codes: 0 ok, 1 configuration
/// error, 2 runtime failure.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace owcsim
