#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>

#include "config.hpp"

namespace dppln::cli {

enum ExitCode : int { ok = 0, invalid_input = 1, infeasible = 2 };

/// Each command prints its primary artifact to `out` and, when the config
/// names an output directory, also writes files there.
void run_design(const DesignConfig& config, std::ostream& out);
void run_sweep(const DesignConfig& config, std::ostream& out);
void run_spectrum(const DesignConfig& config, std::ostream& out);
void run_grating(const DesignConfig& config, std::ostream& out);

/// Builds the source model at the config's single geometry.
spdc::SourceModel make_model(const DesignConfig& config, double depth_um, double width_um);

/// Maps library exceptions to exit codes and writes the message to `err`.
int guarded(std::ostream& err, const std::function<void()>& body);

}  // namespace dppln::cli
