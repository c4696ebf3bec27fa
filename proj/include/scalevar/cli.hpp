#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

namespace scalevar::cli {

enum ExitCode : int {
    kOk = 0,
    kIoFailure = 1,
    kValidationError = 2,
    kNumericalFailure = 3,
};

/// Runs the experiment described by a JSON config file, applying
/// `--set key=value` overrides first (dotted keys, e.g. "scale.epsilon").
/// Writes <output>.csv and <output>.summary.json (relative prefixes resolve
/// against the working directory). Diagnostics go to `err`, the written file
/// names to `out`. Returns one of ExitCode.
int run(const std::filesystem::path& config_path, std::span<const std::string> overrides, std::ostream& out,
        std::ostream& err);

} // namespace scalevar::cli
