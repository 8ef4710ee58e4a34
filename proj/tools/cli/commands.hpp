#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "config.hpp"

namespace calr::lab {

enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericFailure = 3, kValidationFailure = 4 };

struct CommandContext {
  RunConfig config;
  std::filesystem::path out_dir;
  std::ostream* log = nullptr;  // human-readable progress; may be null
};

/// spectrum.csv: n, lambda1, lambda2, a1, a2, b, norm_1p, norm_1m, norm_2p, norm_2m.
int cmd_spectrum(const CommandContext& ctx);

/// critical_radius.json; the same document is echoed to the log.
int cmd_critical_radius(const CommandContext& ctx);

/// sweep.csv (one row per delta, written as each solve finishes) and sweep.json.
int cmd_sweep(const CommandContext& ctx);

/// field.csv: x1, x2, re_V, im_V, abs_V; "null" on the focal segment and at source points.
int cmd_field(const CommandContext& ctx);

/// validate.json; exit code 4 if any selected criterion fails.
int cmd_validate(const CommandContext& ctx);

/// Dispatches by name; maps exceptions to exit codes and reports them on `err`.
int run_command(const std::string& name, const std::filesystem::path& config_path,
                const std::filesystem::path* out_override, int threads_override, std::ostream& out,
                std::ostream& err);

/// printf("%.17g").
std::string format_double(double v);

}  // namespace calr::lab
