#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace frontlab::cli {

enum class PlotKind { ProfileXY, SpeedVsA, FrontTrace };

/// Renders a result file (profile JSON or CSV table, schema chosen by kind)
/// into a standalone SVG at `out`. Returns 0, or 1 with a one-line message
/// when the file does not match the kind's schema.
int emit_plot(const std::filesystem::path& result_file, PlotKind kind,
              const std::filesystem::path& out);

/// Parses and executes one driver invocation (argv without the program
/// name). Exit codes: 0 success, 1 domain or data errors, 2 usage errors.
int run_command(const std::vector<std::string>& args);

} // namespace frontlab::cli
