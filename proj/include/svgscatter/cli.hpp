#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace svgscatter::cli {

/// Runs one subcommand. `args` excludes the program name. Returns 0 when
/// every figure is ok, 2 when a batch finished with per-figure failures,
/// and 1 for invocation or I/O errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace svgscatter::cli
