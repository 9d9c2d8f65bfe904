#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "crlab/json_io.hpp"

namespace crlab::cli {

enum ExitCode : int {
    kPass = 0,
    kMathFailure = 1,
    kInputError = 2,
};

// Runs one subcommand. args excludes the program name. Reports go to the
// --report / --out path when given, otherwise to `out`; diagnostics go to
// `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

// CSV for check-subharmonic and taylor-extract reports. Throws
// UnsupportedReportKind for other commands.
std::string plot_csv(const json_io::Json &report);
void emit_plot_csv(const json_io::Json &report, const std::string &path);

} // namespace crlab::cli
