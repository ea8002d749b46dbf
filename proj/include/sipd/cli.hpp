#ifndef SIPD_CLI_HPP
#define SIPD_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "sipd/experiment.hpp"

namespace sipd::cli {

constexpr int kExitSuccess = 0;
constexpr int kExitRuntimeError = 1;
constexpr int kExitUsage = 2;

// CSV wire format: header
// generation,frac_cooperator,frac_defector,frac_top_defector,frac_neutral,fitness_mean,fitness_max,fitness_min
// then one row per generation (generation 0 first), fractions and fitness
// fixed to 6 decimals with '.' separator, LF line endings.
std::string format_csv(const TimeSeries& series);

// Entry point behind main(). args excludes the program name. Exit status:
// 0 success, 2 usage error, 1 runtime/I-O error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);
int run_cli(int argc, const char* const* argv);

}  // namespace sipd::cli

#endif  // SIPD_CLI_HPP
