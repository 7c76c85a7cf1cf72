#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pcub::cli {

enum ExitCode : int {
    kOk = 0,
    kConfigError = 1,
    kDomainError = 2,
    kSolverError = 3,
    kVerifyFailed = 4,
};

struct RunConfig {
    std::string command; // rule, cubature, kernel, verify, bound
    std::string config_path;
    std::string out_path;              // stdout when empty
    std::optional<std::string> format; // json or csv; per-command default when absent
    std::optional<double> tol;         // relative moment tolerance of the Gaussian rules
    std::optional<std::uint64_t> seed;
    std::vector<std::string> suites;
};

// Runs one command. Output goes to out_path or, if empty, to out; diagnostics to err.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv and dispatches to run().
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace pcub::cli
