#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcub/chebyshev_quadrature.hpp"

namespace pcub {

struct SuiteResult {
    std::string name;
    bool passed = true;
    std::size_t checks = 0;
    double worst = 0.0;     // largest observed residual, in the suite's own units
    double tolerance = 0.0; // threshold worst is compared against
    std::string detail;     // first failing check, if any
};

struct VerifyOptions {
    std::uint64_t seed = 20240601;
    std::vector<std::string> suites; // empty runs all
    // Adds this amount to the quantities checked by the named suite.
    std::string perturb_suite;
    double perturbation = 0.0;
    GaussOptions gauss;
};

const std::vector<std::string>& suite_names();

// Throws ConfigError for unknown suite names.
std::vector<SuiteResult> run_verify(const VerifyOptions& options);

} // namespace pcub
