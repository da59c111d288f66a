#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "autogeo/metric.hpp"

namespace autogeo {

// Optional knobs shared by all suites; anything unset keeps the suite default.
struct SuiteOverrides {
    std::optional<int> samples;
    std::uint64_t seed = 1;
    std::optional<double> m;
    std::optional<double> A;
    std::optional<double> tol;
    std::optional<std::string> metric;  // restrict to "euclid" or "pseudo"
};

struct SuiteResult {
    std::string suite;
    int samples = 0;
    std::uint64_t seed = 1;
    double max_residual = 0.0;
    double tol = 0.0;
    bool pass = false;
    std::string note;  // sub-check details, empty when there is nothing to add
    double elapsed_seconds = 0.0;
};

const std::vector<std::string>& suite_names();

// Runs one named suite. Throws DomainError for an unknown name. Suites are
// single-threaded and every sample draws its randomness from (seed, index),
// so reports are identical run to run.
SuiteResult run_suite(const std::string& name, const SuiteOverrides& overrides);

}  // namespace autogeo
