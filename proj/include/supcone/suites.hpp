#pragma once

#include <optional>
#include <string>
#include <vector>

#include "supcone/modelspec.hpp"

namespace supcone {

struct SuiteOptions {
    std::string suite = "all";
    long trials = 100;
    std::uint64_t seed = 0;
    std::string backend = "rational"; // rational | float
    std::string mutate;               // empty = no mutation
    std::optional<ModelSpec> model;   // fixed space/partitions instead of random ones
    double float_tol = 1e-9;
};

struct SuiteResult {
    std::string report_json; // full report, pretty-printed, trailing newline
    bool all_pass = true;
};

// Runs one suite (or "all"). Deterministic given (suite, trials, seed,
// backend, mutate, model): the report is byte-identical apart from the
// generated_at field. Throws ParseError for unknown suite/backend/
// mutation names.
SuiteResult run_suite(const SuiteOptions& opts);

const std::vector<std::string>& suite_names();
const std::vector<std::string>& mutation_ids();

} // namespace supcone
