#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <vector>

#include "txml/mlp.hpp"

namespace txml {

struct ReproduceConfig {
    std::filesystem::path out_dir = ".";
    std::uint64_t seed = 42;
    // Dense training sweep; the benchmark grids (step 0.5) are subsets.
    double train_min = 1.0;
    double train_max = 9.5;
    double train_step = 0.05;
    MlpLayout layout{};
    TrainConfig train{};
    // Experimentation overrides for the compiled-in table constants. When
    // set, the pipeline still runs end to end but the bundled-value checks
    // are skipped (the outputs no longer describe the benchmark tables).
    std::optional<double> eps_r_override;
    std::optional<double> effective_length_mm_override;  // table 2 only

    bool overrides_benchmark() const {
        return eps_r_override.has_value() || effective_length_mm_override.has_value();
    }
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Self-contained pipeline for one benchmark table: regenerates the actual
// column from the closed-form model, recomputes every printed percent-error
// cell, cross-checks the OLS fit against an independent normal-equations
// route, trains the OLS and MLP surrogates on the dense sweep, and emits
// <out_dir>/tableN_report.csv plus four SVGs (prediction/error x mlp/ols).
// Returns the pass/fail checks; progress and per-model errors go to `log`.
std::vector<CheckResult> reproduce_table(int table, const ReproduceConfig& config,
                                         std::ostream& log);

// Runs reproduce_table for each requested table (1 and/or 2), prints one
// PASS/FAIL line per check plus a summary, and writes <out_dir>/summary.txt.
// True when every check passed.
bool reproduce(const std::vector<int>& tables, const ReproduceConfig& config,
               std::ostream& log);

}  // namespace txml
