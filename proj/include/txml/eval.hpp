#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "txml/dataset.hpp"

namespace txml {

// 100 * |actual - predicted| / |actual|. DomainError when actual is zero.
double percent_error(double actual, double predicted);

struct EvalRow {
    double x = 0.0;
    double actual = 0.0;
    double predicted = 0.0;
    double abs_error = 0.0;
    double pct_error = 0.0;
};

struct EvalReport {
    std::vector<EvalRow> rows;  // ascending in x
    double max_pct_error = 0.0;
    double mean_pct_error = 0.0;
    double max_abs_error = 0.0;
    double mean_abs_error = 0.0;
    std::string model_descriptor;
    std::string quantity = "Target";  // axis label base, e.g. "Impedance"
    Unit unit = Unit::ohm;
};

using Predictor = std::function<double(double)>;

// One row per evaluation point; aggregates recomputed from the rows exactly.
// Predictor failures are rethrown with the offending x in the message.
EvalReport evaluate(const Predictor& predictor, const Dataset& eval_dataset,
                    std::string model_descriptor);

// Recomputes the aggregate fields from rows (used after reading a report back).
void recompute_aggregates(EvalReport& report);

// CSV schema:
//   x_w_over_h,actual,predicted,abs_error,pct_error,actual_full,predicted_full
// The first value columns are 3-decimal display values; the *_full pair keeps
// shortest round-trip precision, so re-reading and recomputing the error
// columns reproduces the file bit-exactly.
void write_report_csv(const EvalReport& report, const std::filesystem::path& path);
EvalReport read_report_csv(const std::filesystem::path& path);

}  // namespace txml
