#include "txml/eval.hpp"

#include <cmath>

#include "txml/errors.hpp"
#include "txml/numio.hpp"

namespace txml {

double percent_error(double actual, double predicted) {
    if (actual == 0.0) throw DomainError("percent error is undefined for actual = 0");
    return 100.0 * std::fabs(actual - predicted) / std::fabs(actual);
}

void recompute_aggregates(EvalReport& report) {
    if (report.rows.empty()) throw ConfigError("evaluation report has no rows");
    double max_pct = 0.0, sum_pct = 0.0, max_abs = 0.0, sum_abs = 0.0;
    for (const EvalRow& r : report.rows) {
        max_pct = std::max(max_pct, r.pct_error);
        max_abs = std::max(max_abs, r.abs_error);
        sum_pct += r.pct_error;
        sum_abs += r.abs_error;
    }
    const double n = static_cast<double>(report.rows.size());
    report.max_pct_error = max_pct;
    report.mean_pct_error = sum_pct / n;
    report.max_abs_error = max_abs;
    report.mean_abs_error = sum_abs / n;
}

EvalReport evaluate(const Predictor& predictor, const Dataset& eval_dataset,
                    std::string model_descriptor) {
    eval_dataset.validate();
    EvalReport report;
    report.model_descriptor = std::move(model_descriptor);
    report.quantity = std::string(quantity_label(eval_dataset.kind));
    report.unit = eval_dataset.unit;
    report.rows.reserve(eval_dataset.samples.size());
    for (const Sample& s : eval_dataset.samples) {
        EvalRow row;
        row.x = s.x;
        row.actual = s.y;
        try {
            row.predicted = predictor(s.x);
        } catch (const Error& e) {
            throw Error("predictor failed at x = " + format_double(s.x) + ": " + e.what());
        }
        row.abs_error = std::fabs(row.actual - row.predicted);
        row.pct_error = percent_error(row.actual, row.predicted);
        report.rows.push_back(row);
    }
    recompute_aggregates(report);
    return report;
}

namespace {

constexpr std::string_view kReportHeader =
    "x_w_over_h,actual,predicted,abs_error,pct_error,actual_full,predicted_full";

}  // namespace

void write_report_csv(const EvalReport& report, const std::filesystem::path& path) {
    if (report.rows.empty()) throw ConfigError("refusing to write an empty report");
    std::string out(kReportHeader);
    out += '\n';
    for (const EvalRow& r : report.rows) {
        out += format_double(r.x);
        out += ',';
        out += format_fixed(r.actual, 3);
        out += ',';
        out += format_fixed(r.predicted, 3);
        out += ',';
        out += format_fixed(r.abs_error, 3);
        out += ',';
        out += format_fixed(r.pct_error, 3);
        out += ',';
        out += format_double(r.actual);
        out += ',';
        out += format_double(r.predicted);
        out += '\n';
    }
    write_text_file_atomic(path, out);
}

EvalReport read_report_csv(const std::filesystem::path& path) {
    const std::string content = read_text_file(path);
    std::size_t pos = 0;
    std::size_t line_no = 0;
    auto next_line = [&](std::string_view& line) {
        if (pos >= content.size()) return false;
        const std::size_t nl = content.find('\n', pos);
        if (nl == std::string::npos) {
            line = std::string_view(content).substr(pos);
            pos = content.size();
        } else {
            line = std::string_view(content).substr(pos, nl - pos);
            pos = nl + 1;
        }
        ++line_no;
        return true;
    };

    std::string_view header;
    if (!next_line(header)) throw ParseError("empty report file: " + path.string(), 0);
    if (header != kReportHeader) {
        throw ParseError("unexpected report header '" + std::string(header) + "'", 1);
    }

    EvalReport report;
    std::string_view line;
    while (next_line(line)) {
        if (line.empty() && pos >= content.size()) break;
        const auto fields = split_fields(line, ',');
        if (fields.size() != 7) {
            throw ParseError("expected 7 fields, got " + std::to_string(fields.size()), line_no);
        }
        auto num = [&](std::string_view cell, const char* column) {
            const auto v = try_parse_double(cell);
            if (!v) {
                throw ParseError("non-numeric " + std::string(column) + " cell '" +
                                 std::string(cell) + "'", line_no);
            }
            return *v;
        };
        EvalRow row;
        row.x = num(fields[0], "x_w_over_h");
        row.actual = num(fields[5], "actual_full");
        row.predicted = num(fields[6], "predicted_full");
        row.abs_error = std::fabs(row.actual - row.predicted);
        row.pct_error = percent_error(row.actual, row.predicted);
        if (!report.rows.empty() && !(row.x > report.rows.back().x)) {
            throw ParseError("x_w_over_h not strictly increasing", line_no);
        }
        report.rows.push_back(row);
    }
    if (report.rows.empty()) {
        throw ParseError("report file has no data rows: " + path.string(), line_no);
    }
    recompute_aggregates(report);
    return report;
}

}  // namespace txml
