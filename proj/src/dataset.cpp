#include "txml/dataset.hpp"

#include <cmath>
#include <string>

#include "txml/errors.hpp"
#include "txml/numio.hpp"

namespace txml {

void Dataset::validate() const {
    if (samples.empty()) throw ConfigError("dataset has no samples");
    if (!(eps_r >= 1.0)) throw DomainError("dataset eps_r must be >= 1");
    if (unit != line_unit(kind)) {
        throw ConfigError(std::string("dataset unit '") + std::string(unit_name(unit)) +
                          "' does not match kind '" + std::string(line_kind_name(kind)) + "'");
    }
    double prev = -std::numeric_limits<double>::infinity();
    for (const Sample& s : samples) {
        if (!(s.x > prev)) throw ConfigError("dataset x values must be strictly increasing");
        if (!std::isfinite(s.y) || !(s.y > 0.0)) {
            throw DomainError("dataset y values must be finite and positive");
        }
        prev = s.x;
    }
}

std::vector<double> Dataset::xs() const {
    std::vector<double> v(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) v[i] = samples[i].x;
    return v;
}

std::vector<double> Dataset::ys() const {
    std::vector<double> v(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) v[i] = samples[i].y;
    return v;
}

std::string Dataset::descriptor() const {
    std::string d(line_kind_name(kind));
    d += " eps_r=" + format_double(eps_r);
    for (const auto& [name, value] : fixed_params) {
        d += " " + name + "=" + format_double(value);
    }
    if (!samples.empty()) {
        d += " x=[" + format_double(samples.front().x) + "," +
             format_double(samples.back().x) + "] n=" + std::to_string(samples.size());
    }
    return d;
}

Dataset generate_sweep(LineKind kind, double eps_r, const ParamMap& fixed_params,
                       double x_min, double x_max, double step) {
    if (!(step > 0.0)) throw DomainError("sweep step must be > 0, got " + format_double(step));
    if (!(x_max >= x_min)) {
        throw DomainError("empty sweep range: x_max " + format_double(x_max) +
                          " < x_min " + format_double(x_min));
    }
    const LineModel model = line_model(kind);
    Dataset ds;
    ds.kind = kind;
    ds.eps_r = eps_r;
    ds.fixed_params = fixed_params;
    ds.unit = model.unit();
    const double limit = x_max + step * 0.5;
    for (std::size_t i = 0;; ++i) {
        const double x = x_min + static_cast<double>(i) * step;  // no accumulation drift
        if (x > limit) break;
        ds.samples.push_back({x, model(eps_r, x, fixed_params)});
    }
    ds.validate();
    return ds;
}

void Scaler::apply_x(const double* in, double* out, std::size_t n,
                     const kernels::Kernels& k) const {
    k.normalize(in, x_min, x_max, out, n);
}

void Scaler::apply_y(const double* in, double* out, std::size_t n,
                     const kernels::Kernels& k) const {
    k.normalize(in, y_min, y_max, out, n);
}

void Scaler::invert_y(const double* in, double* out, std::size_t n,
                      const kernels::Kernels& k) const {
    k.scale_shift(in, y_max - y_min, y_min, out, n);
}

Scaler fit_scaler(const Dataset& dataset, const kernels::Kernels& k) {
    dataset.validate();
    const std::vector<double> xs = dataset.xs();
    const std::vector<double> ys = dataset.ys();
    Scaler s;
    k.minmax(xs.data(), xs.size(), &s.x_min, &s.x_max);
    k.minmax(ys.data(), ys.size(), &s.y_min, &s.y_max);
    if (!(s.x_min < s.x_max)) throw DegenerateRangeError("dataset x range is degenerate");
    if (!(s.y_min < s.y_max)) throw DegenerateRangeError("dataset y range is degenerate");
    return s;
}

namespace {

constexpr std::string_view kCsvHeader =
    "kind,eps_r,param_name,param_value,x_w_over_h,y_value,y_unit";

std::string join_param_names(const ParamMap& params) {
    std::string s;
    for (const auto& [name, value] : params) {
        if (!s.empty()) s += ';';
        s += name;
    }
    return s;
}

std::string join_param_values(const ParamMap& params) {
    std::string s;
    for (const auto& [name, value] : params) {
        if (!s.empty()) s += ';';
        s += format_double(value);
    }
    return s;
}

ParamMap parse_params(std::string_view names, std::string_view values, std::size_t line_no) {
    ParamMap params;
    if (names.empty() && values.empty()) return params;
    const auto name_list = split_fields(names, ';');
    const auto value_list = split_fields(values, ';');
    if (name_list.size() != value_list.size()) {
        throw ParseError("param_name and param_value counts differ", line_no);
    }
    for (std::size_t i = 0; i < name_list.size(); ++i) {
        if (name_list[i].empty()) throw ParseError("empty fixed parameter name", line_no);
        const auto value = try_parse_double(value_list[i]);
        if (!value) {
            throw ParseError("non-numeric param_value cell '" + std::string(value_list[i]) + "'",
                             line_no);
        }
        if (!params.emplace(std::string(name_list[i]), *value).second) {
            throw ParseError("duplicate fixed parameter '" + std::string(name_list[i]) + "'",
                             line_no);
        }
    }
    return params;
}

double parse_numeric_cell(std::string_view cell, const char* column, std::size_t line_no) {
    const auto value = try_parse_double(cell);
    if (!value) {
        throw ParseError("non-numeric " + std::string(column) + " cell '" + std::string(cell) +
                         "'", line_no);
    }
    return *value;
}

}  // namespace

void write_csv(const Dataset& dataset, const std::filesystem::path& path) {
    dataset.validate();
    std::string out(kCsvHeader);
    out += '\n';
    const std::string kind(line_kind_name(dataset.kind));
    const std::string eps = format_double(dataset.eps_r);
    const std::string pnames = join_param_names(dataset.fixed_params);
    const std::string pvalues = join_param_values(dataset.fixed_params);
    const std::string unit(unit_name(dataset.unit));
    for (const Sample& s : dataset.samples) {
        out += kind;
        out += ',';
        out += eps;
        out += ',';
        out += pnames;
        out += ',';
        out += pvalues;
        out += ',';
        out += format_double(s.x);
        out += ',';
        out += format_double(s.y);
        out += ',';
        out += unit;
        out += '\n';
    }
    write_text_file_atomic(path, out);
}

Dataset read_csv(const std::filesystem::path& path) {
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
    if (!next_line(header)) throw ParseError("empty dataset file: " + path.string(), 0);
    const auto header_fields = split_fields(header, ',');
    const auto expected_fields = split_fields(kCsvHeader, ',');
    if (header_fields.size() != expected_fields.size()) {
        throw ParseError("dataset header has " + std::to_string(header_fields.size()) +
                         " columns, expected " + std::to_string(expected_fields.size()), 1);
    }
    for (std::size_t i = 0; i < expected_fields.size(); ++i) {
        if (header_fields[i] != expected_fields[i]) {
            throw ParseError("dataset header column " + std::to_string(i + 1) + " is '" +
                             std::string(header_fields[i]) + "', expected '" +
                             std::string(expected_fields[i]) + "'", 1);
        }
    }

    Dataset ds;
    bool first_row = true;
    std::string_view line;
    while (next_line(line)) {
        if (line.empty() && pos >= content.size()) break;  // trailing newline
        const auto fields = split_fields(line, ',');
        if (fields.size() != 7) {
            throw ParseError("expected 7 fields, got " + std::to_string(fields.size()), line_no);
        }
        const LineKind kind = [&] {
            try {
                return parse_line_kind(fields[0]);
            } catch (const UnknownKindError& e) {
                throw ParseError(e.what(), line_no);
            }
        }();
        const double eps_r = parse_numeric_cell(fields[1], "eps_r", line_no);
        ParamMap params = parse_params(fields[2], fields[3], line_no);
        const double x = parse_numeric_cell(fields[4], "x_w_over_h", line_no);
        const double y = parse_numeric_cell(fields[5], "y_value", line_no);
        const Unit unit = [&] {
            try {
                return parse_unit(fields[6]);
            } catch (const UnknownKindError& e) {
                throw ParseError(e.what(), line_no);
            }
        }();
        if (first_row) {
            ds.kind = kind;
            ds.eps_r = eps_r;
            ds.fixed_params = std::move(params);
            ds.unit = unit;
            first_row = false;
        } else {
            if (kind != ds.kind || eps_r != ds.eps_r || unit != ds.unit ||
                params != ds.fixed_params) {
                throw ParseError("row metadata differs from the first row", line_no);
            }
            if (!(x > ds.samples.back().x)) {
                throw ParseError("x_w_over_h not strictly increasing", line_no);
            }
        }
        ds.samples.push_back({x, y});
    }
    if (ds.samples.empty()) throw ParseError("dataset file has no data rows: " + path.string(), line_no);
    ds.validate();
    return ds;
}

}  // namespace txml
