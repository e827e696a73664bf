#include "txml/model_io.hpp"

#include <cmath>
#include <string>

#include "txml/errors.hpp"
#include "txml/numio.hpp"

namespace txml {
namespace {

constexpr std::string_view kMagic = "txml-model";
constexpr std::string_view kVersion = "v1";

std::string scaler_line(double x_min, double x_max, double y_min, double y_max) {
    return "scaler " + format_double(x_min) + " " + format_double(x_max) + " " +
           format_double(y_min) + " " + format_double(y_max);
}

// Line-by-line reader with position tracking for error reporting.
struct LineReader {
    std::vector<std::string> lines;
    std::size_t next = 0;

    explicit LineReader(const std::string& content) {
        std::size_t pos = 0;
        while (pos < content.size()) {
            const std::size_t nl = content.find('\n', pos);
            if (nl == std::string::npos) {
                lines.emplace_back(content.substr(pos));
                break;
            }
            lines.emplace_back(content.substr(pos, nl - pos));
            pos = nl + 1;
        }
        // drop a trailing blank produced by a final newline
        while (!lines.empty() && lines.back().empty()) lines.pop_back();
    }

    std::string_view take(const char* what) {
        if (next >= lines.size()) {
            throw TruncatedFileError(std::string("model file ends before ") + what,
                                     lines.size());
        }
        return lines[next++];
    }

    std::size_t line_no() const { return next; }  // 1-based number of the line just taken
    bool exhausted() const { return next >= lines.size(); }
};

std::vector<std::string_view> expect_tokens(std::string_view line, std::string_view head,
                                            std::size_t line_no) {
    auto tokens = split_fields(line, ' ');
    if (tokens.empty() || tokens[0] != head) {
        throw ParseError("expected '" + std::string(head) + " ...', got '" + std::string(line) +
                         "'", line_no);
    }
    tokens.erase(tokens.begin());
    return tokens;
}

double parse_number(std::string_view token, std::size_t line_no) {
    const auto v = try_parse_double(token);
    if (!v) throw ParseError("malformed number '" + std::string(token) + "'", line_no);
    return *v;
}

}  // namespace

void save_model(const LinearModel& model, const std::filesystem::path& path) {
    std::string out;
    out += std::string(kMagic) + " " + std::string(kVersion) + "\n";
    out += "kind ols\n";
    out += scaler_line(model.x_min, model.x_max, model.y_min, model.y_max) + "\n";
    out += "coef " + format_double(model.slope) + " " + format_double(model.intercept) + "\n";
    write_text_file_atomic(path, out);
}

void save_model(const MlpModel& model, const std::filesystem::path& path) {
    model.validate();
    if (!model.scaler) throw ConfigError("cannot save an MLP without a fitted scaler");
    std::string out;
    out += std::string(kMagic) + " " + std::string(kVersion) + "\n";
    out += "kind mlp\n";
    out += scaler_line(model.scaler->x_min, model.scaler->x_max, model.scaler->y_min,
                       model.scaler->y_max) + "\n";
    out += "layout";
    for (int s : model.layout.sizes()) out += " " + std::to_string(s);
    out += " " + std::string(activation_name(model.layout.activation)) + "\n";
    out += "seed " + std::to_string(model.seed) + "\n";
    for (std::size_t l = 0; l < model.weights.size(); ++l) {
        const Mat& w = model.weights[l];
        for (int j = 0; j < w.rows; ++j) {
            out += "w " + std::to_string(l) + " " + std::to_string(j);
            for (int i = 0; i < w.cols; ++i) out += " " + format_double(w.at(j, i));
            out += "\n";
        }
        out += "b " + std::to_string(l);
        for (double v : model.biases[l]) out += " " + format_double(v);
        out += "\n";
    }
    write_text_file_atomic(path, out);
}

void save_model(const AnyModel& model, const std::filesystem::path& path) {
    std::visit([&](const auto& m) { save_model(m, path); }, model);
}

AnyModel load_model(const std::filesystem::path& path) {
    LineReader reader(read_text_file(path));

    const std::string_view first = reader.take("the version line");
    {
        auto tokens = split_fields(first, ' ');
        if (tokens.empty() || tokens[0] != kMagic) {
            throw ParseError("not a txml model file: " + path.string(), 1);
        }
        if (tokens.size() != 2 || tokens[1] != kVersion) {
            throw VersionError("unsupported model version '" +
                               (tokens.size() > 1 ? std::string(tokens[1]) : std::string("?")) +
                               "', expected '" + std::string(kVersion) + "'", 1);
        }
    }

    const auto kind_tokens = expect_tokens(reader.take("the kind line"), "kind", reader.line_no());
    if (kind_tokens.size() != 1) throw ParseError("malformed kind line", reader.line_no());
    const std::string kind(kind_tokens[0]);

    const auto scaler_tokens =
        expect_tokens(reader.take("the scaler line"), "scaler", reader.line_no());
    if (scaler_tokens.size() != 4) {
        throw ParseError("scaler line needs 4 numbers", reader.line_no());
    }
    double sc[4];
    for (int i = 0; i < 4; ++i) sc[i] = parse_number(scaler_tokens[i], reader.line_no());

    if (kind == "ols") {
        const auto coef = expect_tokens(reader.take("the coef line"), "coef", reader.line_no());
        if (coef.size() != 2) throw ParseError("coef line needs 2 numbers", reader.line_no());
        LinearModel m;
        m.slope = parse_number(coef[0], reader.line_no());
        m.intercept = parse_number(coef[1], reader.line_no());
        m.x_min = sc[0];
        m.x_max = sc[1];
        m.y_min = sc[2];
        m.y_max = sc[3];
        m.trained_on = "loaded from " + path.filename().string();
        if (!reader.exhausted()) {
            throw ParseError("unexpected content after the coef line", reader.line_no() + 1);
        }
        return m;
    }
    if (kind != "mlp") {
        throw ParseError("unknown model kind '" + kind + "'", 2);
    }

    const auto layout_tokens =
        expect_tokens(reader.take("the layout line"), "layout", reader.line_no());
    if (layout_tokens.size() < 4) {
        throw ParseError("layout line needs at least 3 sizes and an activation",
                         reader.line_no());
    }
    MlpLayout layout;
    layout.activation = [&] {
        try {
            return parse_activation(layout_tokens.back());
        } catch (const UnknownKindError& e) {
            throw ParseError(e.what(), reader.line_no());
        }
    }();
    std::vector<int> sizes;
    for (std::size_t i = 0; i + 1 < layout_tokens.size(); ++i) {
        const double v = parse_number(layout_tokens[i], reader.line_no());
        if (v < 1 || v != std::floor(v)) {
            throw DimensionError("layout sizes must be positive integers", reader.line_no());
        }
        sizes.push_back(static_cast<int>(v));
    }
    if (sizes.front() != 1 || sizes.back() != 1) {
        throw DimensionError("layout must start and end with size 1", reader.line_no());
    }
    layout.hidden_sizes.assign(sizes.begin() + 1, sizes.end() - 1);

    const auto seed_tokens = expect_tokens(reader.take("the seed line"), "seed", reader.line_no());
    if (seed_tokens.size() != 1) throw ParseError("malformed seed line", reader.line_no());
    std::uint64_t seed = 0;
    {
        const std::string token(seed_tokens[0]);
        std::size_t consumed = 0;
        try {
            seed = std::stoull(token, &consumed);
        } catch (const std::exception&) {
            throw ParseError("malformed seed '" + token + "'", reader.line_no());
        }
        if (consumed != token.size()) {
            throw ParseError("malformed seed '" + token + "'", reader.line_no());
        }
    }

    MlpModel m;
    m.layout = layout;
    m.seed = seed;
    m.scaler = Scaler{sc[0], sc[1], sc[2], sc[3]};
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        const int fan_in = sizes[l];
        const int fan_out = sizes[l + 1];
        Mat w = Mat::zeros(fan_out, fan_in);
        for (int j = 0; j < fan_out; ++j) {
            const auto row = expect_tokens(reader.take("a weight row"), "w", reader.line_no());
            if (row.size() != std::size_t(fan_in) + 2) {
                throw DimensionError("weight row for layer " + std::to_string(l) + " needs " +
                                     std::to_string(fan_in) + " values", reader.line_no());
            }
            if (parse_number(row[0], reader.line_no()) != double(l) ||
                parse_number(row[1], reader.line_no()) != double(j)) {
                throw DimensionError("weight rows out of order", reader.line_no());
            }
            for (int i = 0; i < fan_in; ++i) {
                w.at(j, i) = parse_number(row[2 + std::size_t(i)], reader.line_no());
            }
        }
        m.weights.push_back(std::move(w));
        const auto bias = expect_tokens(reader.take("a bias line"), "b", reader.line_no());
        if (bias.size() != std::size_t(fan_out) + 1) {
            throw DimensionError("bias line for layer " + std::to_string(l) + " needs " +
                                 std::to_string(fan_out) + " values", reader.line_no());
        }
        if (parse_number(bias[0], reader.line_no()) != double(l)) {
            throw DimensionError("bias lines out of order", reader.line_no());
        }
        std::vector<double> b(static_cast<std::size_t>(fan_out), 0.0);
        for (int j = 0; j < fan_out; ++j) {
            b[std::size_t(j)] = parse_number(bias[1 + std::size_t(j)], reader.line_no());
        }
        m.biases.push_back(std::move(b));
    }
    if (!reader.exhausted()) {
        throw ParseError("unexpected content after the last bias line", reader.line_no() + 1);
    }
    m.validate();
    return m;
}

double predict(const AnyModel& model, double x) {
    if (const auto* lin = std::get_if<LinearModel>(&model)) return predict_linear(*lin, x);
    return forward(std::get<MlpModel>(model), x);
}

std::string model_descriptor(const AnyModel& model) {
    if (const auto* lin = std::get_if<LinearModel>(&model)) {
        return "ols slope=" + format_double(lin->slope) +
               " intercept=" + format_double(lin->intercept) +
               (lin->trained_on.empty() ? "" : " [" + lin->trained_on + "]");
    }
    const MlpModel& m = std::get<MlpModel>(model);
    std::string d = "mlp layout=";
    const auto sizes = m.layout.sizes();
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (i) d += "-";
        d += std::to_string(sizes[i]);
    }
    d += " " + std::string(activation_name(m.layout.activation));
    d += " seed=" + std::to_string(m.seed);
    return d;
}

}  // namespace txml
