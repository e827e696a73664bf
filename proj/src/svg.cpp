#include "txml/svg.hpp"

#include <algorithm>
#include <cmath>

#include "txml/errors.hpp"
#include "txml/numio.hpp"

namespace txml {
namespace {

// Fixed canvas and plot-area geometry.
constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 770.0;
constexpr double kTop = 60.0;
constexpr double kBottom = 540.0;
constexpr int kTicks = 5;  // intervals per axis

constexpr const char* kActualColor = "#1a5fb4";
constexpr const char* kPredictedColor = "#c01c28";
constexpr const char* kErrorColor = "#1a5fb4";
constexpr const char* kActualDash = "1.5,4";  // dotted
constexpr const char* kPredictedDash = "9,5"; // dashed

struct Range {
    double lo = 0.0;
    double hi = 1.0;
};

// Expands a raw data range by 5%; a degenerate (single-value) range is padded
// by 5% of its magnitude so the axis stays well formed.
Range padded(double lo, double hi) {
    double span = hi - lo;
    if (span <= 0.0) {
        const double pad = std::max(std::fabs(lo) * 0.05, 0.5);
        return {lo - pad, hi + pad};
    }
    return {lo - 0.05 * span, hi + 0.05 * span};
}

std::string fmt2(double v) { return format_fixed(v, 2); }

std::string tick_label(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string xml_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

class PlotBuilder {
public:
    PlotBuilder(Range x, Range y) : x_(x), y_(y) {}

    double px(double x) const {
        return kLeft + (x - x_.lo) / (x_.hi - x_.lo) * (kRight - kLeft);
    }
    double py(double y) const {
        return kBottom - (y - y_.lo) / (y_.hi - y_.lo) * (kBottom - kTop);
    }

    void open(std::string& out, const std::string& title) const {
        out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
               "viewBox=\"0 0 800 600\">\n";
        out += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"#ffffff\"/>\n";
        out += "<text x=\"400\" y=\"30\" font-family=\"sans-serif\" font-size=\"16\" "
               "text-anchor=\"middle\">" + xml_escape(title) + "</text>\n";
    }

    void axes(std::string& out, const std::string& x_label, const std::string& y_label) const {
        out += "<rect x=\"" + fmt2(kLeft) + "\" y=\"" + fmt2(kTop) + "\" width=\"" +
               fmt2(kRight - kLeft) + "\" height=\"" + fmt2(kBottom - kTop) +
               "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
        for (int i = 0; i <= kTicks; ++i) {
            const double f = static_cast<double>(i) / kTicks;
            const double xv = x_.lo + f * (x_.hi - x_.lo);
            const double yv = y_.lo + f * (y_.hi - y_.lo);
            const double xp = px(xv);
            const double yp = py(yv);
            out += "<line x1=\"" + fmt2(xp) + "\" y1=\"" + fmt2(kBottom) + "\" x2=\"" + fmt2(xp) +
                   "\" y2=\"" + fmt2(kBottom + 5) + "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
            out += "<text x=\"" + fmt2(xp) + "\" y=\"" + fmt2(kBottom + 20) +
                   "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" +
                   tick_label(xv) + "</text>\n";
            out += "<line x1=\"" + fmt2(kLeft - 5) + "\" y1=\"" + fmt2(yp) + "\" x2=\"" +
                   fmt2(kLeft) + "\" y2=\"" + fmt2(yp) +
                   "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
            out += "<text x=\"" + fmt2(kLeft - 8) + "\" y=\"" + fmt2(yp + 4) +
                   "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" +
                   tick_label(yv) + "</text>\n";
        }
        out += "<text x=\"" + fmt2((kLeft + kRight) / 2) + "\" y=\"" + fmt2(kHeight - 15) +
               "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">" +
               xml_escape(x_label) + "</text>\n";
        out += "<text x=\"20\" y=\"" + fmt2((kTop + kBottom) / 2) +
               "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
               "transform=\"rotate(-90 20 " + fmt2((kTop + kBottom) / 2) + ")\">" +
               xml_escape(y_label) + "</text>\n";
    }

    void polyline(std::string& out, const std::vector<double>& xs, const std::vector<double>& ys,
                  const char* css_class, const char* color, const char* dasharray) const {
        out += "<polyline class=\"";
        out += css_class;
        out += "\" fill=\"none\" stroke=\"";
        out += color;
        out += "\" stroke-width=\"1.5\"";
        if (dasharray) {
            out += " stroke-dasharray=\"";
            out += dasharray;
            out += "\" stroke-linecap=\"round\"";
        }
        out += " points=\"";
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (i) out += ' ';
            out += fmt2(px(xs[i])) + "," + fmt2(py(ys[i]));
        }
        out += "\"/>\n";
        // single-point series would otherwise be invisible
        if (xs.size() == 1) {
            out += "<circle cx=\"" + fmt2(px(xs[0])) + "\" cy=\"" + fmt2(py(ys[0])) +
                   "\" r=\"3\" fill=\"" + std::string(color) + "\"/>\n";
        }
    }

private:
    Range x_;
    Range y_;
};

void legend(std::string& out) {
    const double x0 = kRight - 180.0;
    const double y0 = kTop + 16.0;
    out += "<line x1=\"" + fmt2(x0) + "\" y1=\"" + fmt2(y0) + "\" x2=\"" + fmt2(x0 + 36) +
           "\" y2=\"" + fmt2(y0) + "\" stroke=\"" + std::string(kActualColor) +
           "\" stroke-width=\"1.5\" stroke-dasharray=\"" + kActualDash +
           "\" stroke-linecap=\"round\"/>\n";
    out += "<text x=\"" + fmt2(x0 + 42) + "\" y=\"" + fmt2(y0 + 4) +
           "\" font-family=\"sans-serif\" font-size=\"12\">Actual (dotted)</text>\n";
    out += "<line x1=\"" + fmt2(x0) + "\" y1=\"" + fmt2(y0 + 18) + "\" x2=\"" + fmt2(x0 + 36) +
           "\" y2=\"" + fmt2(y0 + 18) + "\" stroke=\"" + std::string(kPredictedColor) +
           "\" stroke-width=\"1.5\" stroke-dasharray=\"" + kPredictedDash + "\"/>\n";
    out += "<text x=\"" + fmt2(x0 + 42) + "\" y=\"" + fmt2(y0 + 22) +
           "\" font-family=\"sans-serif\" font-size=\"12\">Predicted (dashed)</text>\n";
}

struct DisplayScale {
    double factor = 1.0;
    std::string unit_label;
};

DisplayScale display_scale(Unit unit) {
    if (unit == Unit::hertz) return {1e-6, "MHz"};
    return {1.0, "Ω"};
}

}  // namespace

std::string render_plot_svg(const EvalReport& report, PlotKind kind) {
    if (report.rows.empty()) throw ConfigError("cannot plot an empty report");
    const DisplayScale scale = display_scale(report.unit);

    std::vector<double> xs, actual, predicted, abs_err;
    xs.reserve(report.rows.size());
    for (const EvalRow& r : report.rows) {
        xs.push_back(r.x);
        actual.push_back(r.actual * scale.factor);
        predicted.push_back(r.predicted * scale.factor);
        abs_err.push_back(r.abs_error * scale.factor);
    }

    const auto [x_min_it, x_max_it] = std::minmax_element(xs.begin(), xs.end());
    const Range xr = padded(*x_min_it, *x_max_it);

    std::string out;
    if (kind == PlotKind::prediction) {
        double lo = actual[0], hi = actual[0];
        for (double v : actual) { lo = std::min(lo, v); hi = std::max(hi, v); }
        for (double v : predicted) { lo = std::min(lo, v); hi = std::max(hi, v); }
        const Range yr = padded(lo, hi);
        PlotBuilder plot(xr, yr);
        plot.open(out, report.quantity + " vs. w/h [" + report.model_descriptor + "]");
        plot.axes(out, "w/h", report.quantity + " (" + scale.unit_label + ")");
        plot.polyline(out, xs, actual, "actual", kActualColor, kActualDash);
        plot.polyline(out, xs, predicted, "predicted", kPredictedColor, kPredictedDash);
        legend(out);
    } else {
        double lo = 0.0, hi = abs_err[0];
        for (double v : abs_err) hi = std::max(hi, v);
        const Range yr = padded(lo, hi);
        PlotBuilder plot(xr, yr);
        plot.open(out, "Absolute Error vs. w/h [" + report.model_descriptor + "]");
        plot.axes(out, "w/h", "Absolute Error (" + scale.unit_label + ")");
        plot.polyline(out, xs, abs_err, "error", kErrorColor, nullptr);
    }
    out += "</svg>\n";
    return out;
}

void emit_plot_svg(const EvalReport& report, PlotKind kind,
                   const std::filesystem::path& path) {
    write_text_file_atomic(path, render_plot_svg(report, kind));
}

}  // namespace txml
