#include <algorithm>
#include <limits>

#include "txml/kernels/kernels.hpp"
#include "txml/kernels/math_core.hpp"

namespace txml::kernels {
namespace {

void fill_scalar(double* dst, double value, std::size_t n) {
    std::fill(dst, dst + n, value);
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + a * x[i];
}

void scale_shift_scalar(const double* x, double scale, double shift, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] * scale + shift;
}

void normalize_scalar(const double* x, double lo, double hi, double* y, std::size_t n) {
    const double range = hi - lo;
    for (std::size_t i = 0; i < n; ++i) y[i] = (x[i] - lo) / range;
}

void tanh_eval_scalar(const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = tanh_core(x[i]);
}

void logistic_eval_scalar(const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = logistic_core(x[i]);
}

void tanh_backprop_scalar(const double* act, const double* upstream, double* grad,
                          std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) grad[i] = upstream[i] * (1.0 - act[i] * act[i]);
}

void logistic_backprop_scalar(const double* act, const double* upstream, double* grad,
                              std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) grad[i] = upstream[i] * (act[i] * (1.0 - act[i]));
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

double sum_scalar(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

double sse_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

void minmax_scalar(const double* x, std::size_t n, double* lo, double* hi) {
    double mn = std::numeric_limits<double>::infinity();
    double mx = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        mn = std::min(mn, x[i]);
        mx = std::max(mx, x[i]);
    }
    *lo = mn;
    *hi = mx;
}

constexpr Kernels kScalarKernels = {
    "scalar",
    fill_scalar,
    axpy_scalar,
    scale_shift_scalar,
    normalize_scalar,
    tanh_eval_scalar,
    logistic_eval_scalar,
    tanh_backprop_scalar,
    logistic_backprop_scalar,
    dot_scalar,
    sum_scalar,
    sse_scalar,
    minmax_scalar,
};

}  // namespace

const Kernels& scalar_kernels() noexcept { return kScalarKernels; }

}  // namespace txml::kernels
