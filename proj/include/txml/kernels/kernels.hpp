#pragma once

#include <cstddef>

// Batch arithmetic kernels behind the training/evaluation hot loops.
//
// A Kernels table bundles one backend's implementations. scalar_kernels() is
// the reference; avx2_kernels() is selected at runtime when the CPU supports
// it. Elementwise kernels (fill/axpy/scale_shift/normalize/activations) are
// bit-identical across backends; reductions (dot/sum/sse) associate
// differently and agree to ~1e-15 relative. In-place calls (out == in) are
// allowed for the elementwise kernels; other overlap is not.

namespace txml::kernels {

struct Kernels {
    const char* name;

    void (*fill)(double* dst, double value, std::size_t n);
    // y += a * x
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    // y = x * scale + shift
    void (*scale_shift)(const double* x, double scale, double shift, double* y, std::size_t n);
    // y = (x - lo) / (hi - lo)
    void (*normalize)(const double* x, double lo, double hi, double* y, std::size_t n);

    void (*tanh_eval)(const double* x, double* y, std::size_t n);
    void (*logistic_eval)(const double* x, double* y, std::size_t n);
    // grad = upstream * (1 - act^2), act being tanh outputs
    void (*tanh_backprop)(const double* act, const double* upstream, double* grad, std::size_t n);
    // grad = upstream * (act * (1 - act)), act being logistic outputs
    void (*logistic_backprop)(const double* act, const double* upstream, double* grad, std::size_t n);

    double (*dot)(const double* x, const double* y, std::size_t n);
    double (*sum)(const double* x, std::size_t n);
    // sum of (a[i] - b[i])^2
    double (*sse)(const double* a, const double* b, std::size_t n);
    // lo/hi over x; +inf/-inf when n == 0
    void (*minmax)(const double* x, std::size_t n, double* lo, double* hi);
};

const Kernels& scalar_kernels() noexcept;

// nullptr when AVX2 was not compiled in or the CPU lacks it.
const Kernels* avx2_kernels() noexcept;

// Best available backend, chosen once per process. The TXML_KERNELS
// environment variable overrides the choice ("scalar", "avx2", "auto").
const Kernels& active_kernels() noexcept;

}  // namespace txml::kernels
