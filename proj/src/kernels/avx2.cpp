// AVX2 backend. Elementwise kernels replay the scalar reference operation
// sequence lane-wise (no FMA), so their outputs match scalar_kernels()
// bit-for-bit; tails fall back to the scalar cores. Reductions keep one
// vector accumulator and a fixed horizontal-sum order.

#include "txml/kernels/kernels.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

#include <algorithm>
#include <limits>

#include "txml/kernels/math_core.hpp"

namespace txml::kernels {
namespace {

inline __m256d abs_pd(__m256d v) {
    return _mm256_and_pd(v, _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL)));
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);  // [v0+v2, v1+v3]
    return _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

// exp_core, four lanes at a time.
inline __m256d exp4(__m256d x0) {
    using namespace mc;
    const __m256d maxlog = _mm256_set1_pd(kExpMax);
    const __m256d minlog = _mm256_set1_pd(kExpMin);
    const __m256d over = _mm256_cmp_pd(x0, maxlog, _CMP_GT_OQ);
    const __m256d under = _mm256_cmp_pd(x0, minlog, _CMP_LT_OQ);
    const __m256d xc = _mm256_min_pd(_mm256_max_pd(x0, minlog), maxlog);

    const __m256d px = _mm256_floor_pd(
        _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(kLog2E), xc), _mm256_set1_pd(0.5)));
    const __m128i n32 = _mm256_cvtpd_epi32(px);  // integral values, exact

    __m256d x = _mm256_sub_pd(xc, _mm256_mul_pd(px, _mm256_set1_pd(kLn2Hi)));
    x = _mm256_sub_pd(x, _mm256_mul_pd(px, _mm256_set1_pd(kLn2Lo)));
    const __m256d xx = _mm256_mul_pd(x, x);

    __m256d p = _mm256_mul_pd(_mm256_set1_pd(kExpP0), xx);
    p = _mm256_add_pd(p, _mm256_set1_pd(kExpP1));
    p = _mm256_mul_pd(p, xx);
    p = _mm256_add_pd(p, _mm256_set1_pd(kExpP2));
    p = _mm256_mul_pd(p, x);

    __m256d q = _mm256_mul_pd(_mm256_set1_pd(kExpQ0), xx);
    q = _mm256_add_pd(q, _mm256_set1_pd(kExpQ1));
    q = _mm256_mul_pd(q, xx);
    q = _mm256_add_pd(q, _mm256_set1_pd(kExpQ2));
    q = _mm256_mul_pd(q, xx);
    q = _mm256_add_pd(q, _mm256_set1_pd(kExpQ3));

    const __m256d ratio = _mm256_div_pd(p, _mm256_sub_pd(q, p));
    __m256d r = _mm256_add_pd(_mm256_set1_pd(1.0),
                              _mm256_mul_pd(_mm256_set1_pd(2.0), ratio));

    // 2^n via exponent-field construction; n is within [-1022, 1022] here.
    __m256i n64 = _mm256_cvtepi32_epi64(n32);
    n64 = _mm256_add_epi64(n64, _mm256_set1_epi64x(1023));
    n64 = _mm256_slli_epi64(n64, 52);
    r = _mm256_mul_pd(r, _mm256_castsi256_pd(n64));

    r = _mm256_blendv_pd(r, _mm256_set1_pd(std::numeric_limits<double>::infinity()), over);
    r = _mm256_blendv_pd(r, _mm256_setzero_pd(), under);
    return r;
}

// tanh_core, four lanes at a time.
inline __m256d tanh4(__m256d x) {
    using namespace mc;
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d z = abs_pd(x);
    const __m256d small = _mm256_cmp_pd(z, _mm256_set1_pd(kTanhSmall), _CMP_LT_OQ);
    const __m256d big = _mm256_cmp_pd(z, _mm256_set1_pd(kTanhBig), _CMP_GT_OQ);

    // |x| < 0.625: x + x * (s*P(s)/Q(s)), s = x^2 (odd in x, sign built in)
    const __m256d s = _mm256_mul_pd(x, x);
    __m256d p = _mm256_mul_pd(_mm256_set1_pd(kTanhP0), s);
    p = _mm256_add_pd(p, _mm256_set1_pd(kTanhP1));
    p = _mm256_mul_pd(p, s);
    p = _mm256_add_pd(p, _mm256_set1_pd(kTanhP2));
    p = _mm256_mul_pd(p, s);
    __m256d q = _mm256_add_pd(s, _mm256_set1_pd(kTanhQ0));
    q = _mm256_mul_pd(q, s);
    q = _mm256_add_pd(q, _mm256_set1_pd(kTanhQ1));
    q = _mm256_mul_pd(q, s);
    q = _mm256_add_pd(q, _mm256_set1_pd(kTanhQ2));
    const __m256d small_r = _mm256_add_pd(x, _mm256_mul_pd(x, _mm256_div_pd(p, q)));

    // |x| >= 0.625: 1 - 2/(e^{2|x|} + 1), saturated to 1 past kTanhBig
    const __m256d e = exp4(_mm256_add_pd(z, z));
    const __m256d mid =
        _mm256_sub_pd(one, _mm256_div_pd(_mm256_set1_pd(2.0), _mm256_add_pd(e, one)));
    __m256d r = _mm256_blendv_pd(mid, one, big);
    const __m256d sign = _mm256_andnot_pd(
        _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL)), x);
    r = _mm256_or_pd(r, sign);

    return _mm256_blendv_pd(r, small_r, small);
}

// logistic_core, four lanes at a time.
inline __m256d logistic4(__m256d x) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d t = exp4(_mm256_xor_pd(abs_pd(x), _mm256_set1_pd(-0.0)));
    const __m256d d = _mm256_add_pd(one, t);
    const __m256d pos = _mm256_div_pd(one, d);
    const __m256d neg = _mm256_div_pd(t, d);
    const __m256d isneg = _mm256_cmp_pd(x, _mm256_setzero_pd(), _CMP_LT_OQ);
    return _mm256_blendv_pd(pos, neg, isneg);
}

void fill_avx2(double* dst, double value, std::size_t n) {
    const __m256d v = _mm256_set1_pd(value);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(dst + i, v);
    for (; i < n; ++i) dst[i] = value;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
    const __m256d av = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xv = _mm256_loadu_pd(x + i);
        const __m256d yv = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(y + i, _mm256_add_pd(yv, _mm256_mul_pd(av, xv)));
    }
    for (; i < n; ++i) y[i] = y[i] + a * x[i];
}

void scale_shift_avx2(const double* x, double scale, double shift, double* y, std::size_t n) {
    const __m256d sv = _mm256_set1_pd(scale);
    const __m256d tv = _mm256_set1_pd(shift);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xv = _mm256_loadu_pd(x + i);
        _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_mul_pd(xv, sv), tv));
    }
    for (; i < n; ++i) y[i] = x[i] * scale + shift;
}

void normalize_avx2(const double* x, double lo, double hi, double* y, std::size_t n) {
    const double range = hi - lo;
    const __m256d lov = _mm256_set1_pd(lo);
    const __m256d rv = _mm256_set1_pd(range);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xv = _mm256_loadu_pd(x + i);
        _mm256_storeu_pd(y + i, _mm256_div_pd(_mm256_sub_pd(xv, lov), rv));
    }
    for (; i < n; ++i) y[i] = (x[i] - lo) / range;
}

void tanh_eval_avx2(const double* x, double* y, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(y + i, tanh4(_mm256_loadu_pd(x + i)));
    for (; i < n; ++i) y[i] = tanh_core(x[i]);
}

void logistic_eval_avx2(const double* x, double* y, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(y + i, logistic4(_mm256_loadu_pd(x + i)));
    for (; i < n; ++i) y[i] = logistic_core(x[i]);
}

void tanh_backprop_avx2(const double* act, const double* upstream, double* grad,
                        std::size_t n) {
    const __m256d one = _mm256_set1_pd(1.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_loadu_pd(act + i);
        const __m256d u = _mm256_loadu_pd(upstream + i);
        _mm256_storeu_pd(grad + i,
                         _mm256_mul_pd(u, _mm256_sub_pd(one, _mm256_mul_pd(a, a))));
    }
    for (; i < n; ++i) grad[i] = upstream[i] * (1.0 - act[i] * act[i]);
}

void logistic_backprop_avx2(const double* act, const double* upstream, double* grad,
                            std::size_t n) {
    const __m256d one = _mm256_set1_pd(1.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_loadu_pd(act + i);
        const __m256d u = _mm256_loadu_pd(upstream + i);
        _mm256_storeu_pd(grad + i,
                         _mm256_mul_pd(u, _mm256_mul_pd(a, _mm256_sub_pd(one, a))));
    }
    for (; i < n; ++i) grad[i] = upstream[i] * (act[i] * (1.0 - act[i]));
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_add_pd(acc,
                            _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    }
    double r = hsum(acc);
    for (; i < n; ++i) r += x[i] * y[i];
    return r;
}

double sum_avx2(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    double r = hsum(acc);
    for (; i < n; ++i) r += x[i];
    return r;
}

double sse_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    }
    double r = hsum(acc);
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        r += d * d;
    }
    return r;
}

void minmax_avx2(const double* x, std::size_t n, double* lo, double* hi) {
    double mn = std::numeric_limits<double>::infinity();
    double mx = -mn;
    std::size_t i = 0;
    if (n >= 4) {
        __m256d vlo = _mm256_loadu_pd(x);
        __m256d vhi = vlo;
        for (i = 4; i + 4 <= n; i += 4) {
            const __m256d v = _mm256_loadu_pd(x + i);
            vlo = _mm256_min_pd(vlo, v);
            vhi = _mm256_max_pd(vhi, v);
        }
        const __m128d lo128 = _mm_min_pd(_mm256_castpd256_pd128(vlo),
                                         _mm256_extractf128_pd(vlo, 1));
        const __m128d hi128 = _mm_max_pd(_mm256_castpd256_pd128(vhi),
                                         _mm256_extractf128_pd(vhi, 1));
        mn = std::min(_mm_cvtsd_f64(lo128), _mm_cvtsd_f64(_mm_unpackhi_pd(lo128, lo128)));
        mx = std::max(_mm_cvtsd_f64(hi128), _mm_cvtsd_f64(_mm_unpackhi_pd(hi128, hi128)));
    }
    for (; i < n; ++i) {
        mn = std::min(mn, x[i]);
        mx = std::max(mx, x[i]);
    }
    *lo = mn;
    *hi = mx;
}

constexpr Kernels kAvx2Kernels = {
    "avx2",
    fill_avx2,
    axpy_avx2,
    scale_shift_avx2,
    normalize_avx2,
    tanh_eval_avx2,
    logistic_eval_avx2,
    tanh_backprop_avx2,
    logistic_backprop_avx2,
    dot_avx2,
    sum_avx2,
    sse_avx2,
    minmax_avx2,
};

}  // namespace

const Kernels* avx2_kernels() noexcept {
    static const Kernels* table = __builtin_cpu_supports("avx2") ? &kAvx2Kernels : nullptr;
    return table;
}

}  // namespace txml::kernels

#else  // !defined(__AVX2__)

namespace txml::kernels {
const Kernels* avx2_kernels() noexcept { return nullptr; }
}  // namespace txml::kernels

#endif
