#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

// Scalar reference implementations of the transcendental kernels.
//
// These are the specification for the SIMD backends: each vector kernel
// executes this exact operation sequence per lane (no FMA contraction, the
// project builds with -ffp-contract=off), so elementwise kernel results are
// bit-identical across backends and the equivalence tests can compare with
// memcmp. The rational approximations are the classic Cephes double-precision
// ones (~1-2 ulp); accuracy against std::exp/std::tanh is asserted in tests.

namespace txml::kernels {

namespace mc {
inline constexpr double kLog2E = 1.4426950408889634073599;
inline constexpr double kLn2Hi = 6.93145751953125e-1;
inline constexpr double kLn2Lo = 1.42860682030941723212e-6;

inline constexpr double kExpP0 = 1.26177193074810590878e-4;
inline constexpr double kExpP1 = 3.02994407707441961300e-2;
inline constexpr double kExpP2 = 9.99999999999999999910e-1;
inline constexpr double kExpQ0 = 3.00198505138664455042e-6;
inline constexpr double kExpQ1 = 2.52448340349684104192e-3;
inline constexpr double kExpQ2 = 2.27265548208155028766e-1;
inline constexpr double kExpQ3 = 2.00000000000000000005e0;

// Clamp keeps 2^n and the final product inside the normal range.
inline constexpr double kExpMax = 708.0;
inline constexpr double kExpMin = -708.0;

inline constexpr double kTanhP0 = -9.64399179425052238628e-1;
inline constexpr double kTanhP1 = -9.92877231001918586564e1;
inline constexpr double kTanhP2 = -1.61468768441708447952e3;
inline constexpr double kTanhQ0 = 1.12811678491632931402e2;
inline constexpr double kTanhQ1 = 2.23548839060100448583e3;
inline constexpr double kTanhQ2 = 4.84406305325125486048e3;

inline constexpr double kTanhSmall = 0.625;  // below: odd rational in x^2
inline constexpr double kTanhBig = 22.0;     // above: rounds to +/-1
}  // namespace mc

// exp(x) for finite x; +inf above kExpMax, 0 below kExpMin.
inline double exp_core(double x0) {
    using namespace mc;
    const double x_clamped = x0 < kExpMin ? kExpMin : (x0 > kExpMax ? kExpMax : x0);
    const double px = std::floor(kLog2E * x_clamped + 0.5);
    const int n = static_cast<int>(px);
    double x = x_clamped;
    x -= px * kLn2Hi;
    x -= px * kLn2Lo;
    const double xx = x * x;
    const double p = x * ((kExpP0 * xx + kExpP1) * xx + kExpP2);
    const double q = ((kExpQ0 * xx + kExpQ1) * xx + kExpQ2) * xx + kExpQ3;
    const double r = (1.0 + 2.0 * (p / (q - p))) *
                     std::bit_cast<double>(static_cast<std::uint64_t>(n + 1023) << 52);
    if (x0 > kExpMax) return std::numeric_limits<double>::infinity();
    if (x0 < kExpMin) return 0.0;
    return r;
}

inline double tanh_core(double x) {
    using namespace mc;
    const double z = std::fabs(x);
    if (z < kTanhSmall) {
        const double s = x * x;
        const double p = s * ((kTanhP0 * s + kTanhP1) * s + kTanhP2);
        const double q = ((s + kTanhQ0) * s + kTanhQ1) * s + kTanhQ2;
        return x + x * (p / q);
    }
    const double r = z > kTanhBig ? 1.0 : 1.0 - 2.0 / (exp_core(z + z) + 1.0);
    return x < 0.0 ? -r : r;
}

// Standard logistic sigmoid 1 / (1 + e^-x), evaluated through e^-|x| so the
// exponential never overflows.
inline double logistic_core(double x) {
    const double t = exp_core(-std::fabs(x));
    const double d = 1.0 + t;
    return x < 0.0 ? t / d : 1.0 / d;
}

}  // namespace txml::kernels
