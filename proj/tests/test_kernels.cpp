#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "txml/kernels/kernels.hpp"
#include "txml/kernels/math_core.hpp"

using namespace txml::kernels;

namespace {

const std::vector<std::size_t> kSizes = {0, 1, 2, 3, 4, 5, 7, 8, 9, 16, 17, 171, 1000};

std::vector<double> random_values(std::size_t n, std::uint64_t seed, double lo = -30.0,
                                  double hi = 30.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(n);
    for (double& x : v) x = dist(rng);
    return v;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() &&
           (a.empty() || std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
}

double rel_err(double a, double b) {
    const double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
    return std::fabs(a - b) / scale;
}

}  // namespace

TEST_CASE("active backend resolves") {
    const Kernels& k = active_kernels();
    CHECK(k.name != nullptr);
    if (avx2_kernels() != nullptr) {
        // no env override in the test harness, so dispatch should pick avx2
        if (std::getenv("TXML_KERNELS") == nullptr) {
            CHECK(std::string(k.name) == "avx2");
        }
    }
}

TEST_CASE("scalar math cores match the standard library") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> wide(-700.0, 700.0);
    std::uniform_real_distribution<double> mid(-25.0, 25.0);
    std::uniform_real_distribution<double> narrow(-0.7, 0.7);

    double worst_exp = 0.0, worst_tanh = 0.0, worst_logistic = 0.0;
    for (int i = 0; i < 200000; ++i) {
        const double xe = i % 3 == 0 ? wide(rng) : mid(rng);
        worst_exp = std::max(worst_exp, rel_err(exp_core(xe), std::exp(xe)));

        const double xt = i % 2 == 0 ? mid(rng) : narrow(rng);
        worst_tanh = std::max(worst_tanh, rel_err(tanh_core(xt), std::tanh(xt)));

        const double xl = mid(rng);
        const long double ref = 1.0L / (1.0L + std::exp(-static_cast<long double>(xl)));
        worst_logistic =
            std::max(worst_logistic, rel_err(logistic_core(xl), static_cast<double>(ref)));
    }
    CHECK(worst_exp < 1e-15);
    CHECK(worst_tanh < 1e-15);
    CHECK(worst_logistic < 1e-15);
}

TEST_CASE("math core edge values") {
    CHECK(exp_core(0.0) == 1.0);
    CHECK(exp_core(709.0) == std::numeric_limits<double>::infinity());
    CHECK(exp_core(-800.0) == 0.0);
    CHECK(tanh_core(0.0) == 0.0);
    CHECK(tanh_core(25.0) == 1.0);
    CHECK(tanh_core(-25.0) == -1.0);
    CHECK(logistic_core(0.0) == 0.5);
    CHECK(logistic_core(40.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(logistic_core(-40.0) < 1e-17);

    // branch boundaries
    for (double x : {0.625, std::nextafter(0.625, 0.0), 22.0, std::nextafter(22.0, 23.0)}) {
        CHECK(rel_err(tanh_core(x), std::tanh(x)) < 1e-15);
        CHECK(rel_err(tanh_core(-x), std::tanh(-x)) < 1e-15);
    }
}

TEST_CASE("tanh core properties") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-50.0, 50.0);
    double prev_x = -60.0, prev_t = tanh_core(-60.0);
    for (int i = 0; i < 5000; ++i) {
        const double x = dist(rng);
        const double t = tanh_core(x);
        CHECK(std::fabs(t) <= 1.0);
        // odd symmetry is exact: the algorithm only touches |x| and the sign bit
        CHECK(tanh_core(-x) == -t);
        (void)prev_x;
        (void)prev_t;
    }
    for (double x = -30.0; x < 30.0; x += 0.01) {
        const double a = tanh_core(x);
        const double b = tanh_core(x + 0.01);
        CHECK(b >= a);
    }
}

TEST_CASE("elementwise kernels are bit-identical across backends") {
    const Kernels* simd = avx2_kernels();
    if (simd == nullptr) {
        MESSAGE("AVX2 not available; elementwise equivalence not exercised");
        return;
    }
    const Kernels& ref = scalar_kernels();

    for (std::size_t n : kSizes) {
        const auto x = random_values(n, 100 + n);
        const auto y0 = random_values(n, 200 + n);

        std::vector<double> a(n), b(n);

        ref.fill(a.data(), 3.25, n);
        simd->fill(b.data(), 3.25, n);
        CHECK(bitwise_equal(a, b));

        a = y0;
        b = y0;
        ref.axpy(1.7, x.data(), a.data(), n);
        simd->axpy(1.7, x.data(), b.data(), n);
        CHECK(bitwise_equal(a, b));

        ref.scale_shift(x.data(), -2.5, 0.125, a.data(), n);
        simd->scale_shift(x.data(), -2.5, 0.125, b.data(), n);
        CHECK(bitwise_equal(a, b));

        ref.normalize(x.data(), -30.0, 30.0, a.data(), n);
        simd->normalize(x.data(), -30.0, 30.0, b.data(), n);
        CHECK(bitwise_equal(a, b));

        ref.tanh_eval(x.data(), a.data(), n);
        simd->tanh_eval(x.data(), b.data(), n);
        CHECK(bitwise_equal(a, b));

        ref.logistic_eval(x.data(), a.data(), n);
        simd->logistic_eval(x.data(), b.data(), n);
        CHECK(bitwise_equal(a, b));

        // activations in (-1, 1) for the backprop kernels
        std::vector<double> act(n);
        ref.tanh_eval(x.data(), act.data(), n);
        ref.tanh_backprop(act.data(), y0.data(), a.data(), n);
        simd->tanh_backprop(act.data(), y0.data(), b.data(), n);
        CHECK(bitwise_equal(a, b));

        ref.logistic_eval(x.data(), act.data(), n);
        ref.logistic_backprop(act.data(), y0.data(), a.data(), n);
        simd->logistic_backprop(act.data(), y0.data(), b.data(), n);
        CHECK(bitwise_equal(a, b));
    }
}

TEST_CASE("elementwise kernels cover the full argument range bit-identically") {
    const Kernels* simd = avx2_kernels();
    if (simd == nullptr) return;
    const Kernels& ref = scalar_kernels();

    // dense sweep across all tanh/exp branches, plus the clamp regions
    std::vector<double> x;
    for (double v = -750.0; v <= 750.0; v += 0.37) x.push_back(v);
    for (double v = -1.0; v <= 1.0; v += 0.0013) x.push_back(v);
    x.push_back(0.0);
    x.push_back(-0.0);

    std::vector<double> a(x.size()), b(x.size());
    ref.tanh_eval(x.data(), a.data(), x.size());
    simd->tanh_eval(x.data(), b.data(), x.size());
    CHECK(bitwise_equal(a, b));
    ref.logistic_eval(x.data(), a.data(), x.size());
    simd->logistic_eval(x.data(), b.data(), x.size());
    CHECK(bitwise_equal(a, b));
}

TEST_CASE("reduction kernels agree across backends to 1e-12 relative") {
    const Kernels* simd = avx2_kernels();
    if (simd == nullptr) {
        MESSAGE("AVX2 not available; reduction equivalence not exercised");
        return;
    }
    const Kernels& ref = scalar_kernels();

    for (std::size_t n : kSizes) {
        const auto x = random_values(n, 300 + n, -5.0, 5.0);
        const auto y = random_values(n, 400 + n, -5.0, 5.0);

        CHECK(rel_err(ref.dot(x.data(), y.data(), n), simd->dot(x.data(), y.data(), n)) < 1e-12);
        CHECK(rel_err(ref.sum(x.data(), n), simd->sum(x.data(), n)) < 1e-12);
        CHECK(rel_err(ref.sse(x.data(), y.data(), n), simd->sse(x.data(), y.data(), n)) < 1e-12);

        double lo_a = 0, hi_a = 0, lo_b = 0, hi_b = 0;
        ref.minmax(x.data(), n, &lo_a, &hi_a);
        simd->minmax(x.data(), n, &lo_b, &hi_b);
        CHECK(lo_a == lo_b);  // min/max never round, so these are exact
        CHECK(hi_a == hi_b);
    }
}

TEST_CASE("reduction kernels compute the right thing") {
    const Kernels& k = active_kernels();
    const std::vector<double> x = {1.0, 2.0, 3.0, 4.0, 5.0};
    const std::vector<double> y = {2.0, 2.0, 2.0, 2.0, 2.0};
    CHECK(k.sum(x.data(), 5) == 15.0);
    CHECK(k.dot(x.data(), y.data(), 5) == 30.0);
    CHECK(k.sse(x.data(), y.data(), 5) == doctest::Approx(1 + 0 + 1 + 4 + 9).epsilon(1e-15));
    double lo = 0, hi = 0;
    k.minmax(x.data(), 5, &lo, &hi);
    CHECK(lo == 1.0);
    CHECK(hi == 5.0);
    k.minmax(x.data(), 0, &lo, &hi);
    CHECK(lo == std::numeric_limits<double>::infinity());
    CHECK(hi == -std::numeric_limits<double>::infinity());
}

TEST_CASE("normalize maps the endpoints exactly") {
    const Kernels& k = active_kernels();
    const std::vector<double> x = {1.0, 5.0, 9.0};
    std::vector<double> out(3);
    k.normalize(x.data(), 1.0, 9.0, out.data(), 3);
    CHECK(out[0] == 0.0);
    CHECK(out[1] == 0.5);
    CHECK(out[2] == 1.0);
}
