#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "txml/analytic.hpp"
#include "txml/errors.hpp"
#include "txml/reference_tables.hpp"

using namespace txml;

namespace {
double rel_err(double a, double b) {
    return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1e-300});
}
}  // namespace

TEST_CASE("effective permittivity point values") {
    // homogeneous air: both terms collapse to 1
    CHECK(effective_permittivity(1.0, 3.7) == 1.0);
    // 1.5 + 0.5/sqrt(13)
    CHECK(rel_err(effective_permittivity(2.0, 1.0), 1.6386750490563073) < 1e-12);
    // 3.5 + 2.5/sqrt(7)
    CHECK(rel_err(effective_permittivity(6.0, 2.0), 4.444911182523068) < 1e-12);
}

TEST_CASE("effective permittivity domain errors") {
    CHECK_THROWS_AS(effective_permittivity(0.9, 2.0), DomainError);
    CHECK_THROWS_AS(effective_permittivity(2.0, 0.0), DomainError);
    CHECK_THROWS_AS(effective_permittivity(2.0, -1.0), DomainError);
}

TEST_CASE("effective permittivity bounds and monotonicity") {
    for (double eps_r : {1.0, 2.0, 4.4, 6.0, 11.9}) {
        double prev = 0.0;
        for (double w = 0.1; w <= 40.0; w += 0.1) {
            const double e = effective_permittivity(eps_r, w);
            CHECK(e >= 1.0);
            CHECK(e <= eps_r);
            if (w > 0.1 && eps_r > 1.0) CHECK(e > prev);  // strictly increasing in w/h
            prev = e;
        }
        // approaches eps_r from below as w/h grows
        CHECK(eps_r - effective_permittivity(eps_r, 1e6) < 2e-3 * eps_r);
    }
}

TEST_CASE("microstrip impedance reference points") {
    CHECK(std::fabs(microstrip_impedance({2.0, 1.0}) - 98.525) <= 0.02);
    CHECK(std::fabs(microstrip_impedance({2.0, 2.0}) - 68.774) <= 0.02);
    // final benchmark row: printed label 9.000, true abscissa 8.5
    CHECK(std::fabs(microstrip_impedance({2.0, 8.5}) - 24.445) <= 0.02);
}

TEST_CASE("microstrip impedance full benchmark grid") {
    for (const auto& row : tables::kTable1) {
        const double z = microstrip_impedance({tables::kTable1EpsR, row.w_over_h});
        CHECK(std::fabs(z - row.actual) <= tables::kTable1ActualTolOhm);
    }
}

TEST_CASE("microstrip impedance strictly decreasing in w/h") {
    double prev = microstrip_impedance({2.0, 1.0});
    for (double w = 1.1; w <= 20.0; w += 0.1) {
        const double z = microstrip_impedance({2.0, w});
        CHECK(z > 0.0);
        CHECK(z < prev);
        prev = z;
    }
}

TEST_CASE("microstrip geometry regime") {
    CHECK_THROWS_AS(microstrip_impedance({2.0, 0.99}), DomainError);
    CHECK_THROWS_AS(microstrip_impedance({0.5, 2.0}), DomainError);
    CHECK_NOTHROW(microstrip_impedance({2.0, 1.0}));  // regime boundary accepted
}

TEST_CASE("patch length extension") {
    // frozen single-expression value: 0.412e-3 * (4.744911*2.264) / (4.186911*2.8)
    const double dl = patch_length_extension(4.444911, 2.0, 0.001, DeltaLVariant::standard);
    CHECK(rel_err(dl, 3.7752867922778528e-4) < 1e-12);

    // the printed variant differs by exactly the dropped divisor
    for (double w : {0.5, 1.0, 2.0, 5.0, 9.5}) {
        for (double e : {1.5, 4.44, 9.8}) {
            const double std_dl = patch_length_extension(e, w, 0.0016, DeltaLVariant::standard);
            const double printed = patch_length_extension(e, w, 0.0016, DeltaLVariant::printed);
            CHECK(printed == std_dl * (w + 0.8));
            CHECK(std_dl > 0.0);
        }
    }

    CHECK_THROWS_AS(patch_length_extension(0.258, 2.0, 0.001, DeltaLVariant::standard),
                    SingularityError);
    CHECK_THROWS_AS(patch_length_extension(0.1, 2.0, 0.001, DeltaLVariant::standard),
                    SingularityError);
    CHECK_THROWS_AS(patch_length_extension(4.0, -1.0, 0.001, DeltaLVariant::standard),
                    DomainError);
    CHECK_THROWS_AS(patch_length_extension(4.0, 2.0, 0.0, DeltaLVariant::standard), DomainError);
}

TEST_CASE("patch resonant frequency reference points") {
    PatchGeometry g;
    g.eps_r = 6.0;
    g.w_over_h = 1.0;
    g.effective_length_m = 0.0095;
    CHECK(std::fabs(patch_resonant_frequency(g) / 1e6 - 7710.557) <= 0.1);
    g.w_over_h = 2.0;
    CHECK(std::fabs(patch_resonant_frequency(g) / 1e6 - 7489.211) <= 0.1);
}

TEST_CASE("patch resonant frequency full benchmark grid") {
    for (const auto& row : tables::kTable2) {
        PatchGeometry g;
        g.eps_r = tables::kTable2EpsR;
        g.w_over_h = row.w_over_h;
        g.effective_length_m = tables::kTable2EffectiveLengthM;
        CHECK(std::fabs(patch_resonant_frequency(g) / 1e6 - row.actual) <=
              tables::kTable2ActualTolMhz);
    }
}

TEST_CASE("patch frequency halves exactly when the length doubles") {
    PatchGeometry g;
    g.eps_r = 6.0;
    g.w_over_h = 3.0;
    g.effective_length_m = 0.0095;
    const double f1 = patch_resonant_frequency(g);
    g.effective_length_m = 0.0095 / 2.0;
    CHECK(patch_resonant_frequency(g) == 2.0 * f1);
}

TEST_CASE("patch frequency decreasing in w/h at fixed length") {
    PatchGeometry g;
    g.eps_r = 6.0;
    g.effective_length_m = 0.0095;
    double prev = std::numeric_limits<double>::infinity();
    for (double w = 0.5; w <= 12.0; w += 0.25) {
        g.w_over_h = w;
        const double f = patch_resonant_frequency(g);
        CHECK(f > 0.0);
        CHECK(f < prev);
        prev = f;
    }
}

TEST_CASE("patch geometry configuration errors") {
    PatchGeometry g;
    g.eps_r = 6.0;
    g.w_over_h = 2.0;
    CHECK_THROWS_AS(patch_resonant_frequency(g), ConfigError);  // neither form

    g.effective_length_m = 0.0095;
    g.patch_length_m = 0.009;
    g.substrate_height_m = 0.0016;
    CHECK_THROWS_AS(patch_resonant_frequency(g), ConfigError);  // both forms

    g.effective_length_m.reset();
    CHECK_NOTHROW(patch_resonant_frequency(g));  // physical pair alone is fine

    g.substrate_height_m.reset();
    CHECK_THROWS_AS(patch_resonant_frequency(g), ConfigError);  // length without height

    PatchGeometry bad;
    bad.eps_r = 6.0;
    bad.w_over_h = 2.0;
    bad.effective_length_m = -0.001;
    CHECK_THROWS_AS(patch_resonant_frequency(bad), DomainError);
}

TEST_CASE("physical length path agrees with an explicit effective length") {
    PatchGeometry g;
    g.eps_r = 6.0;
    g.w_over_h = 2.0;
    g.patch_length_m = 0.009;
    g.substrate_height_m = 0.0016;
    const double eps_eff = effective_permittivity(g.eps_r, g.w_over_h);
    const double dl = patch_length_extension(eps_eff, g.w_over_h, *g.substrate_height_m);
    PatchGeometry equiv;
    equiv.eps_r = g.eps_r;
    equiv.w_over_h = g.w_over_h;
    equiv.effective_length_m = *g.patch_length_m + 2.0 * dl;
    CHECK(patch_resonant_frequency(g) == patch_resonant_frequency(equiv));
}

TEST_CASE("line model evaluators agree with the dedicated operations") {
    const LineModel ms = line_model(LineKind::microstrip_impedance);
    for (double w = 1.0; w <= 9.5; w += 0.5) {
        CHECK(ms(2.0, w) == microstrip_impedance({2.0, w}));
    }
    CHECK(std::fabs(ms(2.0, 1.0) - 98.525) <= 0.02);

    const LineModel patch = line_model("patch_frequency");
    const ParamMap fixed = {{"effective_length_m", 0.0095}};
    for (double w = 1.0; w <= 9.5; w += 0.5) {
        PatchGeometry g;
        g.eps_r = 6.0;
        g.w_over_h = w;
        g.effective_length_m = 0.0095;
        CHECK(patch(6.0, w, fixed) == patch_resonant_frequency(g));
    }
    CHECK(std::fabs(patch(6.0, 1.0, fixed) / 1e6 - 7710.557) <= 0.1);
}

TEST_CASE("line model rejects unknown kinds and bad parameters") {
    CHECK_THROWS_AS(line_model("coplanar_waveguide"), UnknownKindError);
    CHECK_THROWS_AS(parse_line_kind(""), UnknownKindError);

    const LineModel ms = line_model(LineKind::microstrip_impedance);
    CHECK_THROWS_AS(ms(2.0, 1.5, {{"effective_length_m", 0.0095}}), ConfigError);

    const LineModel patch = line_model(LineKind::patch_frequency);
    CHECK_THROWS_AS(patch(6.0, 2.0, {{"bogus_param", 1.0}}), ConfigError);
    CHECK_THROWS_AS(patch(6.0, 2.0, {}), ConfigError);  // no length form
    CHECK_THROWS_AS(patch(6.0, 2.0, {{"effective_length_m", 0.0095}, {"delta_l_variant", 2.0}}),
                    ConfigError);
}

TEST_CASE("delta_l_variant parameter selects the printed form") {
    const LineModel patch = line_model(LineKind::patch_frequency);
    const ParamMap std_form = {{"patch_length_m", 0.009}, {"substrate_height_m", 0.0016}};
    ParamMap printed_form = std_form;
    printed_form["delta_l_variant"] = 1.0;
    // the printed extension is larger, so the frequency must drop
    CHECK(patch(6.0, 2.0, printed_form) < patch(6.0, 2.0, std_form));
}
