#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>

#include "txml/dataset.hpp"
#include "txml/errors.hpp"
#include "txml/numio.hpp"
#include "txml/reference_tables.hpp"

using namespace txml;
namespace fs = std::filesystem;

namespace {

fs::path work_dir() {
    const fs::path dir = fs::temp_directory_path() / "txml_dataset_tests";
    fs::create_directories(dir);
    return dir;
}

bool samples_bitwise_equal(const std::vector<Sample>& a, const std::vector<Sample>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::memcmp(&a[i].x, &b[i].x, sizeof(double)) != 0) return false;
        if (std::memcmp(&a[i].y, &b[i].y, sizeof(double)) != 0) return false;
    }
    return true;
}

void write_raw(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << content;
}

}  // namespace

TEST_CASE("impedance sweep reproduces the benchmark grid") {
    const Dataset ds =
        generate_sweep(LineKind::microstrip_impedance, 2.0, {}, 1.0, 8.5, 0.5);
    REQUIRE(ds.samples.size() == tables::kTable1Rows);
    CHECK(ds.unit == Unit::ohm);
    for (std::size_t i = 0; i < ds.samples.size(); ++i) {
        CHECK(ds.samples[i].x == doctest::Approx(tables::kTable1[i].w_over_h).epsilon(1e-12));
        CHECK(std::fabs(ds.samples[i].y - tables::kTable1[i].actual) <=
              tables::kTable1ActualTolOhm);
    }
}

TEST_CASE("patch sweep reproduces the benchmark grid") {
    const Dataset ds = generate_sweep(LineKind::patch_frequency, 6.0,
                                      {{"effective_length_m", 0.0095}}, 1.0, 9.5, 0.5);
    REQUIRE(ds.samples.size() == tables::kTable2Rows);
    CHECK(ds.unit == Unit::hertz);
    for (std::size_t i = 0; i < ds.samples.size(); ++i) {
        CHECK(std::fabs(ds.samples[i].y / 1e6 - tables::kTable2[i].actual) <=
              tables::kTable2ActualTolMhz);
    }
}

TEST_CASE("degenerate range yields a single sample") {
    const Dataset ds = generate_sweep(LineKind::microstrip_impedance, 2.0, {}, 3.0, 3.0, 0.5);
    REQUIRE(ds.samples.size() == 1);
    CHECK(ds.samples[0].x == 3.0);
    CHECK(std::fabs(ds.samples[0].y - 53.296) <= 0.02);
}

TEST_CASE("sweeps are deterministic") {
    const Dataset a = generate_sweep(LineKind::microstrip_impedance, 2.0, {}, 1.0, 9.5, 0.05);
    const Dataset b = generate_sweep(LineKind::microstrip_impedance, 2.0, {}, 1.0, 9.5, 0.05);
    CHECK(samples_bitwise_equal(a.samples, b.samples));
}

TEST_CASE("sweep length matches the closed form on exact-multiple ranges") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> count_dist(1, 40);
    std::uniform_int_distribution<int> step_dist(1, 8);
    for (int trial = 0; trial < 50; ++trial) {
        const int count = count_dist(rng);
        const double step = step_dist(rng) * 0.125;  // exactly representable
        const double x_min = 1.0 + step_dist(rng) * 0.25;
        const double x_max = x_min + (count - 1) * step;
        const Dataset ds =
            generate_sweep(LineKind::microstrip_impedance, 2.0, {}, x_min, x_max, step);
        const auto expected =
            static_cast<std::size_t>(std::floor((x_max - x_min) / step + 0.5)) + 1;
        CHECK(ds.samples.size() == expected);
        CHECK(ds.samples.size() == static_cast<std::size_t>(count));
    }
}

TEST_CASE("sweep rejects bad ranges") {
    CHECK_THROWS_AS(generate_sweep(LineKind::microstrip_impedance, 2.0, {}, 5.0, 1.0, 0.5),
                    DomainError);
    CHECK_THROWS_AS(generate_sweep(LineKind::microstrip_impedance, 2.0, {}, 1.0, 5.0, 0.0),
                    DomainError);
    CHECK_THROWS_AS(generate_sweep(LineKind::microstrip_impedance, 2.0, {}, 1.0, 5.0, -0.5),
                    DomainError);
    // below the wide-strip regime
    CHECK_THROWS_AS(generate_sweep(LineKind::microstrip_impedance, 2.0, {}, 0.5, 5.0, 0.5),
                    DomainError);
}

TEST_CASE("scaler maps into [0,1] and round-trips") {
    const Dataset ds = generate_sweep(LineKind::microstrip_impedance, 2.0, {}, 1.0, 9.0, 0.5);
    const Scaler s = fit_scaler(ds);
    CHECK(s.apply_x(5.0) == 0.5);  // midpoint of [1, 9]

    for (const Sample& sample : ds.samples) {
        const double xn = s.apply_x(sample.x);
        const double yn = s.apply_y(sample.y);
        CHECK(xn >= 0.0);
        CHECK(xn <= 1.0);
        CHECK(yn >= 0.0);
        CHECK(yn <= 1.0);
    }

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> xd(1.0, 9.0);
    std::uniform_real_distribution<double> yd(s.y_min, s.y_max);
    for (int i = 0; i < 100; ++i) {
        const double x = xd(rng);
        const double y = yd(rng);
        CHECK(std::fabs(s.invert_x(s.apply_x(x)) - x) <= 1e-12 * std::fabs(x));
        CHECK(std::fabs(s.invert_y(s.apply_y(y)) - y) <= 1e-12 * std::fabs(y));
    }
}

TEST_CASE("scaler rejects degenerate ranges") {
    Dataset single;
    single.kind = LineKind::microstrip_impedance;
    single.eps_r = 2.0;
    single.unit = Unit::ohm;
    single.samples = {{1.0, 50.0}};
    CHECK_THROWS_AS(fit_scaler(single), DegenerateRangeError);

    Dataset flat;
    flat.kind = LineKind::microstrip_impedance;
    flat.eps_r = 2.0;
    flat.unit = Unit::ohm;
    flat.samples = {{1.0, 50.0}, {2.0, 50.0}};  // single distinct y
    CHECK_THROWS_AS(fit_scaler(flat), DegenerateRangeError);
}

TEST_CASE("csv round-trip is bit-exact") {
    const fs::path dir = work_dir();

    const Dataset t1 = generate_sweep(LineKind::microstrip_impedance, 2.0, {}, 1.0, 8.5, 0.5);
    write_csv(t1, dir / "t1.csv");
    const Dataset t1_back = read_csv(dir / "t1.csv");
    CHECK(t1_back.kind == t1.kind);
    CHECK(t1_back.eps_r == t1.eps_r);
    CHECK(t1_back.unit == t1.unit);
    CHECK(t1_back.fixed_params == t1.fixed_params);
    CHECK(samples_bitwise_equal(t1_back.samples, t1.samples));

    // one fixed parameter
    const Dataset t2 = generate_sweep(LineKind::patch_frequency, 6.0,
                                      {{"effective_length_m", 0.0095}}, 1.0, 9.5, 0.5);
    write_csv(t2, dir / "t2.csv");
    const Dataset t2_back = read_csv(dir / "t2.csv");
    CHECK(t2_back.fixed_params == t2.fixed_params);
    CHECK(samples_bitwise_equal(t2_back.samples, t2.samples));

    // several fixed parameters (';'-joined in the param cells)
    const Dataset phys = generate_sweep(
        LineKind::patch_frequency, 6.0,
        {{"patch_length_m", 0.009}, {"substrate_height_m", 0.0016}}, 1.0, 4.0, 0.5);
    write_csv(phys, dir / "phys.csv");
    const Dataset phys_back = read_csv(dir / "phys.csv");
    CHECK(phys_back.fixed_params == phys.fixed_params);
    CHECK(samples_bitwise_equal(phys_back.samples, phys.samples));

    // writing the parsed dataset again reproduces the file byte for byte
    write_csv(t1_back, dir / "t1_again.csv");
    CHECK(read_text_file(dir / "t1.csv") == read_text_file(dir / "t1_again.csv"));
}

TEST_CASE("csv schema errors carry line numbers and column names") {
    const fs::path dir = work_dir();

    write_raw(dir / "bad_header.csv",
              "kind,eps_r,param_nam,param_value,x_w_over_h,y_value,y_unit\n"
              "microstrip_impedance,2,,,1,98.5,ohm\n");
    CHECK_THROWS_WITH_AS(read_csv(dir / "bad_header.csv"),
                         doctest::Contains("column 3"), ParseError);

    write_raw(dir / "bad_cell.csv",
              "kind,eps_r,param_name,param_value,x_w_over_h,y_value,y_unit\n"
              "microstrip_impedance,2,,,1,98.5,ohm\n"
              "microstrip_impedance,2,,,1.5,oops,ohm\n");
    try {
        read_csv(dir / "bad_cell.csv");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
        CHECK(std::string(e.what()).find("y_value") != std::string::npos);
    }

    // x decreases on file line 7
    std::string monotone =
        "kind,eps_r,param_name,param_value,x_w_over_h,y_value,y_unit\n";
    const double xs[] = {1.0, 1.5, 2.0, 2.5, 3.0, 2.9};
    for (double x : xs) {
        monotone += "microstrip_impedance,2,,," + format_double(x) + ",50,ohm\n";
    }
    write_raw(dir / "monotone.csv", monotone);
    try {
        read_csv(dir / "monotone.csv");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 7);
        CHECK(std::string(e.what()).find("increasing") != std::string::npos);
    }

    write_raw(dir / "short_row.csv",
              "kind,eps_r,param_name,param_value,x_w_over_h,y_value,y_unit\n"
              "microstrip_impedance,2,,,1\n");
    CHECK_THROWS_AS(read_csv(dir / "short_row.csv"), ParseError);

    write_raw(dir / "empty.csv", "");
    CHECK_THROWS_AS(read_csv(dir / "empty.csv"), ParseError);

    write_raw(dir / "header_only.csv",
              "kind,eps_r,param_name,param_value,x_w_over_h,y_value,y_unit\n");
    CHECK_THROWS_AS(read_csv(dir / "header_only.csv"), ParseError);

    write_raw(dir / "mixed_meta.csv",
              "kind,eps_r,param_name,param_value,x_w_over_h,y_value,y_unit\n"
              "microstrip_impedance,2,,,1,98.5,ohm\n"
              "microstrip_impedance,3,,,1.5,80.8,ohm\n");
    CHECK_THROWS_AS(read_csv(dir / "mixed_meta.csv"), ParseError);
}

TEST_CASE("dataset descriptor mentions the key facts") {
    const Dataset ds = generate_sweep(LineKind::patch_frequency, 6.0,
                                      {{"effective_length_m", 0.0095}}, 1.0, 9.5, 0.5);
    const std::string d = ds.descriptor();
    CHECK(d.find("patch_frequency") != std::string::npos);
    CHECK(d.find("eps_r=6") != std::string::npos);
    CHECK(d.find("n=18") != std::string::npos);
}
