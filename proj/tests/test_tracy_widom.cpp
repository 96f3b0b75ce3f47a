#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>

#include "painleve_tw2.hpp"
#include "specsense/tracy_widom.hpp"

using namespace specsense;

TEST_CASE("table endpoints cover the tails") {
    CHECK(tw2_cdf(-10.0) < 1e-6);
    CHECK(tw2_cdf(6.0) > 1.0 - 1e-6);
    // clamped outside the grid
    CHECK(tw2_cdf(-50.0) == tw2_cdf(-10.0));
    CHECK(tw2_cdf(50.0) == tw2_cdf(6.0));
    CHECK_THROWS_AS(tw2_cdf(std::nan("")), std::invalid_argument);
}

TEST_CASE("spot values match the Painleve oracle tabulation") {
    // frozen from the reference integrator (RK4 h=2.5e-4, s0=10)
    CHECK(tw2_cdf(-3.0) == doctest::Approx(0.080319552939).epsilon(1e-6));
    CHECK(tw2_cdf(-2.0) == doctest::Approx(0.413224142505).epsilon(1e-6));
    CHECK(tw2_cdf(-1.0) == doctest::Approx(0.807214242000).epsilon(1e-6));
    CHECK(tw2_cdf(0.0) == doctest::Approx(0.969372828355).epsilon(1e-6));
}

TEST_CASE("interpolated CDF tracks a live oracle run off the grid") {
    tw2_oracle::Options opts;
    opts.s_start = 9.5;  // different truncation than the table generator
    opts.max_step = 1e-3;
    std::vector<double> pts;
    for (int k = 0; k < 50; ++k) pts.push_back(-10.0 + 16.0 * k / 49.0);
    const std::vector<double> oracle = tw2_oracle::f2_cdf(pts, opts);
    for (size_t i = 0; i < pts.size(); ++i)
        CHECK(std::abs(tw2_cdf(pts[i]) - oracle[i]) < 1e-4);
}

TEST_CASE("CDF is monotone non-decreasing") {
    std::mt19937_64 eng(6);
    std::uniform_real_distribution<double> u(-11.0, 7.0);
    for (int rep = 0; rep < 20000; ++rep) {
        double a = u(eng), b = u(eng);
        if (a > b) std::swap(a, b);
        CHECK(tw2_cdf(a) <= tw2_cdf(b));
    }
}

TEST_CASE("committed table checksum is frozen") {
    CHECK(Tw2Table::instance().file_checksum() == 0x3b6baff8e20c3d86ull);
    CHECK(Tw2Table::instance().size() == 1601);
    CHECK(Tw2Table::instance().s_min() == -10.0);
    CHECK(Tw2Table::instance().s_max() == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("malformed table files are rejected") {
    const std::string dir = "tw2_test_tables";
    std::remove((dir + "/bad.csv").c_str());
    std::system(("mkdir -p " + dir).c_str());

    auto write_and_load = [&](const std::string& body) {
        const std::string path = dir + "/bad.csv";
        std::ofstream out(path, std::ios::binary);
        out << body;
        out.close();
        return Tw2Table::load(path);
    };

    CHECK_THROWS_AS(write_and_load("# comment only\n"), std::runtime_error);
    // non-monotone values
    CHECK_THROWS_AS(write_and_load("0,0.1\n0.01,0.2\n0.02,0.15\n0.03,0.3\n"),
                    std::runtime_error);
    // non-uniform grid
    CHECK_THROWS_AS(write_and_load("0,1e-9\n0.01,0.2\n0.5,0.3\n0.51,0.9999999\n"),
                    std::runtime_error);
    CHECK_THROWS_AS(Tw2Table::load(dir + "/does_not_exist.csv"), std::runtime_error);
}
