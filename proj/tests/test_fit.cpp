#include <doctest.h>

#include <cmath>

#include "wcounts/fit.hpp"

using namespace wcounts;

namespace {

// Geometric grid of integer thresholds spanning [lo, hi].
std::vector<Rational> geometric_grid(long long lo, long long hi, int per_decade) {
    std::vector<Rational> out;
    long double step = std::pow(10.0L, 1.0L / per_decade);
    for (long double b = lo; b <= hi * 1.0000001L; b *= step) {
        long long v = static_cast<long long>(std::floor(b + 0.5L));
        if (out.empty() || Rational(v) > out.back()) out.emplace_back(v);
    }
    return out;
}

CountSeries synthetic(const std::vector<Rational>& grid,
                      long double (*model)(long double)) {
    CountSeries s;
    for (const auto& b : grid) {
        long double n = model(b.to_long_double());
        s.rows.push_back(CountRow{b, static_cast<long long>(std::floor(n)), 0});
    }
    return s;
}

} // namespace

TEST_CASE("fit recovers N = 5B within the documented tolerances") {
    auto grid = geometric_grid(1000, 1000000, 12);
    auto s = synthetic(grid, [](long double b) { return 5.0L * b; });
    auto rep = fit_asymptotic(s, 0.0L);
    CHECK(std::fabs(rep.unconstrained.a - 1.0L) <= 0.02L);
    CHECK(std::fabs(rep.unconstrained.p - 0.0L) <= 0.3L);
    CHECK(std::fabs(rep.constrained.a - 1.0L) <= 0.02L);
}

TEST_CASE("fit recovers N = B log B") {
    auto grid = geometric_grid(1000, 1000000, 12);
    auto s = synthetic(grid, [](long double b) { return b * std::log(b); });
    auto rep = fit_asymptotic(s, 1.0L);
    CHECK(std::fabs(rep.unconstrained.a - 1.0L) <= 0.05L);
    CHECK(std::fabs(rep.unconstrained.p - 1.0L) <= 0.3L);
    // freezing the log power at the true value fits at least as well as off by one
    CHECK(constrained_fit(s, 1.0L).rms_residual <= constrained_fit(s, 0.0L).rms_residual);
    CHECK(constrained_fit(s, 1.0L).rms_residual <= constrained_fit(s, 2.0L).rms_residual);
}

TEST_CASE("fit recovers every (a, p) in {1,2} x {0,1}") {
    auto grid = geometric_grid(1000, 1000000, 12);
    using Model = long double (*)(long double);
    static const Model models[4] = {
        [](long double b) { return 3.0L * b; },
        [](long double b) { return 0.5L * b * std::log(b); },
        [](long double b) { return 0.01L * b * b; },
        [](long double b) { return 0.001L * b * b * std::log(b); },
    };
    const long double want_a[4] = {1, 1, 2, 2};
    const long double want_p[4] = {0, 1, 0, 1};
    for (int i = 0; i < 4; ++i) {
        auto s = synthetic(grid, models[i]);
        auto rep = fit_asymptotic(s, want_p[i]);
        CHECK(std::fabs(rep.unconstrained.a - want_a[i]) <= 0.05L);
        CHECK(std::fabs(rep.unconstrained.p - want_p[i]) <= 0.3L);
    }
}

TEST_CASE("constant series are rejected: no growth information") {
    CountSeries s;
    for (long long b : {10, 100, 1000, 10000, 100000, 1000000})
        s.rows.push_back(CountRow{Rational(b), 17, 0});
    CHECK_THROWS_WITH_AS(fit_asymptotic(s, 0.0L), doctest::Contains("no growth"),
                         validation_error);
}

TEST_CASE("too few usable thresholds are rejected") {
    CountSeries s;
    for (long long b : {10, 100, 1000, 10000})
        s.rows.push_back(CountRow{Rational(b), b, 0});
    CHECK_THROWS_AS(fit_asymptotic(s, 0.0L), validation_error);
}

TEST_CASE("a largest count below 10 is rejected") {
    CountSeries s;
    for (long long b : {10, 100, 1000, 10000, 100000})
        s.rows.push_back(CountRow{Rational(b), b / 20000 + 1, 0});
    CHECK_THROWS_WITH_AS(fit_asymptotic(s, 0.0L), doctest::Contains("at least 10"),
                         validation_error);
}

TEST_CASE("doubling ratios find exactly the power-of-two pairs") {
    CountSeries s;
    for (long long b : {1000, 2000, 3000, 4000, 8000})
        s.rows.push_back(CountRow{Rational(b), 2 * b, 0});
    auto d = doubling_ratios(s);
    REQUIRE(d.size() == 3);
    CHECK(d[0].at == Rational(1000));
    CHECK(d[1].at == Rational(2000));
    CHECK(d[2].at == Rational(4000));
    CHECK(static_cast<double>(d[0].ratio) == doctest::Approx(2.0));
}

TEST_CASE("degenerate designs are rejected") {
    // a grid too narrow to separate log B from log log B
    CountSeries s;
    for (long long b : {1000, 1001, 1002, 1003, 1004, 1005})
        s.rows.push_back(CountRow{Rational(b), b, 0});
    CHECK_THROWS_AS(fit_asymptotic(s, 0.0L), validation_error);
}
