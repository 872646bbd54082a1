#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

#include "doctest.h"
#include "latflow/dani.hpp"
#include "latflow/errors.hpp"

using namespace latflow;

namespace {

PsiSpec inverse_square_table(double t_lo, double t_hi, int count) {
    std::vector<double> ts(count), vals(count);
    for (int i = 0; i < count; ++i) {
        ts[i] = t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / (count - 1));
        vals[i] = 1.0 / (ts[i] * ts[i]);
    }
    return PsiSpec::tabulated(std::move(ts), std::move(vals));
}

double s_of(const PsiSpec& psi, double t) {
    const double d = psi.dim();
    return (psi.m * psi.n / d) * std::log(t / psi_eval(psi, t));
}

}  // namespace

TEST_SUITE("dani") {

TEST_CASE("psi family evaluations") {
    CHECK(psi_eval(PsiSpec::scaled(1.0), 10.0) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(psi_eval(PsiSpec::power_gap(1.0), 10.0) == doctest::Approx(0.09).epsilon(1e-14));
    CHECK(psi_eval(PsiSpec::log_gap(1.0), std::exp(2.0)) ==
          doctest::Approx(0.06766764161830635).epsilon(1e-14));
    // Scaled with unequal weights: c * t^{-n/m}.
    CHECK(psi_eval(PsiSpec::scaled(0.5, 2, 1), 16.0) ==
          doctest::Approx(0.5 * std::pow(16.0, -0.5)).epsilon(1e-14));
    CHECK_THROWS_AS(psi_eval(PsiSpec::log_gap(1.0), 2.0), std::invalid_argument);
}

TEST_CASE("scaled family gives a constant rate") {
    for (const double c : {0.25, 0.49, 0.9, 1.0}) {
        const auto rf = dani_transform(PsiSpec::scaled(c));
        for (int i = 0; i < 100; ++i) {
            const double s = rf.s_start + 0.37 * i;
            CHECK(std::abs(rf.eval(s) - std::sqrt(c)) < 1e-15);
        }
    }
    const auto rf21 = dani_transform(PsiSpec::scaled(0.8, 2, 1));
    CHECK(rf21.eval(rf21.s_start + 5.0) == doctest::Approx(std::pow(0.8, 2.0 / 3.0)));
    const auto rf12 = dani_transform(PsiSpec::scaled(0.8, 1, 2));
    CHECK(rf12.eval(rf12.s_start + 5.0) == doctest::Approx(std::pow(0.8, 1.0 / 3.0)));
}

TEST_CASE("rate inversion round trip") {
    std::mt19937_64 rng(40);
    std::uniform_real_distribution<double> u(0.0, 30.0);
    for (const auto& psi : {PsiSpec::power_gap(1.0), PsiSpec::log_gap(2.0)}) {
        const auto rf = dani_transform(psi);
        for (int i = 0; i < 100; ++i) {
            const double s = rf.s_start + u(rng);
            const double t = rf.t_of_s(s);
            CHECK(s_of(psi, t) == doctest::Approx(s).epsilon(1e-10));
        }
    }
}

TEST_CASE("tabulated inverse-square law matches the analytic rate") {
    const auto rf = dani_transform(inverse_square_table(2.0, 1000.0, 1 << 18));
    for (int i = 0; i <= 100; ++i) {
        const double s = 1.1 + (10.0 - 1.1) * i / 100.0;
        CHECK(std::abs(rf.eval(s) - std::exp(-s / 3.0)) < 1e-9);
    }
}

TEST_CASE("grid evaluation agrees with pointwise evaluation") {
    const auto rf = dani_transform(PsiSpec::log_gap(1.0));
    std::vector<double> s(200);
    for (size_t i = 0; i < s.size(); ++i) s[i] = rf.s_start + 0.21 * static_cast<double>(i);
    const auto grid = rf.eval_grid(s);
    for (size_t i = 0; i < s.size(); ++i)
        CHECK(grid[i] == doctest::Approx(rf.eval(s[i])).epsilon(1e-11));
}

TEST_CASE("rate stays in (0, 1] and the ratio bound holds") {
    const auto psi = PsiSpec::log_gap(1.0);
    const auto rf = dani_transform(psi);
    for (int i = 0; i < 200; ++i) {
        const double t = 7.0 * std::pow(1e6 / 7.0, i / 199.0);
        const double x = t * psi_eval(psi, t);
        REQUIRE(x >= 0.0);
        REQUIRE(x < 1.0);
        const double ratio = (1.0 - x) / (1.0 - std::sqrt(x));
        CHECK(ratio == doctest::Approx(1.0 + std::sqrt(x)).epsilon(1e-12));
        CHECK(ratio >= 1.0);
        CHECK(ratio <= 2.0 + 1e-12);
        CHECK(rf.eval(s_of(psi, t)) <= 1.0 + 1e-12);
        CHECK(rf.eval(s_of(psi, t)) == doctest::Approx(std::sqrt(x)).epsilon(1e-9));
    }
}

TEST_CASE("series partial sums") {
    // Power-gap k=1 terms are exactly k^{-2}: sum from 3 is pi^2/6 - 5/4.
    const auto pg = series_partial_sums(PsiSpec::power_gap(1.0), 1000000);
    CHECK(std::abs(pg.euclidean_sum - 0.3949340668482264) < 2e-6);
    CHECK(pg.supnorm_sum > 0.0);

    // Log-gap k=1 diverges like log log K.
    const auto lg1a = series_partial_sums(PsiSpec::log_gap(1.0), 10000);
    const auto lg1b = series_partial_sums(PsiSpec::log_gap(1.0), 1000000);
    CHECK(lg1b.euclidean_sum - lg1a.euclidean_sum > 0.3);
    CHECK(lg1b.euclidean_sum - lg1a.euclidean_sum < 0.5);

    // Log-gap k=2 converges: doubling tails shrink.
    const auto a = series_partial_sums(PsiSpec::log_gap(2.0), 50000);
    const auto b = series_partial_sums(PsiSpec::log_gap(2.0), 100000);
    const auto c = series_partial_sums(PsiSpec::log_gap(2.0), 200000);
    CHECK(b.euclidean_sum - a.euclidean_sum < 0.01);
    CHECK(c.euclidean_sum - b.euclidean_sum < b.euclidean_sum - a.euclidean_sum);

    CHECK_THROWS_AS(series_partial_sums(PsiSpec::scaled(1.0), 100), NumericError);
    CHECK_THROWS_AS(series_partial_sums(PsiSpec::scaled(1.2), 100), NumericError);
    CHECK_THROWS_AS(series_partial_sums(PsiSpec::scaled(0.5, 2, 1), 100), std::invalid_argument);
}

TEST_CASE("series classification") {
    CHECK(classify_series(PsiSpec::log_gap(1.0)) == SeriesClass::Divergent);
    CHECK(classify_series(PsiSpec::log_gap(3.0)) == SeriesClass::Convergent);
    CHECK(classify_series(PsiSpec::power_gap(0.5)) == SeriesClass::Convergent);
    CHECK(classify_series(PsiSpec::scaled(0.9)) == SeriesClass::Divergent);
    CHECK(classify_series(PsiSpec::scaled(1.0)) == SeriesClass::Convergent);
    CHECK(classify_series(inverse_square_table(2.0, 10.0, 16)) == SeriesClass::Unknown);
    CHECK(series_class_name(SeriesClass::Divergent) == "divergent");
}

TEST_CASE("validation by sampling") {
    // Constant psi: non-increasing, t/psi increasing, but t*psi crosses 1.
    PsiSpec flat = PsiSpec::tabulated({1.0, 10.0}, {0.5, 0.5});
    CHECK_NOTHROW(dani_transform(flat));
    CHECK_THROWS_AS(dani_transform(flat, true), std::invalid_argument);

    PsiSpec rising = PsiSpec::tabulated({1.0, 10.0}, {0.1, 0.2});
    CHECK_THROWS_AS(dani_transform(rising), std::invalid_argument);

    const auto ok = dani_transform(PsiSpec::log_gap(1.0), true);
    CHECK(ok.s_start == doctest::Approx(s_of(PsiSpec::log_gap(1.0), 7.0)));
    CHECK_THROWS_AS(ok.eval(ok.s_start - 1.0), std::invalid_argument);
}

TEST_CASE("tabulated domain ends are enforced") {
    const auto rf = dani_transform(inverse_square_table(2.0, 50.0, 4096));
    const double s_hi = s_of(rf.psi, 50.0);
    CHECK_NOTHROW(rf.eval(s_hi - 1e-6));
    CHECK_THROWS_AS(rf.eval(s_hi + 0.5), std::invalid_argument);
}

TEST_CASE("psi spec strings") {
    const auto sc = psi_from_string("scaled:c=0.9");
    CHECK(sc.family == PsiFamily::Scaled);
    CHECK(sc.param == doctest::Approx(0.9));
    CHECK(psi_to_string(sc) == "scaled:c=0.9");

    const auto lg = psi_from_string("loggap:k=2", 2, 1);
    CHECK(lg.family == PsiFamily::LogGap);
    CHECK(lg.m == 2);
    CHECK(psi_to_string(lg) == "loggap:k=2");

    CHECK(psi_from_string("powergap:k=1").family == PsiFamily::PowerGap);

    const auto path = std::filesystem::temp_directory_path() / "latflow_psi_table_test.csv";
    {
        std::ofstream out(path);
        out << "# t,psi\n2,0.25\n4,0.0625\n8,0.015625\n";
    }
    const auto tab = psi_from_string("table:" + path.string());
    CHECK(tab.family == PsiFamily::Tabulated);
    CHECK(tab.ts.size() == 3);
    CHECK(psi_eval(tab, 4.0) == doctest::Approx(0.0625));
    std::filesystem::remove(path);

    CHECK_THROWS_AS(psi_from_string("foo:x=1"), std::invalid_argument);
    CHECK_THROWS_AS(psi_from_string("scaled:c=abc"), std::invalid_argument);
    CHECK_THROWS_AS(psi_from_string("scaled"), std::invalid_argument);
    CHECK_THROWS_AS(psi_from_string("table:/nonexistent/file.csv"), std::invalid_argument);
}

TEST_CASE("invalid psi constructions") {
    CHECK_THROWS_AS(PsiSpec::scaled(0.0), std::invalid_argument);
    CHECK_THROWS_AS(PsiSpec::power_gap(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(PsiSpec::log_gap(0.0), std::invalid_argument);
    CHECK_THROWS_AS(PsiSpec::scaled(1.0, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(PsiSpec::tabulated({1.0}, {0.5}), std::invalid_argument);
    CHECK_THROWS_AS(PsiSpec::tabulated({1.0, 2.0}, {0.5, -0.1}), std::invalid_argument);
    CHECK_THROWS_AS(PsiSpec::tabulated({2.0, 1.0}, {0.5, 0.4}), std::invalid_argument);
}

}  // TEST_SUITE
