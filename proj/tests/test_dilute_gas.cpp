#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "triplewell/dilute_gas.hpp"
#include "triplewell/errors.hpp"

using namespace triplewell;

namespace {

constexpr double pi = std::numbers::pi;

// walk oracle: count k-step paths 0 -> 1 stepping only between adjacent
// minima of {-1, 0, 1}
long count_walks(int position, int steps_left) {
    if (steps_left == 0) return position == 1 ? 1 : 0;
    long total = 0;
    if (position == 0) {
        total += count_walks(1, steps_left - 1);
        total += count_walks(-1, steps_left - 1);
    } else {
        total += count_walks(0, steps_left - 1);
    }
    return total;
}

}  // namespace

TEST_CASE("kink density closed form") {
    // S = 1 at omega = 4
    CHECK(instanton_density(4.0) ==
          doctest::Approx(std::sqrt(8.0 / (3.0 * pi)) * std::exp(-1.0)).epsilon(1e-12));
    CHECK(instanton_density(4.0) == doctest::Approx(0.33894).epsilon(2e-5));
    // S = 2 at omega = 8
    CHECK(instanton_density(8.0) ==
          doctest::Approx(std::sqrt(8.0 / (3.0 * pi)) * std::sqrt(2.0) * std::exp(-2.0))
              .epsilon(1e-12));
    CHECK(instanton_density(8.0) == doctest::Approx(0.17634).epsilon(2e-5));
    // ratio test kills the common prefactor
    CHECK(instanton_density(16.0) / instanton_density(8.0) ==
          doctest::Approx(std::sqrt(2.0) * std::exp(-2.0)).epsilon(1e-12));
    // exponential suppression at large omega
    CHECK(instanton_density(100.0) < 1e-9);
    CHECK(instanton_density(50.0) < instanton_density(25.0));
    CHECK(instanton_density(25.0) < instanton_density(10.0));
}

TEST_CASE("ordered translational volume") {
    CHECK(translational_volume(1, 2.0, 3.0) == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(translational_volume(3, 1.0, 2.0) == doctest::Approx(8.0 / 6.0).epsilon(1e-12));
    CHECK(translational_volume(0, 1.0, 1.0) == 1.0);
    // no overflow in the factorial regime
    CHECK(translational_volume(300, 1.0, 50.0) > 0.0);
    CHECK(std::isfinite(translational_volume(300, 1.0, 50.0)));
}

TEST_CASE("ordered volume against Monte Carlo on the k = 3 simplex") {
    const double omega = 1.0, T = 2.0;
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> u(-T / 2.0, T / 2.0);
    const int n = 1000000;
    int ordered = 0;
    for (int i = 0; i < n; ++i) {
        const double a = u(rng), b = u(rng), c = u(rng);
        if (a < b && b < c) ++ordered;
    }
    const double estimate =
        static_cast<double>(ordered) / n * std::pow(omega * T, 3.0);
    CHECK(estimate == doctest::Approx(translational_volume(3, omega, T)).epsilon(0.01));
}

TEST_CASE("pair-combinatorics factor") {
    CHECK(combinatorial_factor(1) == 1.0);
    CHECK(combinatorial_factor(3) == 2.0);
    CHECK(combinatorial_factor(5) == 4.0);
    CHECK_THROWS_AS(combinatorial_factor(4), EvenK);
    CHECK_THROWS_AS(combinatorial_factor(0), EvenK);
    for (int k = 1; k <= 11; k += 2) {
        CHECK(combinatorial_factor(k) == static_cast<double>(count_walks(0, k)));
    }
    // even step counts cannot land on 1
    for (int k = 2; k <= 10; k += 2) CHECK(count_walks(0, k) == 0);
}

TEST_CASE("series form against the closed form") {
    // omega = 1, T = 1: six pairs of terms are already at 1e-12
    auto s = series_amplitude(1.0, 1.0, 13);
    CHECK(s.value == doctest::Approx(amplitude(1.0, 1.0)).epsilon(1e-12));

    // leading behaviour at T -> 0+
    const double t_small = 1e-6;
    const double lead = std::sqrt(3.0 / (4.0 * pi)) * t_small * instanton_density(1.0);
    CHECK(amplitude(1.0, t_small) == doctest::Approx(lead).epsilon(1e-9));

    // omega = 4, T = 2 against extended-precision arithmetic
    {
        const long double wl = 4.0L, tl = 2.0L;
        const long double sl = wl / 4.0L;
        const long double dl =
            sqrtl(8.0L / (3.0L * 3.14159265358979323846264338327950288L)) *
            sqrtl(sl) * expl(-sl);
        const long double al =
            sqrtl(3.0L * wl / (4.0L * 3.14159265358979323846264338327950288L)) *
            expl(-0.75L * wl * tl) * sinhl(wl * tl * dl);
        CHECK(amplitude(4.0, 2.0) ==
              doctest::Approx(static_cast<double>(al)).epsilon(1e-12));
    }

    // the default truncation stops below 1e-15 of the sum
    auto trunc = series_amplitude(2.0, 3.0);
    CHECK(trunc.first_omitted <= 2e-15 * trunc.value);
    CHECK(std::abs(trunc.value - amplitude(2.0, 3.0)) <=
          trunc.first_omitted + 1e-13 * trunc.value);

    CHECK_THROWS_AS(series_amplitude(1.0, 1.0, 4), EvenK);
}

TEST_CASE("partial sums converge within the first omitted term") {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> uw(0.5, 8.0), ut(0.1, 4.0);
    for (int i = 0; i < 100; ++i) {
        const double w = uw(rng), T = ut(rng);
        auto s = series_amplitude(w, T);
        const double closed = amplitude(w, T);
        CHECK(std::abs(closed - s.value) <= s.first_omitted + 64e-16 * closed);
    }
}

TEST_CASE("prefactor identity of the reference oscillator at large T") {
    for (double wt : {10.0, 12.0}) {
        const double omega = 2.0, T = wt / omega;
        const double exact = std::sqrt(3.0 * omega / (2.0 * pi)) /
                             std::sqrt(2.0 * std::sinh(1.5 * omega * T));
        const double replaced =
            std::sqrt(3.0 * omega / (2.0 * pi)) * std::exp(-0.75 * omega * T);
        CHECK(std::abs(exact / replaced - 1.0) <= std::exp(-3.0 * omega * T));
    }
}

TEST_CASE("energy triplet") {
    auto levels = energy_levels(4.0);
    CHECK(levels.e0 == doctest::Approx(1.6442).epsilon(1e-4));
    CHECK(levels.e1 == 3.0);
    CHECK(levels.e2 == doctest::Approx(4.3558).epsilon(1e-4));
    CHECK(levels.e0 == doctest::Approx(3.0 - 4.0 * instanton_density(4.0)).epsilon(1e-14));

    // symmetric splitting about the reference line
    for (double w : {0.5, 1.0, 4.0, 9.0}) {
        auto lv = energy_levels(w);
        CHECK(lv.e1 == doctest::Approx(0.75 * w).epsilon(1e-15));
        CHECK(std::abs((lv.e2 - lv.e1) - (lv.e1 - lv.e0)) <= 1e-14 * w);
        CHECK(lv.e0 < lv.e1);
        CHECK(lv.e1 < lv.e2);
    }
}

TEST_CASE("log-slope fit recovers the closed-form levels") {
    for (double w : {1.0, 4.0, 8.0}) {
        auto closed = energy_levels(w);
        auto fitted = energy_levels_fit(w);
        CHECK(std::abs(fitted.e0 - closed.e0) < 1e-6);
        CHECK(std::abs(fitted.e2 - closed.e2) < 1e-6);
    }
}

TEST_CASE("full record with the pipeline density diagnostic") {
    auto result = dilute_gas_report(1.0);
    CHECK(result.density == doctest::Approx(instanton_density(1.0)).epsilon(1e-14));
    CHECK(result.prefactor == doctest::Approx(std::sqrt(3.0 / (4.0 * pi))).epsilon(1e-14));
    CHECK(result.amplitude_fn(2.0) == doctest::Approx(amplitude(1.0, 2.0)).epsilon(1e-14));
    CHECK(result.k_max_used >= 3);
    CHECK(result.d_pipeline > 0.0);
    // the pipeline route lands on twice the closed-form density
    CHECK(result.d_ratio == doctest::Approx(2.0).epsilon(1e-3));
}
