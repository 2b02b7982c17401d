// Acceptance suite: one hard pass/fail line per criterion, nonzero exit on
// any failure. Tolerances are pinned in code next to each check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "triplewell/dilute_gas.hpp"
#include "triplewell/fluctuation.hpp"
#include "triplewell/instanton.hpp"
#include "triplewell/numerics.hpp"
#include "triplewell/potential.hpp"
#include "triplewell/report.hpp"
#include "triplewell/spectrum_oracle.hpp"

using namespace triplewell;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion,
                detail.c_str());
    if (!ok) ++g_failures;
}

struct Stopwatch {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

char buffer[512];

PotentialSpec canonical(double omega) {
    return {PotentialFamily::triple_well, omega, CoefficientConvention::canonical};
}

// 1. closed-form reproduction at 1e-10 relative for omega in {1, 4, 8}
void criterion_1() {
    Stopwatch timer;
    double worst = 0.0;
    auto track = [&](double got, double expected) {
        worst = std::max(worst, std::abs(got / expected - 1.0));
    };
    for (double w : {1.0, 4.0, 8.0}) {
        auto prof = closed_form_profile(w, 0.0, uniform_symmetric_grid(15.0 / w, 0.01 / w));
        track(prof.action, w / 4.0);
        track(well_frequencies(canonical(w)).nu, 1.5 * w);
        track(prof.c_const, 2.0 * std::sqrt(w));
        track(prof.d_const, 2.0 * std::sqrt(w));
        const double s = w / 4.0;
        track(instanton_density(w),
              std::sqrt(8.0 / (3.0 * std::numbers::pi)) * std::sqrt(s) * std::exp(-s));
        auto lv = energy_levels(w);
        const double d = instanton_density(w);
        track(lv.e0, 0.75 * w - w * d);
        track(lv.e1, 0.75 * w);
        track(lv.e2, 0.75 * w + w * d);
    }
    const double elapsed = timer.seconds();
    std::snprintf(buffer, sizeof buffer,
                  "closed forms S, nu, C, D, d, triplet: worst rel %.2e (tol 1e-10), "
                  "%.3f s (limit 1)",
                  worst, elapsed);
    report(1, worst < 1e-10 && elapsed < 1.0, buffer);
}

// 2. quadrature kink vs closed form, max abs error < 1e-8 on omega*T = 40
void criterion_2() {
    Stopwatch timer;
    double worst = 0.0;
    for (double w : {1.0, 4.0}) {
        auto grid = uniform_symmetric_grid(20.0 / w, 0.01 / w);
        auto numeric = solve_bogomolny(canonical(w), 0.0, 1.0, grid, 1e-10);
        auto closed = closed_form_profile(w, 0.0, grid);
        for (std::size_t i = 0; i < grid.size(); ++i)
            worst = std::max(worst, std::abs(numeric.x_c[i] - closed.x_c[i]));
    }
    const double elapsed = timer.seconds();
    std::snprintf(buffer, sizeof buffer,
                  "kink inversion vs closed form: max abs %.2e (tol 1e-8), %.3f s (limit 1)",
                  worst, elapsed);
    report(2, worst < 1e-8 && elapsed < 1.0, buffer);
}

// 3. zero-energy solve vs sinh ratio for constant pairs, rel < 1e-9
void criterion_3() {
    Stopwatch timer;
    double worst = 0.0;
    const double t_half = 2.0;
    for (auto [nu1, nu2] : {std::pair{1.0, 2.0}, {1.0, 3.0}, {2.0, 3.0}}) {
        StabilityProblem p1{[nu1](double) { return nu1 * nu1; }, t_half, nu1};
        StabilityProblem p2{[nu2](double) { return nu2 * nu2; }, t_half, nu2};
        const double ivp =
            gy_forward_solve(p1, 10000).value() / gy_forward_solve(p2, 10000).value();
        const double closed = harmonic_gy(nu1, t_half) / harmonic_gy(nu2, t_half);
        worst = std::max(worst, std::abs(ivp / closed - 1.0));
    }
    const double elapsed = timer.seconds();
    std::snprintf(buffer, sizeof buffer,
                  "constant-curvature determinant ratios: worst rel %.2e (tol 1e-9), "
                  "%.3f s (limit 1)",
                  worst, elapsed);
    report(3, worst < 1e-9 && elapsed < 1.0, buffer);
}

// 4. terminal growth law: f(T/2) (4 omega C / D) e^{-omega T/2} in [0.99, 1.01]
void criterion_4() {
    bool ok = true;
    std::string values;
    for (double T : {20.0, 30.0}) {
        auto problem = triple_well_stability(canonical(1.0), 0.0, T / 2.0);
        auto f = gy_forward_solve(problem, default_gy_steps(1.0, T / 2.0));
        const double scaled = f.value() * 4.0 * std::exp(-T / 2.0);  // C = D
        ok = ok && scaled > 0.99 && scaled < 1.01;
        std::snprintf(buffer, sizeof buffer, " T=%g: %.6f", T, scaled);
        values += buffer;
    }
    report(4, ok, "asymptotic growth of the zero-energy solution in [0.99, 1.01]:" + values);
}

// 5. compressed-zero-mode law: slope of log eps0 vs T equals -omega within 2%;
// the prefactor is reported against 2 omega D (not asserted)
void criterion_5() {
    auto prof = closed_form_profile(1.0, 0.0, uniform_symmetric_grid(10.0, 0.01));
    std::vector<double> ts{12.0, 16.0, 20.0}, logs;
    for (double T : ts) {
        auto eps = diagonalize_stability(prof, T / 2.0, GridSpec{T / 2.0, 4001}, 1);
        logs.push_back(std::log(eps[0]));
    }
    auto fit = fit_line(ts, logs);
    const double prefactor = std::exp(fit.intercept);
    const double reference = 2.0 * 1.0 * prof.d_const;  // 2 omega D = 4
    const bool ok = std::abs(fit.slope + 1.0) < 0.02;
    std::snprintf(buffer, sizeof buffer,
                  "log eps0 slope %.4f (-1 within 2%%); measured prefactor %.4f vs "
                  "2*omega*D = %.1f, ratio %.4f = D (reported, not asserted)",
                  fit.slope, prefactor, reference, prefactor / reference);
    report(5, ok, buffer);
}

// 6. reduced determinant: zero-energy-solve route vs eigenproduct route, < 2%
void criterion_6() {
    Stopwatch timer;
    auto prof = closed_form_profile(1.0, 0.0, uniform_symmetric_grid(8.0, 0.01));
    auto problem = triple_well_stability(canonical(1.0), 0.0, 8.0);
    auto gy = reduced_ratio(prof, problem);
    auto brute =
        determinant_ratio_bruteforce(problem.curvature, 1.5, 8.0, GridSpec{8.0, 4000});
    const double rel = std::abs(brute.reduced / gy.reduced_ratio - 1.0);
    const double elapsed = timer.seconds();
    std::snprintf(buffer, sizeof buffer,
                  "reduced ratio %.6f (solve) vs %.6f (eigenproduct): rel %.2e "
                  "(tol 2e-2), %.1f s (limit 30)",
                  gy.reduced_ratio, brute.reduced, rel, elapsed);
    report(6, rel < 0.02 && elapsed < 30.0, buffer);
}

// 7. spectrum comparison: runs for omega in {4, 6, 8} under 60 s, first
// excited state parity-odd, splitting diagnostic finite and reproducible
void criterion_7() {
    Stopwatch timer;
    RunConfig cfg;
    cfg.command = "sweep";
    cfg.sweep_command = "compare";
    cfg.omegas = {4.0, 6.0, 8.0};
    auto first = run(cfg);
    auto second = run(cfg);
    const double elapsed = timer.seconds();

    bool ok = elapsed < 60.0 && first.rows.size() == 3 && second.rows.size() == 3;
    std::string detail;
    for (std::size_t i = 0; i < first.rows.size() && ok; ++i) {
        const auto& row = first.rows[i];
        const double ratio = row["splitting_ratio"].get<double>();
        const double again = second.rows[i]["splitting_ratio"].get<double>();
        ok = ok && std::isfinite(ratio) && std::abs(ratio - again) <= 1e-6 &&
             row["first_excited_parity"].get<std::string>() == "odd";
        std::snprintf(buffer, sizeof buffer, " w=%g: ratio %.4f parity %s;",
                      row["omega"].get<double>(), ratio,
                      row["first_excited_parity"].get<std::string>().c_str());
        detail += buffer;
    }
    std::snprintf(buffer, sizeof buffer, " (%.1f s, limit 60)", elapsed);
    report(7, ok, "compare sweep:" + detail + buffer);
}

// 8. pair combinatorics vs exhaustive adjacent-minima walks, exact
void criterion_8() {
    bool ok = true;
    // DFS over walks on {-1, 0, 1} stepping between adjacent minima only
    auto walks = [](int k) {
        long count = 0;
        struct Frame { int pos, depth; };
        std::vector<Frame> todo{{0, 0}};
        while (!todo.empty()) {
            auto [pos, depth] = todo.back();
            todo.pop_back();
            if (depth == k) {
                if (pos == 1) ++count;
                continue;
            }
            if (pos == 0) {
                todo.push_back({1, depth + 1});
                todo.push_back({-1, depth + 1});
            } else {
                todo.push_back({0, depth + 1});
            }
        }
        return count;
    };
    std::string detail;
    for (int k = 1; k <= 11; k += 2) {
        const long expected = walks(k);
        const double got = combinatorial_factor(k);
        ok = ok && got == static_cast<double>(expected);
        std::snprintf(buffer, sizeof buffer, " F(%d)=%g/%ld", k, got, expected);
        detail += buffer;
    }
    report(8, ok, "walk enumeration matches 2^((k-1)/2):" + detail);
}

// 9. partial sums of the kink-gas series converge to the sinh closed form
// within the first omitted term, 100 random (omega, T)
void criterion_9() {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> uw(0.5, 8.0), ut(0.1, 4.0);
    bool ok = true;
    double worst_margin = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double w = uw(rng), T = ut(rng);
        auto s = series_amplitude(w, T);
        const double closed = amplitude(w, T);
        const double margin = s.first_omitted + 64e-16 * closed;
        const double diff = std::abs(closed - s.value);
        ok = ok && diff <= margin;
        if (margin > 0) worst_margin = std::max(worst_margin, diff / margin);
    }
    std::snprintf(buffer, sizeof buffer,
                  "series vs sinh on 100 draws: worst |diff|/bound %.3f (<= 1)",
                  worst_margin);
    report(9, ok, buffer);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
