#include "triplewell/fluctuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "triplewell/errors.hpp"

namespace triplewell {

namespace {

double grid_step(const std::vector<double>& grid) {
    const double h = grid[1] - grid[0];
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (std::abs(grid[i] - grid[i - 1] - h) > 1e-9 * h)
            throw std::invalid_argument("fluctuation: uniform grid required");
    return h;
}

void require_symmetric(const std::vector<double>& grid) {
    if (grid.size() % 2 == 0 ||
        std::abs(grid.front() + grid.back()) > 1e-9 * (1.0 + grid.back()))
        throw std::invalid_argument("fluctuation: symmetric odd-count grid required");
}

}  // namespace

StabilityProblem triple_well_stability(const PotentialSpec& spec, double tau_c,
                                       double half_box) {
    spec.validate();
    if (spec.family != PotentialFamily::triple_well ||
        spec.convention != CoefficientConvention::canonical)
        throw std::invalid_argument("triple_well_stability: canonical triple well required");
    if (!(half_box > 0.0))
        throw std::invalid_argument("triple_well_stability: half_box > 0 required");
    StabilityProblem problem;
    const double omega = spec.omega;
    problem.curvature = [spec, omega, tau_c](double tau) {
        return second_derivative(spec, kink_position(omega, tau_c, tau));
    };
    problem.half_box = half_box;
    problem.reference_frequency = 1.5 * omega;
    return problem;
}

SignedLog gy_forward_solve(const StabilityProblem& problem, int steps) {
    if (steps < 100) throw std::invalid_argument("gy_forward_solve: steps >= 100 required");
    if (!(problem.half_box > 0.0))
        throw std::invalid_argument("gy_forward_solve: half_box > 0 required");
    const double T = 2.0 * problem.half_box;
    const double h = T / steps;
    const auto& W = problem.curvature;

    double f = 0.0, fp = 1.0, log_scale = 0.0;
    double tau = -problem.half_box;
    for (int i = 0; i < steps; ++i) {
        const double w0 = W(tau);
        const double wm = W(tau + 0.5 * h);
        const double w1 = W(tau + h);
        const double k1f = fp, k1p = w0 * f;
        const double k2f = fp + 0.5 * h * k1p, k2p = wm * (f + 0.5 * h * k1f);
        const double k3f = fp + 0.5 * h * k2p, k3p = wm * (f + 0.5 * h * k2f);
        const double k4f = fp + h * k3p, k4p = w1 * (f + h * k3f);
        f += h / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f);
        fp += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        tau = -problem.half_box + (i + 1) * h;
        if (std::abs(f) > 1e8) {
            const double s = std::abs(f);
            f /= s;
            fp /= s;
            log_scale += std::log(s);
        }
    }
    SignedLog result;
    if (f == 0.0) {
        result.sign = 0;
        result.log_abs = -std::numeric_limits<double>::infinity();
        return result;
    }
    result.sign = f > 0.0 ? 1 : -1;
    result.log_abs = std::log(std::abs(f)) + log_scale;
    return result;
}

int default_gy_steps(double omega, double half_box) {
    // One-sided integration through the kink re-seeds the growing mode from
    // local truncation error while the decaying mode dominates, so the
    // terminal value carries a relative error ~ 4e-3 (omega h)^4 exp(omega T).
    // Pick steps to hold that near 1e-4, floored at the smooth-problem rule.
    const double wT = omega * 2.0 * half_box;
    const double steps = std::max({1e4, 200.0 * wT,
                                   2.5 * wT * std::exp(std::min(wT, 60.0) / 4.0)});
    return static_cast<int>(std::min(steps, 3e6));
}

double harmonic_gy(double nu, double half_box) {
    if (!(nu > 0.0)) throw std::invalid_argument("harmonic_gy: nu > 0 required");
    return std::sinh(nu * 2.0 * half_box) / nu;
}

double log_harmonic_gy(double nu, double half_box) {
    if (!(nu > 0.0)) throw std::invalid_argument("log_harmonic_gy: nu > 0 required");
    const double x = nu * 2.0 * half_box;
    // log(sinh x) without overflow
    const double log_sinh = x > 20.0 ? x - std::log(2.0) + std::log1p(-std::exp(-2.0 * x))
                                     : std::log(std::sinh(x));
    return log_sinh - std::log(nu);
}

SignedLog raw_determinant_ratio(const StabilityProblem& problem, int steps) {
    if (steps <= 0)
        steps = default_gy_steps(problem.reference_frequency / 1.5, problem.half_box);
    const SignedLog f = gy_forward_solve(problem, steps);
    SignedLog ratio;
    ratio.sign = f.sign;
    ratio.log_abs = f.log_abs - log_harmonic_gy(problem.reference_frequency, problem.half_box);
    return ratio;
}

SecondSolution second_solution(const InstantonProfile& profile) {
    const double h = grid_step(profile.tau_grid);
    const auto x_o = zero_mode(profile);
    const std::size_t n = x_o.size();

    constexpr double floor = 1.5e-154;  // below this, 1/x_o^2 overflows
    std::vector<double> inv_sq(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x_o[i] > floor))
            throw ZeroModeVanishes("zero mode underflows inside the quadrature range");
        inv_sq[i] = 1.0 / (x_o[i] * x_o[i]);
    }

    // anchor the quadrature at the grid point nearest the jump center
    std::size_t anchor = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs(profile.tau_grid[i] - profile.tau_c) <
            std::abs(profile.tau_grid[anchor] - profile.tau_c))
            anchor = i;
    if (anchor < 2 || anchor + 2 >= n)
        throw std::invalid_argument("second_solution: jump center too close to the box edge");

    // accumulate outward from the anchor on each side separately; the
    // integrand blows up like exp(2 omega |tau|) toward both edges and a
    // single left-to-right pass would bury the interior values in roundoff
    std::vector<double> integral(n, 0.0);
    {
        std::span<const double> right(inv_sq.data() + anchor, n - anchor);
        const auto acc = cumulative_simpson(right, h);
        for (std::size_t i = anchor; i < n; ++i) integral[i] = acc[i - anchor];

        std::vector<double> reversed(inv_sq.begin(), inv_sq.begin() + anchor + 1);
        std::reverse(reversed.begin(), reversed.end());
        const auto acc_left = cumulative_simpson(reversed, h);
        for (std::size_t i = 0; i < anchor; ++i) integral[i] = -acc_left[anchor - i];
    }
    const auto x_deriv = derivative(x_o, h);

    SecondSolution out;
    out.y.resize(n);
    out.y_deriv.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.y[i] = x_o[i] * integral[i];
        out.y_deriv[i] = x_deriv[i] * integral[i] + 1.0 / x_o[i];
    }
    return out;
}

std::vector<double> assemble_f_from_pair(std::span<const double> x_o,
                                         std::span<const double> y_o,
                                         double half_box) {
    if (x_o.size() != y_o.size() || x_o.size() < 5)
        throw std::invalid_argument("assemble_f_from_pair: matching arrays (>= 5 points) required");
    if (!(half_box > 0.0))
        throw std::invalid_argument("assemble_f_from_pair: half_box > 0 required");
    const std::size_t n = x_o.size();
    const double h = 2.0 * half_box / static_cast<double>(n - 1);

    const double a = x_o.front();
    const double b = y_o.front();
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = a * y_o[i] - b * x_o[i];

    // enforce f'(-T/2) = 1 via the grid-evaluated Wronskian at the left edge
    const double wronskian =
        a * edge_derivative(y_o, h, true) - b * edge_derivative(x_o, h, true);
    if (wronskian == 0.0)
        throw std::invalid_argument("assemble_f_from_pair: degenerate solution pair");
    for (double& v : f) v /= wronskian;
    return f;
}

namespace {

struct ModeArrays {
    std::vector<double> x_o;
    SecondSolution second;
};

double window_lambda(const InstantonProfile& profile, const ModeArrays& modes,
                     std::size_t center, std::size_t m, double h) {
    const std::size_t lo = center - m;
    const std::size_t hi = center + m;
    const double hb = 0.5 * (profile.tau_grid[hi] - profile.tau_grid[lo]);

    std::span<const double> x(modes.x_o.data() + lo, 2 * m + 1);
    std::span<const double> y(modes.second.y.data() + lo, 2 * m + 1);
    const auto f = assemble_f_from_pair(x, y, hb);

    std::vector<double> xf(f.size()), yf(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        xf[i] = x[i] * f[i];
        yf[i] = y[i] * f[i];
    }
    const double sx = simpson(xf, h);
    const double sy = simpson(yf, h);
    const double denom = x.back() * sy - y.back() * sx;
    if (denom == 0.0)
        throw AsymptoticRegimeViolated("lowest_eigenvalue: vanishing first-order shift");
    return -f.back() / denom;
}

}  // namespace

double lowest_eigenvalue(const InstantonProfile& profile, double half_box) {
    require_symmetric(profile.tau_grid);
    const double h = grid_step(profile.tau_grid);
    const double omega = profile.omega;
    if (!(omega > 0.0)) throw std::invalid_argument("lowest_eigenvalue: profile.omega > 0 required");
    if (omega * 2.0 * half_box < 10.0)
        throw AsymptoticRegimeViolated("lowest_eigenvalue: omega*T >= 10 required");

    const std::size_t center = (profile.size() - 1) / 2;
    const auto m_of = [&](double hb) {
        const auto m = static_cast<std::size_t>(std::llround(hb / h));
        if (m < 5 || m > center)
            throw std::invalid_argument("lowest_eigenvalue: half_box outside the profile grid");
        return m;
    };

    ModeArrays modes{zero_mode(profile), second_solution(profile)};
    const std::size_t m1 = m_of(half_box);
    const std::size_t m2 = m_of(0.8 * half_box);
    const double lambda1 = window_lambda(profile, modes, center, m1, h);
    const double lambda2 = window_lambda(profile, modes, center, m2, h);
    if (!(lambda1 > 0.0) || !(lambda2 > 0.0))
        throw AsymptoticRegimeViolated("lowest_eigenvalue: nonpositive eigenvalue estimate");

    const double t1 = 2.0 * profile.tau_grid[center + m1];
    const double t2 = 2.0 * profile.tau_grid[center + m2];
    const double slope = (std::log(lambda1) - std::log(lambda2)) / (t1 - t2);
    if (std::abs(slope + omega) > 0.02 * omega)
        throw AsymptoticRegimeViolated(
            "lowest_eigenvalue: log-slope deviates from -omega by more than 2%");
    return lambda1;
}

FluctuationResult reduced_ratio(const InstantonProfile& profile,
                                const StabilityProblem& problem) {
    const double omega = profile.omega;
    const double nu = problem.reference_frequency;
    if (std::abs(nu - 1.5 * omega) > 1e-9 * nu)
        throw std::invalid_argument("reduced_ratio: reference frequency must be 3*omega/2");
    if (problem.half_box > profile.half_box() * (1.0 + 1e-12))
        throw std::invalid_argument("reduced_ratio: problem box exceeds the profile grid");

    const int steps = default_gy_steps(omega, problem.half_box);
    const SignedLog f = gy_forward_solve(problem, steps);
    const double log_g = log_harmonic_gy(nu, problem.half_box);

    FluctuationResult out;
    out.f_end = f.value();
    out.g_end = harmonic_gy(nu, problem.half_box);
    out.raw_ratio = f.sign * std::exp(f.log_abs - log_g);
    out.lambda_low = lowest_eigenvalue(profile, problem.half_box);
    out.reduced_ratio = out.raw_ratio / out.lambda_low;
    return out;
}

}  // namespace triplewell
