#include "triplewell/instanton.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "triplewell/errors.hpp"
#include "triplewell/numerics.hpp"

namespace triplewell {

namespace {

void require_strictly_increasing(const std::vector<double>& grid) {
    if (grid.size() < 5)
        throw std::invalid_argument("instanton grid: need at least 5 points");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("instanton grid: must be strictly increasing");
}

double uniform_step(const std::vector<double>& grid) {
    const double h = grid[1] - grid[0];
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double hi = grid[i] - grid[i - 1];
        if (std::abs(hi - h) > 1e-9 * h)
            throw std::invalid_argument("instanton grid: must be uniform");
    }
    return h;
}

}  // namespace

double kink_position_sq(double omega, double tau_c, double tau) {
    const double z = omega * (tau - tau_c);
    if (z <= 0.0) {
        const double e = std::exp(2.0 * z);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(-2.0 * z));
}

double kink_position(double omega, double tau_c, double tau) {
    const double z = omega * (tau - tau_c);
    if (z <= 0.0) return std::exp(z) / std::sqrt(1.0 + std::exp(2.0 * z));
    return 1.0 / std::sqrt(1.0 + std::exp(-2.0 * z));
}

double kink_velocity(double omega, double tau_c, double tau) {
    // dx/dtau = omega x (1 - x^2), with 1 - x^2 kept stable in the right tail
    const double z = omega * (tau - tau_c);
    const double x = kink_position(omega, tau_c, tau);
    double one_minus_x2;
    if (z <= 0.0)
        one_minus_x2 = 1.0 / (1.0 + std::exp(2.0 * z));
    else {
        const double e = std::exp(-2.0 * z);
        one_minus_x2 = e / (1.0 + e);
    }
    return omega * x * one_minus_x2;
}

InstantonProfile closed_form_profile(double omega, double tau_c,
                                     std::vector<double> grid) {
    if (!(omega > 0.0)) throw std::invalid_argument("closed_form_profile: omega > 0 required");
    require_strictly_increasing(grid);
    InstantonProfile p;
    p.tau_grid = std::move(grid);
    p.x_c.resize(p.tau_grid.size());
    p.dx_c.resize(p.tau_grid.size());
    for (std::size_t i = 0; i < p.tau_grid.size(); ++i) {
        p.x_c[i] = kink_position(omega, tau_c, p.tau_grid[i]);
        p.dx_c[i] = kink_velocity(omega, tau_c, p.tau_grid[i]);
    }
    p.tau_c = tau_c;
    p.omega = omega;
    p.action = omega / 4.0;
    p.c_const = omega / std::sqrt(p.action);
    p.d_const = p.c_const;
    return p;
}

namespace {

// Jump-center abscissa: the point where the quadrature measure is symmetric.
// The triple-well measure dx/sqrt(2V) is symmetric in x^2, the double-well
// one in x.
double jump_anchor(const PotentialSpec& spec, double a, double b) {
    if (spec.family == PotentialFamily::triple_well) {
        const double mid_sq = 0.5 * (a * a + b * b);
        const double sign = (a + b) >= 0.0 ? 1.0 : -1.0;
        return sign * std::sqrt(mid_sq);
    }
    return 0.5 * (a + b);
}

// Factored kink speed sqrt(2V(x)) = kappa_a (x-a) * kappa_b (b-x) * q(x) on
// the interval between adjacent minima. q and its endpoint difference
// quotients dq_a = (q(a)-q(x))/(x-a), dq_b = (q(b)-q(x))/(b-x) are closed
// forms, so the regularized time integrand
//   R = 1/sqrt(2V) - 1/(kappa_a (x-a)) - 1/(kappa_b (b-x))
//     = (dq_a/kappa_a + dq_b/kappa_b) / q
// never suffers endpoint cancellation.
struct KinkInterval {
    double a, b;
    double kappa_a, kappa_b;
    std::function<double(double)> q, dq_a, dq_b;

    double speed(double x) const {
        return kappa_a * (x - a) * kappa_b * (b - x) * q(x);
    }
    double regular(double x) const {
        return (dq_a(x) / kappa_a + dq_b(x) / kappa_b) / q(x);
    }
};

KinkInterval make_interval(const PotentialSpec& spec, double a, double b) {
    KinkInterval k;
    k.a = a;
    k.b = b;
    k.kappa_a = std::sqrt(second_derivative(spec, a));
    k.kappa_b = std::sqrt(second_derivative(spec, b));
    const double w = spec.omega;
    if (spec.family == PotentialFamily::triple_well) {
        if (a == 0.0) {  // 0 -> 1: sqrt(2V) = w x (1-x)(1+x)
            k.q = [w](double x) { return (1.0 + x) / (2.0 * w); };
            k.dq_a = [w](double) { return -1.0 / (2.0 * w); };
            k.dq_b = [w](double) { return 1.0 / (2.0 * w); };
        } else {  // -1 -> 0, the mirror image
            k.q = [w](double x) { return (1.0 - x) / (2.0 * w); };
            k.dq_a = [w](double) { return 1.0 / (2.0 * w); };
            k.dq_b = [w](double) { return -1.0 / (2.0 * w); };
        }
    } else {  // double well: sqrt(2V) = (w/2)(1-x^2), q constant
        k.q = [w](double) { return 1.0 / (2.0 * w); };
        k.dq_a = [](double) { return 0.0; };
        k.dq_b = [](double) { return 0.0; };
    }
    return k;
}

}  // namespace

InstantonProfile solve_bogomolny(const PotentialSpec& spec, double x_start,
                                 double x_end, std::vector<double> grid,
                                 double tol) {
    spec.validate();
    if (spec.family == PotentialFamily::triple_well &&
        spec.convention != CoefficientConvention::canonical)
        throw std::invalid_argument("solve_bogomolny: canonical convention required");
    require_strictly_increasing(grid);
    if (!(tol > 0.0)) throw std::invalid_argument("solve_bogomolny: tol > 0 required");
    if (!(x_start < x_end))
        throw std::invalid_argument(
            "solve_bogomolny: x_start < x_end required (mirror profiles via tau -> -tau, x -> -x)");

    const auto mins = minima(spec);
    auto index_of = [&](double x) -> std::ptrdiff_t {
        for (std::size_t i = 0; i < mins.size(); ++i)
            if (std::abs(mins[i] - x) < 1e-12) return static_cast<std::ptrdiff_t>(i);
        return -1;
    };
    const auto ia = index_of(x_start);
    const auto ib = index_of(x_end);
    if (ia < 0 || ib < 0)
        throw NonAdjacentMinima("endpoints must be minima of the potential");
    if (ib - ia != 1)
        throw NonAdjacentMinima("kinks connect adjacent minima only");

    const double a = mins[static_cast<std::size_t>(ia)];
    const double b = mins[static_cast<std::size_t>(ib)];
    const KinkInterval kink = make_interval(spec, a, b);
    const double kappa_a = kink.kappa_a;
    const double kappa_b = kink.kappa_b;
    const double x_mid = jump_anchor(spec, a, b);
    const double tau_c = 0.5 * (grid.front() + grid.back());

    auto speed = [&](double x) { return kink.speed(x); };

    using adaptive = boost::math::quadrature::gauss_kronrod<double, 31>;
    using fixed = boost::math::quadrature::gauss<double, 31>;
    const double short_span = 0.02 * (b - a);
    double quad_err_max = 0.0;
    auto integrate = [&](double lo, double hi) {
        if (lo == hi) return 0.0;
        const double sign = lo <= hi ? 1.0 : -1.0;
        if (lo > hi) std::swap(lo, hi);
        auto f = [&](double x) { return kink.regular(x); };
        // the integrand is analytic on [a, b]; a fixed rule is exact to
        // roundoff on short spans and the adaptive rule handles the rest
        if (hi - lo <= short_span) return sign * fixed::integrate(f, lo, hi);
        double err = 0.0;
        const double v = adaptive::integrate(f, lo, hi, 10, 1e-12, &err);
        quad_err_max = std::max(quad_err_max, err);
        return sign * v;
    };

    auto tau_of = [&](double x) {
        return tau_c + integrate(x_mid, x) +
               std::log((x - a) / (x_mid - a)) / kappa_a -
               std::log((b - x) / (b - x_mid)) / kappa_b;
    };
    // time to go from x_from to x_to; cheap when the points are close
    auto tau_step = [&](double x_from, double x_to) {
        return integrate(x_from, x_to) +
               std::log((x_to - a) / (x_from - a)) / kappa_a -
               std::log((b - x_to) / (b - x_from)) / kappa_b;
    };

    // tail-match constants: x - a = exp(kappa_a (tau - K_a)) on the left,
    // b - x = exp(-kappa_b (tau - K_b)) on the right
    const double K_a = tau_c + integrate(x_mid, a) - std::log(x_mid - a) / kappa_a -
                       std::log((b - a) / (b - x_mid)) / kappa_b;
    const double K_b = tau_c + integrate(x_mid, b) + std::log((b - a) / (x_mid - a)) / kappa_a +
                       std::log(b - x_mid) / kappa_b;

    // boundary layer where V < 1e-12: switch to the linearized approach there
    const double eps_v = 1e-12;
    const double delta_a = std::sqrt(2.0 * eps_v) / kappa_a;
    const double delta_b = std::sqrt(2.0 * eps_v) / kappa_b;
    const double tau_lo = tau_of(a + delta_a);
    const double tau_hi = tau_of(b - delta_b);

    const double speed_cap = [&] {
        double s = 0.0;
        for (int i = 1; i < 64; ++i) s = std::max(s, speed(a + (b - a) * i / 64.0));
        return s;
    }();

    InstantonProfile p;
    p.tau_grid = std::move(grid);
    const std::size_t n = p.tau_grid.size();
    p.x_c.resize(n);
    p.dx_c.resize(n);

    // walk the grid upward, inverting tau(x) = t by safeguarded Newton
    // anchored at the last solved point; the residual gate is two decades
    // below tol so the per-point drift cannot accumulate to tol over the grid
    double x_ref = x_mid, tau_ref = tau_c;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = p.tau_grid[i];
        if (t <= tau_lo) {
            const double u = std::exp(kappa_a * (t - K_a));
            p.x_c[i] = a + u;
            p.dx_c[i] = (p.x_c[i] > a && p.x_c[i] < b) ? speed(p.x_c[i]) : kappa_a * u;
            continue;
        }
        if (t >= tau_hi) {
            const double v = std::exp(-kappa_b * (t - K_b));
            p.x_c[i] = b - v;
            p.dx_c[i] = (p.x_c[i] > a && p.x_c[i] < b) ? speed(p.x_c[i]) : kappa_b * v;
            continue;
        }
        double lo = std::min(x_ref, a + delta_a), hi = b - delta_b;
        double x = std::clamp(x_ref + (t - tau_ref) * speed(x_ref), lo, hi);
        double tau_x = tau_ref + tau_step(x_ref, x);
        bool converged = false;
        for (int it = 0; it < 80; ++it) {
            const double g = tau_x - t;
            if (std::abs(g) * speed_cap < 0.01 * tol) {
                converged = true;
                break;
            }
            if (g > 0.0) hi = x; else lo = x;
            double x_next = x - g * speed(x);
            if (!(x_next > lo) || !(x_next < hi)) x_next = 0.5 * (lo + hi);
            if (x_next == x) {
                converged = true;
                break;
            }
            tau_x += tau_step(x, x_next);
            x = x_next;
        }
        if (!converged)
            throw QuadratureFailure("solve_bogomolny: inversion did not reach tolerance");
        p.x_c[i] = x;
        p.dx_c[i] = speed(x);
        x_ref = x;
        tau_ref = t;
    }

    if (quad_err_max * speed_cap > tol)
        throw QuadratureFailure("solve_bogomolny: requested tolerance below quadrature accuracy");

    p.tau_c = tau_c;
    p.omega = spec.omega;
    {
        std::vector<double> density(n);
        for (std::size_t i = 0; i < n; ++i)
            density[i] = 0.5 * p.dx_c[i] * p.dx_c[i] + evaluate(spec, p.x_c[i]);
        p.action = simpson(density, uniform_step(p.tau_grid));
    }
    const double root_s = std::sqrt(p.action);
    p.c_const = kappa_b / root_s * std::exp(kappa_b * (K_b - tau_c));
    p.d_const = kappa_a / root_s * std::exp(-kappa_a * (K_a - tau_c));
    return p;
}

double classical_action(const InstantonProfile& profile, const PotentialSpec& spec) {
    const double h = uniform_step(profile.tau_grid);
    std::vector<double> density(profile.size());
    for (std::size_t i = 0; i < profile.size(); ++i)
        density[i] = 0.5 * profile.dx_c[i] * profile.dx_c[i] + evaluate(spec, profile.x_c[i]);
    return simpson(density, h);
}

std::vector<double> zero_mode(const InstantonProfile& profile) {
    if (!(profile.action > 0.0))
        throw std::invalid_argument("zero_mode: profile action must be positive");
    const double inv_root_s = 1.0 / std::sqrt(profile.action);
    std::vector<double> mode(profile.size());
    for (std::size_t i = 0; i < profile.size(); ++i)
        mode[i] = profile.dx_c[i] * inv_root_s;
    return mode;
}

namespace {

struct TailFit {
    double amplitude;
    double slope;
};

// constrained log-linear fit ln x_o = ln A + rate * (tau - tau_c), with the
// rate pinned; also returns the unconstrained slope for the regime check
TailFit fit_tail(const std::vector<double>& tau, const std::vector<double>& mode,
                 std::size_t lo, std::size_t hi, double tau_c, double rate) {
    std::vector<double> ts, ln;
    for (std::size_t i = lo; i <= hi; ++i) {
        if (!(mode[i] > 0.0))
            throw InsufficientTail("zero mode not positive inside the fit window");
        ts.push_back(tau[i] - tau_c);
        ln.push_back(std::log(mode[i]));
    }
    double mean = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) mean += ln[i] - rate * ts[i];
    mean /= static_cast<double>(ts.size());
    const LineFit free_fit = fit_line(ts, ln);
    return {std::exp(mean), free_fit.slope};
}

}  // namespace

TailConstants asymptotic_constants(const InstantonProfile& profile, FitWindow window) {
    if (!(window.outer > window.inner) || !(window.inner > 0.0))
        throw std::invalid_argument("asymptotic_constants: need 0 < inner < outer");
    const auto mode = zero_mode(profile);
    const double peak = *std::max_element(mode.begin(), mode.end());
    if (!(mode.front() < 1e-6 * peak) || !(mode.back() < 1e-6 * peak))
        throw InsufficientTail("grid too short: tails have not decayed to 1e-6 of the peak");

    const auto& tau = profile.tau_grid;
    auto window_indices = [&](double lo_t, double hi_t) {
        std::size_t lo = tau.size(), hi = 0;
        for (std::size_t i = 0; i < tau.size(); ++i)
            if (tau[i] >= lo_t && tau[i] <= hi_t) {
                lo = std::min(lo, i);
                hi = std::max(hi, i);
            }
        if (lo >= hi || hi - lo < 4)
            throw InsufficientTail("fit window contains fewer than 5 grid points");
        return std::pair{lo, hi};
    };

    const double w = profile.omega;
    TailConstants out;

    auto [rlo, rhi] = window_indices(profile.tau_c + window.inner, profile.tau_c + window.outer);
    TailFit right = fit_tail(tau, mode, rlo, rhi, profile.tau_c, -2.0 * w);
    if (std::abs(right.slope + 2.0 * w) > 0.01 * 2.0 * w)
        throw InsufficientTail("right-tail decay rate off by more than 1% from 2*omega");
    out.c = right.amplitude;

    auto [llo, lhi] = window_indices(profile.tau_c - window.outer, profile.tau_c - window.inner);
    TailFit left = fit_tail(tau, mode, llo, lhi, profile.tau_c, w);
    if (std::abs(left.slope - w) > 0.01 * w)
        throw InsufficientTail("left-tail growth rate off by more than 1% from omega");
    out.d = left.amplitude;
    return out;
}

}  // namespace triplewell
