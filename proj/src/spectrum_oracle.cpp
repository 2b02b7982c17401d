#include "triplewell/spectrum_oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "triplewell/errors.hpp"
#include "triplewell/numerics.hpp"

namespace triplewell {

void GridSpec::validate() const {
    if (!(half_width > 0.0)) throw std::invalid_argument("GridSpec: half_width > 0 required");
    if (points < 100) throw std::invalid_argument("GridSpec: N >= 100 required");
}

namespace {

using Curvature = std::function<double(double)>;

// interior tridiagonal of -c2 d^2/dx^2 + U(x) with Dirichlet walls;
// c2 = 1/2 for the Schrodinger operator, 1 for the stability operator
struct Tridiag {
    std::vector<double> diag;
    std::vector<double> sub;
};

Tridiag build_operator(const Curvature& U, double half_width, int points, double c2) {
    const double h = 2.0 * half_width / (points - 1);
    const int m = points - 2;
    Tridiag t;
    t.diag.resize(m);
    t.sub.assign(m - 1, -c2 / (h * h));
    for (int j = 0; j < m; ++j) {
        const double x = -half_width + (j + 1) * h;
        t.diag[j] = 2.0 * c2 / (h * h) + U(x);
    }
    return t;
}

// eigenvalues at N and 2N-1 points, combined per index to cancel the h^2 term
std::vector<double> richardson_eigenvalues(const Curvature& U, double half_width,
                                           int points, double c2, int count) {
    const auto coarse = build_operator(U, half_width, points, c2);
    const auto fine = build_operator(U, half_width, 2 * points - 1, c2);
    const auto ec = tridiagonal_eigenvalues(coarse.diag, coarse.sub);
    const auto ef = tridiagonal_eigenvalues(fine.diag, fine.sub);
    if (count > static_cast<int>(ec.size()))
        throw std::invalid_argument("oracle: more eigenvalues requested than interior modes");
    std::vector<double> out(count);
    for (int j = 0; j < count; ++j) out[j] = (4.0 * ef[j] - ec[j]) / 3.0;
    return out;
}

SpectrumModes modes_of(const Curvature& U, double half_width, int points, double c2,
                       int count) {
    const auto op = build_operator(U, half_width, points, c2);
    auto values = tridiagonal_eigenvalues(op.diag, op.sub);
    if (count > static_cast<int>(values.size()))
        throw std::invalid_argument("oracle: more modes requested than interior modes");
    const double h = 2.0 * half_width / (points - 1);

    SpectrumModes out;
    out.energies.assign(values.begin(), values.begin() + count);
    out.xs.resize(points - 2);
    for (int j = 0; j < points - 2; ++j) out.xs[j] = -half_width + (j + 1) * h;
    for (int j = 0; j < count; ++j) {
        // shift slightly off the eigenvalue toward the previous one, so the
        // shifted matrix is never exactly singular
        const double gap = (j + 1 < static_cast<int>(values.size()) ? values[j + 1] : values[j] + 1.0) - values[j];
        const double shift = values[j] - 1e-4 * std::max(gap, 1e-12);
        auto vec = tridiagonal_eigenvector(op.diag, op.sub, shift, out.states);
        out.states.push_back(std::move(vec));
    }
    // normalize to int psi^2 dx = 1 and fix the sign of the first antinode
    const double inv_sqrt_h = 1.0 / std::sqrt(h);
    for (auto& state : out.states) {
        for (double& v : state) v *= inv_sqrt_h;
        double peak = 0.0;
        for (double v : state)
            if (std::abs(v) > std::abs(peak)) peak = v;
        if (peak < 0.0)
            for (double& v : state) v = -v;
    }
    return out;
}

}  // namespace

std::vector<double> diagonalize_schrodinger(const PotentialSpec& spec,
                                            const GridSpec& grid, int count) {
    spec.validate();
    grid.validate();
    if (count < 1) throw std::invalid_argument("diagonalize_schrodinger: count >= 1 required");
    const Curvature U = [&spec](double x) { return evaluate(spec, x); };

    auto levels = richardson_eigenvalues(U, grid.half_width, grid.points, 0.5, count);
    if (!(evaluate(spec, grid.half_width) > 10.0 * levels.back()))
        throw BoxTooSmall("potential at the box edge below 10x the highest requested level");

    // boundary sensitivity: rerun at 1.2 L with a comparable step
    const double wide_l = 1.2 * grid.half_width;
    const int wide_n = static_cast<int>(std::lround((grid.points - 1) * 1.2)) + 1;
    const auto wide = richardson_eigenvalues(U, wide_l, wide_n, 0.5, count);
    for (int j = 0; j < count; ++j) {
        const double scale = std::max(std::abs(levels[j]), std::abs(wide[j]));
        if (std::abs(levels[j] - wide[j]) > 1e-6 * scale)
            throw BoxTooSmall("levels shift by more than 1e-6 relative between L and 1.2L");
    }
    return levels;
}

SchrodingerLevels diagonalize_schrodinger_auto_box(const PotentialSpec& spec,
                                                   GridSpec grid, int count,
                                                   int max_tries) {
    for (int attempt = 0; attempt < max_tries; ++attempt) {
        try {
            return {diagonalize_schrodinger(spec, grid, count), grid.half_width,
                    grid.points};
        } catch (const BoxTooSmall&) {
            grid.half_width *= 1.25;
            grid.points = static_cast<int>(std::lround((grid.points - 1) * 1.25)) + 1;
        }
    }
    return {diagonalize_schrodinger(spec, grid, count), grid.half_width, grid.points};
}

SpectrumModes schrodinger_modes(const PotentialSpec& spec, const GridSpec& grid,
                                int count) {
    spec.validate();
    grid.validate();
    const Curvature U = [&spec](double x) { return evaluate(spec, x); };
    return modes_of(U, grid.half_width, grid.points, 0.5, count);
}

int parity_of(const std::vector<double>& state, double h) {
    double overlap = 0.0, norm = 0.0;
    const std::size_t n = state.size();
    for (std::size_t i = 0; i < n; ++i) {
        overlap += state[i] * state[n - 1 - i] * h;
        norm += state[i] * state[i] * h;
    }
    return overlap / norm >= 0.0 ? 1 : -1;
}

namespace {

Curvature kink_curvature(const InstantonProfile& profile) {
    // the stored profiles are canonical triple-well kinks; rebuild their
    // curvature analytically
    if (!(profile.omega > 0.0))
        throw std::invalid_argument("stability oracle: profile.omega > 0 required");
    PotentialSpec spec{PotentialFamily::triple_well, profile.omega,
                       CoefficientConvention::canonical};
    const double omega = profile.omega;
    const double tau_c = profile.tau_c;
    return [spec, omega, tau_c](double tau) {
        return second_derivative(spec, kink_position(omega, tau_c, tau));
    };
}

}  // namespace

std::vector<double> diagonalize_stability(const InstantonProfile& profile,
                                          double half_box, const GridSpec& grid,
                                          int count) {
    if (half_box > profile.half_box() * (1.0 + 1e-12))
        throw std::invalid_argument("diagonalize_stability: half_box outside the profile grid");
    return diagonalize_stability(kink_curvature(profile), half_box, grid, count);
}

std::vector<double> diagonalize_stability(
    const std::function<double(double)>& curvature, double half_box,
    const GridSpec& grid, int count) {
    grid.validate();
    if (std::abs(grid.half_width - half_box) > 1e-9 * half_box)
        throw std::invalid_argument("diagonalize_stability: grid.half_width must equal half_box");
    return richardson_eigenvalues(curvature, half_box, grid.points, 1.0, count);
}

SpectrumModes stability_modes(const InstantonProfile& profile, double half_box,
                              const GridSpec& grid, int count) {
    grid.validate();
    if (std::abs(grid.half_width - half_box) > 1e-9 * half_box)
        throw std::invalid_argument("stability_modes: grid.half_width must equal half_box");
    return modes_of(kink_curvature(profile), half_box, grid.points, 1.0, count);
}

BruteForceRatio determinant_ratio_bruteforce(
    const std::function<double(double)>& curvature, double nu, double half_box,
    const GridSpec& grid) {
    grid.validate();
    if (!(nu > 0.0)) throw std::invalid_argument("determinant_ratio_bruteforce: nu > 0 required");
    if (std::abs(grid.half_width - half_box) > 1e-9 * half_box)
        throw std::invalid_argument("determinant_ratio_bruteforce: grid.half_width must equal half_box");

    const Curvature reference = [nu](double) { return nu * nu; };
    const int m = grid.points - 2;
    const auto num = richardson_eigenvalues(curvature, half_box, grid.points, 1.0, m);
    const auto den = richardson_eigenvalues(reference, half_box, grid.points, 1.0, m);

    double log_sum = 0.0;
    int sign = 1;
    for (int j = 0; j < m; ++j) {
        const double r = num[j] / den[j];
        if (r == 0.0) throw std::runtime_error("determinant_ratio_bruteforce: zero eigenvalue ratio");
        if (r < 0.0) sign = -sign;
        log_sum += std::log(std::abs(r));
    }

    BruteForceRatio out;
    out.raw = sign * std::exp(log_sum);
    out.eps0 = num[0];
    out.reduced = out.raw / out.eps0;
    return out;
}

}  // namespace triplewell
