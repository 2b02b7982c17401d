#pragma once

#include <functional>
#include <span>
#include <vector>

#include "triplewell/instanton.hpp"
#include "triplewell/numerics.hpp"
#include "triplewell/potential.hpp"

namespace triplewell {

/// Curvature profile W(tau) = V''(x_c(tau)) of the quadratic-fluctuation
/// operator -d^2/dtau^2 + W on [-T/2, T/2], plus the reference oscillator
/// frequency nu used in the determinant ratio.
struct StabilityProblem {
    std::function<double(double)> curvature;
    double half_box = 0.0;           // T/2
    double reference_frequency = 0;  // nu
};

/// Stability problem for the canonical triple-well kink (analytic curvature,
/// nu = 3 omega / 2).
StabilityProblem triple_well_stability(const PotentialSpec& spec, double tau_c,
                                       double half_box);

/// Terminal value of the zero-energy solution f'' = W f with
/// f(-T/2) = 0, f'(-T/2) = 1, integrated by classical RK4 with periodic
/// log-rescaling whenever |f| exceeds 1e8. steps >= 100.
SignedLog gy_forward_solve(const StabilityProblem& problem, int steps);

/// Step count giving h = min(0.005/omega, T/1e4).
int default_gy_steps(double omega, double half_box);

/// sinh(nu T)/nu: the closed-form terminal value for constant curvature nu^2.
double harmonic_gy(double nu, double half_box);
/// log of the same, stable for large nu*T.
double log_harmonic_gy(double nu, double half_box);

/// f(T/2) / g(T/2) with f from the initial-value solve on problem.curvature
/// and g the closed-form reference value at problem.reference_frequency.
SignedLog raw_determinant_ratio(const StabilityProblem& problem, int steps = 0);

/// Second solution y_o = x_o(tau) * int_{tau_c}^tau ds / x_o(s)^2 of the
/// stability equation, with its grid derivative. Wronskian x_o y' - x' y = 1.
struct SecondSolution {
    std::vector<double> y;
    std::vector<double> y_deriv;
};

/// Reduction-of-order quadrature for the second solution. Throws
/// ZeroModeVanishes if x_o is nonpositive or underflows on the grid.
SecondSolution second_solution(const InstantonProfile& profile);

/// f(tau) = x_o(-T/2) y_o(tau) - y_o(-T/2) x_o(tau), rescaled so that
/// f'(-T/2) = 1 (the grid-evaluated Wronskian at the left edge).
/// The arrays must share a uniform grid spanning [-half_box, half_box].
std::vector<double> assemble_f_from_pair(std::span<const double> x_o,
                                         std::span<const double> y_o,
                                         double half_box);

/// Perturbative lowest eigenvalue of the Dirichlet stability operator on
/// [-half_box, half_box], from the first-order shift of the zero-energy
/// solution. Scales as exp(-omega T); the scaling is self-checked against a
/// 0.8 T sub-box and AsymptoticRegimeViolated is thrown if the fitted slope
/// deviates from -omega by more than 2%, or if omega*T < 10.
double lowest_eigenvalue(const InstantonProfile& profile, double half_box);

struct FluctuationResult {
    double f_end = 0.0;         // f(T/2), kink curvature
    double g_end = 0.0;         // g(T/2), reference oscillator
    double lambda_low = 0.0;    // perturbative lowest eigenvalue
    double raw_ratio = 0.0;     // f_end / g_end, still contains lambda_low
    double reduced_ratio = 0.0; // raw_ratio / lambda_low
};

/// Full determinant-ratio record for a kink profile against its reference
/// oscillator. Requires nu = 3 omega / 2 and a problem box inside the profile.
FluctuationResult reduced_ratio(const InstantonProfile& profile,
                                const StabilityProblem& problem);

}  // namespace triplewell
