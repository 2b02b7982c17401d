#pragma once

#include <cstddef>
#include <vector>

#include "triplewell/potential.hpp"

namespace triplewell {

/// Tabulated euclidean kink connecting two adjacent minima.
/// Invariants: x_c monotone nondecreasing, dx_c > 0 in the interior and -> 0
/// at the ends, dx_c = sqrt(2 V(x_c)) pointwise, action > 0.
struct InstantonProfile {
    std::vector<double> tau_grid;  // strictly increasing
    std::vector<double> x_c;
    std::vector<double> dx_c;
    double tau_c = 0.0;    // jump center
    double action = 0.0;   // euclidean action of the kink
    double c_const = 0.0;  // right-tail amplitude of the normalized zero mode
    double d_const = 0.0;  // left-tail amplitude
    double omega = 0.0;    // frequency parameter of the generating potential

    std::size_t size() const { return tau_grid.size(); }
    double half_box() const { return tau_grid.back(); }
};

/// Closed-form kink position x_c(tau) = sqrt((1 + tanh(omega (tau - tau_c)))/2)
/// for the canonical triple well, evaluated in a form stable in both tails.
double kink_position(double omega, double tau_c, double tau);
/// x_c^2, stable in both tails.
double kink_position_sq(double omega, double tau_c, double tau);
/// dx_c/dtau, analytic.
double kink_velocity(double omega, double tau_c, double tau);

/// Tabulates the closed-form kink on `grid`. Sets action = omega/4 and
/// c_const = d_const = omega/sqrt(action) = 2 sqrt(omega).
InstantonProfile closed_form_profile(double omega, double tau_c,
                                     std::vector<double> grid);

/// Integrates dtau = dx/sqrt(2V) between the adjacent minima (x_start, x_end)
/// and inverts the result onto `grid`. The jump center is the grid midpoint.
/// Endpoints are handled by the linearized exponential approach inside the
/// layer where V < 1e-12.
/// Throws NonAdjacentMinima if the requested pair is not an adjacent ascending
/// pair of minima; QuadratureFailure if `tol` cannot be met.
InstantonProfile solve_bogomolny(const PotentialSpec& spec, double x_start,
                                 double x_end, std::vector<double> grid,
                                 double tol = 1e-10);

/// Simpson value of int [ (dx/dtau)^2 / 2 + V(x) ] dtau over the profile grid.
double classical_action(const InstantonProfile& profile,
                        const PotentialSpec& spec);

/// Normalized zero mode x_o = (dx_c/dtau) / sqrt(action);
/// int x_o^2 dtau = 1 up to quadrature error.
std::vector<double> zero_mode(const InstantonProfile& profile);

/// Tail-fit window, as offsets from tau_c: the right-tail fit uses
/// tau in [tau_c + inner, tau_c + outer], the left tail its mirror image.
struct FitWindow {
    double inner = 0.0;
    double outer = 0.0;
};

struct TailConstants {
    double c = 0.0;  // x_o ~ c exp(-2 omega (tau - tau_c)), right tail
    double d = 0.0;  // x_o ~ d exp(+omega (tau - tau_c)), left tail
};

/// Log-linear tail fit of the zero mode with the decay rates pinned to
/// -2 omega (right) and +omega (left). An unconstrained slope fit is run as a
/// cross-check; if it deviates from the pinned rate by more than 1% the window
/// is outside the asymptotic regime and InsufficientTail is thrown.
TailConstants asymptotic_constants(const InstantonProfile& profile,
                                   FitWindow window);

}  // namespace triplewell
