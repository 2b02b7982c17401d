#pragma once

#include <functional>
#include <vector>

#include "triplewell/instanton.hpp"
#include "triplewell/potential.hpp"

namespace triplewell {

enum class BoundaryCondition { dirichlet };

/// Discretization box: N points spanning [-half_width, half_width] including
/// both (Dirichlet) endpoints, so the interior problem has N-2 modes.
struct GridSpec {
    double half_width = 0.0;
    int points = 0;
    BoundaryCondition boundary = BoundaryCondition::dirichlet;

    void validate() const;  // N >= 100, half_width > 0
    double step() const { return 2.0 * half_width / (points - 1); }
};

/// Lowest `count` eigenvalues of H = -(1/2) d^2/dx^2 + V with Dirichlet walls,
/// second-order central differences, Richardson-extrapolated over the grids
/// (N, 2N-1). Throws BoxTooSmall if V(half_width) <= 10 * E_count or if
/// rerunning at 1.2*half_width shifts any requested level by more than 1e-6
/// relative.
std::vector<double> diagonalize_schrodinger(const PotentialSpec& spec,
                                            const GridSpec& grid, int count);

/// diagonalize_schrodinger with the box grown geometrically (up to `max_tries`
/// times) until the boundary-sensitivity test passes. Returns the grid used.
struct SchrodingerLevels {
    std::vector<double> energies;
    double half_width_used = 0.0;
    int points_used = 0;
};
SchrodingerLevels diagonalize_schrodinger_auto_box(const PotentialSpec& spec,
                                                   GridSpec grid, int count,
                                                   int max_tries = 8);

/// Lowest `count` eigenstates on a single grid (no extrapolation): energies,
/// wavefunctions normalized to int psi^2 dx = 1, and the sample abscissas.
struct SpectrumModes {
    std::vector<double> energies;
    std::vector<std::vector<double>> states;
    std::vector<double> xs;
};
SpectrumModes schrodinger_modes(const PotentialSpec& spec,
                                const GridSpec& grid, int count);

/// Parity of a sampled eigenfunction on a symmetric grid: +1 even, -1 odd,
/// from the overlap with its own reflection.
int parity_of(const std::vector<double>& state, double h);

/// Lowest `count` Dirichlet eigenvalues of the stability operator
/// -d^2/dtau^2 + V''(x_c(tau)) on [-half_box, half_box], Richardson
/// extrapolated over (N, 2N-1). The walls are part of the operator, so no
/// box-sensitivity test applies. The profile must be a canonical triple-well
/// kink covering the box.
std::vector<double> diagonalize_stability(const InstantonProfile& profile,
                                          double half_box, const GridSpec& grid,
                                          int count);

/// Same for an arbitrary curvature profile W(tau).
std::vector<double> diagonalize_stability(
    const std::function<double(double)>& curvature, double half_box,
    const GridSpec& grid, int count);

/// Single-grid eigenstates of the same operator (for overlap checks).
SpectrumModes stability_modes(const InstantonProfile& profile, double half_box,
                              const GridSpec& grid, int count);

struct BruteForceRatio {
    double raw = 0.0;      // prod eps_j / eps~_j over the matched interior modes
    double reduced = 0.0;  // raw / eps_0
    double eps0 = 0.0;     // extrapolated lowest eigenvalue of the numerator
};

/// Eigenproduct determinant ratio of -d''+W against -d''+nu^2, both
/// discretized on the same Dirichlet grid, eigenvalues paired by ascending
/// index and Richardson-extrapolated over (N, 2N-1).
BruteForceRatio determinant_ratio_bruteforce(
    const std::function<double(double)>& curvature, double nu, double half_box,
    const GridSpec& grid);

}  // namespace triplewell
