#pragma once

#include <vector>

namespace triplewell {

enum class PotentialFamily { triple_well, harmonic, double_well };

/// Prefactor convention for the triple well: `canonical` uses (omega^2/2),
/// which makes the kink action omega/4 and the lateral-well frequency 2*omega;
/// `literal` uses (omega^2/8) and is kept selectable for the record. The flag
/// has no effect on the other families.
enum class CoefficientConvention { canonical, literal };

struct PotentialSpec {
    PotentialFamily family = PotentialFamily::triple_well;
    double omega = 1.0;  // harmonic: the oscillator frequency itself
    CoefficientConvention convention = CoefficientConvention::canonical;

    /// Throws std::invalid_argument unless omega > 0 and finite.
    void validate() const;
};

/// V(x). Total function, V >= 0 with V = 0 at every minimum.
double evaluate(const PotentialSpec& spec, double x);

/// dV/dx, analytic.
double first_derivative(const PotentialSpec& spec, double x);

/// d2V/dx2, analytic (never finite differences).
double second_derivative(const PotentialSpec& spec, double x);

/// Ascending list of minima: triple well {-1,0,1}, harmonic {0},
/// double well {-1,1}.
std::vector<double> minima(const PotentialSpec& spec);

struct WellFrequencies {
    std::vector<double> per_minimum;  // sqrt(V''(m)), aligned with minima()
    double nu = 0.0;                  // mean over the distinct well types
};

/// Well frequencies and their average nu. Distinct well types are frequencies
/// that differ by more than a relative 1e-9 (triple well: central omega,
/// lateral 2*omega, nu = 3*omega/2 in the canonical convention).
WellFrequencies well_frequencies(const PotentialSpec& spec);

}  // namespace triplewell
