#include "triplewell/dilute_gas.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "triplewell/errors.hpp"
#include "triplewell/fluctuation.hpp"
#include "triplewell/instanton.hpp"
#include "triplewell/numerics.hpp"

namespace triplewell {

namespace {

constexpr double pi = std::numbers::pi;

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string(name) + " must be positive and finite");
}

double log_sinh(double x) {
    return x > 20.0 ? x - std::log(2.0) + std::log1p(-std::exp(-2.0 * x))
                    : std::log(std::sinh(x));
}

}  // namespace

double instanton_density(double omega) {
    require_positive(omega, "omega");
    const double s = omega / 4.0;
    return std::sqrt(8.0 / (3.0 * pi)) * std::sqrt(s) * std::exp(-s);
}

double translational_volume(int k, double omega, double T) {
    if (k < 0) throw std::invalid_argument("translational_volume: k >= 0 required");
    require_positive(omega, "omega");
    require_positive(T, "T");
    if (k == 0) return 1.0;
    return std::exp(k * std::log(omega * T) - std::lgamma(static_cast<double>(k) + 1.0));
}

double combinatorial_factor(int k) {
    if (k < 1 || k % 2 == 0)
        throw EvenK("the 0 -> 1 channel requires an odd positive kink count");
    return std::exp2(static_cast<double>((k - 1) / 2));
}

double amplitude(double omega, double T) {
    require_positive(omega, "omega");
    require_positive(T, "T");
    const double d = instanton_density(omega);
    return std::sqrt(3.0 * omega / (4.0 * pi)) * std::exp(-0.75 * omega * T) *
           std::sinh(omega * T * d);
}

double log_amplitude(double omega, double T) {
    require_positive(omega, "omega");
    require_positive(T, "T");
    const double d = instanton_density(omega);
    return 0.5 * std::log(3.0 * omega / (4.0 * pi)) - 0.75 * omega * T +
           log_sinh(omega * T * d);
}

SeriesAmplitude series_amplitude(double omega, double T, int k_max) {
    require_positive(omega, "omega");
    require_positive(T, "T");
    if (k_max >= 0 && k_max % 2 == 0)
        throw EvenK("series truncation must keep an odd kink count");
    const double x = omega * T * instanton_density(omega);
    const double prefactor = std::sqrt(3.0 * omega / (4.0 * pi)) * std::exp(-0.75 * omega * T);

    SeriesAmplitude out;
    double term = x;  // j = 0, one kink
    double sum = 0.0;
    int k = 1;
    while (true) {
        if (k_max >= 0 && k > k_max) break;
        sum += term;
        out.k_used = k;
        const double next = term * x * x / ((k + 1.0) * (k + 2.0));
        if (k_max < 0 && next < 1e-15 * sum) {
            term = next;
            break;
        }
        term = next;
        k += 2;
        if (k > 1001) break;  // sinh series converges long before this
    }
    out.first_omitted = prefactor * term;
    out.value = prefactor * sum;
    return out;
}

SpectrumTriplet energy_levels(double omega) {
    require_positive(omega, "omega");
    const double center = 0.75 * omega;
    const double split = omega * instanton_density(omega);
    return {center - split, center, center + split};
}

SpectrumTriplet energy_levels_fit(double omega) {
    require_positive(omega, "omega");
    // log-slope of the amplitude between two large times; the subleading
    // exponential is e^{-2 omega d T} down, so put 2*omega*d*T1 = 25
    const double d = instanton_density(omega);
    const double t1 = 12.5 / (omega * d);
    const double t2 = 1.25 * t1;
    const double e0 = (log_amplitude(omega, t1) - log_amplitude(omega, t2)) / (t2 - t1);
    const double center = 0.75 * omega;
    return {e0, center, 2.0 * center - e0};
}

DiluteGasResult dilute_gas_report(double omega, double half_box) {
    require_positive(omega, "omega");
    if (half_box == 0.0) half_box = 8.0 / omega;
    require_positive(half_box, "half_box");

    DiluteGasResult out;
    out.density = instanton_density(omega);
    out.prefactor = std::sqrt(3.0 * omega / (4.0 * pi));
    out.amplitude_fn = [omega](double T) { return amplitude(omega, T); };
    out.energies = energy_levels(omega);
    out.k_max_used = series_amplitude(omega, std::max(1.0 / omega, 1.0)).k_used;

    // density rebuilt from the determinant pipeline: collective-coordinate
    // jacobian sqrt(S/2pi), the reduced ratio to the power -1/2, the action
    // weight, the per-kink sqrt(2) of the pair combinatorics, all divided by
    // the omega of the translational measure
    PotentialSpec spec{PotentialFamily::triple_well, omega,
                       CoefficientConvention::canonical};
    const auto grid = uniform_symmetric_grid(half_box, 0.01 / omega);
    const auto profile = closed_form_profile(omega, 0.0, grid);
    const auto problem = triple_well_stability(spec, 0.0, half_box);
    const auto fluct = reduced_ratio(profile, problem);

    const double s = omega / 4.0;
    out.d_pipeline = std::sqrt(2.0) * std::sqrt(s / (2.0 * pi)) * std::exp(-s) /
                     (std::sqrt(fluct.reduced_ratio) * omega);
    out.d_ratio = out.d_pipeline / out.density;
    return out;
}

}  // namespace triplewell
