#include "triplewell/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace triplewell {

void PotentialSpec::validate() const {
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw std::invalid_argument("PotentialSpec: omega must be positive and finite");
}

namespace {

double triple_well_prefactor(const PotentialSpec& spec) {
    const double w2 = spec.omega * spec.omega;
    return spec.convention == CoefficientConvention::canonical ? w2 / 2.0 : w2 / 8.0;
}

}  // namespace

double evaluate(const PotentialSpec& spec, double x) {
    spec.validate();
    const double x2 = x * x;
    switch (spec.family) {
        case PotentialFamily::triple_well: {
            const double r = x2 - 1.0;
            return triple_well_prefactor(spec) * x2 * r * r;
        }
        case PotentialFamily::harmonic:
            return 0.5 * spec.omega * spec.omega * x2;
        case PotentialFamily::double_well: {
            // (omega^2/8)(x^2-1)^2: minima at +-1 with well frequency omega
            const double r = x2 - 1.0;
            return spec.omega * spec.omega / 8.0 * r * r;
        }
    }
    throw std::logic_error("evaluate: unknown family");
}

double first_derivative(const PotentialSpec& spec, double x) {
    spec.validate();
    const double x2 = x * x;
    switch (spec.family) {
        case PotentialFamily::triple_well:
            return triple_well_prefactor(spec) * 2.0 * x * (x2 - 1.0) * (3.0 * x2 - 1.0);
        case PotentialFamily::harmonic:
            return spec.omega * spec.omega * x;
        case PotentialFamily::double_well:
            return spec.omega * spec.omega / 2.0 * x * (x2 - 1.0);
    }
    throw std::logic_error("first_derivative: unknown family");
}

double second_derivative(const PotentialSpec& spec, double x) {
    spec.validate();
    const double x2 = x * x;
    switch (spec.family) {
        case PotentialFamily::triple_well:
            return triple_well_prefactor(spec) * (30.0 * x2 * x2 - 24.0 * x2 + 2.0);
        case PotentialFamily::harmonic:
            return spec.omega * spec.omega;
        case PotentialFamily::double_well:
            return spec.omega * spec.omega / 2.0 * (3.0 * x2 - 1.0);
    }
    throw std::logic_error("second_derivative: unknown family");
}

std::vector<double> minima(const PotentialSpec& spec) {
    spec.validate();
    switch (spec.family) {
        case PotentialFamily::triple_well:
            return {-1.0, 0.0, 1.0};
        case PotentialFamily::harmonic:
            return {0.0};
        case PotentialFamily::double_well:
            return {-1.0, 1.0};
    }
    throw std::logic_error("minima: unknown family");
}

WellFrequencies well_frequencies(const PotentialSpec& spec) {
    WellFrequencies out;
    for (double m : minima(spec))
        out.per_minimum.push_back(std::sqrt(second_derivative(spec, m)));
    // average over distinct well types, not over minima
    std::vector<double> distinct;
    for (double f : out.per_minimum) {
        bool seen = false;
        for (double g : distinct)
            if (std::abs(f - g) <= 1e-9 * (std::abs(f) + std::abs(g))) seen = true;
        if (!seen) distinct.push_back(f);
    }
    double sum = 0.0;
    for (double f : distinct) sum += f;
    out.nu = sum / static_cast<double>(distinct.size());
    return out;
}

}  // namespace triplewell
