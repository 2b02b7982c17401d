#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "triplewell/potential.hpp"

using namespace triplewell;

namespace {

const PotentialSpec canonical1{PotentialFamily::triple_well, 1.0,
                               CoefficientConvention::canonical};
const PotentialSpec canonical2{PotentialFamily::triple_well, 2.0,
                               CoefficientConvention::canonical};
const PotentialSpec literal2{PotentialFamily::triple_well, 2.0,
                             CoefficientConvention::literal};

// five-point second difference, the independent check on the analytic V''
double fd_second(const PotentialSpec& spec, double x, double h) {
    return (-evaluate(spec, x - 2 * h) + 16 * evaluate(spec, x - h) -
            30 * evaluate(spec, x) + 16 * evaluate(spec, x + h) -
            evaluate(spec, x + 2 * h)) /
           (12 * h * h);
}

}  // namespace

TEST_CASE("triple-well values at the minima and at x = 1/2") {
    CHECK(evaluate(canonical2, 0.0) == 0.0);
    CHECK(evaluate(canonical2, 1.0) == 0.0);
    CHECK(evaluate(canonical2, -1.0) == 0.0);
    // (omega^2/2) x^2 (x^2-1)^2 at omega=2, x=1/2: 2 * 1/4 * 9/16
    CHECK(evaluate(canonical2, 0.5) == doctest::Approx(0.28125).epsilon(1e-14));
    CHECK(2.0 * 0.25 * 0.5625 == doctest::Approx(0.28125));
    CHECK(evaluate(literal2, 0.5) == doctest::Approx(0.28125 / 4.0).epsilon(1e-14));
}

TEST_CASE("other families") {
    const PotentialSpec harm{PotentialFamily::harmonic, 2.5,
                             CoefficientConvention::canonical};
    CHECK(evaluate(harm, 1.3) == doctest::Approx(0.5 * 6.25 * 1.69).epsilon(1e-14));
    const PotentialSpec dw{PotentialFamily::double_well, 3.0,
                           CoefficientConvention::canonical};
    CHECK(evaluate(dw, 1.0) == 0.0);
    CHECK(evaluate(dw, -1.0) == 0.0);
    CHECK(evaluate(dw, 0.0) == doctest::Approx(9.0 / 8.0).epsilon(1e-14));
}

TEST_CASE("analytic curvature at the minima") {
    CHECK(second_derivative(canonical1, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(second_derivative(canonical1, 1.0) == doctest::Approx(4.0).epsilon(1e-14));
    const PotentialSpec harm{PotentialFamily::harmonic, 1.7,
                             CoefficientConvention::canonical};
    CHECK(second_derivative(harm, -2.4) == doctest::Approx(1.7 * 1.7).epsilon(1e-15));
}

TEST_CASE("analytic derivatives match finite differences") {
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> ux(-3.0, 3.0);
    for (const auto& spec : {canonical2, literal2,
                             PotentialSpec{PotentialFamily::harmonic, 1.4,
                                           CoefficientConvention::canonical},
                             PotentialSpec{PotentialFamily::double_well, 2.2,
                                           CoefficientConvention::canonical}}) {
        for (int i = 0; i < 100; ++i) {
            const double x = ux(rng);
            const double numeric = fd_second(spec, x, 1e-3);
            const double analytic = second_derivative(spec, x);
            CHECK(std::abs(numeric - analytic) <=
                  1e-6 * std::max(1.0, std::abs(analytic)));
            const double fd1 = (evaluate(spec, x + 1e-5) - evaluate(spec, x - 1e-5)) / 2e-5;
            CHECK(std::abs(fd1 - first_derivative(spec, x)) <=
                  1e-6 * std::max(1.0, std::abs(fd1)));
        }
    }
}

TEST_CASE("minima") {
    CHECK(minima(canonical2) == std::vector<double>{-1.0, 0.0, 1.0});
    CHECK(minima(PotentialSpec{PotentialFamily::harmonic, 1.0,
                               CoefficientConvention::canonical}) ==
          std::vector<double>{0.0});
    CHECK(minima(PotentialSpec{PotentialFamily::double_well, 1.0,
                               CoefficientConvention::canonical}) ==
          std::vector<double>{-1.0, 1.0});
}

TEST_CASE("well frequencies and their average") {
    auto wf = well_frequencies(canonical2);
    REQUIRE(wf.per_minimum.size() == 3);
    CHECK(wf.per_minimum[0] == doctest::Approx(4.0).epsilon(1e-14));  // lateral
    CHECK(wf.per_minimum[1] == doctest::Approx(2.0).epsilon(1e-14));  // central
    CHECK(wf.per_minimum[2] == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(wf.nu == doctest::Approx(3.0).epsilon(1e-14));

    auto lit = well_frequencies(literal2);
    CHECK(lit.per_minimum[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(lit.per_minimum[0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(lit.nu == doctest::Approx(1.5).epsilon(1e-14));

    auto harm = well_frequencies(PotentialSpec{PotentialFamily::harmonic, 2.5,
                                               CoefficientConvention::canonical});
    CHECK(harm.nu == doctest::Approx(2.5).epsilon(1e-14));

    auto dw = well_frequencies(PotentialSpec{PotentialFamily::double_well, 3.0,
                                             CoefficientConvention::canonical});
    CHECK(dw.nu == doctest::Approx(3.0).epsilon(1e-14));

    // each frequency squares back to the curvature at its minimum
    const auto mins = minima(canonical2);
    for (std::size_t i = 0; i < mins.size(); ++i) {
        const double f = wf.per_minimum[i];
        CHECK(std::abs(f * f - second_derivative(canonical2, mins[i])) < 1e-12);
    }
}

TEST_CASE("parity of the triple well") {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> ux(-3.0, 3.0);
    for (int i = 0; i < 10000; ++i) {
        const double x = ux(rng);
        const double vp = evaluate(canonical2, x);
        const double vm = evaluate(canonical2, -x);
        CHECK(std::abs(vp - vm) <= 1e-14 * std::max(1.0, std::abs(vp)));
    }
}

TEST_CASE("canonical convention saturates sqrt(2V) = omega x (1 - x^2)") {
    for (double omega : {1.0, 2.0, 5.5}) {
        const PotentialSpec spec{PotentialFamily::triple_well, omega,
                                 CoefficientConvention::canonical};
        for (int i = 0; i <= 100; ++i) {
            const double x = i / 100.0;
            const double lhs = std::sqrt(2.0 * evaluate(spec, x));
            const double rhs = omega * x * (1.0 - x * x);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, rhs));
        }
    }
}

TEST_CASE("nonpositive omega is rejected") {
    CHECK_THROWS_AS(evaluate(PotentialSpec{PotentialFamily::triple_well, -1.0,
                                           CoefficientConvention::canonical},
                             0.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(minima(PotentialSpec{PotentialFamily::harmonic, 0.0,
                                         CoefficientConvention::canonical}),
                    std::invalid_argument);
}
