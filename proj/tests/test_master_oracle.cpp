#include <doctest.h>

#include <cmath>
#include <numbers>

#include "deco/master_oracle.hpp"

using namespace deco;

namespace {

NoiseEnvironment lorentzian_env() {
    return NoiseEnvironment{
        SpectralLimit::lorentzian(from_markov_rate(1.0, 1e-3)),
        SpectralLimit::white_noise(0.2)};
}

} // namespace

TEST_CASE("initial states are valid density matrices") {
    for (int l : {1, 2, 4, 6}) {
        for (const DensityMatrix& rho :
             {DensityMatrix::ghz(l, 0.4), DensityMatrix::plus_product(l)}) {
            CHECK(rho.trace_deviation() <= 1e-15);
            CHECK(rho.hermiticity_error() <= 1e-15);
        }
    }
    CHECK_THROWS_AS(DensityMatrix::ghz(7), std::invalid_argument);
    CHECK_THROWS_AS(DensityMatrix::ghz(0), std::invalid_argument);
}

TEST_CASE("evolution preserves trace and hermiticity") {
    const DephasingGenerator gen = make_generator(lorentzian_env(), 3.0);
    const DensityMatrix rho = evolve(DensityMatrix::ghz(3), gen, 3, 0.2, 1e-10);
    CHECK(rho.trace_deviation() <= 1e-9);
    CHECK(rho.hermiticity_error() <= 1e-9);
}

TEST_CASE("integrated dynamics reproduce the analytic survival probability") {
    const NoiseEnvironment env = lorentzian_env();
    for (int l : {1, 2, 3}) {
        const ProbeConfig probe = make_probe(l, StateFamily::GHZ);
        const double t_max = 5.0 / (l * l); // Gamma_MC = 1 Hz
        for (int i = 1; i <= 10; ++i) {
            const double t = t_max * i / 10.0;
            const double analytic = survival_probability(probe, env, t);
            const double numeric = oracle_probability(probe, env, t, 1e-10);
            CAPTURE(l);
            CAPTURE(t);
            CHECK(std::abs(numeric - analytic) <= 1e-6 * analytic);
        }
    }
}

TEST_CASE("nonzero frequency and readout phase match the interference fringe") {
    const NoiseEnvironment env = lorentzian_env();
    const ProbeConfig probe = make_probe(3, StateFamily::GHZ, 11.0, 1.2);
    for (double t : {0.02, 0.1, 0.25}) {
        const double analytic = survival_probability(probe, env, t);
        const double numeric = oracle_probability(probe, env, t, 1e-11);
        CHECK(numeric == doctest::Approx(analytic).epsilon(1e-7));
    }
}

TEST_CASE("product probes reduce to the per-qubit evolution") {
    const NoiseEnvironment env = lorentzian_env();
    const ProbeConfig probe = make_probe(5, StateFamily::Product, 4.0, 0.7);
    for (double t : {0.05, 0.4, 1.5}) {
        const double analytic = survival_probability(probe, env, t);
        const double numeric = oracle_probability(probe, env, t, 1e-10);
        CHECK(numeric == doctest::Approx(analytic).epsilon(1e-7));
    }
}

TEST_CASE("static-noise environments integrate correctly") {
    const NoiseEnvironment env{SpectralLimit::static_noise(25.0),
                               SpectralLimit::static_noise(4.0)};
    const ProbeConfig probe = make_probe(2, StateFamily::GHZ);
    for (double t : {0.01, 0.05, 0.2}) {
        const double analytic = survival_probability(probe, env, t);
        const double numeric = oracle_probability(probe, env, t, 1e-11);
        CHECK(numeric == doctest::Approx(analytic).epsilon(1e-7));
    }
}

TEST_CASE("evolve validates its arguments") {
    const DephasingGenerator gen = make_generator(lorentzian_env(), 0.0);
    CHECK_THROWS_AS(evolve(DensityMatrix::ghz(2), gen, 2, 0.1, 1e-3),
                    std::invalid_argument);
    CHECK_THROWS_AS(evolve(DensityMatrix::ghz(2), gen, 2, 0.1, 1e-13),
                    std::invalid_argument);
    CHECK_THROWS_AS(evolve(DensityMatrix::ghz(2), gen, 3, 0.1, 1e-10),
                    std::invalid_argument);
    CHECK_THROWS_AS(evolve(DensityMatrix::ghz(2), gen, 2, -0.1, 1e-10),
                    std::domain_error);
}
