#include <doctest.h>

#include <cmath>
#include <random>

#include "deco/spectrum.hpp"
#include "oracles.hpp"

using namespace deco;

TEST_CASE("decoherence exponent matches direct quadrature of the spectrum") {
    const LorentzianSpectrum spec = make_lorentzian(500.0, 1e-3);
    // Spans the quadratic short-time regime through the deep Markov regime.
    for (double r : {1e-6, 1e-4, 1e-2, 0.1, 0.5, 1.0, 3.0, 10.0, 1e2, 1e3}) {
        const double t = r * spec.correlation_time_tau_c;
        const double closed = decoherence_exponent(spec, t);
        const double quad = oracles::quadrature_exponent(spec, t);
        CAPTURE(r);
        CHECK(std::abs(quad - closed) <= 1e-8 * closed);
    }
}

TEST_CASE("exponent interpolates between the static and Markov forms") {
    const LorentzianSpectrum spec = make_lorentzian(7.5, 0.02);
    const double a = spec.amplitude_a, tau = spec.correlation_time_tau_c;
    for (double t = 1e-5; t < 10.0; t *= 3.0) {
        const double phi = decoherence_exponent(spec, t);
        CHECK(phi <= a * t * t * (1.0 + 1e-12));          // static-limit cap
        CHECK(phi <= 2.0 * a * tau * t * (1.0 + 1e-12));  // Markov-limit cap
        if (t <= tau)
            CHECK(phi >= 0.5 * a * t * t * (1.0 - t / (3.0 * tau)) * (1.0 - 1e-12));
    }
}

TEST_CASE("time-dependent rate is monotone with the documented limits") {
    const LorentzianSpectrum spec = make_lorentzian(250.0, 4e-3);
    const RateSummary summary = summarize(spec);
    CHECK(summary.markov_rate == doctest::Approx(2.0 * 250.0 * 4e-3));
    CHECK(summary.nonmarkov_rate == doctest::Approx(std::sqrt(250.0)));

    double prev = 0.0;
    for (double t = 1e-6; t < 10.0; t *= 2.0) {
        const double g = rate_at(spec, t);
        CHECK(g >= prev);
        CHECK(g <= summary.markov_rate * (1.0 + 1e-12));
        prev = g;
    }
    CHECK(rate_at(spec, 1e-9) == doctest::Approx(250.0 * 1e-9).epsilon(1e-5));
    // Approach to the Markov limit is O(tau_c / t).
    CHECK(rate_at(spec, 1e3) == doctest::Approx(summary.markov_rate).epsilon(1e-5));
}

TEST_CASE("summarize round-trips through from_markov_rate") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> logu(-3.0, 3.0);
    for (int i = 0; i < 50; ++i) {
        const double rate = std::pow(10.0, logu(rng));
        const double tau = std::pow(10.0, logu(rng));
        const LorentzianSpectrum spec = from_markov_rate(rate, tau);
        CHECK(summarize(spec).markov_rate == doctest::Approx(rate).epsilon(1e-14));
        CHECK(spec.correlation_time_tau_c == tau);
    }
}

TEST_CASE("exponent time derivative agrees with finite differences") {
    const LorentzianSpectrum spec = make_lorentzian(120.0, 2e-3);
    for (double t : {1e-4, 1e-3, 5e-3, 0.05, 0.5}) {
        const double fd = oracles::central_difference(
            [&](double x) { return decoherence_exponent(spec, x); }, t, 1e-6 * t);
        CHECK(exponent_derivative(spec, t) == doctest::Approx(fd).epsilon(1e-8));
    }
}

TEST_CASE("limiting forms of SpectralLimit") {
    const SpectralLimit white = SpectralLimit::white_noise(3.0);
    const SpectralLimit stat = SpectralLimit::static_noise(4.0);
    CHECK(white.exponent(0.5) == doctest::Approx(1.5));
    CHECK(white.rate(123.0) == doctest::Approx(3.0));
    CHECK(white.exponent_time_derivative(7.0) == doctest::Approx(3.0));
    CHECK(stat.exponent(0.5) == doctest::Approx(1.0));
    CHECK(stat.rate(0.5) == doctest::Approx(2.0));
    CHECK(stat.exponent_time_derivative(0.5) == doctest::Approx(4.0));
    CHECK_THROWS_AS((void)white.amplitude(), std::logic_error);
    CHECK_THROWS_AS((void)stat.markov_rate(), std::logic_error);

    // The Lorentzian squeezes between its two limits.
    const SpectralLimit lor = SpectralLimit::lorentzian(make_lorentzian(8.0, 0.1));
    for (double t = 1e-4; t < 100.0; t *= 10.0) {
        CHECK(lor.exponent(t) <= SpectralLimit::static_noise(8.0).exponent(t));
        CHECK(lor.exponent(t) <= SpectralLimit::white_noise(1.6).exponent(t));
    }
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(make_lorentzian(-1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_lorentzian(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(from_markov_rate(-1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(SpectralLimit::white_noise(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(SpectralLimit::static_noise(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(decoherence_exponent(make_lorentzian(1.0, 1.0), -1e-9),
                    std::domain_error);
}

TEST_CASE("em1px is continuous across the series switchover") {
    const double x = 1e-4;
    const double below = deco::detail::em1px(x * (1.0 - 1e-10));
    const double above = deco::detail::em1px(x * (1.0 + 1e-10));
    CHECK(std::abs(below - above) <= 1e-8 * above);
    CHECK(deco::detail::em1px(0.0) == 0.0);
}
