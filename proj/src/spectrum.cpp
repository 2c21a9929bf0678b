#include "deco/spectrum.hpp"

#include <cmath>

namespace deco {

namespace detail {

double em1px(double x) {
    if (x < 0.0) throw std::domain_error("em1px: negative argument");
    if (x < 1e-4) {
        // x^2/2 - x^3/6 + x^4/24
        return x * x * (0.5 - x / 6.0 + x * x / 24.0);
    }
    return std::expm1(-x) + x;
}

} // namespace detail

LorentzianSpectrum make_lorentzian(double amplitude_a, double correlation_time_tau_c) {
    if (!(amplitude_a >= 0.0))
        throw std::invalid_argument("LorentzianSpectrum: amplitude must be >= 0");
    if (!(correlation_time_tau_c > 0.0))
        throw std::invalid_argument("LorentzianSpectrum: correlation time must be > 0");
    return LorentzianSpectrum{amplitude_a, correlation_time_tau_c};
}

double decoherence_exponent(const LorentzianSpectrum& spectrum, double t) {
    if (t < 0.0) throw std::domain_error("decoherence_exponent: t must be >= 0");
    const double tau = spectrum.correlation_time_tau_c;
    return 2.0 * spectrum.amplitude_a * tau * tau * detail::em1px(t / tau);
}

double rate_at(const LorentzianSpectrum& spectrum, double t) {
    if (t < 0.0) throw std::domain_error("rate_at: t must be >= 0");
    if (t == 0.0) return 0.0;
    return decoherence_exponent(spectrum, t) / t;
}

double exponent_derivative(const LorentzianSpectrum& spectrum, double t) {
    if (t < 0.0) throw std::domain_error("exponent_derivative: t must be >= 0");
    const double tau = spectrum.correlation_time_tau_c;
    return 2.0 * spectrum.amplitude_a * tau * (-std::expm1(-t / tau));
}

RateSummary summarize(const LorentzianSpectrum& spectrum) {
    RateSummary s;
    s.markov_rate = 2.0 * spectrum.amplitude_a * spectrum.correlation_time_tau_c;
    s.nonmarkov_rate = std::sqrt(spectrum.amplitude_a);
    return s;
}

LorentzianSpectrum from_markov_rate(double markov_rate, double tau_c) {
    if (!(markov_rate >= 0.0))
        throw std::invalid_argument("from_markov_rate: rate must be >= 0");
    if (!(tau_c > 0.0))
        throw std::invalid_argument("from_markov_rate: tau_c must be > 0");
    return LorentzianSpectrum{markov_rate / (2.0 * tau_c), tau_c};
}

SpectralLimit SpectralLimit::lorentzian(const LorentzianSpectrum& s) {
    SpectralLimit out;
    out.kind_ = SpectralKind::Lorentzian;
    out.lor_ = make_lorentzian(s.amplitude_a, s.correlation_time_tau_c);
    return out;
}

SpectralLimit SpectralLimit::white_noise(double markov_rate_hz) {
    if (!(markov_rate_hz >= 0.0))
        throw std::invalid_argument("SpectralLimit: Markov rate must be >= 0");
    SpectralLimit out;
    out.kind_ = SpectralKind::WhiteNoise;
    out.param_ = markov_rate_hz;
    return out;
}

SpectralLimit SpectralLimit::static_noise(double amplitude_hz2) {
    if (!(amplitude_hz2 >= 0.0))
        throw std::invalid_argument("SpectralLimit: amplitude must be >= 0");
    SpectralLimit out;
    out.kind_ = SpectralKind::StaticNoise;
    out.param_ = amplitude_hz2;
    return out;
}

double SpectralLimit::exponent(double t) const {
    if (t < 0.0) throw std::domain_error("SpectralLimit::exponent: t must be >= 0");
    switch (kind_) {
        case SpectralKind::Lorentzian: return decoherence_exponent(lor_, t);
        case SpectralKind::WhiteNoise: return param_ * t;
        case SpectralKind::StaticNoise: return param_ * t * t;
    }
    return 0.0;
}

double SpectralLimit::rate(double t) const {
    if (t < 0.0) throw std::domain_error("SpectralLimit::rate: t must be >= 0");
    switch (kind_) {
        case SpectralKind::Lorentzian: return rate_at(lor_, t);
        case SpectralKind::WhiteNoise: return param_;
        case SpectralKind::StaticNoise: return param_ * t;
    }
    return 0.0;
}

double SpectralLimit::exponent_time_derivative(double t) const {
    if (t < 0.0) throw std::domain_error("SpectralLimit::exponent_time_derivative: t must be >= 0");
    switch (kind_) {
        case SpectralKind::Lorentzian: return exponent_derivative(lor_, t);
        case SpectralKind::WhiteNoise: return param_;
        case SpectralKind::StaticNoise: return 2.0 * param_ * t;
    }
    return 0.0;
}

double SpectralLimit::markov_rate() const {
    switch (kind_) {
        case SpectralKind::Lorentzian: return summarize(lor_).markov_rate;
        case SpectralKind::WhiteNoise: return param_;
        case SpectralKind::StaticNoise:
            throw std::logic_error("SpectralLimit: static noise has no finite Markov rate");
    }
    return 0.0;
}

double SpectralLimit::amplitude() const {
    switch (kind_) {
        case SpectralKind::Lorentzian: return lor_.amplitude_a;
        case SpectralKind::StaticNoise: return param_;
        case SpectralKind::WhiteNoise:
            throw std::logic_error("SpectralLimit: white noise has no finite amplitude");
    }
    return 0.0;
}

const LorentzianSpectrum& SpectralLimit::lorentzian_params() const {
    if (kind_ != SpectralKind::Lorentzian)
        throw std::logic_error("SpectralLimit: not a Lorentzian spectrum");
    return lor_;
}

} // namespace deco
