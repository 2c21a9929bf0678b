#ifndef DECO_SPECTRUM_HPP
#define DECO_SPECTRUM_HPP

#include <stdexcept>

namespace deco {

// Lorentzian bath spectrum J(w) = (1/pi) * (a/tau_c) / ((1/tau_c)^2 + w^2).
// amplitude_a is in Hz^2, correlation_time_tau_c in seconds.
struct LorentzianSpectrum {
    double amplitude_a = 0.0;
    double correlation_time_tau_c = 1.0;
};

// Validates the invariants (a >= 0, tau_c > 0); throws std::invalid_argument.
LorentzianSpectrum make_lorentzian(double amplitude_a, double correlation_time_tau_c);

struct RateSummary {
    double markov_rate = 0.0;    // 2 a tau_c, Hz
    double nonmarkov_rate = 0.0; // sqrt(a), Hz
};

// Decoherence exponent Phi(t) = 2 a tau_c^2 (-1 + e^{-t/tau_c} + t/tau_c).
double decoherence_exponent(const LorentzianSpectrum& spectrum, double t);

// Time-dependent rate Phi(t)/t; -> a t as t -> 0, -> 2 a tau_c as t -> inf.
double rate_at(const LorentzianSpectrum& spectrum, double t);

// dPhi/dt = 2 a tau_c (1 - e^{-t/tau_c}).
double exponent_derivative(const LorentzianSpectrum& spectrum, double t);

RateSummary summarize(const LorentzianSpectrum& spectrum);

// Inverse of summarize: a = markov_rate / (2 tau_c).
LorentzianSpectrum from_markov_rate(double markov_rate, double tau_c);

enum class SpectralKind {
    Lorentzian, // finite correlation time
    WhiteNoise, // tau_c -> 0 at fixed 2 a tau_c; carries the Markov rate (Hz)
    StaticNoise // tau_c -> inf at fixed a; carries the amplitude (Hz^2)
};

// A bath spectrum together with its limiting forms. The white-noise limit has
// Phi(t) = Gamma_M t, the static limit Phi(t) = a t^2.
class SpectralLimit {
public:
    SpectralLimit() = default; // white noise with zero rate

    static SpectralLimit lorentzian(const LorentzianSpectrum& s);
    static SpectralLimit white_noise(double markov_rate_hz);
    static SpectralLimit static_noise(double amplitude_hz2);

    SpectralKind kind() const { return kind_; }

    double exponent(double t) const;            // Phi(t)
    double rate(double t) const;                // Phi(t)/t
    double exponent_time_derivative(double t) const; // dPhi/dt

    // Parameter accessors; meaningful fields depend on kind().
    double markov_rate() const;  // WhiteNoise rate, or 2 a tau_c for Lorentzian
    double amplitude() const;    // StaticNoise / Lorentzian amplitude (Hz^2)
    const LorentzianSpectrum& lorentzian_params() const;

private:
    SpectralKind kind_ = SpectralKind::WhiteNoise;
    LorentzianSpectrum lor_{};   // Lorentzian parameters
    double param_ = 0.0;         // WhiteNoise: Gamma_M; StaticNoise: a
};

namespace detail {
// -1 + e^{-x} + x, evaluated by its Taylor series for small x to avoid
// catastrophic cancellation.
double em1px(double x);
} // namespace detail

} // namespace deco

#endif
