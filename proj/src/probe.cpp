#include "deco/probe.hpp"

#include <cmath>
#include <numbers>

namespace deco {

ProbeConfig make_probe(int num_qubits, StateFamily family, double omega, double phi) {
    if (num_qubits < 1)
        throw std::invalid_argument("ProbeConfig: num_qubits must be >= 1");
    if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi))
        throw std::invalid_argument("ProbeConfig: readout phase must lie in [0, 2*pi)");
    return ProbeConfig{num_qubits, family, omega, phi};
}

CoherenceRecord ghz_coherence(const ProbeConfig& probe, const NoiseEnvironment& env,
                              double t) {
    if (t < 0.0) throw std::domain_error("ghz_coherence: t must be >= 0");
    if (probe.state_family != StateFamily::GHZ)
        throw std::invalid_argument("ghz_coherence: probe must be a GHZ state");
    const double L = probe.num_qubits;
    CoherenceRecord rec;
    rec.exponent_collective = L * L * env.collective.exponent(t);
    rec.exponent_local = L * env.local.exponent(t);
    rec.magnitude = std::exp(-rec.exponent_collective - rec.exponent_local);
    rec.phase = -L * probe.qubit_frequency_omega * t;
    return rec;
}

double survival_probability(const ProbeConfig& probe, const NoiseEnvironment& env,
                            double t) {
    if (t < 0.0) throw std::domain_error("survival_probability: t must be >= 0");
    const double L = probe.num_qubits;
    if (probe.state_family == StateFamily::GHZ) {
        const CoherenceRecord rec = ghz_coherence(probe, env, t);
        const double chi = L * probe.qubit_frequency_omega * t - probe.readout_phase_phi;
        return 0.5 * (1.0 + rec.magnitude * std::cos(chi));
    }
    // Product probe, per-qubit readout.
    const double exponent = env.collective.exponent(t) + env.local.exponent(t);
    const double chi = probe.qubit_frequency_omega * t - probe.readout_phase_phi;
    return 0.5 * (1.0 + std::exp(-exponent) * std::cos(chi));
}

namespace detail {

double collective_exponent_param_derivative(const SpectralLimit& s, Target target,
                                            double t) {
    switch (target) {
        case Target::MarkovCollectiveRate:
            // Phi_c = Gamma_MC t (white noise) or Gamma_MC tau_c g(t/tau_c)
            // (Lorentzian at fixed tau_c, Gamma_MC = 2 a tau_c).
            if (s.kind() == SpectralKind::WhiteNoise) return t;
            if (s.kind() == SpectralKind::Lorentzian) {
                const double tau = s.lorentzian_params().correlation_time_tau_c;
                return tau * em1px(t / tau);
            }
            throw std::invalid_argument(
                "probability_derivative: Gamma_MC target needs a white-noise or "
                "Lorentzian collective bath");
        case Target::NonMarkovCollectiveRate:
            // Phi_c = Gamma_NMC^2 t^2 with a = Gamma_NMC^2.
            if (s.kind() == SpectralKind::StaticNoise)
                return 2.0 * std::sqrt(s.amplitude()) * t * t;
            throw std::invalid_argument(
                "probability_derivative: Gamma_NMC target needs a static-noise "
                "collective bath");
        case Target::QubitFrequency:
            throw std::logic_error("collective_exponent_param_derivative: not a rate target");
    }
    return 0.0;
}

} // namespace detail

double probability_derivative(const ProbeConfig& probe, const NoiseEnvironment& env,
                              double t, Target target) {
    if (t < 0.0) throw std::domain_error("probability_derivative: t must be >= 0");
    const double L = probe.num_qubits;
    const bool ghz = probe.state_family == StateFamily::GHZ;
    const double scale = ghz ? L : 1.0; // per-qubit quantities for Product probes

    const double exponent =
        scale * scale * env.collective.exponent(t) + scale * env.local.exponent(t);
    const double m = std::exp(-exponent);
    const double chi = scale * probe.qubit_frequency_omega * t - probe.readout_phase_phi;

    if (target == Target::QubitFrequency) {
        return -0.5 * m * scale * t * std::sin(chi);
    }
    const double dphi =
        detail::collective_exponent_param_derivative(env.collective, target, t);
    return -0.5 * std::cos(chi) * m * scale * scale * dphi;
}

} // namespace deco
