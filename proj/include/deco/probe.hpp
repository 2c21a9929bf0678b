#ifndef DECO_PROBE_HPP
#define DECO_PROBE_HPP

#include "deco/spectrum.hpp"

namespace deco {

enum class StateFamily { GHZ, Product };

struct ProbeConfig {
    int num_qubits = 1;
    StateFamily state_family = StateFamily::GHZ;
    double qubit_frequency_omega = 0.0; // angular frequency, Hz
    double readout_phase_phi = 0.0;     // radians, in [0, 2*pi)
};

ProbeConfig make_probe(int num_qubits, StateFamily family, double omega = 0.0,
                       double phi = 0.0);

// Collective bath (shared target fields) and local bath (one independent
// environment per site, homogeneous across sites).
struct NoiseEnvironment {
    SpectralLimit collective;
    SpectralLimit local;
};

struct CoherenceRecord {
    double magnitude = 1.0;           // exp(-exponent_collective - exponent_local)
    double phase = 0.0;               // -L omega t
    double exponent_collective = 0.0; // L^2 Phi_c(t)
    double exponent_local = 0.0;      // L Phi_l(t)
};

// Off-diagonal coherence of the GHZ probe: |1..1><0..0| element carries
// e^{-i L omega t - L^2 Phi_c(t) - L Phi_l(t)}.
CoherenceRecord ghz_coherence(const ProbeConfig& probe, const NoiseEnvironment& env,
                              double t);

// Readout probability P = Tr[rho(t) |psi_read><psi_read|].
// GHZ:      P = (1 + m cos(L omega t - phi)) / 2 with m from ghz_coherence.
// Product:  per-qubit value (1 + e^{-Phi_c - Phi_l} cos(omega t - phi)) / 2;
//           each qubit sees both the collective and its local bath.
double survival_probability(const ProbeConfig& probe, const NoiseEnvironment& env,
                            double t);

enum class Target { MarkovCollectiveRate, NonMarkovCollectiveRate, QubitFrequency };

// Closed-form dP/dtheta. The rate targets require the collective bath to carry
// the parameter: Gamma_MC needs a white-noise or Lorentzian collective
// spectrum, Gamma_NMC a static one. Unsupported combinations throw
// std::invalid_argument.
double probability_derivative(const ProbeConfig& probe, const NoiseEnvironment& env,
                              double t, Target target);

namespace detail {
// d(Phi_c)/dtheta for the rate targets.
double collective_exponent_param_derivative(const SpectralLimit& s, Target target,
                                            double t);
} // namespace detail

} // namespace deco

#endif
