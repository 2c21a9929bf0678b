#ifndef DECO_MASTER_ORACLE_HPP
#define DECO_MASTER_ORACLE_HPP

#include <complex>
#include <functional>
#include <vector>

#include "deco/probe.hpp"

namespace deco {

// Dense 2^L x 2^L density matrix, row-major. Brute-force verification only;
// L is capped at 6.
struct DensityMatrix {
    int dim = 1;
    std::vector<std::complex<double>> entries; // dim * dim

    std::complex<double>& operator()(int r, int c) { return entries[r * dim + c]; }
    const std::complex<double>& operator()(int r, int c) const {
        return entries[r * dim + c];
    }

    // GHZ state (|0..0> + e^{i phase}|1..1>)/sqrt(2).
    static DensityMatrix ghz(int num_qubits, double phase = 0.0);
    // |+>^{tensor L}.
    static DensityMatrix plus_product(int num_qubits);

    double trace_deviation() const;    // |Tr rho - 1|
    double hermiticity_error() const;  // max |rho - rho^dag|
};

// Time-local dephasing generator: coefficients C(t), c(t) of the collective
// and local double-commutator terms, plus the qubit frequency. C and c are
// Phi'(t)/4 so that the GHZ coherence exponent integrates to
// L^2 Phi_c(t) + L Phi_l(t) with sigma_z eigenvalues +-1.
struct DephasingGenerator {
    std::function<double(double)> collective_rate; // C(t), Hz
    std::function<double(double)> local_rate;      // c(t), Hz
    double omega = 0.0;
};

DephasingGenerator make_generator(const NoiseEnvironment& env, double omega);

// Integrates the element-wise master equation
//   d rho_xy / dt = [-i (omega/2)(M_x - M_y) - C(t)(M_x - M_y)^2
//                    - 4 c(t) Hamming(x, y)] rho_xy
// with adaptive embedded Runge-Kutta stepping, local error <= tol.
DensityMatrix evolve(const DensityMatrix& initial, const DephasingGenerator& gen,
                     int num_qubits, double t_final, double tol = 1e-10);

// Evolves the probe's initial state and applies the readout projector.
// Product probes reduce to the per-qubit (L = 1) evolution.
double oracle_probability(const ProbeConfig& probe, const NoiseEnvironment& env,
                          double t, double tol = 1e-10);

} // namespace deco

#endif
