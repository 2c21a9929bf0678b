#ifndef DECO_SCALING_HPP
#define DECO_SCALING_HPP

#include <array>
#include <vector>

#include "deco/estimation.hpp"

namespace deco {

struct SweepPoint {
    int num_qubits = 1;
    double t_opt = 0.0;
    double delta_min = 0.0;
};

struct ScalingCurve {
    std::vector<SweepPoint> points; // strictly increasing in num_qubits
    EstimationTask scenario;        // template with probe.num_qubits ignored
};

// Log-spaced qubit numbers: integers, deduplicated after rounding.
std::vector<int> default_l_grid(double l_min = 1.0, double l_max = 1e4, int points = 40);

// Runs optimize_time for each L. The parallel version uses OpenMP but
// produces output identical to sweep_serial.
ScalingCurve sweep(const EstimationTask& task_template, const std::vector<int>& l_values);
ScalingCurve sweep_serial(const EstimationTask& task_template,
                          const std::vector<int>& l_values);

struct ExponentFit {
    double l_min = 0.0, l_max = 0.0; // window
    double slope = 0.0;
    double intercept = 0.0; // in log units
    double residual = 0.0;  // RMS of log residuals
    int points_used = 0;
};

// Ordinary least squares of ln(delta_min) against ln(L) inside the window.
ExponentFit fit_exponent(const ScalingCurve& curve, double l_min, double l_max);

// L where the 5-point moving-window local slope first crosses -0.75 (the
// midpoint of the Heisenberg-limit and standard-quantum-limit slopes), with
// linear interpolation between windows. Throws if no crossing exists.
double detect_transition(const ScalingCurve& curve);

// Local slopes from 5-point moving windows; entry i is centered on point i+2.
std::vector<double> local_slopes(const ScalingCurve& curve, int window = 5);

struct Table1Params {
    double markov_collective_rate = 1.0;  // Gamma_MC, Hz
    double tau_c = 1e-3;                  // s, fixes Gamma_NMC = sqrt(Gamma_MC/(2 tau_c))
    double markov_local_rate = 0.2;       // gamma_ME, Hz
    double local_tau_c = 1e-3;            // s, fixes a' = gamma_ME/(2 tau'_c)
    double total_time_T = 1.0;            // s
    double window_l_min = 1e3, window_l_max = 1e4;
    std::vector<int> l_grid;              // empty -> default grid
};

struct Table1Result {
    // Order: {Markov, non-Markov fields} x {Markov, non-Markov environment}.
    std::array<ExponentFit, 4> fits;
    std::array<ScalingCurve, 4> curves;
};

// The 2x2 scenario grid behind the scaling table: Markovian fields estimate
// Gamma_MC, non-Markovian fields estimate Gamma_NMC, each against a Markovian
// or non-Markovian (static) local environment.
Table1Result table1(const Table1Params& params);

} // namespace deco

#endif
