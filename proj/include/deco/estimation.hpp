#ifndef DECO_ESTIMATION_HPP
#define DECO_ESTIMATION_HPP

#include <cstdint>

#include "deco/probe.hpp"

namespace deco {

struct EstimationTask {
    Target target = Target::MarkovCollectiveRate;
    double total_time_T = 1.0; // s
    ProbeConfig probe;
    NoiseEnvironment env;
    double true_value = 0.0; // assumed true parameter value (Hz)
};

EstimationTask make_task(Target target, double total_time_T, const ProbeConfig& probe,
                         const NoiseEnvironment& env, double true_value);

struct OptimalPoint {
    double t_opt = 0.0;       // s
    double delta_min = 0.0;   // uncertainty at t_opt with N = T / t_opt
    double repetitions = 0.0; // T / t_opt, continuous
};

struct TimeScalingPolicy {
    double t0 = 1.0;        // s
    double exponent_s = 0.0;
};

// Error-propagation uncertainty with N = T/t repetitions:
//   delta = sqrt(P(1-P)) / |dP/dtheta| * sqrt(t/T).
// Product probes get the additional 1/sqrt(L) central-limit factor.
// A vanishing derivative yields +infinity, not an exception.
double uncertainty(const EstimationTask& task, double t);

// Single-repetition uncertainty sqrt(P(1-P)) / |dP/dtheta| (no time budget).
// This is the quantity the interrogation-time optimizer minimizes.
double single_shot_uncertainty(const EstimationTask& task, double t);

// Evaluates uncertainty at t = t0 / L^s.
double uncertainty_at_policy(const EstimationTask& task, const TimeScalingPolicy& policy);

// Minimizes the single-shot uncertainty over [t_lo, t_hi] by a coarse
// log-spaced scan (>= 200 points) plus golden-section refinement, then reports
// the budgeted uncertainty and repetition count at the optimum.
OptimalPoint optimize_time(const EstimationTask& task, double t_lo, double t_hi);

// Default bounds [1e-8 / rate_ref, T].
OptimalPoint optimize_time(const EstimationTask& task);

// Characteristic rate used for default optimizer bounds.
double reference_rate(const EstimationTask& task);

struct McResult {
    double rmse = 0.0;          // empirical RMSE of the inverted estimator
    double delta_formula = 0.0; // error-propagation prediction at (task, t)
    std::size_t repetitions = 0;
    std::size_t trials = 0;
    std::size_t clipped = 0;    // trials clipped at the invertibility boundary
};

// Simulates the protocol: per trial draws N = floor(T/t) Bernoulli(P)
// outcomes, inverts the monotone map P(theta), and accumulates the RMSE
// against the true value. Deterministic for a fixed seed.
McResult mc_validate(const EstimationTask& task, double t, std::size_t trials,
                     std::uint64_t seed);

} // namespace deco

#endif
