#include "deco/estimation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "deco/threads.hpp"

namespace deco {

namespace {

double spectral_scale(const SpectralLimit& s) {
    switch (s.kind()) {
        case SpectralKind::Lorentzian: return s.markov_rate();
        case SpectralKind::WhiteNoise: return s.markov_rate();
        case SpectralKind::StaticNoise: return std::sqrt(s.amplitude());
    }
    return 0.0;
}

// splitmix64, used to derive independent per-trial seeds.
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

EstimationTask make_task(Target target, double total_time_T, const ProbeConfig& probe,
                         const NoiseEnvironment& env, double true_value) {
    if (!(total_time_T > 0.0))
        throw std::invalid_argument("EstimationTask: total time must be > 0");
    if (target != Target::QubitFrequency && true_value < 0.0)
        throw std::invalid_argument("EstimationTask: rate targets need true_value >= 0");
    return EstimationTask{target, total_time_T, probe, env, true_value};
}

double single_shot_uncertainty(const EstimationTask& task, double t) {
    if (!(t > 0.0)) throw std::domain_error("uncertainty: t must be > 0");
    const ProbeConfig& probe = task.probe;
    const double L = probe.num_qubits;
    const bool ghz = probe.state_family == StateFamily::GHZ;
    const double scale = ghz ? L : 1.0;

    const double exponent = scale * scale * task.env.collective.exponent(t) +
                            scale * task.env.local.exponent(t);
    const double chi = scale * probe.qubit_frequency_omega * t - probe.readout_phase_phi;
    const double c = std::cos(chi), s = std::sin(chi);
    // P(1-P) = (1 - m^2 cos^2 chi)/4, split to stay accurate for small exponents.
    const double variance = 0.25 * (s * s + c * c * (-std::expm1(-2.0 * exponent)));

    const double dp = probability_derivative(probe, task.env, t, task.target);
    if (dp == 0.0) return std::numeric_limits<double>::infinity();

    double delta = std::sqrt(variance) / std::abs(dp);
    if (!ghz) delta /= std::sqrt(L); // central-limit gain of L parallel qubits
    return delta;
}

double uncertainty(const EstimationTask& task, double t) {
    if (!(t > 0.0 && t <= task.total_time_T))
        throw std::domain_error("uncertainty: t must lie in (0, T]");
    return single_shot_uncertainty(task, t) * std::sqrt(t / task.total_time_T);
}

double uncertainty_at_policy(const EstimationTask& task, const TimeScalingPolicy& policy) {
    if (!(policy.t0 > 0.0))
        throw std::invalid_argument("TimeScalingPolicy: t0 must be > 0");
    const double t = policy.t0 / std::pow(static_cast<double>(task.probe.num_qubits),
                                          policy.exponent_s);
    return uncertainty(task, t);
}

double reference_rate(const EstimationTask& task) {
    // GHZ probes decohere at L^2 (collective) and L (local) times the
    // single-qubit rates; fold that in so the default bracket always contains
    // the optimum.
    const double scale =
        task.probe.state_family == StateFamily::GHZ ? task.probe.num_qubits : 1.0;
    double ref = task.true_value;
    ref = std::max(ref, scale * scale * spectral_scale(task.env.collective));
    ref = std::max(ref, scale * spectral_scale(task.env.local));
    ref = std::max(ref, 1.0 / task.total_time_T);
    return ref;
}

OptimalPoint optimize_time(const EstimationTask& task, double t_lo, double t_hi) {
    if (!(t_lo > 0.0 && t_lo < t_hi && t_hi <= task.total_time_T))
        throw std::invalid_argument("optimize_time: need 0 < t_lo < t_hi <= T");

    auto objective = [&](double t) { return single_shot_uncertainty(task, t); };

    // Coarse log-spaced scan.
    constexpr int kGridPoints = 256;
    const double llo = std::log(t_lo), lhi = std::log(t_hi);
    int best = -1;
    double best_val = std::numeric_limits<double>::infinity();
    std::array<double, kGridPoints> ts{};
    for (int i = 0; i < kGridPoints; ++i) {
        ts[i] = std::exp(llo + (lhi - llo) * i / (kGridPoints - 1));
        const double v = objective(ts[i]);
        if (std::isfinite(v) && v < best_val) {
            best_val = v;
            best = i;
        }
    }
    if (best < 0)
        throw std::runtime_error(
            "optimize_time: no finite minimum in bounds (flat or degenerate objective)");
    if (best_val == 0.0)
        throw std::runtime_error(
            "optimize_time: zero uncertainty (noiseless scenario is degenerate)");

    // Golden-section refinement on the bracketing interval.
    double a = ts[std::max(best - 1, 0)];
    double b = ts[std::min(best + 1, kGridPoints - 1)];
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = objective(x1), f2 = objective(x2);
    while (b - a > 1e-6 * b) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = objective(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = objective(x2);
        }
    }
    const double t_opt = 0.5 * (a + b);

    OptimalPoint out;
    out.t_opt = t_opt;
    out.delta_min = uncertainty(task, t_opt);
    out.repetitions = task.total_time_T / t_opt;
    return out;
}

OptimalPoint optimize_time(const EstimationTask& task) {
    const double hi = task.total_time_T;
    double lo = 1e-8 / reference_rate(task);
    lo = std::min(lo, hi * 1e-3);
    return optimize_time(task, lo, hi);
}

namespace {

// Inverts the measured frequency p_hat back to the target parameter.
// Rate targets assume the phi = 0, omega = 0 operating point.
double invert_estimate(const EstimationTask& task, double t, double p_hat,
                       long n_draws, bool& clipped) {
    const ProbeConfig& probe = task.probe;
    const bool ghz = probe.state_family == StateFamily::GHZ;
    const double scale = ghz ? probe.num_qubits : 1.0;

    if (task.target == Target::QubitFrequency) {
        const double exponent = scale * scale * task.env.collective.exponent(t) +
                                scale * task.env.local.exponent(t);
        const double m = std::exp(-exponent);
        double y = (2.0 * p_hat - 1.0) / m;
        if (y > 1.0 || y < -1.0) {
            clipped = true;
            y = std::clamp(y, -1.0, 1.0);
        }
        return std::asin(y) / (scale * t);
    }

    if (p_hat <= 0.5) {
        clipped = true;
        p_hat = 0.5 + 0.5 / static_cast<double>(n_draws);
    }
    const double exponent_hat = -std::log(2.0 * p_hat - 1.0);
    const double collective_hat = exponent_hat - scale * task.env.local.exponent(t);
    if (task.target == Target::MarkovCollectiveRate) {
        const double dphi =
            detail::collective_exponent_param_derivative(task.env.collective,
                                                         task.target, t);
        return collective_hat / (scale * scale * dphi);
    }
    // Gamma_NMC: collective exponent = scale^2 theta^2 t^2.
    return std::sqrt(std::max(collective_hat, 0.0)) / (scale * t);
}

} // namespace

McResult mc_validate(const EstimationTask& task, double t, std::size_t trials,
                     std::uint64_t seed) {
    if (!(t > 0.0 && t <= task.total_time_T))
        throw std::domain_error("mc_validate: t must lie in (0, T]");
    const auto repetitions = static_cast<long>(task.total_time_T / t);
    if (repetitions < 100)
        throw std::invalid_argument("mc_validate: need floor(T/t) >= 100 repetitions");
    if (trials == 0) throw std::invalid_argument("mc_validate: need trials >= 1");
    if (task.target != Target::QubitFrequency) {
        if (task.probe.readout_phase_phi != 0.0 || task.probe.qubit_frequency_omega != 0.0)
            throw std::invalid_argument(
                "mc_validate: rate inversion requires phi = 0 and omega = 0");
    }

    const bool ghz = task.probe.state_family == StateFamily::GHZ;
    const long draws_per_trial =
        ghz ? repetitions : repetitions * task.probe.num_qubits;
    const double p = survival_probability(task.probe, task.env, t);

    double sse = 0.0;
    long clipped = 0;
    const auto n = static_cast<long>(trials);
#pragma omp parallel for schedule(static) num_threads(max_threads()) \
    reduction(+ : sse, clipped)
    for (long trial = 0; trial < n; ++trial) {
        std::mt19937_64 rng(mix64(seed ^ (0x5851f42d4c957f2dULL * (trial + 1))));
        std::binomial_distribution<long> binom(draws_per_trial, p);
        const double p_hat =
            static_cast<double>(binom(rng)) / static_cast<double>(draws_per_trial);
        bool was_clipped = false;
        const double estimate = invert_estimate(task, t, p_hat, draws_per_trial, was_clipped);
        const double err = estimate - task.true_value;
        sse += err * err;
        if (was_clipped) ++clipped;
    }

    McResult out;
    out.rmse = std::sqrt(sse / static_cast<double>(trials));
    out.delta_formula = uncertainty(task, t);
    out.repetitions = static_cast<std::size_t>(repetitions);
    out.trials = trials;
    out.clipped = static_cast<std::size_t>(clipped);
    return out;
}

} // namespace deco
