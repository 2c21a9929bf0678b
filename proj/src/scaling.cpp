#include "deco/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "deco/threads.hpp"

namespace deco {

std::vector<int> default_l_grid(double l_min, double l_max, int points) {
    if (!(l_min >= 1.0 && l_max > l_min && points >= 2))
        throw std::invalid_argument("default_l_grid: need 1 <= l_min < l_max, points >= 2");
    std::vector<int> out;
    out.reserve(points);
    const double llo = std::log(l_min), lhi = std::log(l_max);
    for (int i = 0; i < points; ++i) {
        const double l = std::exp(llo + (lhi - llo) * i / (points - 1));
        const int li = static_cast<int>(std::lround(l));
        if (out.empty() || li > out.back()) out.push_back(li);
    }
    return out;
}

namespace {

SweepPoint sweep_point(const EstimationTask& task_template, int num_qubits) {
    if (num_qubits < 1)
        throw std::invalid_argument("sweep: qubit numbers must be >= 1");
    EstimationTask task = task_template;
    task.probe.num_qubits = num_qubits;
    try {
        const OptimalPoint opt = optimize_time(task);
        return SweepPoint{num_qubits, opt.t_opt, opt.delta_min};
    } catch (const std::exception& e) {
        throw std::runtime_error("sweep: optimizer failed at L = " +
                                 std::to_string(num_qubits) + ": " + e.what());
    }
}

} // namespace

ScalingCurve sweep_serial(const EstimationTask& task_template,
                          const std::vector<int>& l_values) {
    ScalingCurve curve;
    curve.scenario = task_template;
    curve.points.reserve(l_values.size());
    for (int l : l_values) curve.points.push_back(sweep_point(task_template, l));
    return curve;
}

ScalingCurve sweep(const EstimationTask& task_template, const std::vector<int>& l_values) {
    ScalingCurve curve;
    curve.scenario = task_template;
    curve.points.resize(l_values.size());
    const auto n = static_cast<long>(l_values.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) num_threads(max_threads())
    for (long i = 0; i < n; ++i) {
        try {
            curve.points[i] = sweep_point(task_template, l_values[i]);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return curve;
}

ExponentFit fit_exponent(const ScalingCurve& curve, double l_min, double l_max) {
    std::vector<double> xs, ys;
    for (const SweepPoint& p : curve.points) {
        if (p.num_qubits >= l_min && p.num_qubits <= l_max) {
            xs.push_back(std::log(static_cast<double>(p.num_qubits)));
            ys.push_back(std::log(p.delta_min));
        }
    }
    const int n = static_cast<int>(xs.size());
    if (n < 4)
        throw std::invalid_argument("fit_exponent: window must contain >= 4 points");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    ExponentFit fit;
    fit.l_min = l_min;
    fit.l_max = l_max;
    fit.points_used = n;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0;
    for (int i = 0; i < n; ++i) {
        const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

std::vector<double> local_slopes(const ScalingCurve& curve, int window) {
    const int n = static_cast<int>(curve.points.size());
    if (window < 2 || n < window)
        throw std::invalid_argument("local_slopes: curve shorter than the window");
    std::vector<double> slopes;
    slopes.reserve(n - window + 1);
    for (int i = 0; i + window <= n; ++i) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int j = i; j < i + window; ++j) {
            const double x = std::log(static_cast<double>(curve.points[j].num_qubits));
            const double y = std::log(curve.points[j].delta_min);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        slopes.push_back((window * sxy - sx * sy) / (window * sxx - sx * sx));
    }
    return slopes;
}

double detect_transition(const ScalingCurve& curve) {
    constexpr int kWindow = 5;
    constexpr double kThreshold = -0.75; // midpoint of the -1 and -0.5 slopes
    const std::vector<double> slopes = local_slopes(curve, kWindow);
    auto center_l = [&](int i) {
        return static_cast<double>(curve.points[i + kWindow / 2].num_qubits);
    };

    bool below = false;
    for (std::size_t i = 0; i < slopes.size(); ++i) {
        if (slopes[i] <= kThreshold) below = true;
        if (below && i > 0 && slopes[i - 1] <= kThreshold && slopes[i] > kThreshold) {
            // Interpolate in (ln L, slope) between the two window centers.
            const double l0 = std::log(center_l(static_cast<int>(i) - 1));
            const double l1 = std::log(center_l(static_cast<int>(i)));
            const double f =
                (kThreshold - slopes[i - 1]) / (slopes[i] - slopes[i - 1]);
            return std::exp(l0 + f * (l1 - l0));
        }
    }
    throw std::runtime_error(
        "detect_transition: local slope never crosses -0.75 (curve spans one regime)");
}

Table1Result table1(const Table1Params& params) {
    const std::vector<int> grid =
        params.l_grid.empty() ? default_l_grid() : params.l_grid;

    const double gamma_nmc =
        std::sqrt(params.markov_collective_rate / (2.0 * params.tau_c));
    const double local_amplitude = params.markov_local_rate / (2.0 * params.local_tau_c);

    const SpectralLimit fields_markov =
        SpectralLimit::white_noise(params.markov_collective_rate);
    const SpectralLimit fields_nonmarkov =
        SpectralLimit::static_noise(gamma_nmc * gamma_nmc);
    const SpectralLimit env_markov = SpectralLimit::white_noise(params.markov_local_rate);
    const SpectralLimit env_nonmarkov = SpectralLimit::static_noise(local_amplitude);

    Table1Result result;
    const std::array<std::pair<SpectralLimit, SpectralLimit>, 4> combos = {{
        {fields_markov, env_markov},
        {fields_markov, env_nonmarkov},
        {fields_nonmarkov, env_markov},
        {fields_nonmarkov, env_nonmarkov},
    }};
    for (std::size_t i = 0; i < combos.size(); ++i) {
        const bool markov_fields = i < 2;
        EstimationTask task;
        task.target = markov_fields ? Target::MarkovCollectiveRate
                                    : Target::NonMarkovCollectiveRate;
        task.total_time_T = params.total_time_T;
        task.probe = make_probe(1, StateFamily::GHZ);
        task.env = NoiseEnvironment{combos[i].first, combos[i].second};
        task.true_value = markov_fields ? params.markov_collective_rate : gamma_nmc;
        result.curves[i] = sweep(task, grid);
        result.fits[i] =
            fit_exponent(result.curves[i], params.window_l_min, params.window_l_max);
    }
    return result;
}

} // namespace deco
