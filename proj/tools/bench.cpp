// Timing comparison of the serial and OpenMP code paths for the qubit-number
// sweep and the Monte Carlo validator.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "deco/config.hpp"
#include "deco/scaling.hpp"
#include "deco/threads.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

} // namespace

int main() {
    const deco::ScenarioConfig config;
    const deco::EstimationTask task = deco::task_from_config(config);
    const std::vector<int> grid = deco::default_l_grid(1.0, 1e4, 60);

    std::printf("threads available: %d\n", deco::max_threads());

    auto start = std::chrono::steady_clock::now();
    const deco::ScalingCurve serial = deco::sweep_serial(task, grid);
    const double t_serial = seconds_since(start);

    start = std::chrono::steady_clock::now();
    const deco::ScalingCurve parallel = deco::sweep(task, grid);
    const double t_parallel = seconds_since(start);

    double max_dev = 0.0;
    for (std::size_t i = 0; i < serial.points.size(); ++i)
        max_dev = std::max(max_dev, std::abs(serial.points[i].delta_min -
                                             parallel.points[i].delta_min));
    std::printf("sweep (%zu L values): serial %.3fs, parallel %.3fs, speedup %.2fx, "
                "max |delta| deviation %.3g\n",
                grid.size(), t_serial, t_parallel, t_serial / t_parallel, max_dev);

    const double t_probe = deco::optimize_time(task).t_opt;
    deco::EstimationTask mc_task = task;
    mc_task.total_time_T = 1e4 * t_probe;
    constexpr std::size_t kTrials = 20000;

    setenv("DECO_METRIX_THREADS", "1", 1);
    start = std::chrono::steady_clock::now();
    const deco::McResult mc1 = deco::mc_validate(mc_task, t_probe, kTrials, 1);
    const double t_mc1 = seconds_since(start);

    unsetenv("DECO_METRIX_THREADS");
    start = std::chrono::steady_clock::now();
    const deco::McResult mcN = deco::mc_validate(mc_task, t_probe, kTrials, 1);
    const double t_mcN = seconds_since(start);

    std::printf("mc (%zu trials, N = %zu): 1 thread %.3fs, %d threads %.3fs, "
                "speedup %.2fx, rmse deviation %.3g\n",
                kTrials, mc1.repetitions, t_mc1, deco::max_threads(), t_mcN,
                t_mc1 / t_mcN, std::abs(mc1.rmse - mcN.rmse));
    return 0;
}
