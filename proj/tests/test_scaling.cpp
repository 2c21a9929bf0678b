#include <doctest.h>

#include <cmath>

#include "deco/scaling.hpp"

using namespace deco;

namespace {

EstimationTask fig1_task() {
    EstimationTask task;
    task.target = Target::MarkovCollectiveRate;
    task.total_time_T = 1.0;
    task.probe = make_probe(1, StateFamily::GHZ);
    task.env = NoiseEnvironment{
        SpectralLimit::lorentzian(from_markov_rate(1.0, 1e-3)),
        SpectralLimit::white_noise(0.2)};
    task.true_value = 1.0;
    return task;
}

// Synthetic pure power law delta = c * L^slope.
ScalingCurve power_law(double c, double slope, const std::vector<int>& ls) {
    ScalingCurve curve;
    for (int l : ls)
        curve.points.push_back(
            {l, 1.0, c * std::pow(static_cast<double>(l), slope)});
    return curve;
}

} // namespace

TEST_CASE("default qubit grid is integer, sorted, and spans the range") {
    const std::vector<int> grid = default_l_grid();
    CHECK(grid.front() == 1);
    CHECK(grid.back() == 10000);
    for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
    CHECK(grid.size() >= 30);
    CHECK(grid.size() <= 40);
    CHECK_THROWS_AS(default_l_grid(0.5, 10.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(default_l_grid(1.0, 10.0, 1), std::invalid_argument);
}

TEST_CASE("parallel sweep equals the serial reference bit for bit") {
    const EstimationTask task = fig1_task();
    const std::vector<int> grid = default_l_grid(1.0, 300.0, 12);
    const ScalingCurve par = sweep(task, grid);
    const ScalingCurve ser = sweep_serial(task, grid);
    REQUIRE(par.points.size() == ser.points.size());
    for (std::size_t i = 0; i < par.points.size(); ++i) {
        CHECK(par.points[i].num_qubits == ser.points[i].num_qubits);
        CHECK(par.points[i].t_opt == ser.points[i].t_opt);
        CHECK(par.points[i].delta_min == ser.points[i].delta_min);
    }
}

TEST_CASE("uncertainty decreases monotonically with qubit number") {
    const ScalingCurve curve = sweep(fig1_task(), default_l_grid(1.0, 1e4, 25));
    for (std::size_t i = 1; i < curve.points.size(); ++i)
        CHECK(curve.points[i].delta_min < curve.points[i - 1].delta_min);
}

TEST_CASE("exponent fit recovers a synthetic power law exactly") {
    const std::vector<int> ls = {10, 20, 40, 80, 160, 320};
    const ScalingCurve curve = power_law(3.7, -0.62, ls);
    const ExponentFit fit = fit_exponent(curve, 10, 320);
    CHECK(fit.slope == doctest::Approx(-0.62).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(std::log(3.7)).epsilon(1e-12));
    CHECK(fit.residual <= 1e-12);
    CHECK(fit.points_used == 6);
    CHECK_THROWS_AS(fit_exponent(curve, 100, 110), std::invalid_argument);
}

TEST_CASE("local slopes of a power law are flat") {
    const ScalingCurve curve =
        power_law(1.0, -0.5, {1, 2, 4, 8, 16, 32, 64, 128});
    for (double s : local_slopes(curve))
        CHECK(s == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK_THROWS_AS(local_slopes(power_law(1.0, -0.5, {1, 2})), std::invalid_argument);
}

TEST_CASE("transition detection finds a synthetic slope change") {
    // Piecewise power law: slope -1 up to L = 50, slope -0.5 beyond.
    std::vector<int> ls;
    for (double l = 1.0; l <= 4000.0; l *= 1.35) ls.push_back(static_cast<int>(l));
    ScalingCurve curve;
    for (int l : ls) {
        const double d = l <= 50 ? 1.0 / l : (1.0 / 50.0) * std::sqrt(50.0 / l);
        curve.points.push_back({l, 1.0, d});
    }
    const double lstar = detect_transition(curve);
    CHECK(lstar > 10.0);
    CHECK(lstar < 250.0);

    CHECK_THROWS_AS(detect_transition(power_law(1.0, -0.5, {1, 2, 4, 8, 16, 32})),
                    std::runtime_error);
}

TEST_CASE("entangled probes never do worse than separable ones") {
    EstimationTask ghz = fig1_task();
    EstimationTask sep = fig1_task();
    sep.probe.state_family = StateFamily::Product;
    const std::vector<int> grid = default_l_grid(1.0, 1e4, 15);
    const ScalingCurve cg = sweep(ghz, grid);
    const ScalingCurve cs = sweep(sep, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CAPTURE(grid[i]);
        CHECK(cg.points[i].delta_min <= cs.points[i].delta_min * (1.0 + 1e-9));
    }
}

TEST_CASE("table1 scenario grid produces the four limit scalings") {
    Table1Params params;
    params.l_grid = default_l_grid(1.0, 1e4, 20);
    const Table1Result result = table1(params);
    CHECK(result.fits[0].slope == doctest::Approx(-1.0).epsilon(0.02));
    CHECK(result.fits[1].slope == doctest::Approx(-1.0).epsilon(0.02));
    CHECK(result.fits[2].slope == doctest::Approx(-0.5).epsilon(0.02));
    CHECK(result.fits[3].slope == doctest::Approx(-0.5).epsilon(0.02));
    for (const ScalingCurve& curve : result.curves)
        CHECK(curve.points.size() == params.l_grid.size());
}
