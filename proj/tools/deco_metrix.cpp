// deco-metrix: command-line front end for the dephasing-metrology engine.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "deco/config.hpp"
#include "deco/io.hpp"
#include "deco/master_oracle.hpp"
#include "deco/threads.hpp"

using nlohmann::json;

namespace {

struct GlobalOptions {
    std::string config_path;
    std::string out_dir = ".";
    std::string format = "csv";
    std::optional<std::uint64_t> seed;
    std::vector<std::string> extras;
};

deco::ScenarioConfig resolve_config(const GlobalOptions& opt) {
    deco::ScenarioConfig config;
    if (!opt.config_path.empty()) config = deco::load_config(opt.config_path);
    // Remaining `--section.key value` tokens override config fields.
    for (std::size_t i = 0; i < opt.extras.size(); ++i) {
        const std::string& tok = opt.extras[i];
        if (tok.rfind("--", 0) != 0 || i + 1 >= opt.extras.size())
            throw std::invalid_argument("unrecognized argument '" + tok +
                                        "' (expected --section.key value)");
        deco::apply_override(config, tok.substr(2), opt.extras[++i]);
    }
    if (opt.seed) config.seed = *opt.seed;
    deco::validate(config);
    return config;
}

std::string out_path(const GlobalOptions& opt, const std::string& name) {
    return opt.out_dir + "/" + name;
}

int cmd_rates(const GlobalOptions& opt) {
    const deco::ScenarioConfig config = resolve_config(opt);
    const deco::NoiseEnvironment env = deco::environment_from_config(config);

    deco::CsvTable table;
    table.header = {"t", "gamma_collective", "gamma_local", "phi_collective",
                    "phi_local"};
    const int n = config.rates_t_points;
    const double llo = std::log(config.rates_t_min_s);
    const double lhi = std::log(config.rates_t_max_s);
    for (int i = 0; i < n; ++i) {
        const double t = n == 1 ? config.rates_t_min_s
                                : std::exp(llo + (lhi - llo) * i / (n - 1));
        table.rows.push_back({t, env.collective.rate(t), env.local.rate(t),
                              env.collective.exponent(t), env.local.exponent(t)});
    }
    const std::string path = out_path(opt, "rates.csv");
    deco::write_file_atomic(path, deco::to_csv(table));
    std::cout << path << "\n";
    return 0;
}

int cmd_optimize(const GlobalOptions& opt) {
    const deco::ScenarioConfig config = resolve_config(opt);
    const deco::EstimationTask task = deco::task_from_config(config);
    deco::OptimalPoint point;
    try {
        point = (config.optimize_t_lo_s > 0.0 && config.optimize_t_hi_s > 0.0)
                    ? deco::optimize_time(task, config.optimize_t_lo_s,
                                          config.optimize_t_hi_s)
                    : deco::optimize_time(task);
    } catch (const std::runtime_error& e) {
        std::cout << json{{"error", e.what()}}.dump() << "\n";
        return 2;
    }
    const json out = {{"t_opt_s", point.t_opt},
                      {"delta_min", point.delta_min},
                      {"repetitions", point.repetitions}};
    std::cout << out.dump() << "\n";
    if (opt.out_dir != ".")
        deco::write_file_atomic(out_path(opt, "optimize.json"), out.dump() + "\n");
    return 0;
}

int cmd_sweep(const GlobalOptions& opt) {
    const deco::ScenarioConfig config = resolve_config(opt);
    const deco::EstimationTask task = deco::task_from_config(config);
    const deco::ScalingCurve curve =
        deco::sweep(task, deco::l_grid_from_config(config));

    if (opt.format == "json") {
        json points = json::array();
        for (const auto& p : curve.points)
            points.push_back({{"L", p.num_qubits},
                              {"t_opt", p.t_opt},
                              {"delta_min", p.delta_min}});
        const std::string path = out_path(opt, "sweep.json");
        deco::write_file_atomic(path, json{{"points", points}}.dump(2) + "\n");
        std::cout << path << "\n";
        return 0;
    }
    deco::CsvTable table;
    table.header = {"L", "t_opt", "delta_min"};
    for (const auto& p : curve.points)
        table.rows.push_back({static_cast<double>(p.num_qubits), p.t_opt, p.delta_min});
    const std::string path = out_path(opt, "sweep.csv");
    deco::write_file_atomic(path, deco::to_csv(table));
    std::cout << path << "\n";
    return 0;
}

int cmd_mc(const GlobalOptions& opt) {
    const deco::ScenarioConfig config = resolve_config(opt);
    deco::EstimationTask task = deco::task_from_config(config);

    const double scale = task.probe.state_family == deco::StateFamily::GHZ
                             ? task.probe.num_qubits
                             : 1.0;
    const double noise_scale = scale * scale * task.env.collective.exponent(1.0) +
                               scale * task.env.local.exponent(1.0);
    if (noise_scale <= 0.0)
        throw std::invalid_argument(
            "mc: zero-noise scenario is degenerate (P stays 1, nothing to invert)");

    double t = config.mc_t_s;
    if (t <= 0.0) t = deco::optimize_time(task).t_opt;
    task.total_time_T = config.mc_total_time_s > 0.0 ? config.mc_total_time_s : 1e4 * t;

    const deco::McResult res = deco::mc_validate(task, t, config.mc_trials, config.seed);
    const json out = {{"N", res.repetitions},
                      {"trials", res.trials},
                      {"rmse", res.rmse},
                      {"delta_formula", res.delta_formula},
                      {"ratio", res.rmse / res.delta_formula},
                      {"clipped", res.clipped},
                      {"t_s", t},
                      {"seed", config.seed}};
    std::cout << out.dump() << "\n";
    if (opt.out_dir != ".")
        deco::write_file_atomic(out_path(opt, "mc.json"), out.dump() + "\n");
    return 0;
}

const char* kFig1PlotScript =
    "# gnuplot script; expects fig1.csv next to it\n"
    "set datafile separator ','\n"
    "set logscale xy\n"
    "set xlabel 'number of probe qubits L'\n"
    "set ylabel 'uncertainty of the collective dephasing rate (Hz)'\n"
    "set key left bottom\n"
    "set terminal pngcairo size 900,640\n"
    "set output 'fig1.png'\n"
    "plot 'fig1.csv' using 1:3 skip 1 with points pt 7 title 'GHZ probe', \\\n"
    "     'fig1.csv' using 1:4 skip 1 with points pt 6 title 'separable probe', \\\n"
    "     'fig1.csv' using 1:5 skip 1 with lines lc 'red' title 'HL guide ~ 1/L', \\\n"
    "     'fig1.csv' using 1:6 skip 1 with lines lc 'green' title 'SQL guide ~ 1/sqrt(L)'\n";

int cmd_reproduce(const GlobalOptions& opt, const std::string& what) {
    const deco::ScenarioConfig config = resolve_config(opt);

    if (what == "fig1") {
        deco::EstimationTask ghz_task = deco::task_from_config(config);
        ghz_task.probe.state_family = deco::StateFamily::GHZ;
        deco::EstimationTask sep_task = ghz_task;
        sep_task.probe.state_family = deco::StateFamily::Product;

        const std::vector<int> grid = deco::l_grid_from_config(config);
        const deco::ScalingCurve ghz = deco::sweep(ghz_task, grid);
        const deco::ScalingCurve sep = deco::sweep(sep_task, grid);

        deco::CsvTable table;
        table.header = {"L", "t_opt", "delta_ghz", "delta_separable", "hl_guide",
                        "sql_guide"};
        const double l0 = ghz.points.front().num_qubits;
        const double d0 = ghz.points.front().delta_min;
        for (std::size_t i = 0; i < ghz.points.size(); ++i) {
            const double l = ghz.points[i].num_qubits;
            table.rows.push_back({l, ghz.points[i].t_opt, ghz.points[i].delta_min,
                                  sep.points[i].delta_min, d0 * (l0 / l),
                                  d0 * std::sqrt(l0 / l)});
        }
        deco::write_file_atomic(out_path(opt, "fig1.csv"), deco::to_csv(table));
        deco::write_file_atomic(out_path(opt, "fig1.gp"), kFig1PlotScript);
        std::cout << out_path(opt, "fig1.csv") << "\n"
                  << out_path(opt, "fig1.gp") << "\n";
        return 0;
    }

    if (what == "table1") {
        deco::Table1Params params;
        params.markov_collective_rate = config.collective_markov_rate_hz;
        params.tau_c = config.collective_tau_c_s;
        params.markov_local_rate = config.local_markov_rate_hz;
        params.local_tau_c = config.local_tau_c_s;
        params.total_time_T = config.task_total_time_s;
        const deco::Table1Result result = deco::table1(params);

        static const char* names[4] = {
            "markov_fields_markov_env", "markov_fields_nonmarkov_env",
            "nonmarkov_fields_markov_env", "nonmarkov_fields_nonmarkov_env"};
        std::ostringstream csv;
        csv << "scenario,slope,intercept,residual,l_min,l_max,points\n";
        for (int i = 0; i < 4; ++i) {
            const deco::ExponentFit& f = result.fits[i];
            csv << names[i] << ',' << deco::format_number(f.slope) << ','
                << deco::format_number(f.intercept) << ','
                << deco::format_number(f.residual) << ','
                << deco::format_number(f.l_min) << ',' << deco::format_number(f.l_max)
                << ',' << f.points_used << "\n";
            std::cout << names[i] << ": slope " << deco::format_number(f.slope)
                      << " (residual " << deco::format_number(f.residual) << ")\n";
        }
        deco::write_file_atomic(out_path(opt, "table1.csv"), csv.str());
        return 0;
    }

    if (what == "priorwork") {
        deco::EstimationTask task = deco::task_from_config(config);
        task.target = deco::Target::QubitFrequency;
        task.true_value = 0.0;
        task.probe.state_family = deco::StateFamily::GHZ;
        task.probe.qubit_frequency_omega = 0.0;
        task.probe.readout_phase_phi = std::numbers::pi / 2;
        task.env.collective = deco::SpectralLimit::white_noise(0.0);

        deco::EstimationTask markov_env = task;
        markov_env.env.local = deco::SpectralLimit::white_noise(config.local_markov_rate_hz);
        deco::EstimationTask nonmarkov_env = task;
        nonmarkov_env.env.local = deco::SpectralLimit::static_noise(
            config.local_markov_rate_hz / (2.0 * config.local_tau_c_s));

        const std::vector<int> grid = deco::l_grid_from_config(config);
        const deco::ScalingCurve cm = deco::sweep(markov_env, grid);
        const deco::ScalingCurve cn = deco::sweep(nonmarkov_env, grid);
        const deco::ExponentFit fm = deco::fit_exponent(cm, 1e3, 1e4);
        const deco::ExponentFit fn = deco::fit_exponent(cn, 1e3, 1e4);

        deco::CsvTable table;
        table.header = {"L", "delta_omega_markov_env", "delta_omega_nonmarkov_env"};
        for (std::size_t i = 0; i < cm.points.size(); ++i)
            table.rows.push_back({static_cast<double>(cm.points[i].num_qubits),
                                  cm.points[i].delta_min, cn.points[i].delta_min});
        deco::write_file_atomic(out_path(opt, "priorwork.csv"), deco::to_csv(table));

        const json out = {
            {"markov_env", {{"slope", fm.slope}, {"residual", fm.residual}}},
            {"nonmarkov_env", {{"slope", fn.slope}, {"residual", fn.residual}}}};
        deco::write_file_atomic(out_path(opt, "priorwork_fits.json"), out.dump(2) + "\n");
        std::cout << out.dump() << "\n";
        return 0;
    }

    throw std::invalid_argument("reproduce: unknown artifact '" + what +
                                "' (expected fig1|table1|priorwork)");
}

int cmd_oracle_check(const GlobalOptions& opt) {
    const deco::ScenarioConfig config = resolve_config(opt);
    const deco::NoiseEnvironment env = deco::environment_from_config(config);
    const double rate = config.collective_markov_rate_hz > 0.0
                            ? config.collective_markov_rate_hz
                            : 1.0;
    double worst = 0.0;
    for (int l : {1, 2, 3}) {
        const deco::ProbeConfig probe = deco::make_probe(l, deco::StateFamily::GHZ);
        const double t_max = 5.0 / (l * l * rate);
        for (int i = 1; i <= 16; ++i) {
            const double t = t_max * i / 16.0;
            const double analytic = deco::survival_probability(probe, env, t);
            const double numeric = deco::oracle_probability(probe, env, t, 1e-11);
            worst = std::max(worst, std::abs(numeric - analytic) / analytic);
        }
    }
    const bool pass = worst <= 1e-6;
    std::cout << json{{"max_relative_error", worst}, {"pass", pass}}.dump() << "\n";
    return pass ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"entangled-sensor dephasing metrology engine"};
    app.require_subcommand(1);
    app.allow_extras();

    GlobalOptions opt;
    app.add_option("--config", opt.config_path, "scenario config file");
    app.add_option("--out", opt.out_dir, "output directory");
    app.add_option("--format", opt.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    std::uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "random seed");
    double l_min = 0, l_max = 0;
    int l_points = 0;
    auto* lmin_opt = app.add_option("--l-min", l_min, "smallest qubit number");
    auto* lmax_opt = app.add_option("--l-max", l_max, "largest qubit number");
    auto* lpts_opt = app.add_option("--l-points", l_points, "sweep grid size");

    auto* rates = app.add_subcommand("rates", "tabulate dephasing rates and exponents");
    auto* optimize = app.add_subcommand("optimize", "optimal interrogation time");
    auto* sweepc = app.add_subcommand("sweep", "uncertainty versus qubit number");
    auto* mc = app.add_subcommand("mc", "Monte Carlo validation of the protocol");
    auto* reproduce = app.add_subcommand("reproduce", "regenerate figure/table artifacts");
    std::string artifact;
    reproduce->add_option("artifact", artifact, "fig1|table1|priorwork")->required();
    auto* oracle = app.add_subcommand("oracle-check",
                                      "master-equation versus analytic dynamics");
    for (auto* sub : {rates, optimize, sweepc, mc, reproduce, oracle}) {
        sub->allow_extras();
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
        opt.extras = app.remaining();
        for (auto* sub : {rates, optimize, sweepc, mc, reproduce, oracle})
            if (sub->parsed())
                for (const auto& e : sub->remaining()) opt.extras.push_back(e);
        if (*seed_opt) opt.seed = seed_value;
        if (*lmin_opt) opt.extras.insert(opt.extras.end(),
                                         {"--sweep.l_min", std::to_string(l_min)});
        if (*lmax_opt) opt.extras.insert(opt.extras.end(),
                                         {"--sweep.l_max", std::to_string(l_max)});
        if (*lpts_opt) opt.extras.insert(opt.extras.end(),
                                         {"--sweep.l_points", std::to_string(l_points)});

        if (rates->parsed()) return cmd_rates(opt);
        if (optimize->parsed()) return cmd_optimize(opt);
        if (sweepc->parsed()) return cmd_sweep(opt);
        if (mc->parsed()) return cmd_mc(opt);
        if (reproduce->parsed()) return cmd_reproduce(opt, artifact);
        if (oracle->parsed()) return cmd_oracle_check(opt);
        return 1;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
