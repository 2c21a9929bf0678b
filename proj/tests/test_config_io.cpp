#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "deco/config.hpp"
#include "deco/io.hpp"

using namespace deco;

TEST_CASE("config round-trips through dump and parse") {
    ScenarioConfig config;
    config.probe_num_qubits = 17;
    config.collective_markov_rate_hz = 2.5;
    config.local_kind = "static";
    config.local_amplitude_hz2 = 0.125;
    config.seed = 424242;
    const ScenarioConfig back = parse_config(dump_config(config));
    CHECK(dump_config(back) == dump_config(config));
}

TEST_CASE("parser accepts comments and blank lines, rejects junk") {
    const ScenarioConfig config = parse_config(
        "# scenario\n"
        "\n"
        "probe.num_qubits = 9   # inline comment\n"
        "  task.total_time_s=2.5\n");
    CHECK(config.probe_num_qubits == 9);
    CHECK(config.task_total_time_s == 2.5);

    CHECK_THROWS_AS(parse_config("probe.num_qubits 9\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("no.such.key = 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("probe.num_qubits = banana\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("probe.num_qubits = 0\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("task.total_time_s = -1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("collective.kind = pink\n"), std::invalid_argument);
}

TEST_CASE("overrides change exactly the addressed key") {
    ScenarioConfig config;
    apply_override(config, "sweep.l_max", "256");
    CHECK(config.sweep_l_max == 256.0);
    CHECK_THROWS_AS(apply_override(config, "sweep.bogus", "1"), std::invalid_argument);
}

TEST_CASE("typed objects reflect the configured scenario") {
    ScenarioConfig config;
    config.probe_state_family = "product";
    config.task_target = "qubit_frequency";
    config.task_true_value = 0.0;
    const EstimationTask task = task_from_config(config);
    CHECK(task.target == Target::QubitFrequency);
    CHECK(task.probe.state_family == StateFamily::Product);
    CHECK(task.env.collective.kind() == SpectralKind::Lorentzian);
    CHECK(task.env.local.kind() == SpectralKind::WhiteNoise);
    CHECK(task.env.collective.markov_rate() == doctest::Approx(1.0));

    config.collective_kind = "static";
    config.collective_amplitude_hz2 = 9.0;
    CHECK(environment_from_config(config).collective.amplitude() == 9.0);
    config.collective_amplitude_hz2 = 0.0;
    // With no explicit amplitude the static bath inherits Gamma_M / (2 tau_c).
    CHECK(environment_from_config(config).collective.amplitude() ==
          doctest::Approx(500.0));
}

TEST_CASE("csv output carries 12 significant digits and one header row") {
    CsvTable table;
    table.header = {"a", "b"};
    table.rows = {{1.0 / 3.0, 1e-7}, {2.0, 12345.6789012345}};
    const std::string csv = to_csv(table);
    CHECK(csv ==
          "a,b\n"
          "0.333333333333,1e-07\n"
          "2,12345.6789012\n");

    CsvTable bad = table;
    bad.rows.push_back({1.0});
    CHECK_THROWS_AS(to_csv(bad), std::logic_error);
}

TEST_CASE("atomic writes create directories and leave no temp file") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "deco_io_test";
    fs::remove_all(dir);
    const fs::path target = dir / "nested" / "out.csv";
    write_file_atomic(target.string(), "x\n1\n");

    std::ifstream in(target);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == "x\n1\n");
    CHECK_FALSE(fs::exists(target.string() + ".tmp"));

    write_file_atomic(target.string(), "y\n2\n");
    std::ifstream again(target);
    std::stringstream buf2;
    buf2 << again.rdbuf();
    CHECK(buf2.str() == "y\n2\n");
    fs::remove_all(dir);
}
