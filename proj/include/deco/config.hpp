#ifndef DECO_CONFIG_HPP
#define DECO_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "deco/estimation.hpp"
#include "deco/scaling.hpp"

namespace deco {

// Flat key-value scenario description with dotted sections, e.g.
//   collective.markov_rate_hz = 1.0
// Unspecified fields keep their defaults (the reference parameter set:
// Gamma_MC = 1 Hz, gamma_ME = 0.2 Hz, T = 1 s, tau_c = 0.001 s).
struct ScenarioConfig {
    // probe.*
    int probe_num_qubits = 2;
    std::string probe_state_family = "ghz"; // ghz | product
    double probe_omega_hz = 0.0;
    double probe_readout_phase_rad = 0.0;

    // collective.*  (kind: lorentzian | white | static)
    std::string collective_kind = "lorentzian";
    double collective_markov_rate_hz = 1.0; // Gamma_MC
    double collective_tau_c_s = 1e-3;
    double collective_amplitude_hz2 = 0.0;  // static-noise amplitude

    // local.*
    std::string local_kind = "white";
    double local_markov_rate_hz = 0.2; // gamma_ME
    double local_tau_c_s = 1e-3;
    double local_amplitude_hz2 = 0.0;

    // task.*
    std::string task_target = "markov_collective_rate";
    double task_total_time_s = 1.0;
    double task_true_value = 1.0;

    // sweep.*
    double sweep_l_min = 1.0;
    double sweep_l_max = 1e4;
    int sweep_l_points = 40;

    // optimize.*  (0 -> automatic bounds)
    double optimize_t_lo_s = 0.0;
    double optimize_t_hi_s = 0.0;

    // mc.*
    std::size_t mc_trials = 1000;
    double mc_t_s = 0.0;              // 0 -> use the optimal interrogation time
    double mc_total_time_s = 0.0;     // 0 -> 1e4 * t (so floor(T/t) = 1e4)

    // rates.*
    double rates_t_min_s = 1e-6;
    double rates_t_max_s = 10.0;
    int rates_t_points = 121;

    std::uint64_t seed = 20231103;
};

// Parsing / serialization. Lines are `key = value`; '#' starts a comment.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);
std::string dump_config(const ScenarioConfig& config);

// Applies one `section.key value` override; throws on unknown keys or
// malformed values.
void apply_override(ScenarioConfig& config, const std::string& key,
                    const std::string& value);

// Validation plus conversion to the typed domain objects.
void validate(const ScenarioConfig& config);
ProbeConfig probe_from_config(const ScenarioConfig& config);
NoiseEnvironment environment_from_config(const ScenarioConfig& config);
EstimationTask task_from_config(const ScenarioConfig& config);
std::vector<int> l_grid_from_config(const ScenarioConfig& config);

} // namespace deco

#endif
