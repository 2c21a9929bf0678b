#include "deco/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace deco {

namespace {

std::string trim(const std::string& s) {
    auto b = s.begin(), e = s.end();
    while (b != e && std::isspace(static_cast<unsigned char>(*b))) ++b;
    while (e != b && std::isspace(static_cast<unsigned char>(*(e - 1)))) --e;
    return std::string(b, e);
}

struct Field {
    std::function<void(ScenarioConfig&, const std::string&)> set;
    std::function<std::string(const ScenarioConfig&)> get;
};

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad numeric value for " + key + ": '" +
                                    value + "'");
    }
}

long long parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad integer value for " + key + ": '" +
                                    value + "'");
    }
}

Field fdouble(double ScenarioConfig::* member) {
    return Field{
        [member](ScenarioConfig& c, const std::string& v) {
            c.*member = parse_double("", v);
        },
        [member](const ScenarioConfig& c) { return format_double(c.*member); }};
}

Field fint(int ScenarioConfig::* member) {
    return Field{
        [member](ScenarioConfig& c, const std::string& v) {
            c.*member = static_cast<int>(parse_int("", v));
        },
        [member](const ScenarioConfig& c) { return std::to_string(c.*member); }};
}

Field fsize(std::size_t ScenarioConfig::* member) {
    return Field{
        [member](ScenarioConfig& c, const std::string& v) {
            c.*member = static_cast<std::size_t>(parse_int("", v));
        },
        [member](const ScenarioConfig& c) { return std::to_string(c.*member); }};
}

Field fu64(std::uint64_t ScenarioConfig::* member) {
    return Field{
        [member](ScenarioConfig& c, const std::string& v) {
            c.*member = static_cast<std::uint64_t>(std::stoull(v));
        },
        [member](const ScenarioConfig& c) { return std::to_string(c.*member); }};
}

Field fstring(std::string ScenarioConfig::* member) {
    return Field{
        [member](ScenarioConfig& c, const std::string& v) { c.*member = v; },
        [member](const ScenarioConfig& c) { return c.*member; }};
}

// Ordered so that dump_config output is stable and diff-friendly.
const std::vector<std::pair<std::string, Field>>& registry() {
    static const std::vector<std::pair<std::string, Field>> fields = {
        {"probe.num_qubits", fint(&ScenarioConfig::probe_num_qubits)},
        {"probe.state_family", fstring(&ScenarioConfig::probe_state_family)},
        {"probe.omega_hz", fdouble(&ScenarioConfig::probe_omega_hz)},
        {"probe.readout_phase_rad", fdouble(&ScenarioConfig::probe_readout_phase_rad)},
        {"collective.kind", fstring(&ScenarioConfig::collective_kind)},
        {"collective.markov_rate_hz", fdouble(&ScenarioConfig::collective_markov_rate_hz)},
        {"collective.tau_c_s", fdouble(&ScenarioConfig::collective_tau_c_s)},
        {"collective.amplitude_hz2", fdouble(&ScenarioConfig::collective_amplitude_hz2)},
        {"local.kind", fstring(&ScenarioConfig::local_kind)},
        {"local.markov_rate_hz", fdouble(&ScenarioConfig::local_markov_rate_hz)},
        {"local.tau_c_s", fdouble(&ScenarioConfig::local_tau_c_s)},
        {"local.amplitude_hz2", fdouble(&ScenarioConfig::local_amplitude_hz2)},
        {"task.target", fstring(&ScenarioConfig::task_target)},
        {"task.total_time_s", fdouble(&ScenarioConfig::task_total_time_s)},
        {"task.true_value", fdouble(&ScenarioConfig::task_true_value)},
        {"sweep.l_min", fdouble(&ScenarioConfig::sweep_l_min)},
        {"sweep.l_max", fdouble(&ScenarioConfig::sweep_l_max)},
        {"sweep.l_points", fint(&ScenarioConfig::sweep_l_points)},
        {"optimize.t_lo_s", fdouble(&ScenarioConfig::optimize_t_lo_s)},
        {"optimize.t_hi_s", fdouble(&ScenarioConfig::optimize_t_hi_s)},
        {"mc.trials", fsize(&ScenarioConfig::mc_trials)},
        {"mc.t_s", fdouble(&ScenarioConfig::mc_t_s)},
        {"mc.total_time_s", fdouble(&ScenarioConfig::mc_total_time_s)},
        {"rates.t_min_s", fdouble(&ScenarioConfig::rates_t_min_s)},
        {"rates.t_max_s", fdouble(&ScenarioConfig::rates_t_max_s)},
        {"rates.t_points", fint(&ScenarioConfig::rates_t_points)},
        {"seed", fu64(&ScenarioConfig::seed)},
    };
    return fields;
}

const Field& find_field(const std::string& key) {
    for (const auto& [name, field] : registry())
        if (name == key) return field;
    throw std::invalid_argument("config: unknown key '" + key + "'");
}

} // namespace

void apply_override(ScenarioConfig& config, const std::string& key,
                    const std::string& value) {
    find_field(key).set(config, value);
}

ScenarioConfig parse_config(const std::string& text) {
    ScenarioConfig config;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " is not 'key = value'");
        apply_override(config, trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
    }
    validate(config);
    return config;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string dump_config(const ScenarioConfig& config) {
    std::ostringstream out;
    for (const auto& [name, field] : registry())
        out << name << " = " << field.get(config) << "\n";
    return out.str();
}

namespace {

SpectralLimit spectrum_from(const std::string& which, const std::string& kind,
                            double markov_rate, double tau_c, double amplitude) {
    if (kind == "lorentzian")
        return SpectralLimit::lorentzian(from_markov_rate(markov_rate, tau_c));
    if (kind == "white") return SpectralLimit::white_noise(markov_rate);
    if (kind == "static") {
        // amplitude field wins; otherwise derive a = Gamma_M / (2 tau_c).
        const double a = amplitude > 0.0 ? amplitude : markov_rate / (2.0 * tau_c);
        return SpectralLimit::static_noise(a);
    }
    throw std::invalid_argument("config: " + which + ".kind must be lorentzian|white|static");
}

} // namespace

void validate(const ScenarioConfig& config) {
    if (config.probe_num_qubits < 1)
        throw std::invalid_argument("config: probe.num_qubits must be >= 1");
    if (config.probe_state_family != "ghz" && config.probe_state_family != "product")
        throw std::invalid_argument("config: probe.state_family must be ghz|product");
    if (!(config.task_total_time_s > 0.0))
        throw std::invalid_argument("config: task.total_time_s must be > 0");
    if (config.task_true_value < 0.0 && config.task_target != "qubit_frequency")
        throw std::invalid_argument("config: task.true_value must be >= 0 for rate targets");
    for (const auto& [name, v] :
         {std::pair<const char*, double>{"collective.markov_rate_hz",
                                         config.collective_markov_rate_hz},
          {"local.markov_rate_hz", config.local_markov_rate_hz},
          {"collective.amplitude_hz2", config.collective_amplitude_hz2},
          {"local.amplitude_hz2", config.local_amplitude_hz2}})
        if (v < 0.0)
            throw std::invalid_argument(std::string("config: ") + name +
                                        " must be >= 0");
    for (const auto& [name, v] :
         {std::pair<const char*, double>{"collective.tau_c_s", config.collective_tau_c_s},
          {"local.tau_c_s", config.local_tau_c_s}})
        if (!(v > 0.0))
            throw std::invalid_argument(std::string("config: ") + name + " must be > 0");
    if (!(config.sweep_l_min >= 1.0 && config.sweep_l_max > config.sweep_l_min &&
          config.sweep_l_points >= 2))
        throw std::invalid_argument("config: bad sweep.l_* settings");
    if (!(config.rates_t_min_s > 0.0 && config.rates_t_max_s >= config.rates_t_min_s &&
          config.rates_t_points >= 1))
        throw std::invalid_argument("config: bad rates.t_* settings");
    probe_from_config(config);
    environment_from_config(config);
    task_from_config(config);
}

ProbeConfig probe_from_config(const ScenarioConfig& config) {
    const StateFamily family = config.probe_state_family == "product"
                                   ? StateFamily::Product
                                   : StateFamily::GHZ;
    return make_probe(config.probe_num_qubits, family, config.probe_omega_hz,
                      config.probe_readout_phase_rad);
}

NoiseEnvironment environment_from_config(const ScenarioConfig& config) {
    return NoiseEnvironment{
        spectrum_from("collective", config.collective_kind,
                      config.collective_markov_rate_hz, config.collective_tau_c_s,
                      config.collective_amplitude_hz2),
        spectrum_from("local", config.local_kind, config.local_markov_rate_hz,
                      config.local_tau_c_s, config.local_amplitude_hz2)};
}

EstimationTask task_from_config(const ScenarioConfig& config) {
    Target target;
    if (config.task_target == "markov_collective_rate")
        target = Target::MarkovCollectiveRate;
    else if (config.task_target == "nonmarkov_collective_rate")
        target = Target::NonMarkovCollectiveRate;
    else if (config.task_target == "qubit_frequency")
        target = Target::QubitFrequency;
    else
        throw std::invalid_argument(
            "config: task.target must be markov_collective_rate|"
            "nonmarkov_collective_rate|qubit_frequency");
    return make_task(target, config.task_total_time_s, probe_from_config(config),
                     environment_from_config(config), config.task_true_value);
}

std::vector<int> l_grid_from_config(const ScenarioConfig& config) {
    return default_l_grid(config.sweep_l_min, config.sweep_l_max, config.sweep_l_points);
}

} // namespace deco
