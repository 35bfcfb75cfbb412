#include "wpdj/config.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "wpdj/errors.hpp"

namespace wpdj {

using nlohmann::json;

namespace {

/// Strict object reader: every key must be consumed, types must match.
class ObjectReader {
public:
    ObjectReader(const json& j, std::string scope) : j_(j), scope_(std::move(scope)) {
        if (!j_.is_object()) throw ConfigError("field '" + scope_ + "': expected an object");
    }

    bool has(const std::string& key) {
        if (j_.contains(key)) {
            seen_.insert(key);
            return true;
        }
        return false;
    }

    const json& at(const std::string& key) { return j_.at(key); }

    double number(const std::string& key, double fallback) {
        if (!has(key)) return fallback;
        const json& v = j_.at(key);
        if (!v.is_number()) throw type_error(key, "a number");
        return v.get<double>();
    }

    int integer(const std::string& key, int fallback) {
        if (!has(key)) return fallback;
        const json& v = j_.at(key);
        if (!v.is_number_integer()) throw type_error(key, "an integer");
        return v.get<int>();
    }

    std::uint64_t unsigned64(const std::string& key, std::uint64_t fallback) {
        if (!has(key)) return fallback;
        const json& v = j_.at(key);
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
            throw type_error(key, "a non-negative integer");
        }
        return v.get<std::uint64_t>();
    }

    std::string text(const std::string& key, std::string fallback) {
        if (!has(key)) return fallback;
        const json& v = j_.at(key);
        if (!v.is_string()) throw type_error(key, "a string");
        return v.get<std::string>();
    }

    std::vector<double> number_array(const std::string& key) {
        std::vector<double> out;
        if (!has(key)) return out;
        const json& v = j_.at(key);
        if (!v.is_array()) throw type_error(key, "an array of numbers");
        for (const auto& item : v) {
            if (!item.is_number()) throw type_error(key, "an array of numbers");
            out.push_back(item.get<double>());
        }
        return out;
    }

    /// Rejects keys that were present but never consumed.
    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (seen_.count(it.key()) == 0) {
                throw ConfigError("unknown field '" + qualify(it.key()) + "'");
            }
        }
    }

    std::string qualify(const std::string& key) const {
        return scope_.empty() ? key : scope_ + "." + key;
    }

private:
    ConfigError type_error(const std::string& key, const std::string& expected) const {
        return ConfigError("field '" + qualify(key) + "': expected " + expected);
    }

    const json& j_;
    std::string scope_;
    std::set<std::string> seen_;
};

std::vector<std::pair<int, int>> parse_basis_levels(const json& v) {
    if (!v.is_array()) throw ConfigError("field 'basis_levels': expected an array of [v, J] pairs");
    std::vector<std::pair<int, int>> levels;
    for (const auto& item : v) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() ||
            !item[1].is_number_integer()) {
            throw ConfigError("field 'basis_levels': expected an array of [v, J] pairs");
        }
        levels.emplace_back(item[0].get<int>(), item[1].get<int>());
    }
    return levels;
}

LevelBasis resolved_basis(const RunConfig& config) {
    config.constants.validate();
    if (config.basis_levels.empty()) {
        return default_basis(config.constants, static_cast<std::size_t>(config.input_count));
    }
    if (config.basis_levels.size() != static_cast<std::size_t>(config.input_count)) {
        throw ConfigError("field 'basis_levels': expected " +
                          std::to_string(config.input_count) + " levels, got " +
                          std::to_string(config.basis_levels.size()));
    }
    std::vector<RovibrationalLevel> levels;
    levels.reserve(config.basis_levels.size());
    for (const auto& [v, J] : config.basis_levels) {
        levels.push_back({v, J, term_energy(config.constants, v, J)});
    }
    return LevelBasis(std::move(levels));
}

double resolved_launch_energy(const RunConfig& config, const LevelBasis& basis) {
    if (config.launch_energy_cm) return *config.launch_energy_cm;
    const std::vector<double> energies = basis.energies_cm();
    const auto [lo, hi] = std::minmax_element(energies.begin(), energies.end());
    return 0.5 * (*lo + *hi) - config.envelope.center_cm;
}

double resolved_mask_start(const RunConfig& config) {
    if (config.mask_start_cm) return *config.mask_start_cm;
    return config.envelope.center_cm - config.mask_pixels * config.mask_resolution_cm / 2.0;
}

std::vector<double> resolved_weights(const std::vector<double>& configured, std::size_t count,
                                     const char* field) {
    if (configured.empty()) return std::vector<double>(count, 1.0);
    if (configured.size() != count) {
        throw ConfigError(std::string("field '") + field + "': expected " +
                          std::to_string(count) + " entries, got " +
                          std::to_string(configured.size()));
    }
    return configured;
}

} // namespace

RunConfig default_config() { return RunConfig{}; }

RunConfig parse_config_json(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }

    RunConfig config;
    ObjectReader top(root, "");

    config.seed = top.unsigned64("seed", config.seed);

    const bool has_inputs = root.contains("input_count");
    const bool has_qubits = root.contains("qubits");
    if (has_inputs && has_qubits) {
        throw ConfigError("fields 'input_count' and 'qubits' are mutually exclusive");
    }
    if (has_qubits) {
        const int n = top.integer("qubits", 3);
        if (n < 1 || n > 14) throw ConfigError("field 'qubits': expected a value in [1, 14]");
        config.input_count = 1 << n;
    } else {
        config.input_count = top.integer("input_count", config.input_count);
    }
    if (config.input_count < 2 || config.input_count > 28 || config.input_count % 2 != 0) {
        throw ConfigError("field 'input_count': register size must be even and within [2, 28]");
    }

    if (top.has("spectroscopy")) {
        ObjectReader r(top.at("spectroscopy"), "spectroscopy");
        config.constants.omega_e = r.number("omega_e", config.constants.omega_e);
        config.constants.omega_e_x_e = r.number("omega_e_x_e", config.constants.omega_e_x_e);
        config.constants.B_e = r.number("B_e", config.constants.B_e);
        config.constants.alpha_e = r.number("alpha_e", config.constants.alpha_e);
        config.constants.T_e = r.number("T_e", config.constants.T_e);
        r.finish();
    }

    if (top.has("basis_levels")) {
        config.basis_levels = parse_basis_levels(top.at("basis_levels"));
        if (config.basis_levels.size() != static_cast<std::size_t>(config.input_count)) {
            throw ConfigError("field 'basis_levels': expected " +
                              std::to_string(config.input_count) + " levels, got " +
                              std::to_string(config.basis_levels.size()));
        }
    }

    if (top.has("launch")) {
        ObjectReader r(top.at("launch"), "launch");
        config.launch_v = r.integer("v", config.launch_v);
        config.launch_J = r.integer("J", config.launch_J);
        if (r.has("energy_cm")) {
            const json& v = r.at("energy_cm");
            if (!v.is_number()) throw ConfigError("field 'launch.energy_cm': expected a number");
            config.launch_energy_cm = v.get<double>();
        }
        r.finish();
    }

    if (top.has("envelope")) {
        ObjectReader r(top.at("envelope"), "envelope");
        config.envelope.center_cm = r.number("center_cm", config.envelope.center_cm);
        config.envelope.fwhm_cm = r.number("fwhm_cm", config.envelope.fwhm_cm);
        config.envelope.peak_amplitude = r.number("peak_amplitude", config.envelope.peak_amplitude);
        r.finish();
    }

    if (top.has("mask")) {
        ObjectReader r(top.at("mask"), "mask");
        config.mask_pixels = r.integer("pixels", config.mask_pixels);
        config.mask_resolution_cm = r.number("resolution_cm", config.mask_resolution_cm);
        if (r.has("start_cm")) {
            const json& v = r.at("start_cm");
            if (!v.is_number()) throw ConfigError("field 'mask.start_cm': expected a number");
            config.mask_start_cm = v.get<double>();
        }
        r.finish();
    }

    if (top.has("pulse")) {
        ObjectReader r(top.at("pulse"), "pulse");
        config.pulse.duration_fwhm_fs = r.number("duration_fwhm_fs", config.pulse.duration_fwhm_fs);
        config.pulse.t_start_fs = r.number("t_start_fs", config.pulse.t_start_fs);
        config.pulse.t_end_fs = r.number("t_end_fs", config.pulse.t_end_fs);
        config.pulse.step_fs = r.number("step_fs", config.pulse.step_fs);
        r.finish();
    }

    config.dipoles = top.number_array("dipoles");

    if (top.has("probe")) {
        ObjectReader r(top.at("probe"), "probe");
        config.probe_amplitudes = r.number_array("amplitudes");
        config.baseline = r.number("baseline", config.baseline);
        config.coherence_time_ps = r.number("coherence_time_ps", config.coherence_time_ps);
        r.finish();
    }

    if (top.has("noise")) {
        ObjectReader r(top.at("noise"), "noise");
        config.noise_sigma = r.number("sigma", config.noise_sigma);
        config.noise_sequences = r.unsigned64("sequences", config.noise_sequences);
        r.finish();
    }

    if (top.has("delay_grid")) {
        ObjectReader r(top.at("delay_grid"), "delay_grid");
        config.delay_grid.start_ps = r.number("start_ps", config.delay_grid.start_ps);
        config.delay_grid.end_ps = r.number("end_ps", config.delay_grid.end_ps);
        config.delay_grid.step_ps = r.number("step_ps", config.delay_grid.step_ps);
        r.finish();
    }

    config.tau_star_ps = top.number("tau_star_ps", config.tau_star_ps);
    config.reference_index = top.integer("reference_index", config.reference_index);
    config.phase_quantization_deg =
        top.number("phase_quantization_deg", config.phase_quantization_deg);
    config.mc_trials = top.unsigned64("mc_trials", config.mc_trials);
    config.output_dir = top.text("output_dir", config.output_dir);

    top.finish();

    // cross-field validation that does not need the assembled experiment
    if (config.reference_index < -1 || config.reference_index >= config.input_count) {
        throw ConfigError("field 'reference_index': out of range for the register size");
    }
    if (config.noise_sigma < 0.0) throw ConfigError("field 'noise.sigma': must be >= 0");
    if (config.noise_sequences < 1) throw ConfigError("field 'noise.sequences': must be >= 1");
    if (config.mc_trials < 1) throw ConfigError("field 'mc_trials': must be >= 1");
    config.delay_grid.validate();
    if (!(config.tau_star_ps > 0.0)) throw ConfigError("field 'tau_star_ps': must be > 0");
    if (!config.delay_grid.contains(config.tau_star_ps)) {
        throw ConfigError("field 'delay_grid': grid must contain tau_star_ps");
    }
    return config;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_json(text.str());
}

std::string effective_config_json(const RunConfig& config) {
    const LevelBasis basis = resolved_basis(config);

    json j;
    j["seed"] = config.seed;
    j["input_count"] = config.input_count;
    j["spectroscopy"] = {{"omega_e", config.constants.omega_e},
                         {"omega_e_x_e", config.constants.omega_e_x_e},
                         {"B_e", config.constants.B_e},
                         {"alpha_e", config.constants.alpha_e},
                         {"T_e", config.constants.T_e}};
    json levels = json::array();
    for (const auto& level : basis.levels()) levels.push_back({level.v, level.J});
    j["basis_levels"] = levels;
    j["launch"] = {{"v", config.launch_v},
                   {"J", config.launch_J},
                   {"energy_cm", resolved_launch_energy(config, basis)}};
    j["envelope"] = {{"center_cm", config.envelope.center_cm},
                     {"fwhm_cm", config.envelope.fwhm_cm},
                     {"peak_amplitude", config.envelope.peak_amplitude}};
    j["mask"] = {{"pixels", config.mask_pixels},
                 {"resolution_cm", config.mask_resolution_cm},
                 {"start_cm", resolved_mask_start(config)}};
    j["pulse"] = {{"duration_fwhm_fs", config.pulse.duration_fwhm_fs},
                  {"t_start_fs", config.pulse.t_start_fs},
                  {"t_end_fs", config.pulse.t_end_fs},
                  {"step_fs", config.pulse.step_fs}};
    j["dipoles"] = resolved_weights(config.dipoles, basis.size(), "dipoles");
    j["probe"] = {{"amplitudes",
                   resolved_weights(config.probe_amplitudes, basis.size(), "probe.amplitudes")},
                  {"baseline", config.baseline},
                  {"coherence_time_ps", config.coherence_time_ps}};
    j["noise"] = {{"sigma", config.noise_sigma}, {"sequences", config.noise_sequences}};
    j["delay_grid"] = {{"start_ps", config.delay_grid.start_ps},
                       {"end_ps", config.delay_grid.end_ps},
                       {"step_ps", config.delay_grid.step_ps}};
    j["tau_star_ps"] = config.tau_star_ps;
    j["reference_index"] = static_cast<int>(resolved_reference_index(config));
    j["phase_quantization_deg"] = config.phase_quantization_deg;
    j["mc_trials"] = config.mc_trials;
    // output_dir is where a run lands, not what it computes; it stays out of
    // the canonical form so artifacts hash identically wherever they go
    return j.dump(2) + "\n";
}

std::uint64_t config_hash(const RunConfig& config) {
    const std::string text = effective_config_json(config);
    std::uint64_t hash = 0xcbf29ce484222325ULL; // FNV-1a 64
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string config_hash_hex(const RunConfig& config) {
    char buffer[24];
    std::snprintf(buffer, sizeof buffer, "0x%016llx",
                  static_cast<unsigned long long>(config_hash(config)));
    return buffer;
}

std::size_t resolved_reference_index(const RunConfig& config) {
    if (config.reference_index < 0) return static_cast<std::size_t>(config.input_count - 1);
    return static_cast<std::size_t>(config.reference_index);
}

Experiment make_experiment(const RunConfig& config) {
    Experiment experiment{resolved_basis(config),
                          0.0,
                          config.envelope,
                          MaskGeometry{config.mask_pixels, config.mask_resolution_cm, 0.0},
                          {},
                          ProbeModel{},
                          config.pulse,
                          config.tau_star_ps,
                          config.phase_quantization_deg};
    experiment.launch_energy_cm = resolved_launch_energy(config, experiment.basis);
    experiment.geometry.start_cm = resolved_mask_start(config);
    experiment.dipoles = resolved_weights(config.dipoles, experiment.basis.size(), "dipoles");
    experiment.probe.amplitudes =
        resolved_weights(config.probe_amplitudes, experiment.basis.size(), "probe.amplitudes");
    experiment.probe.baseline = config.baseline;
    experiment.probe.coherence_time_ps = config.coherence_time_ps;
    experiment.validate();
    return experiment;
}

NoiseModel make_noise(const RunConfig& config) {
    NoiseModel noise{config.noise_sigma, config.noise_sequences, config.seed};
    noise.validate();
    return noise;
}

bool apply_seed_env_override(RunConfig& config) {
    const char* raw = std::getenv("WPDJ_SEED");
    if (raw == nullptr || *raw == '\0') return false;
    char* end = nullptr;
    const unsigned long long value = std::strtoull(raw, &end, 10);
    if (end == nullptr || *end != '\0') {
        throw ConfigError("WPDJ_SEED: expected an unsigned integer, got \"" + std::string(raw) +
                          "\"");
    }
    config.seed = static_cast<std::uint64_t>(value);
    return true;
}

} // namespace wpdj
