#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wpdj/config.hpp"
#include "wpdj/errors.hpp"
#include "wpdj/readout.hpp"

namespace {

namespace fs = std::filesystem;
using namespace wpdj;

struct CommonOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "JSON run configuration");
    cmd->add_option("--seed", opts.seed, "Override the configuration seed");
    cmd->add_option("--out", opts.out_dir, "Output directory");
}

RunConfig resolve_config(const CommonOptions& opts) {
    RunConfig config = opts.config_path.empty() ? default_config() : load_config(opts.config_path);
    apply_seed_env_override(config);
    if (opts.seed) config.seed = *opts.seed; // the explicit flag wins over the environment
    if (!opts.out_dir.empty()) config.output_dir = opts.out_dir;
    return config;
}

fs::path prepare_output_dir(const RunConfig& config) {
    const fs::path dir(config.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory: " + dir.string());
    std::ofstream echo(dir / "effective_config.json", std::ios::binary);
    if (!echo) throw ConfigError("cannot write effective config echo");
    echo << effective_config_json(config);
    return dir;
}

std::vector<std::string> file_comments(const RunConfig& config, const std::string& subcommand) {
    return {"wpdj " + subcommand, "config_hash=" + config_hash_hex(config),
            "seed=" + std::to_string(config.seed)};
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot open output file: " + path.string());
    return os;
}

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.12g", value);
    return buffer;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

// ---------------------------------------------------------------------------
// enumerate

int cmd_enumerate(const CommonOptions& opts, std::optional<int> qubits,
                  std::optional<int> inputs) {
    RunConfig config = resolve_config(opts);
    if (qubits && inputs) throw DomainError("--qubits and --inputs are mutually exclusive");
    if (qubits) config.input_count = 1 << *qubits;
    if (inputs) config.input_count = *inputs;
    constant_balanced_count(config.input_count); // validate before any file I/O

    std::optional<std::ofstream> file;
    if (!opts.out_dir.empty()) {
        fs::create_directories(opts.out_dir);
        file = open_output(fs::path(opts.out_dir) / "functions.txt");
        for (const auto& comment : file_comments(config, "enumerate")) {
            *file << "# " << comment << "\n";
        }
    }
    for_each_constant_balanced(config.input_count, [&](const BooleanFunction& f) {
        const std::string line = f.bits() + " " + to_string(character(f));
        std::cout << line << "\n";
        if (file) *file << line << "\n";
    });
    return 0;
}

// ---------------------------------------------------------------------------
// calibrate

CalibrationResult calibrate_experiment(const RunConfig& config, const Experiment& experiment) {
    const PhaseSet phi0 = calibrate_phi0(experiment.energies_cm(), config.tau_star_ps,
                                         resolved_reference_index(config));
    return compute_threshold(experiment, phi0);
}

void write_calibration_files(const fs::path& dir, const RunConfig& config,
                             const Experiment& experiment, const CalibrationResult& calib) {
    {
        auto os = open_output(dir / "calibration.csv");
        for (const auto& comment : file_comments(config, "calibrate")) os << "# " << comment << "\n";
        os << "# tau_star_ps=" << format_double(calib.tau_star_ps)
           << " s_constant=" << format_double(calib.s_constant)
           << " s_balanced_max=" << format_double(calib.s_balanced_max)
           << " threshold=" << format_double(calib.threshold)
           << " margin=" << format_double(calib.margin()) << "\n";
        os << "# worst_case_functions=";
        for (std::size_t i = 0; i < calib.worst_case_functions.size(); ++i) {
            os << (i ? "," : "") << calib.worst_case_functions[i].bits();
        }
        os << "\n";
        os << "index,v,J,energy_cm,transition_cm,phi0_deg\n";
        const auto freqs = experiment.transition_freqs_cm();
        for (std::size_t k = 0; k < experiment.basis.size(); ++k) {
            const auto& level = experiment.basis.level_for_index(k);
            os << k << ',' << level.v << ',' << level.J << ',' << format_double(level.energy_cm)
               << ',' << format_double(freqs[k]) << ',' << format_double(calib.phi0.phases_deg[k])
               << "\n";
        }
    }
    {
        // the base mask is the one the calibration run puts on the modulator
        auto os = open_output(dir / "mask_phi0.csv");
        for (const auto& comment : file_comments(config, "calibrate")) os << "# " << comment << "\n";
        write_mask_csv(os, experiment.mask_for(calib.phi0));
    }
}

int cmd_calibrate(const CommonOptions& opts) {
    RunConfig config = resolve_config(opts);
    const Experiment experiment = make_experiment(config);
    const CalibrationResult calib = calibrate_experiment(config, experiment);
    const fs::path dir = prepare_output_dir(config);
    write_calibration_files(dir, config, experiment, calib);
    std::cout << "calibrated at tau*=" << calib.tau_star_ps << " ps: s_constant="
              << format_double(calib.s_constant)
              << " s_balanced_max=" << format_double(calib.s_balanced_max)
              << " threshold=" << format_double(calib.threshold)
              << " margin=" << format_double(calib.margin()) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// transients

std::vector<BooleanFunction> parse_selection(const std::string& functions_flag, int input_count) {
    if (functions_flag.empty()) {
        throw SelectionError("no functions selected; pass --functions <bits>[,<bits>...]");
    }
    std::vector<BooleanFunction> selection;
    for (const std::string& bits : split_list(functions_flag)) {
        BooleanFunction f = [&] {
            try {
                return BooleanFunction::from_bits(bits);
            } catch (const DomainError& e) {
                throw SelectionError("function \"" + bits + "\": " + e.what());
            }
        }();
        if (f.size() != static_cast<std::size_t>(input_count)) {
            throw SelectionError("function \"" + bits + "\" does not match the register size of " +
                                 std::to_string(input_count));
        }
        try {
            character(f);
        } catch (const PromiseViolationError& e) {
            throw SelectionError(e.what());
        }
        selection.push_back(std::move(f));
    }
    return selection;
}

int cmd_transients(const CommonOptions& opts, const std::string& functions_flag,
                   const std::string& grid_flag) {
    RunConfig config = resolve_config(opts);
    if (!grid_flag.empty()) {
        double start = 0.0, end = 0.0, step = 0.0;
        if (std::sscanf(grid_flag.c_str(), "%lf:%lf:%lf", &start, &end, &step) != 3) {
            throw ConfigError("--delay-grid expects start:end:step in ps");
        }
        config.delay_grid = DelayGrid{start, end, step};
        config.delay_grid.validate();
        if (!config.delay_grid.contains(config.tau_star_ps)) {
            throw ConfigError("--delay-grid: the grid must contain tau_star_ps");
        }
    }
    const std::vector<BooleanFunction> selection =
        parse_selection(functions_flag, config.input_count);

    const Experiment experiment = make_experiment(config);
    const CalibrationResult calib = calibrate_experiment(config, experiment);
    const fs::path dir = prepare_output_dir(config);
    const std::vector<double> delays = config.delay_grid.points();
    const std::vector<double> energies = experiment.energies_cm();

    std::size_t function_index = 0;
    for (const BooleanFunction& f : selection) {
        const WavePacket packet = experiment.excite(f, calib.phi0);
        const std::uint64_t stream_seed = derive_seed(config.seed, function_index++);
        Transient t = transient(packet, experiment.probe, energies, delays,
                                TransientMetadata{f.bits(), stream_seed});
        if (config.noise_sigma > 0.0) {
            t = add_noise(t, NoiseModel{config.noise_sigma, config.noise_sequences, stream_seed});
        }
        auto os = open_output(dir / ("transient_" + f.bits() + ".csv"));
        write_transient_csv(os, t, file_comments(config, "transients"));
    }
    std::cout << "wrote " << selection.size() << " transient file(s) to " << dir.string() << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// dj

void write_accuracy_csv(const fs::path& path, const RunConfig& config,
                        const AccuracyReport& report) {
    auto os = open_output(path);
    for (const auto& comment : file_comments(config, "dj")) os << "# " << comment << "\n";
    os << "function_bits,trials,correct,accuracy\n";
    for (const auto& row : report.per_function) {
        const double acc =
            row.trials ? static_cast<double>(row.correct) / static_cast<double>(row.trials) : 0.0;
        os << row.function_bits << ',' << row.trials << ',' << row.correct << ','
           << format_double(acc) << "\n";
    }
    os << "aggregate," << report.trials << ',' << report.correct << ','
       << format_double(report.accuracy) << "\n";
    os << "# wilson_95=[" << format_double(report.wilson_low) << ","
       << format_double(report.wilson_high) << "]\n";
}

int cmd_dj(const CommonOptions& opts, std::optional<std::uint64_t> trials_flag) {
    RunConfig config = resolve_config(opts);
    if (trials_flag) config.mc_trials = *trials_flag;

    const Experiment experiment = make_experiment(config);
    const CalibrationResult calib = calibrate_experiment(config, experiment);
    const fs::path dir = prepare_output_dir(config);
    write_calibration_files(dir, config, experiment, calib);

    const std::vector<MarginRow> rows = margin_report(experiment, calib);
    std::size_t noiseless_correct = 0;
    for (const auto& row : rows) {
        if (row.classified == row.truth) ++noiseless_correct;
    }
    {
        auto os = open_output(dir / "margin_report.csv");
        write_margin_csv(os, rows, file_comments(config, "dj"));
    }

    const NoiseModel noise = make_noise(config);
    const AccuracyReport report =
        accuracy_monte_carlo(experiment, calib, noise, config.mc_trials, config.seed);
    write_accuracy_csv(dir / "accuracy_summary.csv", config, report);

    std::cout << "noiseless: " << noiseless_correct << "/" << rows.size() << " correct\n";
    std::cout << "noisy (sigma=" << format_double(config.noise_sigma)
              << ", sequences=" << config.noise_sequences << ", trials=" << report.trials
              << "): accuracy=" << format_double(report.accuracy) << " wilson_95=["
              << format_double(report.wilson_low) << "," << format_double(report.wilson_high)
              << "]\n";
    if (noiseless_correct != rows.size()) {
        std::cerr << "classification regression: noiseless accuracy below 100%\n";
        return 3;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// validate

int cmd_validate(const CommonOptions& opts, const std::string& scales_flag) {
    RunConfig config = resolve_config(opts);
    std::vector<double> scales;
    for (const std::string& item : split_list(scales_flag)) {
        try {
            scales.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw DomainError("--scales: cannot parse \"" + item + "\"");
        }
        if (!(scales.back() > 0.0)) throw DomainError("--scales: values must be > 0");
    }
    if (scales.empty()) throw DomainError("validate: the field-scale list is empty");

    const Experiment experiment = make_experiment(config);
    const std::vector<double> energies = experiment.energies_cm();
    const PhaseSet phi0 = calibrate_phi0(energies, config.tau_star_ps,
                                         resolved_reference_index(config));

    // reference wave packet from the first-order route (constant function)
    const BooleanFunction f_const(std::vector<std::uint8_t>(experiment.basis.size(), 0));
    const WavePacket reference = experiment.excite(f_const, phi0);
    const CouplingSet couplings =
        experiment.couplings_for(experiment.mask_for(encode_phases(f_const, phi0)));

    struct Row {
        double scale, amp_error, pop_error, norm_drift, population;
    };
    std::vector<Row> table;
    for (double scale : scales) {
        const TdseResult result = propagate_tdse(couplings, experiment.pulse, energies, scale);
        const WavePacket packet = result.normalized_packet();
        double amp_error = 0.0;
        for (std::size_t k = 0; k < packet.size(); ++k) {
            amp_error = std::max(amp_error,
                                 std::abs(packet.amplitudes[k] - reference.amplitudes[k]));
        }
        // convergence toward the first-order limit shows in the population:
        // the renormalized direction is already exact on resonance
        const double predicted = first_order_population(couplings, experiment.pulse, scale);
        const double pop_error = std::abs(result.excited_population - predicted) / predicted;
        table.push_back({scale, amp_error, pop_error, result.norm_drift,
                         result.excited_population});
    }

    // least-squares slope of log(error) against log(scale)
    auto loglog_slope = [&](auto field) -> double {
        if (table.size() < 2) return std::numeric_limits<double>::quiet_NaN();
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const Row& row : table) {
            const double x = std::log10(row.scale);
            const double y = std::log10(std::max(field(row), 1e-300));
            sx += x; sy += y; sxx += x * x; sxy += x * y;
        }
        const double n = static_cast<double>(table.size());
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };
    const double amp_slope = loglog_slope([](const Row& r) { return r.amp_error; });
    const double pop_slope = loglog_slope([](const Row& r) { return r.pop_error; });

    const fs::path dir = prepare_output_dir(config);
    {
        auto os = open_output(dir / "validation_report.csv");
        for (const auto& comment : file_comments(config, "validate")) os << "# " << comment << "\n";
        os << "# amp_error_loglog_slope=" << format_double(amp_slope) << "\n";
        os << "# pop_error_loglog_slope=" << format_double(pop_slope) << "\n";
        os << "field_scale,max_amplitude_error,first_order_population_error,norm_drift,"
              "excited_population\n";
        for (const Row& row : table) {
            os << format_double(row.scale) << ',' << format_double(row.amp_error) << ','
               << format_double(row.pop_error) << ',' << format_double(row.norm_drift) << ','
               << format_double(row.population) << "\n";
        }
    }
    std::cout << "field_scale  max_amp_error  pop_error(rel)  norm_drift  excited_population\n";
    for (const Row& row : table) {
        std::printf("%-12.4g %-14.6g %-15.6g %-11.3g %-12.6g\n", row.scale, row.amp_error,
                    row.pop_error, row.norm_drift, row.population);
    }
    std::cout << "log-log slope: amplitude=" << format_double(amp_slope)
              << " population=" << format_double(pop_slope) << "\n";
    return 0;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const CalibrationError*>(&e) != nullptr ||
        dynamic_cast<const ModelValidityError*>(&e) != nullptr ||
        dynamic_cast<const OutOfWindowError*>(&e) != nullptr ||
        dynamic_cast<const PixelCollisionError*>(&e) != nullptr ||
        dynamic_cast<const NoExcitationError*>(&e) != nullptr ||
        dynamic_cast<const IntegrationAccuracyError*>(&e) != nullptr) {
        return 2; // physics / calibration
    }
    return 1; // validation / selection / configuration
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Single-pulse constant/balanced function evaluation on a "
                 "rovibrational wave-packet register"};
    app.require_subcommand(1);

    CommonOptions enum_opts, cal_opts, tra_opts, dj_opts, val_opts;
    std::optional<int> enum_qubits, enum_inputs;
    std::string functions_flag, grid_flag, scales_flag = "1e-1,1e-2,1e-3,1e-4";
    std::optional<std::uint64_t> trials_flag;

    CLI::App* c_enum = app.add_subcommand("enumerate", "List every constant/balanced function");
    add_common(c_enum, enum_opts);
    c_enum->add_option("--qubits", enum_qubits, "Qubit count n (register size 2^n)");
    c_enum->add_option("--inputs", enum_inputs, "Register size 2m directly");

    CLI::App* c_cal = app.add_subcommand("calibrate", "Compute the base phases and threshold");
    add_common(c_cal, cal_opts);

    CLI::App* c_tra = app.add_subcommand("transients", "Export delay-resolved signals");
    add_common(c_tra, tra_opts);
    c_tra->add_option("--functions", functions_flag, "Comma-separated function bit strings");
    c_tra->add_option("--delay-grid", grid_flag, "start:end:step in ps");

    CLI::App* c_dj = app.add_subcommand("dj", "Classify every function and report accuracy");
    add_common(c_dj, dj_opts);
    c_dj->add_option("--trials", trials_flag, "Monte Carlo trial count");

    CLI::App* c_val = app.add_subcommand("validate", "Propagator-vs-first-order convergence");
    add_common(c_val, val_opts);
    c_val->add_option("--scales", scales_flag, "Comma-separated field scales");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (c_enum->parsed()) return cmd_enumerate(enum_opts, enum_qubits, enum_inputs);
        if (c_cal->parsed()) return cmd_calibrate(cal_opts);
        if (c_tra->parsed()) return cmd_transients(tra_opts, functions_flag, grid_flag);
        if (c_dj->parsed()) return cmd_dj(dj_opts, trials_flag);
        if (c_val->parsed()) return cmd_validate(val_opts, scales_flag);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return 0;
}
