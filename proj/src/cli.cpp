#include "nussbaum_pid/cli.hpp"

#include "nussbaum_pid/config.hpp"
#include "nussbaum_pid/csv.hpp"
#include "nussbaum_pid/sweep.hpp"
#include "nussbaum_pid/verify.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace nussbaum_pid {

namespace {

struct ScenarioFlags {
    std::string config_path;
    std::optional<std::string> preset;
    std::optional<std::string> controller;
    std::optional<double> duration;
    std::optional<double> dt;
    std::optional<double> kappa_scale;
    std::optional<std::size_t> decimation;
    bool hold = false;
};

void add_scenario_flags(CLI::App &cmd, ScenarioFlags &f) {
    cmd.add_option("--config", f.config_path, "JSON config file; absent keys come from the preset");
    cmd.add_option("--preset", f.preset, "Base scenario: paper (kappa = I), flip (-I), skew (diag(0.5, -2))")
        ->check(CLI::IsMember({"paper", "flip", "skew"}));
    cmd.add_option("--controller", f.controller, "nussbaum-pid or fixed-pid")
        ->check(CLI::IsMember({"nussbaum-pid", "fixed-pid"}));
    cmd.add_option("--duration", f.duration, "Horizon in seconds");
    cmd.add_option("--dt", f.dt, "Integration step in seconds");
    cmd.add_option("--kappa-scale", f.kappa_scale, "Multiply the control-direction matrix by X");
    cmd.add_option("--decimation", f.decimation, "Record every k-th step");
    cmd.add_flag("--hold", f.hold, "Zero-order hold: controller updated once per step");
}

// Preset, then config file, then individual flags.
RunSpec resolve_scenario(const ScenarioFlags &f) {
    const SimConfig base = make_preset(f.preset ? parse_preset(*f.preset) : Preset::paper);
    RunSpec spec = f.config_path.empty() ? RunSpec{base, std::nullopt} : parse_config_file(f.config_path, base);
    SimConfig &cfg = spec.sim;
    if (f.controller) cfg.controller_kind = parse_controller_kind(*f.controller);
    if (f.duration) cfg.duration = *f.duration;
    if (f.dt) cfg.dt = *f.dt;
    if (f.kappa_scale) cfg.robot.kappa = *f.kappa_scale * cfg.robot.kappa;
    if (f.decimation) cfg.decimation = *f.decimation;
    if (f.hold) cfg.hold = true;
    try {
        validate(cfg);
    } catch (const std::invalid_argument &e) {
        throw ConfigValidationError(e.what());
    }
    return spec;
}

std::string matrix_text(const Mat2 &m) {
    std::ostringstream os;
    os << "[[" << m(0, 0) << ", " << m(0, 1) << "], [" << m(1, 0) << ", " << m(1, 1) << "]]";
    return os.str();
}

int do_run(const ScenarioFlags &flags, const std::optional<std::string> &out_path, std::ostream &out) {
    const RunSpec spec = resolve_scenario(flags);
    const std::string csv = out_path ? *out_path : spec.csv_path.value_or("run.csv");
    const RunResult result = run_scenario(spec.sim);
    write_csv_file(csv, result.records);
    out << format_metrics(spec.sim, result.metrics);
    out << "csv             " << csv << " (" << result.records.size() << " rows)\n";
    return exit_ok;
}

std::vector<double> parse_values(const std::string &text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            values.push_back(parse_double(item));
        } catch (const std::invalid_argument &) {
            throw CLI::ValidationError("--values", "'" + item + "' is not a number");
        }
    }
    if (values.empty()) {
        throw CLI::ValidationError("--values", "at least one value is required");
    }
    return values;
}

int do_sweep(const ScenarioFlags &flags, const std::string &param_name, const std::string &values_text,
             const std::string &out_dir, std::ostream &out) {
    SweepParam param;
    try {
        param = parse_sweep_param(param_name);
    } catch (const std::invalid_argument &e) {
        throw CLI::ValidationError("--param", e.what());
    }
    const std::vector<double> values = parse_values(values_text);
    const RunSpec spec = resolve_scenario(flags);

    std::vector<SimConfig> configs;
    for (double v : values) {
        configs.push_back(apply_sweep_value(spec.sim, param, v));
        try {
            validate(configs.back());
        } catch (const std::invalid_argument &e) {
            throw ConfigValidationError(std::string(e.what()) + " (" + param_name + " = " + format_double(v) + ")");
        }
    }

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory '" + out_dir + "': " + ec.message());
    }

    const std::vector<RunResult> results = run_scenarios(configs);

    const std::filesystem::path summary_path = std::filesystem::path(out_dir) / "summary.csv";
    std::ofstream summary(summary_path, std::ios::binary | std::ios::trunc);
    if (!summary) {
        throw IoError("cannot write '" + summary_path.string() + "'");
    }
    summary << "param,value,csv,diverged,divergence_time,rms_error_tail,max_error_tail1,max_error_tail2,"
               "sup_psi,sup_psi_hat,zeta_final\n";
    out << std::left << std::setw(12) << param_name << std::setw(10) << "diverged" << std::setw(16) << "rms_tail"
        << std::setw(16) << "sup_psi" << "zeta_final\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
        const std::string name = "sweep_" + param_name + "_" + std::to_string(i) + ".csv";
        write_csv_file(std::filesystem::path(out_dir) / name, results[i].records);
        const RunMetrics &m = results[i].metrics;
        summary << param_name << ',' << format_double(values[i]) << ',' << name << ','
                << (m.diverged ? "true" : "false") << ',' << format_double(m.divergence_time) << ','
                << format_double(m.rms_error_tail) << ',' << format_double(m.max_abs_error_tail[0]) << ','
                << format_double(m.max_abs_error_tail[1]) << ',' << format_double(m.sup_psi) << ','
                << format_double(m.sup_psi_hat) << ',' << format_double(m.zeta_final) << '\n';
        out << std::left << std::setw(12) << format_double(values[i]) << std::setw(10)
            << (m.diverged ? "true" : "false") << std::setw(16) << m.rms_error_tail << std::setw(16) << m.sup_psi
            << m.zeta_final << '\n';
    }
    if (!summary) {
        throw IoError("failed writing '" + summary_path.string() + "'");
    }
    return exit_ok;
}

int do_verify(std::ostream &out) {
    const auto checks = run_property_suite();
    bool all = true;
    for (const PropertyCheck &c : checks) {
        out << (c.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(46) << c.name << c.detail << '\n';
        all = all && c.passed;
    }
    out << (all ? "all properties hold\n" : "property suite FAILED\n");
    return all ? exit_ok : exit_verify_failed;
}

}  // namespace

std::string format_metrics(const SimConfig &cfg, const RunMetrics &m) {
    std::ostringstream os;
    os << "controller      " << to_string(cfg.controller_kind) << (cfg.hold ? " (hold)" : "") << '\n'
       << "kappa           " << matrix_text(cfg.robot.kappa) << '\n'
       << "dt, duration    " << cfg.dt << " s, " << cfg.duration << " s\n"
       << "diverged        " << (m.diverged ? "true" : "false");
    if (m.diverged) {
        os << " (t = " << m.divergence_time << " s)";
    }
    os << '\n'
       << "rms_error_tail  " << m.rms_error_tail << " rad\n"
       << "max_error_tail  " << m.max_abs_error_tail[0] << ", " << m.max_abs_error_tail[1] << " rad\n"
       << "sup_psi         " << m.sup_psi << '\n'
       << "sup_psi_hat     " << m.sup_psi_hat << '\n'
       << "zeta_final      " << m.zeta_final << '\n'
       << "growth_flag     " << (m.growth_flag ? "true" : "false") << '\n';
    return os.str();
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Nussbaum-gain adaptive PID on a two-link arm: simulation, sweeps and property checks",
                 "nussbaum_pid"};
    app.require_subcommand(1);

    ScenarioFlags run_flags;
    std::optional<std::string> run_out;
    CLI::App *run = app.add_subcommand("run", "Simulate one scenario and write a CSV trace");
    add_scenario_flags(*run, run_flags);
    run->add_option("--out", run_out, "CSV output path (default: config output.csv_path, else run.csv)");

    ScenarioFlags sweep_flags;
    std::string sweep_param, sweep_values, sweep_out;
    CLI::App *sweep = app.add_subcommand("sweep", "Run one scenario per parameter value");
    add_scenario_flags(*sweep, sweep_flags);
    sweep->add_option("--param", sweep_param, "Parameter to vary")->required();
    sweep->add_option("--values", sweep_values, "Comma-separated values")->required();
    sweep->add_option("--out", sweep_out, "Output directory")->required();

    CLI::App *verify = app.add_subcommand("verify", "Run the model and controller property suite");

    std::vector<const char *> argv{"nussbaum_pid"};
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (run->parsed()) return do_run(run_flags, run_out, out);
        if (sweep->parsed()) return do_sweep(sweep_flags, sweep_param, sweep_values, sweep_out, out);
        if (verify->parsed()) return do_verify(out);
    } catch (const CLI::ValidationError &e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const ConfigParseError &e) {
        err << "error: " << e.what() << '\n';
        return exit_malformed_config;
    } catch (const ConfigValidationError &e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const IoError &e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    }
    return exit_usage;
}

}  // namespace nussbaum_pid
