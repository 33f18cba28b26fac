#include "jc_cli.hpp"

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "jcdem/analysis.hpp"
#include "report_io.hpp"

namespace jcdem::cli {

namespace {

const std::map<std::string, Command>& command_table()
{
    static const std::map<std::string, Command> table{
        {"transition", Command::Transition},
        {"scan-time", Command::ScanTime},
        {"scan-lambda", Command::ScanLambda},
        {"revival", Command::Revival},
    };
    return table;
}

std::string validate(const RunConfig& c)
{
    if (!(c.lambda0 >= 0.0 && c.lambda0 <= 1.0)) return "--lambda0 must lie in [0,1]";
    if (!(c.g > 0.0)) return "--g must be positive";
    if (!(c.omega0 >= 0.0)) return "--omega0 must be >= 0";
    if (!(c.mean_photons >= 0.0)) return "--mean-photons must be >= 0";
    if (!(c.dt > 0.0)) return "--dt must be positive";
    if (!(c.t_max > c.dt)) return "--t-max must exceed --dt";
    if (!(c.tail_tol > 0.0 && c.tail_tol < 1.0)) return "--tail-tol must lie in (0,1)";
    if (c.lambda_points < 2) return "--lambda-points must be >= 2";
    return {};
}

std::string fixed4(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

} // namespace

std::string command_name(Command c)
{
    for (const auto& [name, cmd] : command_table()) {
        if (cmd == c) {
            return name;
        }
    }
    return "unknown";
}

ParseOutcome parse_args(const std::vector<std::string>& args, std::ostream& out,
                        std::ostream& err)
{
    CLI::App app{"Jaynes-Cummings atom-field entanglement via quantum mutual entropy",
                 "jc-entangle"};
    RunConfig cfg;
    std::string command;
    std::string log_base = "e";
    std::string out_svg;

    app.add_option("command", command, "transition | scan-time | scan-lambda | revival")
        ->required()
        ->check(CLI::IsMember({"transition", "scan-time", "scan-lambda", "revival"}));
    app.add_option("--g", cfg.g, "coupling constant")->capture_default_str();
    app.add_option("--omega0", cfg.omega0, "atom/field resonance frequency")->capture_default_str();
    app.add_option("--mean-photons", cfg.mean_photons, "coherent-state mean photon number |theta|^2")
        ->capture_default_str();
    app.add_option("--lambda0", cfg.lambda0, "initial ground-state weight")->capture_default_str();
    app.add_option("--t-max", cfg.t_max, "end of the time grid")->capture_default_str();
    app.add_option("--dt", cfg.dt, "time step")->capture_default_str();
    app.add_option("--tail-tol", cfg.tail_tol, "Poisson tail tolerance for the photon cutoff")
        ->capture_default_str();
    app.add_option("--log-base", log_base, "entropy log base")
        ->check(CLI::IsMember({"e", "2"}))
        ->capture_default_str();
    app.add_option("--lambda-points", cfg.lambda_points, "lambda0 grid size for scan-lambda")
        ->capture_default_str();
    app.add_option("--out-csv", cfg.out_csv, "CSV output path (default <command>.csv)");
    app.add_option("--out-svg", out_svg, "optional SVG plot path");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return {std::nullopt, kExitOk};
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return {std::nullopt, kExitOk};
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return {std::nullopt, kExitUsage};
    }

    cfg.command = command_table().at(command);
    cfg.log_base = log_base == "2" ? LogBase::Two : LogBase::E;
    if (cfg.out_csv.empty()) {
        cfg.out_csv = command + ".csv";
    }
    if (!out_svg.empty()) {
        cfg.out_svg = out_svg;
    }
    if (const std::string problem = validate(cfg); !problem.empty()) {
        err << "error: " << problem << "\n" << "Run with --help for more information.\n";
        return {std::nullopt, kExitUsage};
    }
    return {cfg, kExitOk};
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    if (const std::string problem = validate(config); !problem.empty()) {
        err << "error: " << problem << "\n";
        return kExitUsage;
    }
    try {
        const ModelParams params{config.g, config.omega0};
        const FieldConfig field = FieldConfig::from_mean_photons(config.mean_photons, config.tail_tol);
        const std::string title = command_name(config.command);

        switch (config.command) {
        case Command::Transition: {
            const TimeSeries series = scan_transition(field, params, config.t_max, config.dt);
            write_file_atomic(config.out_csv, time_series_csv(series));
            if (config.out_svg) {
                render_plot(series, *config.out_svg, title);
            }
            out << "rows=" << series.rows() << "\n";
            break;
        }
        case Command::ScanTime: {
            const TimeSeries series =
                scan_time(AtomState::from_ground_weight(config.lambda0), field, params,
                          config.t_max, config.dt, config.log_base);
            write_file_atomic(config.out_csv, time_series_csv(series));
            if (config.out_svg) {
                render_plot(series, *config.out_svg, title);
            }
            out << "rows=" << series.rows() << "\n";
            out << "max_gap_dem_closed_vs_exact=" << max_abs_gap(series, "dem_closed", "dem_exact")
                << "\n";
            break;
        }
        case Command::ScanLambda: {
            const LambdaScan scan = scan_lambda(field, params, unit_grid(config.lambda_points),
                                                {1, 2, 3}, config.log_base);
            write_file_atomic(config.out_csv, lambda_scan_csv(scan));
            if (config.out_svg) {
                render_plot(scan, *config.out_svg, title);
            }
            const auto holds = std::count(scan.conjecture_holds.begin(),
                                          scan.conjecture_holds.end(), true);
            out << "conjecture_holds=" << holds << "/" << scan.lambdas.size() << "\n";
            out << "max_violation=" << scan.max_violation << "\n";
            break;
        }
        case Command::Revival: {
            const TimeSeries series = scan_transition(field, params, config.t_max, config.dt);
            const RevivalReport report = revival_analysis(field, params, 3, series);
            std::string csv = "k,T_k\n";
            for (std::size_t k = 0; k < report.revival_times.size(); ++k) {
                char buf[64];
                std::snprintf(buf, sizeof buf, "%zu,%.12e\n", k + 1, report.revival_times[k]);
                csv += buf;
            }
            write_file_atomic(config.out_csv, csv);
            if (config.out_svg) {
                render_plot(series, *config.out_svg, title);
            }
            out << "t_c=" << fixed4(report.t_collapse) << "\n";
            for (std::size_t k = 0; k < report.revival_times.size(); ++k) {
                out << "T" << (k + 1) << "=" << fixed4(report.revival_times[k]) << "\n";
            }
            out << "detected_revival=" << fixed4(report.detected_revival) << "\n";
            break;
        }
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

int main_with_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    const ParseOutcome parsed = parse_args(args, out, err);
    if (!parsed.config) {
        return parsed.exit_code;
    }
    return run(*parsed.config, out, err);
}

} // namespace jcdem::cli
