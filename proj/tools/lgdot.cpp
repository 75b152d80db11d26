// lgdot: command-line front end: tau sweeps, presets, oracle cross-checks, traces
//
// Exit codes: 0 success, 1 parameter error, 2 numeric failure.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "lgdot/config_file.hpp"
#include "lgdot/greens.hpp"
#include "lgdot/kernels.hpp"
#include "lgdot/simd/convolution.hpp"
#include "lgdot/sweep.hpp"

namespace {

using namespace lgdot;

constexpr int exit_parameter = 1;
constexpr int exit_numeric = 2;

struct Common {
    std::string config;
    std::string preset;
    std::string out;
    std::optional<double> dt;
    unsigned workers{1};
};

// Writes to --out when given, stdout otherwise.
class Output {
public:
    explicit Output(const std::string& path) {
        if (path.empty() || path == "-") return;
        file_ = std::make_unique<std::ofstream>(path);
        if (!*file_) throw ParameterError("cannot write '" + path + "'");
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

sweep::SweepSpec spec_from(const Common& c) {
    if (c.config.empty() == c.preset.empty()) throw ParameterError("give exactly one of --config or --preset");
    sweep::SweepSpec spec = c.preset.empty() ? load_config(c.config).to_sweep("config") : sweep::make_preset(c.preset);
    if (c.dt) spec.dt = *c.dt;
    spec.workers = c.workers;
    spec.output_path = c.out;
    return spec;
}

int run_sweep_cmd(const Common& c) {
    const sweep::SweepSpec spec = spec_from(c);
    const sweep::SweepResult result = sweep::run_sweep(spec);
    Output out(c.out);
    sweep::write_csv(out.stream(), spec, result);
    for (const auto& row : result.rows)
        if (!row.ok()) std::cerr << "row " << row.curve << " tau=" << row.result.tau << ": " << row.error << '\n';
    return result.all_ok() ? 0 : exit_numeric;
}

int run_oracle_cmd(const Common& c, std::size_t modes, const std::vector<double>& taus, double threshold) {
    DeviceConfig config = c.preset.empty() && c.config.empty()
                              ? make_series_config(0.2, 0.2, presets::figure_dots(),
                                                   presets::figure_reservoir(presets::mu_left),
                                                   presets::figure_reservoir(presets::mu_right))
                              : spec_from(c).curves.front().config;
    sweep::OracleCheckOptions opts;
    opts.modes = modes;
    opts.threshold = threshold;
    opts.workers = c.workers;
    if (c.dt) opts.dt = *c.dt;
    const sweep::OracleReport report = sweep::run_oracle_check(config, taus, opts);
    sweep::write_oracle_summary(std::cerr, report);
    Output out(c.out);
    sweep::write_oracle_csv(out.stream(), report);
    return report.all_pass() ? 0 : exit_numeric;
}

int run_trace_cmd(const Common& c, double t_max, std::size_t every) {
    if (c.config.empty()) throw ParameterError("trace needs --config");
    const ConfigFile file = load_config(c.config);
    const double dt = c.dt.value_or(file.run.grid_dt);
    const auto n = static_cast<std::size_t>(std::llround(t_max / dt)) + 1;
    const TimeGrid grid = TimeGrid::with_step(0.0, dt, std::max<std::size_t>(n, 2));
    const std::array<kernels::KernelTable, 2> tables{kernels::tabulate_kernels(file.device.left(), grid, "left"),
                                                     kernels::tabulate_kernels(file.device.right(), grid, "right")};
    const greens::RetardedGreen u = greens::solve_retarded(file.device, grid, tables);
    std::vector<std::size_t> nodes;
    for (std::size_t k = 0; k < grid.size(); k += std::max<std::size_t>(every, 1)) nodes.push_back(k);
    const greens::NoiseCorrelation noise =
        greens::solve_noise_correlations(file.device, grid, tables, u, nodes, c.workers);
    Output out(c.out);
    greens::write_trace_csv(out.stream(), u, &noise);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Leggett-Garg correlators of a double quantum dot"};
    app.require_subcommand(1);
    Common common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", common.config, "device/run description file");
        sub->add_option("--preset", common.preset, "named figure preset (see 'presets')");
        sub->add_option("--out", common.out, "output CSV path (default stdout)");
        sub->add_option("--dt", common.dt, "time step of the open pipeline")->check(CLI::PositiveNumber);
        sub->add_option("--workers", common.workers, "worker threads (0 = all cores)");
    };

    auto* sweep_cmd = app.add_subcommand("sweep", "tau sweep of C3/C4 to CSV");
    add_common(sweep_cmd);

    auto* oracle_cmd = app.add_subcommand("oracle-check", "compare C3 against the finite-bath oracle");
    add_common(oracle_cmd);
    std::size_t modes = 64;
    std::vector<double> taus{0.5, 1.0, 2.0};
    double threshold = 3e-2;
    oracle_cmd->add_option("--oracle-modes", modes, "bath modes per lead")->check(CLI::PositiveNumber);
    oracle_cmd->add_option("--tau", taus, "tau values")->delimiter(',');
    oracle_cmd->add_option("--threshold", threshold, "pass threshold on |delta C3|");

    auto* presets_cmd = app.add_subcommand("presets", "list figure presets");

    auto* trace_cmd = app.add_subcommand("trace", "dump u(t) and v(t,t) for a config");
    add_common(trace_cmd);
    double t_max = 10.0;
    std::size_t every = 10;
    trace_cmd->add_option("--t-max", t_max, "trace length")->check(CLI::PositiveNumber);
    trace_cmd->add_option("--every", every, "v(t,t) stride in grid steps")->check(CLI::PositiveNumber);

    auto* kernel_cmd = app.add_subcommand("kernel-info", "report the convolution kernel in use");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_parameter;
    }

    try {
        if (*sweep_cmd) return run_sweep_cmd(common);
        if (*oracle_cmd) return run_oracle_cmd(common, modes, taus, threshold);
        if (*trace_cmd) return run_trace_cmd(common, t_max, every);
        if (*presets_cmd) {
            for (const auto& name : sweep::preset_names())
                std::cout << name << "  " << sweep::describe_preset(name) << '\n';
            return 0;
        }
        if (*kernel_cmd) {
            std::cout << simd::to_string(simd::active_impl()) << '\n';
            return 0;
        }
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_parameter;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return exit_numeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_numeric;
    }
    return 0;
}
