// sweep.hpp: tau sweeps, figure presets, oracle cross-checks and their CSV output

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lgdot/lgi.hpp"
#include "lgdot/model.hpp"

namespace lgdot::sweep {

enum class Scenario { ClosedC3, ClosedC4, OpenC3, OpenC4 };

std::string_view to_string(Scenario s);
/// Accepts closed-c3, closed-c4, open-c3, open-c4 (case-insensitive).
Scenario scenario_from_string(std::string_view s);
bool is_open(Scenario s);
bool reports_c4(Scenario s);

struct Curve {
    std::string label;
    DeviceConfig config;
};

struct SweepSpec {
    std::string name;
    Scenario scenario{Scenario::ClosedC3};
    std::vector<Curve> curves;
    std::vector<double> tau_values;  ///< strictly positive, strictly increasing
    double dt{0.01};                 ///< open pipeline step; tau snaps to multiples of it
    unsigned workers{1};
    std::string output_path;
};

/// steps values evenly spaced on [tau_min, tau_max] (both included).
std::vector<double> tau_range(double tau_min, double tau_max, std::size_t steps);

/// ParameterError on an empty or malformed spec.
void validate(const SweepSpec& spec);

struct SweepRow {
    std::string curve;
    lgi::LgiResult result;
    std::string error;  ///< empty on success

    bool ok() const { return error.empty(); }
};

struct SweepResult {
    std::vector<SweepRow> rows;
    bool all_ok() const;
};

/// One row per (curve, tau) in curve-major order. Open scenarios share kernel
/// tables and u across each curve and report the snapped tau = m dt.
SweepResult run_sweep(const SweepSpec& spec);

/// Header plus one row per result; 12 significant digits.
void write_csv(std::ostream& os, const SweepSpec& spec, const SweepResult& result);

/// Largest tau above `tau_threshold` at which C3 > 1 + tol for the given curve, or 0.
double last_violation_tau(const SweepResult& result, const std::string& curve, double tau_threshold = 0.0);

std::vector<std::string> preset_names();
/// Figure presets: fig2a fig2b fig3a fig3b fig4a fig4b fig5a fig5b fig6a fig6b
/// fig7a fig7b fig8. ParameterError for an unknown name.
SweepSpec make_preset(const std::string& name);
/// One-line description of a preset.
std::string describe_preset(const std::string& name);

struct OracleCheckRow {
    double tau{0.0};
    double c3_negf{0.0};
    double c3_oracle{0.0};
    double delta{0.0};
    bool beyond_validity{false};
    bool pass{false};
};

struct OracleReport {
    std::vector<OracleCheckRow> rows;
    double threshold{3e-2};
    std::size_t modes{64};
    bool all_pass() const;
};

struct OracleCheckOptions {
    std::size_t modes{64};
    double span{20.0};
    double dt{0.01};
    double threshold{3e-2};
    unsigned workers{1};
};

/// |C3_negf - C3_oracle| per tau for the open pipeline against the finite bath.
OracleReport run_oracle_check(const DeviceConfig& config, const std::vector<double>& taus,
                              const OracleCheckOptions& options = {});

void write_oracle_csv(std::ostream& os, const OracleReport& report);
void write_oracle_summary(std::ostream& os, const OracleReport& report);

}  // namespace lgdot::sweep
