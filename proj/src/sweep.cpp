#include "lgdot/sweep.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "lgdot/oracle.hpp"
#include "lgdot/parallel.hpp"

namespace lgdot::sweep {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

std::string label(const std::string& key, double value) { return key + "=" + fmt(value); }

// CSV fields never contain commas except in error text.
std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c == '\n' ? ' ' : c;
    }
    return out + "\"";
}

std::vector<SweepRow> run_closed(const SweepSpec& spec, const Curve& curve) {
    std::vector<SweepRow> rows(spec.tau_values.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i].curve = curve.label;
        rows[i].result.tau = spec.tau_values[i];
        try {
            rows[i].result =
                lgi::compute_lgi(curve.config, MeasurementSchedule(spec.tau_values[i]), lgi::Pipeline::Closed);
        } catch (const std::exception& e) {
            rows[i].error = e.what();
        }
    }
    return rows;
}

std::vector<SweepRow> run_open(const SweepSpec& spec, const Curve& curve) {
    std::vector<SweepRow> rows(spec.tau_values.size());
    std::vector<std::size_t> steps(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        steps[i] = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(spec.tau_values[i] / spec.dt)));
        rows[i].curve = curve.label;
        rows[i].result.tau = static_cast<double>(steps[i]) * spec.dt;
    }
    lgi::LgiOptions opts;
    opts.dt = spec.dt;
    std::unique_ptr<lgi::OpenLgiEvaluator> eval;
    try {
        eval = std::make_unique<lgi::OpenLgiEvaluator>(curve.config, spec.dt, steps.back(), opts);
    } catch (const std::exception& e) {
        for (auto& r : rows) r.error = e.what();
        return rows;
    }
    parallel_for(rows.size(), spec.workers, [&](std::size_t i) {
        try {
            rows[i].result = eval->evaluate(steps[i]);
        } catch (const std::exception& e) {
            rows[i].error = e.what();
        }
    });
    return rows;
}

DotHamiltonian dots_with(double e11, double e22, double e12) { return DotHamiltonian(e11, e22, e12); }

ReservoirParams reservoir(double W, double mu) { return {W, mu, 0.1}; }

using Builder = std::function<SweepSpec()>;

struct Preset {
    std::string description;
    Builder build;
};

SweepSpec closed_spec(const std::string& name, Scenario sc, bool vary_e12) {
    SweepSpec s;
    s.name = name;
    s.scenario = sc;
    s.tau_values = tau_range(0.02, 20.0, 1000);
    const ReservoirParams off = reservoir(1.0, 0.0);
    if (vary_e12) {
        for (double e12 : {0.3, 0.5, 1.0})
            s.curves.push_back({label("e12", e12), make_series_config(0, 0, dots_with(1, 1, e12), off, off)});
    } else {
        // The e22 values of this family are a guess.
        for (double e22 : {0.25, 0.5, 0.75, 1.0})
            s.curves.push_back({label("e22", e22), make_series_config(0, 0, dots_with(1, e22, 0.5), off, off)});
    }
    return s;
}

SweepSpec open_spec(const std::string& name, Scenario sc, Topology topo, bool vary_gamma) {
    SweepSpec s;
    s.name = name;
    s.scenario = sc;
    s.tau_values = tau_range(0.1, 10.0, 100);
    const DotHamiltonian dots = presets::figure_dots();
    auto make = [&](double g, double W) {
        const ReservoirParams l = reservoir(W, presets::mu_left);
        const ReservoirParams r = reservoir(W, presets::mu_right);
        return topo == Topology::Series ? make_series_config(g, g, dots, l, r)
                                        : make_parallel_config(g, g, dots, l, r);
    };
    if (vary_gamma) {
        // Parallel leads carry gamma/2 per dot, so these give gamma_11 = 0.1 .. 0.5.
        for (double g : {0.2, 0.4, 0.6, 0.8, 1.0}) s.curves.push_back({label("gamma", g), make(g, 1.0)});
    } else {
        for (double W : {0.5, 1.0, 1.5, 2.0, 3.0}) s.curves.push_back({label("W", W), make(0.3, W)});
    }
    return s;
}

SweepSpec comparison_spec() {
    SweepSpec s;
    s.name = "fig8";
    s.scenario = Scenario::OpenC4;
    s.tau_values = tau_range(0.1, 10.0, 100);
    const DotHamiltonian dots = presets::figure_dots();
    const ReservoirParams l = reservoir(1.0, presets::mu_left);
    const ReservoirParams r = reservoir(1.0, presets::mu_right);
    s.curves.push_back({"series", make_series_config(0.3, 0.3, dots, l, r)});
    s.curves.push_back({"parallel", make_parallel_config(0.3, 0.3, dots, l, r)});
    return s;
}

const std::map<std::string, Preset>& preset_table() {
    static const std::map<std::string, Preset> table = {
        {"fig2a", {"closed C3, e11 = e22 = 1, e12 in {0.3, 0.5, 1.0}",
                   [] { return closed_spec("fig2a", Scenario::ClosedC3, true); }}},
        {"fig2b", {"closed C3, e11 = 1, e12 = 0.5, e22 in {0.25, 0.5, 0.75, 1.0} (guessed values)",
                   [] { return closed_spec("fig2b", Scenario::ClosedC3, false); }}},
        {"fig3a", {"closed C4, e11 = e22 = 1, e12 in {0.3, 0.5, 1.0}",
                   [] { return closed_spec("fig3a", Scenario::ClosedC4, true); }}},
        {"fig3b", {"closed C4, e11 = 1, e12 = 0.5, e22 in {0.25, 0.5, 0.75, 1.0} (guessed values)",
                   [] { return closed_spec("fig3b", Scenario::ClosedC4, false); }}},
        {"fig4a", {"series C3, gamma in {0.2 .. 1.0}, W = 1",
                   [] { return open_spec("fig4a", Scenario::OpenC3, Topology::Series, true); }}},
        {"fig4b", {"series C3, gamma = 0.3, W in {0.5, 1, 1.5, 2, 3}",
                   [] { return open_spec("fig4b", Scenario::OpenC3, Topology::Series, false); }}},
        {"fig5a", {"series C4, gamma in {0.2 .. 1.0}, W = 1",
                   [] { return open_spec("fig5a", Scenario::OpenC4, Topology::Series, true); }}},
        {"fig5b", {"series C4, gamma = 0.3, W in {0.5, 1, 1.5, 2, 3}",
                   [] { return open_spec("fig5b", Scenario::OpenC4, Topology::Series, false); }}},
        {"fig6a", {"parallel C3, gamma in {0.2 .. 1.0} (gamma_11 = gamma / 2), W = 1",
                   [] { return open_spec("fig6a", Scenario::OpenC3, Topology::Parallel, true); }}},
        {"fig6b", {"parallel C3, gamma = 0.3, W in {0.5, 1, 1.5, 2, 3}",
                   [] { return open_spec("fig6b", Scenario::OpenC3, Topology::Parallel, false); }}},
        {"fig7a", {"parallel C4, gamma in {0.2 .. 1.0}, W = 1",
                   [] { return open_spec("fig7a", Scenario::OpenC4, Topology::Parallel, true); }}},
        {"fig7b", {"parallel C4, gamma = 0.3, W in {0.5, 1, 1.5, 2, 3}",
                   [] { return open_spec("fig7b", Scenario::OpenC4, Topology::Parallel, false); }}},
        {"fig8", {"series vs parallel, gamma = 0.3, W = 1 (C3 and C4)", comparison_spec}},
    };
    return table;
}

}  // namespace

std::string_view to_string(Scenario s) {
    switch (s) {
        case Scenario::ClosedC3: return "closed-c3";
        case Scenario::ClosedC4: return "closed-c4";
        case Scenario::OpenC3: return "open-c3";
        case Scenario::OpenC4: return "open-c4";
    }
    return "closed-c3";
}

Scenario scenario_from_string(std::string_view s) {
    const std::string k = lower(s);
    for (Scenario sc : {Scenario::ClosedC3, Scenario::ClosedC4, Scenario::OpenC3, Scenario::OpenC4})
        if (k == to_string(sc)) return sc;
    throw ParameterError("unknown scenario '" + std::string(s) + "'");
}

bool is_open(Scenario s) { return s == Scenario::OpenC3 || s == Scenario::OpenC4; }

bool reports_c4(Scenario s) { return s == Scenario::ClosedC4 || s == Scenario::OpenC4; }

std::vector<double> tau_range(double tau_min, double tau_max, std::size_t steps) {
    if (steps == 0) throw ParameterError("tau_steps must be positive");
    if (!(tau_min > 0.0)) throw ParameterError("tau_min must be positive");
    if (steps == 1) return {tau_min};
    if (!(tau_max > tau_min)) throw ParameterError("tau_max must exceed tau_min");
    std::vector<double> out(steps);
    const double h = (tau_max - tau_min) / static_cast<double>(steps - 1);
    for (std::size_t i = 0; i < steps; ++i) out[i] = tau_min + h * static_cast<double>(i);
    out.back() = tau_max;
    return out;
}

void validate(const SweepSpec& spec) {
    if (spec.curves.empty()) throw ParameterError("sweep has no curves");
    if (spec.tau_values.empty()) throw ParameterError("sweep has no tau values");
    for (std::size_t i = 0; i < spec.tau_values.size(); ++i) {
        if (!(spec.tau_values[i] > 0.0)) throw ParameterError("tau values must be positive");
        if (i > 0 && !(spec.tau_values[i] > spec.tau_values[i - 1]))
            throw ParameterError("tau values must be strictly increasing");
    }
    if (is_open(spec.scenario) && !(spec.dt > 0.0)) throw ParameterError("dt must be positive");
}

bool SweepResult::all_ok() const {
    return std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.ok(); });
}

SweepResult run_sweep(const SweepSpec& spec) {
    validate(spec);
    SweepResult out;
    for (const Curve& c : spec.curves) {
        auto rows = is_open(spec.scenario) ? run_open(spec, c) : run_closed(spec, c);
        out.rows.insert(out.rows.end(), std::make_move_iterator(rows.begin()), std::make_move_iterator(rows.end()));
    }
    return out;
}

void write_csv(std::ostream& os, const SweepSpec& spec, const SweepResult& result) {
    const bool c4 = reports_c4(spec.scenario);
    os << "curve,tau,C21,C32,C31";
    if (c4) os << ",C43,C41";
    os << ",C3";
    if (c4) os << ",C4";
    os << ",violates,status\n";
    for (const SweepRow& row : result.rows) {
        const lgi::LgiResult& r = row.result;
        os << csv_escape(row.curve) << ',' << fmt(r.tau);
        if (!row.ok()) {
            os << ",,,";
            if (c4) os << ",,";
            os << ',';
            if (c4) os << ',';
            os << ",," << csv_escape("error: " + row.error) << '\n';
            continue;
        }
        os << ',' << fmt(r.C21) << ',' << fmt(r.C32) << ',' << fmt(r.C31);
        if (c4) os << ',' << fmt(r.C43) << ',' << fmt(r.C41);
        os << ',' << fmt(r.C3);
        if (c4) os << ',' << fmt(r.C4);
        const bool v = r.violates_C3 || (c4 && r.violates_C4);
        os << ',' << (v ? 1 : 0) << ",ok\n";
    }
}

double last_violation_tau(const SweepResult& result, const std::string& curve, double tau_threshold) {
    double last = 0.0;
    for (const SweepRow& row : result.rows)
        if (row.curve == curve && row.ok() && row.result.tau > tau_threshold && row.result.violates_C3)
            last = std::max(last, row.result.tau);
    return last;
}

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& [k, v] : preset_table()) names.push_back(k);
    std::sort(names.begin(), names.end(), [](const std::string& a, const std::string& b) {
        // fig10 would sort before fig2 lexically; compare by number first.
        const int na = std::stoi(a.substr(3)), nb = std::stoi(b.substr(3));
        return na != nb ? na < nb : a < b;
    });
    return names;
}

SweepSpec make_preset(const std::string& name) {
    const auto& table = preset_table();
    const auto it = table.find(lower(name));
    if (it == table.end()) throw ParameterError("unknown preset '" + name + "'");
    return it->second.build();
}

std::string describe_preset(const std::string& name) {
    const auto& table = preset_table();
    const auto it = table.find(lower(name));
    if (it == table.end()) throw ParameterError("unknown preset '" + name + "'");
    return it->second.description;
}

bool OracleReport::all_pass() const {
    return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const OracleCheckRow& r) { return r.pass; });
}

OracleReport run_oracle_check(const DeviceConfig& config, const std::vector<double>& taus,
                              const OracleCheckOptions& options) {
    if (taus.empty()) throw ParameterError("oracle check needs at least one tau");
    OracleReport report;
    report.threshold = options.threshold;
    report.modes = options.modes;
    const oracle::FiniteBath bath = oracle::build_bath(config, options.modes, options.span);
    report.rows.resize(taus.size());

    std::vector<std::size_t> steps(taus.size());
    for (std::size_t i = 0; i < taus.size(); ++i)
        steps[i] = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(taus[i] / options.dt)));
    lgi::LgiOptions opts;
    opts.dt = options.dt;
    const lgi::OpenLgiEvaluator eval(config, options.dt, *std::max_element(steps.begin(), steps.end()), opts);

    parallel_for(taus.size(), options.workers, [&](std::size_t i) {
        const double tau = static_cast<double>(steps[i]) * options.dt;
        OracleCheckRow& row = report.rows[i];
        row.tau = tau;
        row.c3_negf = eval.evaluate(steps[i]).C3;
        row.c3_oracle = oracle::oracle_lgi(config, bath, tau).C3;
        row.delta = std::abs(row.c3_negf - row.c3_oracle);
        row.beyond_validity = !bath.energy.empty() && 3.0 * tau > bath.validity_time();
        row.pass = row.delta < options.threshold;
    });
    return report;
}

void write_oracle_csv(std::ostream& os, const OracleReport& report) {
    os << "tau,C3_negf,C3_oracle,abs_delta,threshold,beyond_validity,pass\n";
    for (const auto& r : report.rows)
        os << fmt(r.tau) << ',' << fmt(r.c3_negf) << ',' << fmt(r.c3_oracle) << ',' << fmt(r.delta) << ','
           << fmt(report.threshold) << ',' << (r.beyond_validity ? 1 : 0) << ',' << (r.pass ? 1 : 0) << '\n';
}

void write_oracle_summary(std::ostream& os, const OracleReport& report) {
    for (const auto& r : report.rows) {
        os << "tau=" << fmt(r.tau) << "  C3 negf=" << fmt(r.c3_negf) << "  oracle=" << fmt(r.c3_oracle)
           << "  |delta|=" << std::setprecision(3) << std::scientific << r.delta << std::defaultfloat
           << (r.pass ? "  pass" : "  FAIL") << (r.beyond_validity ? "  (beyond bath recurrence time)" : "")
           << '\n';
    }
    os << (report.all_pass() ? "oracle check passed" : "oracle check FAILED") << " (K=" << report.modes
       << ", threshold " << report.threshold << ")\n";
}

}  // namespace lgdot::sweep
