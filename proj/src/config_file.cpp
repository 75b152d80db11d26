#include "lgdot/config_file.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/lexical_cast.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace lgdot {

namespace {

namespace pt = boost::property_tree;

enum class LeadForm { Absent, Series, Parallel, Matrix };

struct ParsedLead {
    LeadForm form{LeadForm::Absent};
    double g{0.0};
    RealMat2 gamma{RealMat2::Zero()};
    ReservoirParams params;
};

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ParameterError("config: " + where + ": " + what);
}

double to_double(const std::string& where, const std::string& text) {
    try {
        return boost::lexical_cast<double>(boost::trim_copy(text));
    } catch (const boost::bad_lexical_cast&) {
        fail(where, "'" + text + "' is not a number");
    }
}

std::vector<double> to_list(const std::string& where, const std::string& text) {
    std::vector<std::string> parts;
    boost::split(parts, text, boost::is_any_of(","));
    std::vector<double> out;
    for (const auto& p : parts) out.push_back(to_double(where, p));
    return out;
}

void reject_unknown(const pt::ptree& section, const std::string& name, const std::set<std::string>& allowed) {
    for (const auto& [key, value] : section)
        if (!allowed.count(key)) fail("[" + name + "]", "unknown key '" + key + "'");
}

double get(const pt::ptree& section, const std::string& name, const std::string& key, double fallback) {
    const auto v = section.get_optional<std::string>(key);
    return v ? to_double("[" + name + "] " + key, *v) : fallback;
}

ParsedLead parse_lead(const pt::ptree& root, const std::string& name, double default_mu) {
    ParsedLead lead;
    lead.params = ReservoirParams{1.0, default_mu, 0.1};
    const auto section = root.get_child_optional(name);
    if (!section) return lead;
    reject_unknown(*section, name, {"series", "parallel", "gamma", "W", "mu", "kT"});
    const int forms = static_cast<int>(section->count("series") + section->count("parallel") + section->count("gamma"));
    if (forms > 1) fail("[" + name + "]", "give only one of series, parallel, gamma");
    lead.params.bandwidth = get(*section, name, "W", lead.params.bandwidth);
    lead.params.mu = get(*section, name, "mu", lead.params.mu);
    lead.params.temperature = get(*section, name, "kT", lead.params.temperature);
    if (section->count("series")) {
        lead.form = LeadForm::Series;
        lead.g = get(*section, name, "series", 0.0);
    } else if (section->count("parallel")) {
        lead.form = LeadForm::Parallel;
        lead.g = get(*section, name, "parallel", 0.0);
    } else if (section->count("gamma")) {
        lead.form = LeadForm::Matrix;
        const auto v = to_list("[" + name + "] gamma", section->get<std::string>("gamma"));
        if (v.size() != 3) fail("[" + name + "] gamma", "expected g11,g12,g22");
        lead.gamma << v[0], v[1], v[1], v[2];
    }
    return lead;
}

RealMat2 matrix_of(const ParsedLead& lead, int series_dot) {
    switch (lead.form) {
        case LeadForm::Absent: return RealMat2::Zero();
        case LeadForm::Series: {
            if (lead.g < 0.0) throw ParameterError("config: negative coupling");
            RealMat2 g = RealMat2::Zero();
            g(series_dot, series_dot) = lead.g;
            return g;
        }
        case LeadForm::Parallel: {
            if (lead.g < 0.0) throw ParameterError("config: negative coupling");
            const double d = lead.g / 2.0;
            RealMat2 g;
            g << d, std::sqrt(d * d), std::sqrt(d * d), d;
            return g;
        }
        case LeadForm::Matrix: return lead.gamma;
    }
    return RealMat2::Zero();
}

DotHamiltonian parse_dots(const pt::ptree& root) {
    const auto section = root.get_child_optional("dots");
    if (!section) return presets::figure_dots();
    reject_unknown(*section, "dots", {"e11", "e22", "e12"});
    const double e11 = get(*section, "dots", "e11", 1.0);
    const double e22 = get(*section, "dots", "e22", 1.0);
    cplx e12{0.5, 0.0};
    if (const auto v = section->get_optional<std::string>("e12")) {
        const auto parts = to_list("[dots] e12", *v);
        if (parts.size() == 1) e12 = parts[0];
        else if (parts.size() == 2) e12 = cplx(parts[0], parts[1]);
        else fail("[dots] e12", "expected a real number or re,im");
    }
    return DotHamiltonian(e11, e22, e12);
}

RunSection parse_run(const pt::ptree& root) {
    RunSection run;
    const auto section = root.get_child_optional("run");
    if (!section) return run;
    reject_unknown(*section, "run", {"tau_min", "tau_max", "tau_steps", "grid_dt", "scenario"});
    run.tau_min = get(*section, "run", "tau_min", run.tau_min);
    run.tau_max = get(*section, "run", "tau_max", run.tau_max);
    run.grid_dt = get(*section, "run", "grid_dt", run.grid_dt);
    const double steps = get(*section, "run", "tau_steps", static_cast<double>(run.tau_steps));
    if (!(steps >= 1.0) || steps != std::floor(steps)) fail("[run] tau_steps", "must be a positive integer");
    run.tau_steps = static_cast<std::size_t>(steps);
    if (const auto s = section->get_optional<std::string>("scenario"))
        run.scenario = sweep::scenario_from_string(boost::trim_copy(*s));
    if (!(run.grid_dt > 0.0)) fail("[run] grid_dt", "must be positive");
    if (!(run.tau_min > 0.0)) fail("[run] tau_min", "must be positive");
    if (run.tau_steps > 1 && !(run.tau_max > run.tau_min)) fail("[run] tau_max", "must exceed tau_min");
    return run;
}

}  // namespace

sweep::SweepSpec ConfigFile::to_sweep(const std::string& label) const {
    sweep::SweepSpec spec;
    spec.name = label;
    spec.scenario = run.scenario;
    spec.curves.push_back({label, device});
    spec.tau_values = sweep::tau_range(run.tau_min, run.tau_max, run.tau_steps);
    spec.dt = run.grid_dt;
    return spec;
}

ConfigFile parse_config(std::istream& in) {
    // The INI reader only knows whole-line ';' comments.
    std::ostringstream filtered;
    for (std::string line; std::getline(in, line);) {
        if (const auto c = line.find_first_of("#;"); c != std::string::npos) line.erase(c);
        filtered << line << '\n';
    }
    std::istringstream text(filtered.str());
    pt::ptree root;
    try {
        pt::read_ini(text, root);
    } catch (const pt::ini_parser_error& e) {
        throw ParameterError(std::string("config: ") + e.what());
    }
    for (const auto& [name, section] : root)
        if (name != "dots" && name != "left" && name != "right" && name != "run")
            fail("[" + name + "]", "unknown section");

    const DotHamiltonian dots = parse_dots(root);
    const ParsedLead left = parse_lead(root, "left", presets::mu_left);
    const ParsedLead right = parse_lead(root, "right", presets::mu_right);
    const RunSection run = parse_run(root);

    auto both = [&](LeadForm f) { return left.form == f && right.form == f; };
    if (both(LeadForm::Series)) return {make_series_config(left.g, right.g, dots, left.params, right.params), run};
    if (both(LeadForm::Parallel))
        return {make_parallel_config(left.g, right.g, dots, left.params, right.params), run};
    return {make_custom_config(dots, LeadSpec(matrix_of(left, 0), left.params),
                               LeadSpec(matrix_of(right, 1), right.params)),
            run};
}

ConfigFile parse_config_string(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

ConfigFile load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("config: cannot open '" + path + "'");
    return parse_config(in);
}

}  // namespace lgdot
