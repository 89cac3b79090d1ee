#include "qdr/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#ifndef QDR_PRESET_DIR
#define QDR_PRESET_DIR "presets"
#endif

namespace qdr {

namespace {

namespace pt = boost::property_tree;

double prefix_scale(char c) {
    switch (c) {
        case 'f': return 1e-15;
        case 'p': return 1e-12;
        case 'n': return 1e-9;
        case 'u': return 1e-6;
        case 'm': return 1e-3;
        case 'k': return 1e3;
        case 'M': return 1e6;
        case 'G': return 1e9;
        default: return 0.0;
    }
}

const char* dimension_name(Dimension d) {
    switch (d) {
        case Dimension::Capacitance: return "capacitance (F)";
        case Dimension::Current: return "current (A)";
        case Dimension::Inductance: return "inductance (H)";
        case Dimension::AngularFrequency: return "angular frequency (rad/s or Hz)";
        case Dimension::Flux: return "flux (Phi0)";
        case Dimension::ModelUnit: return "dimensionless (Omega)";
    }
    return "";
}

// Scale of an unprefixed unit for the given dimension, 0 if not accepted.
double base_scale(const std::string& unit, Dimension d) {
    switch (d) {
        case Dimension::Capacitance: return unit == "F" ? 1.0 : 0.0;
        case Dimension::Current: return unit == "A" ? 1.0 : 0.0;
        case Dimension::Inductance: return unit == "H" ? 1.0 : 0.0;
        case Dimension::AngularFrequency:
            if (unit == "rad/s") return 1.0;
            if (unit == "Hz") return 2.0 * kPi;
            return 0.0;
        case Dimension::Flux: return unit == "Phi0" ? 1.0 : 0.0;
        case Dimension::ModelUnit: return unit == "Omega" ? 1.0 : 0.0;
    }
    return 0.0;
}

std::string trimmed(std::string s) {
    boost::algorithm::trim(s);
    return s;
}

int parse_int(const std::string& text, const std::string& key) {
    const std::string t = trimmed(text);
    try {
        size_t pos = 0;
        const int v = std::stoi(t, &pos);
        if (pos == t.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError("key '" + key + "': expected an integer, got '" + text + "'");
}

bool parse_bool(const std::string& text, const std::string& key) {
    const std::string t = boost::algorithm::to_lower_copy(trimmed(text));
    if (t == "true" || t == "yes" || t == "1" || t == "on") return true;
    if (t == "false" || t == "no" || t == "0" || t == "off") return false;
    throw ConfigError("key '" + key + "': expected a boolean, got '" + text + "'");
}

double quantity(const std::string& text, Dimension d, const std::string& key) {
    try {
        return parse_quantity(text, d);
    } catch (const ConfigError& e) {
        throw ConfigError("key '" + key + "': " + e.what());
    }
}

using Handler = std::function<void(const std::string&)>;

void apply_section(const pt::ptree& tree, const std::string& section, const std::map<std::string, Handler>& keys) {
    const auto child = tree.get_child_optional(section);
    if (!child) return;
    for (const auto& [key, node] : *child) {
        const auto it = keys.find(key);
        if (it == keys.end()) throw ConfigError("unknown key '" + key + "' in [" + section + "]");
        it->second(node.data());
    }
}

}  // namespace

double parse_quantity(const std::string& text, Dimension dim) {
    const std::string t = trimmed(text);
    if (t.empty()) throw ConfigError("empty value for a " + std::string(dimension_name(dim)) + " quantity");
    size_t pos = 0;
    double value = 0.0;
    try {
        value = std::stod(t, &pos);
    } catch (const std::exception&) {
        throw ConfigError("'" + t + "' is not a number");
    }
    const std::string unit = trimmed(t.substr(pos));
    if (unit.empty()) {
        if (dim == Dimension::Flux || dim == Dimension::ModelUnit) return value;
        throw ConfigError("'" + t + "' needs a unit suffix for " + dimension_name(dim));
    }
    if (const double s = base_scale(unit, dim); s != 0.0) return value * s;
    if (unit.size() > 1 && dim != Dimension::Flux && dim != Dimension::ModelUnit) {
        const double p = prefix_scale(unit.front());
        const double s = base_scale(unit.substr(1), dim);
        if (p != 0.0 && s != 0.0) return value * p * s;
    }
    throw ConfigError("unit '" + unit + "' is not valid for " + dimension_name(dim));
}

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<std::string> parts;
    boost::algorithm::split(parts, text, boost::is_any_of(", "), boost::token_compress_on);
    std::vector<double> out;
    for (const auto& p : parts) {
        if (trimmed(p).empty()) continue;
        out.push_back(parse_quantity(p, Dimension::ModelUnit));
    }
    return out;
}

std::vector<QubitMode> parse_mode_list(const std::string& text) {
    if (trimmed(text) == "none") return {};
    std::vector<std::string> parts;
    boost::algorithm::split(parts, text, boost::is_any_of(", "), boost::token_compress_on);
    std::vector<QubitMode> out;
    for (const auto& p : parts) {
        const std::string t = trimmed(p);
        if (t.empty()) continue;
        out.push_back(qubit_mode_from_string(t));
    }
    return out;
}

AppConfig parse_config(std::istream& in) {
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    for (const auto& [section, node] : tree) {
        static const char* known[] = {"circuit", "model", "sweep", "scan", "spectrum", "oracle", "resonances", "output"};
        bool ok = false;
        for (const char* k : known) ok = ok || section == k;
        if (!ok) throw ConfigError("unknown section [" + section + "]");
        if (node.empty() && !node.data().empty())
            throw ConfigError("key '" + section + "' outside of any section");
    }

    AppConfig cfg;

    if (tree.get_child_optional("circuit")) {
        CircuitParams c;
        const std::map<std::string, Handler> keys{
            {"C_s", [&](const std::string& v) { c.C_s = quantity(v, Dimension::Capacitance, "C_s"); }},
            {"I_c0", [&](const std::string& v) { c.I_c0 = quantity(v, Dimension::Current, "I_c0"); }},
            {"I_p", [&](const std::string& v) { c.I_p = quantity(v, Dimension::Current, "I_p"); }},
            {"M", [&](const std::string& v) { c.M = quantity(v, Dimension::Inductance, "M"); }},
            {"phi_ex", [&](const std::string& v) { c.phi_ex = quantity(v, Dimension::Flux, "phi_ex"); }},
            {"I_0", [&](const std::string& v) { c.I_0 = quantity(v, Dimension::Current, "I_0"); }},
            {"Phi_qb", [&](const std::string& v) { c.Phi_qb = quantity(v, Dimension::Flux, "Phi_qb"); }},
            {"Delta", [&](const std::string& v) { c.Delta = quantity(v, Dimension::AngularFrequency, "Delta"); }},
            {"quartic",
             [&](const std::string& v) {
                 const std::string t = trimmed(v);
                 if (t == "nominal") cfg.quartic = QuarticConvention::Nominal;
                 else if (t == "taylor") cfg.quartic = QuarticConvention::Taylor;
                 else throw ConfigError("key 'quartic': expected nominal or taylor");
             }},
        };
        apply_section(tree, "circuit", keys);
        cfg.circuit = c;
        cfg.model = map_circuit_to_model(c, cfg.quartic).model;
    }

    ModelParams& m = cfg.model;
    if (const auto set = tree.get_optional<std::string>("model.set")) {
        // A named set replaces circuit-derived values; single keys still override.
        m = paper_parameter_set(trimmed(*set));
    }
    auto model_key = [&](double& field, const char* name) {
        return std::pair<const std::string, Handler>{
            name, [&field, name](const std::string& v) { field = quantity(v, Dimension::ModelUnit, name); }};
    };
    apply_section(tree, "model",
                  {{"set", [](const std::string&) {}}, model_key(m.Omega, "Omega"), model_key(m.alpha, "alpha"),
                   model_key(m.f, "f"), model_key(m.g, "g"), model_key(m.eps, "eps"), model_key(m.delta, "delta"),
                   model_key(m.gamma, "gamma"), model_key(m.temp, "temp"), model_key(m.omega_ex, "omega_ex")});
    if (m.Omega != 1.0) throw ConfigError("key 'Omega': energies are expressed in units of Omega, so Omega = 1");
    if (m.gamma < 0.0) throw ConfigError("key 'gamma': must be non-negative");
    if (m.temp < 0.0) throw ConfigError("key 'temp': must be non-negative");

    SweepSettings& s = cfg.sweep;
    apply_section(
        tree, "sweep",
        {{"from", [&](const std::string& v) { s.from = quantity(v, Dimension::ModelUnit, "from"); }},
         {"to", [&](const std::string& v) { s.to = quantity(v, Dimension::ModelUnit, "to"); }},
         {"points", [&](const std::string& v) { s.points = parse_int(v, "points"); }},
         {"modes", [&](const std::string& v) { s.modes = parse_mode_list(v); }},
         {"f_list", [&](const std::string& v) { s.f_list = parse_number_list(v); }},
         {"n_fock", [&](const std::string& v) { s.n_fock = parse_int(v, "n_fock"); }},
         {"metrics", [&](const std::string& v) { s.metrics = parse_bool(v, "metrics"); }},
         {"rate_model", [&](const std::string& v) {
              const std::string t = trimmed(v);
              if (t == "floquet-markov") s.rate_model = RateModel::FloquetMarkov;
              else if (t == "lindblad") s.rate_model = RateModel::Lindblad;
              else throw ConfigError("key 'rate_model': expected floquet-markov or lindblad");
          }}});

    ScanSettings& sc = cfg.scan;
    apply_section(tree, "scan",
                  {{"phi_from", [&](const std::string& v) { sc.phi_from = quantity(v, Dimension::Flux, "phi_from"); }},
                   {"phi_to", [&](const std::string& v) { sc.phi_to = quantity(v, Dimension::Flux, "phi_to"); }},
                   {"points", [&](const std::string& v) { sc.points = parse_int(v, "points"); }}});

    SpectrumSettings& sp = cfg.spectrum;
    apply_section(tree, "spectrum",
                  {{"operator", [&](const std::string& v) { sp.op = spectrum_operator_from_string(trimmed(v)); }},
                   {"mode", [&](const std::string& v) { sp.mode = qubit_mode_from_string(trimmed(v)); }},
                   {"from", [&](const std::string& v) { sp.from = quantity(v, Dimension::ModelUnit, "from"); }},
                   {"to", [&](const std::string& v) { sp.to = quantity(v, Dimension::ModelUnit, "to"); }},
                   {"points", [&](const std::string& v) { sp.points = parse_int(v, "points"); }}});

    OracleSettings& o = cfg.oracle;
    apply_section(tree, "oracle",
                  {{"omega_list", [&](const std::string& v) { o.omega_list = parse_number_list(v); }},
                   {"mode", [&](const std::string& v) { o.mode = qubit_mode_from_string(trimmed(v)); }},
                   {"n_fock", [&](const std::string& v) { o.n_fock = parse_int(v, "n_fock"); }},
                   {"reference_n_fock",
                    [&](const std::string& v) { o.reference_n_fock = parse_int(v, "reference_n_fock"); }}});

    apply_section(tree, "resonances",
                  {{"n_max", [&](const std::string& v) { cfg.resonances_n_max = parse_int(v, "n_max"); }}});

    apply_section(tree, "output",
                  {{"out", [&](const std::string& v) { cfg.out = trimmed(v); }},
                   {"branches", [&](const std::string& v) { cfg.branches_out = trimmed(v); }}});

    if (s.points < 2) throw ConfigError("[sweep] points must be >= 2");
    if (!(s.from < s.to)) throw ConfigError("[sweep] requires from < to");
    if (s.n_fock < 2) throw ConfigError("[sweep] n_fock must be >= 2");
    if (tree.get_optional<std::string>("sweep.f_list") && s.f_list.empty())
        throw ConfigError("[sweep] f_list must not be empty when given");
    if (sc.points < 2 || !(sc.phi_from < sc.phi_to)) throw ConfigError("[scan] requires points >= 2 and phi_from < phi_to");
    if (sp.points < 1 || sp.from > sp.to) throw ConfigError("[spectrum] requires points >= 1 and from <= to");
    if (cfg.resonances_n_max < 1) throw ConfigError("[resonances] n_max must be >= 1");
    return cfg;
}

AppConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in);
}

std::string preset_path(const std::string& name) {
    static const char* names[] = {"fig0", "fig1", "fig2", "fig3", "fig4", "fig5"};
    for (const char* n : names)
        if (name == n) return std::string(QDR_PRESET_DIR) + "/" + name + ".cfg";
    throw ConfigError("unknown preset '" + name + "' (expected fig0 .. fig5)");
}

AppConfig load_preset(const std::string& name) { return load_config(preset_path(name)); }

}  // namespace qdr
