#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qdr/circuit_model.hpp"
#include "qdr/liouvillian.hpp"
#include "qdr/spectra.hpp"
#include "qdr/steady_state.hpp"

namespace qdr {

enum class Dimension { Capacitance, Current, Inductance, AngularFrequency, Flux, ModelUnit };

/// Parses "7.65 pF", "200nA", "1.6e-4 Omega", "0.1 Phi0" into SI (or Omega
/// units for ModelUnit). SI prefixes f p n u m k M G are accepted; Hz is
/// converted to rad/s. Flux and model quantities may omit the unit.
double parse_quantity(const std::string& text, Dimension dim);

struct SweepSettings {
    double from = 0.96;
    double to = 1.005;
    int points = 800;
    std::vector<QubitMode> modes{QubitMode::Up, QubitMode::Down};
    std::vector<double> f_list;  ///< empty: use model.f
    int n_fock = 20;
    bool metrics = true;
    RateModel rate_model = RateModel::FloquetMarkov;
};

struct ScanSettings {
    double phi_from = 0.0;
    double phi_to = 0.4;
    int points = 401;
};

struct SpectrumSettings {
    SpectrumOperator op = SpectrumOperator::Chi2;
    QubitMode mode = QubitMode::Up;
    double from = -3.0;
    double to = 3.0;
    int points = 601;
};

struct OracleSettings {
    std::vector<double> omega_list{0.97, 0.975, 0.9788, 0.985, 0.99};
    QubitMode mode = QubitMode::Coupled;
    int n_fock = 8;
    int reference_n_fock = 0;  ///< truncation of the propagated reference (0: n_fock)
};

struct AppConfig {
    ModelParams model;
    std::optional<CircuitParams> circuit;
    QuarticConvention quartic = QuarticConvention::Nominal;
    SweepSettings sweep;
    ScanSettings scan;
    SpectrumSettings spectrum;
    OracleSettings oracle;
    int resonances_n_max = 5;
    std::string out;           ///< primary CSV path ("" = stdout)
    std::string branches_out;  ///< optional quasienergy-branch CSV for sweeps
};

/// INI-style sections [circuit], [model], [sweep], [scan], [spectrum],
/// [oracle], [resonances], [output]. [model] keys override values derived
/// from [circuit]. Throws ConfigError on unknown keys or malformed values.
AppConfig parse_config(std::istream& in);
AppConfig load_config(const std::string& path);

/// Shipped figure configurations (fig0 .. fig5).
std::string preset_path(const std::string& name);
AppConfig load_preset(const std::string& name);

/// Comma-separated qubit modes; "none" gives an empty list.
std::vector<QubitMode> parse_mode_list(const std::string& text);
std::vector<double> parse_number_list(const std::string& text);

}  // namespace qdr
