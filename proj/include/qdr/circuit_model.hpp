#pragma once

#include <string>
#include <vector>

#include "qdr/types.hpp"

namespace qdr {

/// Physical SQUID/qubit circuit description in SI units.
struct CircuitParams {
    double C_s = 0.0;     ///< shunt capacitance [F]
    double I_c0 = 0.0;    ///< junction critical current [A]
    double I_p = 0.0;     ///< qubit persistent current [A]
    double M = 0.0;       ///< mutual inductance [H]
    double phi_ex = 0.0;  ///< reduced external SQUID flux [Phi0]
    double I_0 = 0.0;     ///< drive current amplitude [A]
    double Phi_qb = 0.5;  ///< qubit flux bias [Phi0]
    double Delta = 0.0;   ///< qubit tunnel splitting [rad/s]
};

/// Dimensionless model description. Every energy, rate and frequency is in
/// units of the detector frequency Omega (hbar = k_B = 1).
struct ModelParams {
    double Omega = 1.0;
    double alpha = 0.0;
    double f = 0.0;
    double g = 0.0;
    double eps = 0.0;
    double delta = 0.0;
    double gamma = 0.0;
    double temp = 0.0;
    double omega_ex = 1.0;

    /// Qubit mixing angle, tan(theta) = delta / eps. Throws when eps = delta = 0.
    double theta() const;
    double omega_qb() const;
    /// Detector detuning Omega - omega_ex.
    double detuning() const { return Omega - omega_ex; }
    /// Qubit detuning omega_qb - 2 omega_ex.
    double qubit_detuning() const { return omega_qb() - 2.0 * omega_ex; }

    /// Soft check of the weak nonlinearity / drive / coupling regime.
    std::vector<std::string> regime_warnings() const;

    /// Detector-only parameters with Omega shifted by sign * g (qubit pinned in
    /// the tau_z = sign eigenstate); the returned set has g = 0.
    ModelParams pinned_detector(int sign) const;
};

/// Prefactor of the quartic term in the Duffing reduction of the SQUID potential.
enum class QuarticConvention {
    Nominal,  ///< alpha = 3 I_c phi0 chi0^4
    Taylor,   ///< alpha = I_c phi0 chi0^4 / 2, from expanding the cosine with m Omega^2 = I_c phi0
};

struct CircuitMapping {
    ModelParams model;
    double omega_rad_s = 0.0;  ///< detector frequency Omega [rad/s]
    double chi0 = 0.0;         ///< zero-point phase amplitude
    double g_tilde = 0.0;      ///< coupling energy 2 I_p I_0c M sin(pi phi_ex) [J]
};

/// Maps a circuit description to dimensionless model parameters. The bath
/// (gamma, temp) and drive frequency are not circuit quantities and are left
/// at their defaults.
CircuitMapping map_circuit_to_model(const CircuitParams& c,
                                    QuarticConvention quartic = QuarticConvention::Nominal);

struct NamedParams {
    std::string name;
    ModelParams params;
};

/// "fig1-detector-only" (g = 0) and "fig2-coupled" with omega_ex = 0.98.
std::vector<NamedParams> paper_parameter_sets();
ModelParams paper_parameter_set(const std::string& name);

/// Circuit of the flux-dependence figure (C_s = 7.65 pF, I_c0 = 200 nA,
/// I_p = 300 nA, M = 40 pH).
CircuitParams reference_circuit();

}  // namespace qdr
