#include "qdr/circuit_model.hpp"

#include <cmath>

namespace qdr {

namespace {

constexpr double kHbar = 1.054571817e-34;
constexpr double kElementaryCharge = 1.602176634e-19;
constexpr double kFluxQuantum = 2.0 * kPi * kHbar / (2.0 * kElementaryCharge);
constexpr double kReducedFluxQuantum = kFluxQuantum / (2.0 * kPi);

constexpr double kRegimeLimit = 0.1;

}  // namespace

double ModelParams::theta() const {
    if (eps == 0.0 && delta == 0.0)
        throw ConfigError("qubit mixing angle undefined for eps = delta = 0");
    return std::atan2(delta, eps);
}

double ModelParams::omega_qb() const { return std::hypot(eps, delta); }

std::vector<std::string> ModelParams::regime_warnings() const {
    std::vector<std::string> out;
    auto check = [&](const char* name, double value) {
        if (std::abs(value) > kRegimeLimit * Omega)
            out.push_back(std::string(name) + " exceeds 0.1 Omega; RWA regime assumption violated");
    };
    check("alpha", alpha);
    check("f", f);
    check("g", g);
    return out;
}

ModelParams ModelParams::pinned_detector(int sign) const {
    ModelParams p = *this;
    p.Omega = Omega + (sign >= 0 ? g : -g);
    p.g = 0.0;
    return p;
}

CircuitMapping map_circuit_to_model(const CircuitParams& c, QuarticConvention quartic) {
    if (!(c.C_s > 0.0) || !(c.I_c0 > 0.0))
        throw ConfigError("circuit requires C_s > 0 and I_c0 > 0");
    if (c.I_p < 0.0 || c.M < 0.0)
        throw ConfigError("circuit requires I_p >= 0 and M >= 0");
    const double cos_flux = std::cos(kPi * c.phi_ex);
    if (std::abs(cos_flux) < 1e-12)
        throw NumericalError("detector frequency undefined: cos(pi phi_ex) = 0");

    const double phi0 = kReducedFluxQuantum;
    const double I_c = 2.0 * c.I_c0 * std::abs(cos_flux);
    const double mass = phi0 * phi0 * c.C_s;
    const double omega = std::sqrt(I_c / (phi0 * c.C_s));
    const double chi0 = std::sqrt(kHbar / (2.0 * mass * omega));
    const double chi0_sq = chi0 * chi0;

    const double alpha_energy = quartic == QuarticConvention::Nominal
                                    ? 3.0 * I_c * phi0 * chi0_sq * chi0_sq
                                    : 0.5 * I_c * phi0 * chi0_sq * chi0_sq;
    const double drive_energy = c.I_0 * phi0 * chi0;
    const double g_tilde = 2.0 * c.I_p * c.I_c0 * c.M * std::sin(kPi * c.phi_ex);
    const double g_energy = 2.0 * g_tilde * chi0_sq;
    const double eps_energy = 2.0 * c.I_p * kFluxQuantum * (c.Phi_qb - 0.5);

    const double unit = kHbar * omega;
    CircuitMapping out;
    out.omega_rad_s = omega;
    out.chi0 = chi0;
    out.g_tilde = g_tilde;
    out.model.Omega = 1.0;
    out.model.alpha = alpha_energy / unit;
    out.model.f = drive_energy / unit;
    out.model.g = g_energy / unit;
    out.model.eps = eps_energy / unit;
    out.model.delta = c.Delta / omega;
    return out;
}

std::vector<NamedParams> paper_parameter_sets() {
    ModelParams detector;
    detector.alpha = 0.01;
    detector.f = 0.006;
    detector.temp = 0.006;
    detector.gamma = 1.6e-4;
    detector.g = 0.0;
    detector.eps = 2.2;
    detector.delta = 0.05;
    detector.omega_ex = 0.98;

    ModelParams coupled = detector;
    coupled.g = 0.0012;
    return {{"fig1-detector-only", detector}, {"fig2-coupled", coupled}};
}

ModelParams paper_parameter_set(const std::string& name) {
    for (const auto& set : paper_parameter_sets())
        if (set.name == name) return set.params;
    throw ConfigError("unknown parameter set '" + name + "'");
}

CircuitParams reference_circuit() {
    CircuitParams c;
    c.C_s = 7.65e-12;
    c.I_c0 = 200e-9;
    c.I_p = 300e-9;
    c.M = 40e-12;
    return c;
}

}  // namespace qdr
