#pragma once

#include <map>
#include <string>

#include "qdr/liouvillian.hpp"
#include "qdr/steady_state.hpp"

namespace qdr {

enum class SpectrumOperator { Chi, Chi2 };

std::string to_string(SpectrumOperator op);
SpectrumOperator spectrum_operator_from_string(const std::string& name);

/// Fourier components of chi+ or chi+^2 in chi0 = 1 units.
const std::map<int, CMatrix>& operator_components(const FourierComponents& fc, SpectrumOperator op);

/// Regression coefficients of the period-averaged correlation
///   <A(t) B(0)> = sum_{m,n} coeff[n](m) exp((Gamma_m - i n omega_ex) t),
/// coeff[n](m) = tr(A_n V^m) <v_m, vec(B_{-n} rho)>.
struct CorrelationData {
    CVector eigenvalues;
    Eigen::Index stationary = 0;
    std::map<int, CVector> coeff;
    double omega_ex = 0.0;

    /// Sum of all coefficients: the equal-time correlation <A B>.
    Complex equal_time() const;
};

CorrelationData correlation_spectral_data(const Eigendecomposition& eig, const Liouvillian& L,
                                          const std::map<int, CMatrix>& A, const std::map<int, CMatrix>& B,
                                          const CMatrix& rho, double omega_ex);

/// Symmetrized, connected spectrum
///   S[w] = 1/2 int dt e^{iwt} <{A(t), B(0)}>  minus the coherent (stationary-mode) part,
/// evaluated term by term as complex Lorentzians. Needs both orderings.
double symmetrized_spectrum(const CorrelationData& ab, const CorrelationData& ba, double omega);

/// Convenience: autospectrum of one operator for a solved detector.
struct SpectrumEvaluator {
    CorrelationData data;
    double operator()(double omega) const { return symmetrized_spectrum(data, data, omega); }
};
SpectrumEvaluator make_autospectrum(const Eigendecomposition& eig, const Liouvillian& L,
                                    const FourierComponents& fc, const SteadyState& ss, SpectrumOperator op,
                                    double omega_ex);

/// Gamma = (g^2 / 4) sin^2(theta) * S_{(a+a+)^2}[-omega_qb] = g^2 sin^2(theta) S_{chi2}[-omega_qb].
double relaxation_rate(const ModelParams& p, double S_chi2_at_minus_omega_qb);

/// T_meas = S_chi[0] / D^2 in units of 1/Omega; +inf when D = 0.
double measurement_time(double D, double S_chi_zero);

/// Gamma_meas / Gamma = 1 / (T_meas Gamma); +inf when Gamma = 0 (QND limit).
double efficiency(double Gamma, double T_meas);

struct HarmonicEstimates {
    double kappa_eff = 0.0;          ///< 8 gamma g^2 / Omega^2 evaluated directly
    double Gamma_harm = 0.0;         ///< (pi/2) sin^2(theta) kappa_eff eps with the direct kappa_eff
    double kappa_quoted = 1e-10;     ///< magnitude stated alongside the estimate
    double Gamma_harm_quoted = 0.0;  ///< same estimate with kappa_quoted
    bool kappa_discrepancy = false;  ///< direct and quoted kappa differ by more than a factor 2
};

HarmonicEstimates harmonic_estimates(const ModelParams& p);

}  // namespace qdr
