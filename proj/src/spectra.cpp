#include "qdr/spectra.hpp"

#include <cmath>
#include <limits>

namespace qdr {

std::string to_string(SpectrumOperator op) { return op == SpectrumOperator::Chi ? "chi" : "chi2"; }

SpectrumOperator spectrum_operator_from_string(const std::string& name) {
    if (name == "chi") return SpectrumOperator::Chi;
    if (name == "chi2") return SpectrumOperator::Chi2;
    throw ConfigError("unknown spectrum operator '" + name + "' (expected chi or chi2)");
}

const std::map<int, CMatrix>& operator_components(const FourierComponents& fc, SpectrumOperator op) {
    return op == SpectrumOperator::Chi ? fc.chi : fc.chi2;
}

Complex CorrelationData::equal_time() const {
    Complex s = 0.0;
    for (const auto& [n, c] : coeff) s += c.sum();
    return s;
}

CorrelationData correlation_spectral_data(const Eigendecomposition& eig, const Liouvillian& L,
                                          const std::map<int, CMatrix>& A, const std::map<int, CMatrix>& B,
                                          const CMatrix& rho, double omega_ex) {
    const int d = L.dim();
    const Eigen::Index sd = L.super_dim();
    if (eig.right.rows() != sd) throw ConfigError("eigendecomposition does not match the Liouvillian");

    CorrelationData out;
    out.eigenvalues = eig.eigenvalues;
    out.stationary = eig.stationary_index();
    out.omega_ex = omega_ex;

    for (const auto& [n, An] : A) {
        const auto Bm = B.find(-n);
        if (Bm == B.end())
            throw ConfigError("operator B lacks the Fourier component n = " + std::to_string(-n));
        if (An.rows() != d || Bm->second.rows() != d) throw ConfigError("operator dimension mismatch");

        // tr(A_n V^m) = sum_ab A_ba V^m_ab = vec(A^T) . v^m
        const CVector a_row = L.vec(An.transpose());
        const CVector weights_right = eig.right.transpose() * a_row;
        const CVector weights_left = eig.left.adjoint() * L.vec(Bm->second * rho);
        out.coeff[n] = weights_right.cwiseProduct(weights_left);
    }
    return out;
}

namespace {

// One-sided transform of the connected part, F(w) = int_0^inf e^{iwt} C(t) dt.
Complex one_sided(const CorrelationData& c, double omega) {
    Complex F = 0.0;
    for (const auto& [n, coeff] : c.coeff) {
        for (Eigen::Index m = 0; m < coeff.size(); ++m) {
            if (m == c.stationary) continue;
            const Complex lambda = c.eigenvalues(m) - Complex(0.0, n * c.omega_ex);
            if (std::abs(c.eigenvalues(m).real()) < 1e-12)
                throw NumericalError("undamped mode; spectrum singular");
            F -= coeff(m) / (lambda + Complex(0.0, omega));
        }
    }
    return F;
}

}  // namespace

double symmetrized_spectrum(const CorrelationData& ab, const CorrelationData& ba, double omega) {
    // <A(-t) B> = <A B(t)> = conj <B(t) A> for Hermitian A, B, so both
    // orderings at +w and -w enter.
    const Complex total = one_sided(ab, omega) + one_sided(ab, -omega) + one_sided(ba, omega) +
                          one_sided(ba, -omega);
    return 0.5 * total.real();
}

SpectrumEvaluator make_autospectrum(const Eigendecomposition& eig, const Liouvillian& L,
                                    const FourierComponents& fc, const SteadyState& ss, SpectrumOperator op,
                                    double omega_ex) {
    const auto& comps = operator_components(fc, op);
    return SpectrumEvaluator{correlation_spectral_data(eig, L, comps, comps, ss.rho, omega_ex)};
}

double relaxation_rate(const ModelParams& p, double S_chi2) {
    const double s = std::sin(p.theta());
    return p.g * p.g * s * s * S_chi2;
}

double measurement_time(double D, double S_chi_zero) {
    if (D == 0.0) return std::numeric_limits<double>::infinity();
    return S_chi_zero / (D * D);
}

double efficiency(double Gamma, double T_meas) {
    if (Gamma == 0.0) return std::numeric_limits<double>::infinity();
    if (std::isinf(T_meas)) return 0.0;
    return 1.0 / (T_meas * Gamma);
}

HarmonicEstimates harmonic_estimates(const ModelParams& p) {
    HarmonicEstimates h;
    const double s = std::sin(p.theta());
    h.kappa_eff = 8.0 * p.gamma * p.g * p.g / (p.Omega * p.Omega);
    h.Gamma_harm = 0.5 * kPi * s * s * h.kappa_eff * p.eps;
    h.Gamma_harm_quoted = p.g == 0.0 ? 0.0 : 0.5 * kPi * s * s * h.kappa_quoted * p.eps;
    h.kappa_discrepancy = p.g != 0.0 && (h.kappa_eff > 2.0 * h.kappa_quoted || h.kappa_eff < 0.5 * h.kappa_quoted);
    return h;
}

}  // namespace qdr
