#include "qdr/liouvillian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include <lapacke.h>

namespace qdr {

FourierComponents fourier_components(const QuasiSpectrum& qs, const HilbertSpace& h, double chi0) {
    const CMatrix& V = qs.states;
    const CMatrix a = h.annihilation();
    const CMatrix n = h.number();
    const CMatrix identity = CMatrix::Identity(h.dim(), h.dim());
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    FourierComponents fc;
    fc.chi0 = chi0;
    const CMatrix a_q = V.adjoint() * a * V;
    fc.chi[1] = inv_sqrt2 * a_q;
    fc.chi[-1] = inv_sqrt2 * a_q.adjoint();

    // Square of the coordinate (a + a+)/sqrt(2); a a+ is taken as n + 1 on
    // every retained level, matching the Hamiltonian.
    const CMatrix a2_q = V.adjoint() * (a * a) * V;
    fc.chi2[2] = 0.5 * a2_q;
    fc.chi2[-2] = 0.5 * a2_q.adjoint();
    fc.chi2[0] = 0.5 * (V.adjoint() * (2.0 * n + identity) * V);

    fc.tau_z = V.adjoint() * h.tau_z() * V;
    fc.tau_plus = V.adjoint() * h.tau_plus() * V;
    fc.tau_minus = V.adjoint() * h.tau_minus() * V;
    return fc;
}

double planck_weight(double eps, double gamma, double temp) {
    if (temp < 0.0) throw ConfigError("temperature must be non-negative");
    if (temp == 0.0) return eps < 0.0 ? -gamma * eps : 0.0;
    if (eps == 0.0) return 2.0 * gamma * temp;
    const double x = std::abs(eps) / temp;
    if (eps > 0.0) return 2.0 * gamma * eps / std::expm1(x);
    // eps < 0: gamma |eps| coth(|eps| / 2T)
    return gamma * std::abs(eps) * (1.0 + 2.0 / std::expm1(x));
}

CVector Liouvillian::vec(const CMatrix& rho) const {
    CVector v(super_dim());
    for (int a = 0; a < dim_; ++a)
        for (int b = 0; b < dim_; ++b) v(super_index(a, b)) = rho(a, b);
    return v;
}

CMatrix Liouvillian::unvec(const CVector& v) const {
    CMatrix rho(dim_, dim_);
    for (int a = 0; a < dim_; ++a)
        for (int b = 0; b < dim_; ++b) rho(a, b) = v(super_index(a, b));
    return rho;
}

double Liouvillian::trace_violation() const {
    double worst = 0.0;
    for (Eigen::Index col = 0; col < super_dim(); ++col) {
        Complex s = 0.0;
        for (int a = 0; a < dim_; ++a) s += generator_(super_index(a, a), col);
        worst = std::max(worst, std::abs(s));
    }
    return worst;
}

namespace {

// D[(ab),(a'b')] += A(a,a') B(b,b')
void add_kron(CMatrix& D, const CMatrix& A, const CMatrix& B) {
    const Eigen::Index d = A.rows();
    for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index ap = 0; ap < d; ++ap) {
            const Complex s = A(a, ap);
            if (s == Complex(0.0)) continue;
            D.block(a * d, ap * d, d, d) += s * B;
        }
}

CMatrix planck_matrix(const RVector& energies, double shift, const ModelParams& p, RateModel model) {
    const Eigen::Index d = energies.size();
    CMatrix N(d, d);
    if (model == RateModel::Lindblad) {
        N.setConstant(planck_weight(shift, p.gamma, p.temp));
        return N;
    }
    for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index b = 0; b < d; ++b)
            N(a, b) = planck_weight(energies(a) - energies(b) + shift, p.gamma, p.temp);
    return N;
}

}  // namespace

Liouvillian build_rate_tensor(const std::map<int, CMatrix>& components, const RVector& energies,
                              const ModelParams& p, RateModel model) {
    const int d = static_cast<int>(energies.size());
    const Eigen::Index sd = static_cast<Eigen::Index>(d) * d;
    CMatrix D = CMatrix::Zero(sd, sd);
    const CMatrix identity = CMatrix::Identity(d, d);

    for (const auto& [n, X] : components) {
        const auto partner = components.find(-n);
        if (partner == components.end()) continue;
        const CMatrix& Y = partner->second;
        if (X.rows() != d || Y.rows() != d) throw ConfigError("Fourier component dimension mismatch");
        if (X.cwiseAbs().maxCoeff() == 0.0 && Y.cwiseAbs().maxCoeff() == 0.0) continue;

        // Nm(a, b) = N(eps_a - eps_b - n omega_ex)
        const CMatrix Nm = planck_matrix(energies, -n * p.omega_ex, p, model);
        const CMatrix P = Nm.cwiseProduct(X);
        const CMatrix Z = Nm.cwiseProduct(Y.transpose());
        const CMatrix R = Nm.transpose().cwiseProduct(Y) * X;
        const CMatrix Q = Y * P;

        // gain: (N_aa' + N_bb') X_aa' Y_b'b
        add_kron(D, P, Y.transpose());
        add_kron(D, X, Z);
        // loss: -delta_aa' R_b'b - delta_bb' Q_aa'
        add_kron(D, -identity, R.transpose());
        add_kron(D, -Q, identity);
    }

    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            D(static_cast<Eigen::Index>(a) * d + b, static_cast<Eigen::Index>(a) * d + b) +=
                Complex(0.0, -(energies(a) - energies(b)));

    Liouvillian L(std::move(D), d);
    double worst = 0.0;
    Eigen::Index worst_col = 0;
    for (Eigen::Index col = 0; col < sd; ++col) {
        Complex s = 0.0;
        for (int a = 0; a < d; ++a) s += L.matrix()(L.super_index(a, a), col);
        if (std::abs(s) > worst) {
            worst = std::abs(s);
            worst_col = col;
        }
    }
    if (worst > 1e-10) {
        std::ostringstream msg;
        msg << "rate tensor violates trace preservation: |sum_a D(aa, col)| = " << worst << " at column ("
            << worst_col / d << ", " << worst_col % d << ")";
        throw NumericalError(msg.str());
    }
    return L;
}

Liouvillian build_rate_tensor(const FourierComponents& fc, const QuasiSpectrum& qs, const ModelParams& p,
                              RateModel model) {
    return build_rate_tensor(fc.chi, qs.energies, p, model);
}

Eigen::Index Eigendecomposition::stationary_index() const {
    Eigen::Index best = 0;
    eigenvalues.cwiseAbs().minCoeff(&best);
    return best;
}

Eigendecomposition eigendecompose(const Liouvillian& L) {
    const Eigen::Index n = L.super_dim();
    if (n > 4096) throw NumericalError("dense eigendecomposition limited to dim^2 <= 4096");
    CMatrix A = L.matrix();
    CVector w(n);
    CMatrix vr(n, n);
    const lapack_int info =
        LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'V', static_cast<lapack_int>(n),
                      reinterpret_cast<lapack_complex_double*>(A.data()), static_cast<lapack_int>(n),
                      reinterpret_cast<lapack_complex_double*>(w.data()), nullptr, static_cast<lapack_int>(n),
                      reinterpret_cast<lapack_complex_double*>(vr.data()), static_cast<lapack_int>(n));
    if (info != 0) throw NumericalError("zgeev failed with info = " + std::to_string(info));

    std::vector<Eigen::Index> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return w(a).real() > w(b).real(); });

    Eigendecomposition out;
    out.eigenvalues.resize(n);
    out.right.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.eigenvalues(k) = w(order[k]);
        out.right.col(k) = vr.col(order[k]);
    }

    Eigen::PartialPivLU<CMatrix> lu(out.right);
    out.left = lu.inverse().adjoint();
    out.biorthogonality_residual =
        (out.left.adjoint() * out.right - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
    if (!std::isfinite(out.biorthogonality_residual) || out.biorthogonality_residual > 1e-6) {
        std::ostringstream msg;
        msg << "Liouvillian eigenbasis is numerically defective (biorthogonality residual "
            << out.biorthogonality_residual << "); perturb the parameters slightly";
        throw NumericalError(msg.str());
    }
    return out;
}

}  // namespace qdr
