#include "qdr/steady_state.hpp"

#include <cmath>
#include <complex>
#include <vector>

namespace qdr {

namespace {

using LongComplex = std::complex<long double>;
using LongMatrix = Eigen::Matrix<LongComplex, Eigen::Dynamic, Eigen::Dynamic>;
using LongVector = Eigen::Matrix<LongComplex, Eigen::Dynamic, 1>;

constexpr Eigen::Index kDenseLimit = 4096;

// Solves A x = b with the trace row in place; the residual is accumulated in
// extended precision so the slow qubit mode (rates ~1e-12) is resolved.
CVector refined_solve(const CMatrix& A, const CVector& b) {
    Eigen::PartialPivLU<CMatrix> lu(A);
    CVector x = lu.solve(b);
    const LongMatrix A_long = A.cast<LongComplex>();
    const LongVector b_long = b.cast<LongComplex>();
    for (int it = 0; it < 6; ++it) {
        const LongVector r = b_long - A_long * x.cast<LongComplex>();
        const CVector dx = lu.solve(r.cast<Complex>());
        x += dx;
        if (dx.cwiseAbs().maxCoeff() <= 1e-17 * x.cwiseAbs().maxCoeff()) break;
    }
    return x;
}

CVector inverse_iteration(const CMatrix& A, const std::vector<Eigen::Index>& diag_positions) {
    const Eigen::Index n = A.rows();
    constexpr double kShift = 1e-9;
    Eigen::PartialPivLU<CMatrix> lu(A - Complex(kShift) * CMatrix::Identity(n, n));
    CVector x = CVector::Zero(n);
    for (auto k : diag_positions) x(k) = 1.0 / static_cast<double>(diag_positions.size());
    for (int it = 0; it < 60; ++it) {
        CVector y = lu.solve(x);
        Complex tr = 0.0;
        for (auto k : diag_positions) tr += y(k);
        if (std::abs(tr) == 0.0) throw NumericalError("inverse iteration lost the trace of the state");
        y /= tr;
        const double change = (y - x).cwiseAbs().maxCoeff();
        x = std::move(y);
        if (change < 1e-13) return x;
    }
    throw NumericalError("inverse iteration for the steady state did not converge");
}

}  // namespace

SteadyState steady_state(const Liouvillian& L, const QuasiSpectrum& qs, std::optional<QubitSector> sector) {
    const int d = L.dim();
    if (qs.dim() != d) throw ConfigError("quasienergy spectrum does not match the Liouvillian");

    SteadyState out;
    out.null_dim = qs.qubit_conserved ? 2 : 1;
    if (out.null_dim > 1 && !sector)
        throw NumericalError("degenerate steady state; specify qubit sector");

    std::vector<int> states;
    for (int a = 0; a < d; ++a)
        if (out.null_dim == 1 || qs.sector[a] == static_cast<int>(*sector)) states.push_back(a);
    const int m = static_cast<int>(states.size());

    std::vector<Eigen::Index> super;
    super.reserve(static_cast<size_t>(m) * m);
    for (int a : states)
        for (int b : states) super.push_back(L.super_index(a, b));
    const Eigen::Index n = static_cast<Eigen::Index>(super.size());

    CMatrix A(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) A(i, j) = L.matrix()(super[i], super[j]);

    std::vector<Eigen::Index> diag_positions;
    for (int k = 0; k < m; ++k) diag_positions.push_back(static_cast<Eigen::Index>(k) * m + k);

    CVector x;
    if (n <= kDenseLimit) {
        const Eigen::Index row = diag_positions.front();
        A.row(row).setZero();
        for (auto k : diag_positions) A(row, k) = 1.0;
        CVector b = CVector::Zero(n);
        b(row) = 1.0;
        x = refined_solve(A, b);
    } else {
        x = inverse_iteration(A, diag_positions);
    }

    CMatrix rho = CMatrix::Zero(d, d);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) rho(states[i], states[j]) = x(static_cast<Eigen::Index>(i) * m + j);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    rho /= rho.trace();

    out.rho = std::move(rho);
    out.residual = (L.matrix() * L.vec(out.rho)).cwiseAbs().maxCoeff();
    return out;
}

std::string to_string(QubitMode mode) {
    switch (mode) {
        case QubitMode::Coupled: return "coupled";
        case QubitMode::Up: return "up";
        case QubitMode::Down: return "down";
        case QubitMode::DetectorOnly: return "detector-only";
    }
    return "unknown";
}

QubitMode qubit_mode_from_string(const std::string& name) {
    if (name == "coupled") return QubitMode::Coupled;
    if (name == "up") return QubitMode::Up;
    if (name == "down") return QubitMode::Down;
    if (name == "detector-only" || name == "detector") return QubitMode::DetectorOnly;
    throw ConfigError("unknown qubit mode '" + name + "'");
}

ResponseRecord response_amplitude(const SteadyState& ss, const FourierComponents& fc) {
    const CMatrix coordinate = fc.chi.at(1) + fc.chi.at(-1);
    // sum_ab rho_ab X_ba = tr(rho X)
    const Complex A = fc.chi0 * (ss.rho * coordinate).trace();
    ResponseRecord r;
    r.A = A.real();
    r.A_abs = std::abs(A.real());
    return r;
}

double population_difference(const SteadyState& ss, const FourierComponents& fc, const ModelParams& p) {
    const double theta = p.theta();
    const Complex z = (ss.rho * fc.tau_z).trace();
    const Complex x = (ss.rho * fc.tau_x()).trace();
    return std::cos(theta) * z.real() + std::sin(theta) * x.real();
}

}  // namespace qdr
