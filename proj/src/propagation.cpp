#include "qdr/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace qdr {

namespace {

using LongComplex = std::complex<long double>;
using LongMatrix = Eigen::Matrix<LongComplex, Eigen::Dynamic, Eigen::Dynamic>;

// Column sums over population rows vanish for an exact trace-preserving map;
// squaring amplifies their roundoff, so it is removed after every doubling.
void restore_trace(LongMatrix& K, int dim) {
    const Eigen::Index sd = K.rows();
    for (Eigen::Index col = 0; col < sd; ++col) {
        LongComplex s = 0;
        for (int a = 0; a < dim; ++a) s += K(static_cast<Eigen::Index>(a) * dim + a, col);
        const LongComplex share = s / static_cast<long double>(dim);
        for (int a = 0; a < dim; ++a) K(static_cast<Eigen::Index>(a) * dim + a, col) -= share;
    }
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

PropagationResult run(const Liouvillian& L, const CMatrix& rho0, const PropagationOptions& opt, double h) {
    const Eigen::Index sd = L.super_dim();
    const LongMatrix hD = L.matrix().cast<LongComplex>() * static_cast<long double>(h);
    const LongMatrix I = LongMatrix::Identity(sd, sd);

    // One RK4 step is R = I + K with K = hD (I + hD/2 (I + hD/3 (I + hD/4))).
    LongMatrix K = hD * (I + hD * (I + hD * (I + hD / 4.0L) / 3.0L) / 2.0L);
    restore_trace(K, L.dim());

    const auto v0 = L.vec(rho0).cast<LongComplex>().eval();
    auto state = [&](const LongMatrix& k) { return L.unvec((v0 + k * v0).cast<Complex>()); };

    PropagationResult out;
    out.step = h;
    double t = h;
    CMatrix previous = state(K);
    for (int d = 0; d < opt.max_doublings; ++d) {
        K = (2.0L * K + K * K).eval();
        restore_trace(K, L.dim());
        t *= 2.0;
        CMatrix current = state(K);
        out.last_change = max_abs_diff(current, previous);
        previous = std::move(current);
        out.doublings = d + 1;
        if (t >= opt.min_horizon && out.last_change < opt.tolerance) {
            out.converged = true;
            break;
        }
    }
    out.horizon = t;
    out.rho = std::move(previous);
    return out;
}

}  // namespace

PropagationResult propagate_to_stationarity(const Liouvillian& L, const CMatrix& rho0,
                                            const PropagationOptions& opt) {
    if (rho0.rows() != L.dim() || rho0.cols() != L.dim())
        throw ConfigError("initial state does not match the Liouvillian dimension");
    // Gershgorin bound on the spectral radius; keeps the step independent of
    // any eigenvalue computation.
    const double norm = L.matrix().cwiseAbs().rowwise().sum().maxCoeff();
    if (!(norm > 0.0)) {
        PropagationResult trivial;
        trivial.rho = rho0;
        trivial.converged = true;
        return trivial;
    }
    const double h = opt.step_factor / norm;
    PropagationResult out = run(L, rho0, opt, h);
    if (opt.check_halving) {
        const PropagationResult fine = run(L, rho0, opt, 0.5 * h);
        out.halving_change = max_abs_diff(out.rho, fine.rho);
        out.converged = out.converged && fine.converged;
    }
    return out;
}

CMatrix ground_product_state(const QuasiSpectrum& qs, const HilbertSpace& h) {
    CMatrix rho = CMatrix::Zero(h.dim(), h.dim());
    const int idx = h.has_qubit() ? h.index(0, -1) : h.index(0);
    rho(idx, idx) = 1.0;
    return qs.states.adjoint() * rho * qs.states;
}

}  // namespace qdr
