#include "qdr/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qdr {

namespace {

ModelParams effective_params(const ModelParams& p, QubitMode mode) {
    switch (mode) {
        case QubitMode::Up: return p.pinned_detector(+1);
        case QubitMode::Down: return p.pinned_detector(-1);
        case QubitMode::DetectorOnly: {
            ModelParams q = p;
            q.g = 0.0;
            return q;
        }
        case QubitMode::Coupled: return p;
    }
    return p;
}

}  // namespace

PointSolution solve_point(const ModelParams& p, QubitMode mode, const SolveOptions& opt) {
    const ModelParams eff = effective_params(p, mode);
    const bool coupled = mode == QubitMode::Coupled;
    HilbertSpace h = coupled ? HilbertSpace::coupled(opt.n_fock) : HilbertSpace::detector_only(opt.n_fock);
    const QubitFlip flip = coupled && opt.pinned_sector ? QubitFlip::Dropped : QubitFlip::Included;

    QuasiSpectrum qs = quasienergy_spectrum(build_rwa_hamiltonian(eff, h, flip), h);
    FourierComponents fc = fourier_components(qs, h, opt.chi0);
    Liouvillian L = build_rate_tensor(fc, qs, eff, opt.rate_model);

    std::optional<QubitSector> sector;
    if (qs.qubit_conserved) sector = opt.pinned_sector.value_or(QubitSector::Down);
    SteadyState ss = steady_state(L, qs, sector);
    return PointSolution{eff, h, std::move(qs), std::move(fc), std::move(L), std::move(ss)};
}

ResponseRecord detector_response(const PointSolution& s, QubitMode mode) {
    ResponseRecord r = response_amplitude(s.ss, s.fc);
    r.omega_ex = s.params.omega_ex;
    r.mode = mode;
    switch (mode) {
        case QubitMode::Coupled: r.P_inf = population_difference(s.ss, s.fc, s.params); break;
        // A pinned qubit has <tau_z> = +-1 and <tau_x> = 0.
        case QubitMode::Up: r.P_inf = std::cos(s.params.theta()); break;
        case QubitMode::Down: r.P_inf = -std::cos(s.params.theta()); break;
        case QubitMode::DetectorOnly: r.P_inf = std::numeric_limits<double>::quiet_NaN(); break;
    }
    return r;
}

std::vector<DiscriminationPoint> discrimination_power(const ModelParams& p, const std::vector<double>& grid,
                                                      int n_fock, bool cross_check) {
    std::vector<DiscriminationPoint> out;
    out.reserve(grid.size());
    SolveOptions opt;
    opt.n_fock = n_fock;
    for (double w : grid) {
        ModelParams q = p;
        q.omega_ex = w;
        DiscriminationPoint d;
        d.omega_ex = w;
        d.A_up = detector_response(solve_point(q, QubitMode::Up, opt), QubitMode::Up).A;
        d.A_down = detector_response(solve_point(q, QubitMode::Down, opt), QubitMode::Down).A;
        d.D = std::abs(d.A_up - d.A_down);
        d.coupled_A_up = d.coupled_A_down = std::numeric_limits<double>::quiet_NaN();
        if (cross_check) {
            SolveOptions c = opt;
            c.pinned_sector = QubitSector::Up;
            d.coupled_A_up = detector_response(solve_point(q, QubitMode::Coupled, c), QubitMode::Coupled).A;
            c.pinned_sector = QubitSector::Down;
            d.coupled_A_down = detector_response(solve_point(q, QubitMode::Coupled, c), QubitMode::Coupled).A;
        }
        out.push_back(d);
    }
    return out;
}

PointMetrics point_metrics(const ModelParams& p, int n_fock, RateModel model) {
    SolveOptions opt;
    opt.n_fock = n_fock;
    opt.rate_model = model;
    const PointSolution up = solve_point(p, QubitMode::Up, opt);
    const PointSolution down = solve_point(p, QubitMode::Down, opt);

    PointMetrics m;
    m.A_up = detector_response(up, QubitMode::Up).A;
    m.A_down = detector_response(down, QubitMode::Down).A;
    m.D = std::abs(m.A_up - m.A_down);

    const Eigendecomposition eig_up = eigendecompose(up.L);
    const Eigendecomposition eig_down = eigendecompose(down.L);
    const auto chi_up = make_autospectrum(eig_up, up.L, up.fc, up.ss, SpectrumOperator::Chi, p.omega_ex);
    const auto chi_down = make_autospectrum(eig_down, down.L, down.fc, down.ss, SpectrumOperator::Chi, p.omega_ex);
    const auto chi2_up = make_autospectrum(eig_up, up.L, up.fc, up.ss, SpectrumOperator::Chi2, p.omega_ex);

    m.S_chi_zero = 0.5 * (chi_up(0.0) + chi_down(0.0));
    m.S_chi2_qubit = chi2_up(-p.omega_qb());
    m.Gamma = p.g == 0.0 ? 0.0 : relaxation_rate(p, m.S_chi2_qubit);

    const double t_meas = measurement_time(m.D, m.S_chi_zero);
    m.T_meas = t_meas / (2.0 * kPi);
    m.efficiency = efficiency(m.Gamma, t_meas);
    return m;
}

OracleComparison oracle_compare(const ModelParams& p, QubitMode mode, int n_fock, int reference_n_fock,
                                const PropagationOptions& opt) {
    SolveOptions so;
    so.n_fock = n_fock;
    const PointSolution s = solve_point(p, mode, so);
    SolveOptions ro = so;
    ro.n_fock = reference_n_fock > 0 ? reference_n_fock : n_fock;
    const PointSolution ref = ro.n_fock == n_fock ? s : solve_point(p, mode, ro);

    PropagationOptions po = opt;
    if (po.min_horizon == 0.0 && p.gamma > 0.0) po.min_horizon = 20.0 / p.gamma;
    const PropagationResult prop = propagate_to_stationarity(ref.L, ground_product_state(ref.qs, ref.space), po);

    const CMatrix null_fock = s.qs.states * s.ss.rho * s.qs.states.adjoint();
    const CMatrix prop_fock = ref.qs.states * prop.rho * ref.qs.states.adjoint();
    const Eigen::Index common = std::min(null_fock.rows(), prop_fock.rows());

    OracleComparison out;
    out.omega_ex = p.omega_ex;
    out.max_deviation =
        (null_fock.topLeftCorner(common, common) - prop_fock.topLeftCorner(common, common)).cwiseAbs().maxCoeff();
    out.pass = prop.converged && out.max_deviation < 1e-6;
    std::ostringstream msg;
    msg << "horizon=" << prop.horizon << " step=" << prop.step << " doublings=" << prop.doublings
        << " last_change=" << prop.last_change << " halving_change=" << prop.halving_change
        << " null_residual=" << s.ss.residual;
    if (ro.n_fock != n_fock) msg << " reference_n_fock=" << ro.n_fock;
    if (!prop.converged) msg << " (propagation did not reach stationarity)";
    out.diagnostics = msg.str();
    return out;
}

ConvergenceReport check_truncation_convergence(const ModelParams& p, int n_fock, int cap) {
    ConvergenceReport rep;
    SolveOptions opt;
    int n = n_fock;
    while (true) {
        if (2 * n > cap) {
            rep.n_fock = n;
            std::ostringstream msg;
            msg << "Fock truncation not converged at the cap of " << cap << " levels (relative change "
                << rep.relative_change << " at n_fock = " << n << ")";
            throw NumericalError(msg.str());
        }
        opt.n_fock = n;
        const double a = detector_response(solve_point(p, QubitMode::DetectorOnly, opt), QubitMode::DetectorOnly).A;
        opt.n_fock = 2 * n;
        const double b = detector_response(solve_point(p, QubitMode::DetectorOnly, opt), QubitMode::DetectorOnly).A;
        rep.tried.push_back(n);
        rep.amplitude = a;
        rep.amplitude_doubled = b;
        const double scale = std::max(std::abs(a), std::abs(b));
        rep.relative_change = scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
        if (rep.relative_change < 1e-4) {
            rep.n_fock = n;
            rep.converged = true;
            return rep;
        }
        n *= 2;
    }
}

}  // namespace qdr
