#include <doctest.h>

#include <cmath>

#include "qdr/pipeline.hpp"

using namespace qdr;

namespace {

CMatrix fock_rho(const PointSolution& s) { return s.qs.states * s.ss.rho * s.qs.states.adjoint(); }

void check_density_matrix(const SteadyState& ss) {
    CHECK(std::abs(ss.rho.trace() - 1.0) < 1e-12);
    CHECK((ss.rho - ss.rho.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(ss.rho);
    CHECK(es.eigenvalues().minCoeff() > -1e-10);
    CHECK(ss.residual < 1e-12);
}

}  // namespace

TEST_CASE("undriven detector at T = 0 relaxes to the vacuum") {
    ModelParams p = paper_parameter_set("fig1-detector-only");
    p.f = 0.0;
    p.temp = 0.0;
    SolveOptions opt;
    opt.n_fock = 10;
    const PointSolution s = solve_point(p, QubitMode::DetectorOnly, opt);
    CMatrix expected = CMatrix::Zero(10, 10);
    expected(0, 0) = 1.0;
    CHECK((fock_rho(s) - expected).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(std::abs(detector_response(s, QubitMode::DetectorOnly).A) < 1e-12);
}

TEST_CASE("undriven detector obeys detailed balance with the Planck ratio") {
    ModelParams p = paper_parameter_set("fig1-detector-only");
    p.f = 0.0;
    p.temp = 0.5;
    SolveOptions opt;
    opt.n_fock = 12;
    const PointSolution s = solve_point(p, QubitMode::DetectorOnly, opt);
    const CMatrix rho = fock_rho(s);
    for (int n = 0; n < 5; ++n) {
        const double e = p.Omega - p.alpha * (n + 1);  // lab-frame energy of n -> n + 1
        const double nb = 1.0 / std::expm1(e / p.temp);
        const double ratio = 2.0 * nb / (2.0 * nb + 1.0);
        CHECK(rho(n + 1, n + 1).real() / rho(n, n).real() == doctest::Approx(ratio).epsilon(1e-8));
    }
    // Coherences vanish without drive.
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j)
            if (i != j) CHECK(std::abs(rho(i, j)) < 1e-12);
}

TEST_CASE("linear far-detuned oscillator matches the coherent-state amplitude") {
    ModelParams p;
    p.gamma = 1.6e-4;
    p.temp = 0.006;
    p.f = 0.001;
    p.omega_ex = 0.95;
    SolveOptions opt;
    opt.n_fock = 10;
    const PointSolution s = solve_point(p, QubitMode::DetectorOnly, opt);
    const Complex a = -(0.5 * p.f) / Complex(p.detuning(), -0.5 * p.gamma);
    const double expected = std::sqrt(2.0) * a.real();
    CHECK(detector_response(s, QubitMode::DetectorOnly).A == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("steady states are valid density matrices") {
    for (double w : {0.96, 0.975, 0.98, 0.99, 1.0}) {
        ModelParams p = paper_parameter_set("fig2-coupled");
        p.omega_ex = w;
        SolveOptions opt;
        opt.n_fock = 10;
        for (QubitMode m : {QubitMode::Up, QubitMode::Down, QubitMode::DetectorOnly, QubitMode::Coupled}) {
            const PointSolution s = solve_point(p, m, opt);
            check_density_matrix(s.ss);
            const ResponseRecord r = detector_response(s, m);
            if (m != QubitMode::DetectorOnly) CHECK(std::abs(r.P_inf) <= 1.0 + 1e-12);
            CHECK(r.A_abs == doctest::Approx(std::abs(r.A)));
        }
    }
}

TEST_CASE("pinned modes report +-cos(theta), detector-only reports NaN") {
    const ModelParams p = paper_parameter_set("fig2-coupled");
    SolveOptions opt;
    opt.n_fock = 8;
    const double c = std::cos(p.theta());
    CHECK(detector_response(solve_point(p, QubitMode::Up, opt), QubitMode::Up).P_inf == doctest::Approx(c));
    CHECK(detector_response(solve_point(p, QubitMode::Down, opt), QubitMode::Down).P_inf == doctest::Approx(-c));
    CHECK(std::isnan(detector_response(solve_point(p, QubitMode::DetectorOnly, opt), QubitMode::DetectorOnly).P_inf));
}

TEST_CASE("coupled model off resonance keeps the qubit in its ground state") {
    ModelParams p = paper_parameter_set("fig2-coupled");
    p.omega_ex = 0.96;
    const PointSolution s = solve_point(p, QubitMode::Coupled);
    const double P = detector_response(s, QubitMode::Coupled).P_inf;
    CHECK(std::abs(P + 1.0) < 0.02);
    CHECK(P == doctest::Approx(-std::cos(p.theta())).epsilon(1e-4));
}

TEST_CASE("conserved qubit needs a sector") {
    ModelParams p = paper_parameter_set("fig2-coupled");
    p.g = 0.0;
    const auto h = HilbertSpace::coupled(6);
    const QuasiSpectrum qs = quasienergy_spectrum(build_rwa_hamiltonian(p, h), h);
    const FourierComponents fc = fourier_components(qs, h);
    const Liouvillian L = build_rate_tensor(fc, qs, p);
    CHECK_THROWS_WITH_AS(steady_state(L, qs), "degenerate steady state; specify qubit sector", NumericalError);
    const SteadyState up = steady_state(L, qs, QubitSector::Up);
    const SteadyState down = steady_state(L, qs, QubitSector::Down);
    CHECK(up.null_dim == 2);
    CHECK((up.rho * fc.tau_z).trace().real() == doctest::Approx(1.0));
    CHECK((down.rho * fc.tau_z).trace().real() == doctest::Approx(-1.0));
    // Coupled mode with g = 0 falls back to the ground sector.
    const PointSolution s = solve_point(p, QubitMode::Coupled, {6});
    CHECK(detector_response(s, QubitMode::Coupled).P_inf == doctest::Approx(-std::cos(p.theta())));
}

TEST_CASE("qubit shift is a rigid translation of the response") {
    // A_up(w) and A_down(w - 2g) share the detuning; only the bath weights move.
    const ModelParams base = paper_parameter_set("fig2-coupled");
    SolveOptions opt;
    opt.n_fock = 16;
    double worst = 0.0, peak = 0.0;
    for (double w = 0.965; w <= 1.0; w += 0.0025) {
        ModelParams a = base, b = base;
        a.omega_ex = w;
        b.omega_ex = w - 2.0 * base.g;
        const double up = detector_response(solve_point(a, QubitMode::Up, opt), QubitMode::Up).A;
        const double down = detector_response(solve_point(b, QubitMode::Down, opt), QubitMode::Down).A;
        worst = std::max(worst, std::abs(up - down));
        peak = std::max(peak, std::abs(up));
    }
    CHECK(worst < 0.01 * peak);
}

TEST_CASE("pinned coupled model agrees with the shifted detector") {
    ModelParams p = paper_parameter_set("fig2-coupled");
    SolveOptions opt;
    opt.n_fock = 12;
    const auto pts = discrimination_power(p, {0.965, 0.9875, 0.995}, 12, true);
    for (const auto& d : pts) {
        CHECK(d.D == doctest::Approx(std::abs(d.A_up - d.A_down)));
        CHECK(std::abs(d.coupled_A_up - d.A_up) < 1e-2 * std::max(1e-3, std::abs(d.A_up)));
        CHECK(std::abs(d.coupled_A_down - d.A_down) < 1e-2 * std::max(1e-3, std::abs(d.A_down)));
    }
}

TEST_CASE("qubit mode names round-trip") {
    for (QubitMode m : {QubitMode::Coupled, QubitMode::Up, QubitMode::Down, QubitMode::DetectorOnly})
        CHECK(qubit_mode_from_string(to_string(m)) == m);
    CHECK(qubit_mode_from_string("detector") == QubitMode::DetectorOnly);
    CHECK_THROWS_AS(qubit_mode_from_string("sideways"), ConfigError);
}

TEST_CASE("truncation convergence is checked by doubling") {
    ModelParams p = paper_parameter_set("fig1-detector-only");
    const ConvergenceReport ok = check_truncation_convergence(p, 20);
    CHECK(ok.converged);
    CHECK(ok.n_fock == 20);
    p.f = 0.05;
    p.omega_ex = 0.9;
    const ConvergenceReport strong = check_truncation_convergence(p, 4, 80);
    CHECK(strong.n_fock > 4);
    MESSAGE("strong drive needs n_fock = " << strong.n_fock);
    CHECK_THROWS_AS(check_truncation_convergence(p, 4, 8), NumericalError);
}
