#include <doctest.h>

#include <cmath>

#include "qdr/pipeline.hpp"

using namespace qdr;

TEST_CASE("undriven detector at T = 0 propagates to the vacuum") {
    ModelParams p = paper_parameter_set("fig1-detector-only");
    p.f = 0.0;
    p.temp = 0.0;
    SolveOptions opt;
    opt.n_fock = 6;
    const PointSolution s = solve_point(p, QubitMode::DetectorOnly, opt);
    CMatrix start = CMatrix::Zero(6, 6);
    start(5, 5) = 1.0;  // highest quasienergy state, a Fock state here
    PropagationOptions po;
    po.min_horizon = 20.0 / p.gamma;
    const PropagationResult r = propagate_to_stationarity(s.L, start, po);
    CHECK(r.converged);
    const CMatrix fock = s.qs.states * r.rho * s.qs.states.adjoint();
    CMatrix vacuum = CMatrix::Zero(6, 6);
    vacuum(0, 0) = 1.0;
    CHECK((fock - vacuum).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(r.horizon >= po.min_horizon);
    CHECK(r.halving_change < 1e-10);
}

TEST_CASE("ground product state is the vacuum with the qubit down") {
    const auto h = HilbertSpace::coupled(5);
    const ModelParams p = paper_parameter_set("fig2-coupled");
    const QuasiSpectrum qs = quasienergy_spectrum(build_rwa_hamiltonian(p, h), h);
    const CMatrix rho = ground_product_state(qs, h);
    const CMatrix fock = qs.states * rho * qs.states.adjoint();
    CHECK(std::abs(fock(h.index(0, -1), h.index(0, -1)) - 1.0) < 1e-12);
    CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
}

TEST_CASE("propagation agrees with the null-space steady state") {
    ModelParams p = paper_parameter_set("fig1-detector-only");
    for (double w : {0.975, 0.98, 0.99}) {
        p.omega_ex = w;
        const OracleComparison c = oracle_compare(p, QubitMode::DetectorOnly, 10);
        MESSAGE("omega_ex = " << w << " deviation " << c.max_deviation << " " << c.diagnostics);
        CHECK(c.pass);
        CHECK(c.max_deviation < 1e-6);
    }
}

TEST_CASE("negative control: a truncated steady state fails against a larger reference") {
    ModelParams p = paper_parameter_set("fig1-detector-only");
    p.f = 0.05;
    p.omega_ex = 0.98;
    const OracleComparison c = oracle_compare(p, QubitMode::DetectorOnly, 3, 12);
    MESSAGE("deviation " << c.max_deviation);
    CHECK(!c.pass);
    CHECK(c.max_deviation > 1e-3);
}

TEST_CASE("propagation validates the initial state size") {
    ModelParams p = paper_parameter_set("fig1-detector-only");
    SolveOptions opt;
    opt.n_fock = 4;
    const PointSolution s = solve_point(p, QubitMode::DetectorOnly, opt);
    CHECK_THROWS_AS(propagate_to_stationarity(s.L, CMatrix::Identity(3, 3)), ConfigError);
}
