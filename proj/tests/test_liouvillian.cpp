#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "qdr/liouvillian.hpp"
#include "qdr/steady_state.hpp"

using namespace qdr;

namespace {

// Away from the reference operating point the slow qubit mode is fast enough
// that the stationary eigenvalue separates from the rest at the 1e-10 level.
ModelParams generic_params() {
    ModelParams p;
    p.alpha = 0.01;
    p.f = 0.006;
    p.g = 0.02;
    p.eps = 1.9;
    p.delta = 0.5;
    p.gamma = 0.01;
    p.temp = 0.05;
    p.omega_ex = 0.98;
    return p;
}

struct Built {
    HilbertSpace h;
    QuasiSpectrum qs;
    FourierComponents fc;
    Liouvillian L;
};

Built build(const ModelParams& p, bool coupled, int n_fock, RateModel model = RateModel::FloquetMarkov) {
    HilbertSpace h = coupled ? HilbertSpace::coupled(n_fock) : HilbertSpace::detector_only(n_fock);
    QuasiSpectrum qs = quasienergy_spectrum(build_rwa_hamiltonian(p, h), h);
    FourierComponents fc = fourier_components(qs, h);
    Liouvillian L = build_rate_tensor(fc, qs, p, model);
    return {h, std::move(qs), std::move(fc), std::move(L)};
}

CMatrix random_hermitian(int d, std::mt19937& rng) {
    std::normal_distribution<double> n;
    CMatrix X(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) X(i, j) = Complex(n(rng), n(rng));
    return 0.5 * (X + X.adjoint());
}

}  // namespace

TEST_CASE("Planck weight limits") {
    const double gamma = 1.6e-4;
    CHECK(planck_weight(0.0, gamma, 0.006) == doctest::Approx(2.0 * gamma * 0.006).epsilon(1e-14));
    CHECK(planck_weight(-0.01, gamma, 0.0) == doctest::Approx(0.01 * gamma).epsilon(1e-14));
    CHECK(planck_weight(0.01, gamma, 0.0) == 0.0);
    // Continuity towards T = 0 and eps = 0.
    CHECK(planck_weight(-0.01, gamma, 1e-6) == doctest::Approx(0.01 * gamma).epsilon(1e-12));
    CHECK(planck_weight(1e-9, gamma, 0.006) == doctest::Approx(2.0 * gamma * 0.006).epsilon(1e-6));
    CHECK(planck_weight(-1e-9, gamma, 0.006) == doctest::Approx(2.0 * gamma * 0.006).epsilon(1e-6));
    // Emission minus absorption is the bare rate; with n the Bose occupation the
    // weights are 2 gamma eps n and gamma eps (2n + 1).
    for (double e : {0.3, 1.0, 2.0}) {
        const double up = planck_weight(e, gamma, 0.5), down = planck_weight(-e, gamma, 0.5);
        const double n = 1.0 / std::expm1(e / 0.5);
        CHECK(down - up == doctest::Approx(gamma * e).epsilon(1e-12));
        CHECK(up / down == doctest::Approx(2.0 * n / (2.0 * n + 1.0)).epsilon(1e-12));
    }
    for (double e = -3.0; e <= 3.0; e += 0.01) CHECK(planck_weight(e, gamma, 0.006) >= 0.0);
    CHECK_THROWS_AS(planck_weight(0.1, gamma, -1.0), ConfigError);
}

TEST_CASE("Fourier components without drive and coupling are ladder operators") {
    ModelParams p = paper_parameter_set("fig1-detector-only");
    p.f = 0.0;
    const auto h = HilbertSpace::detector_only(8);
    const QuasiSpectrum qs = quasienergy_spectrum(build_rwa_hamiltonian(p, h), h);
    const FourierComponents fc = fourier_components(qs, h);
    const CMatrix a = h.annihilation();
    const CMatrix V = qs.states;
    CHECK((V * fc.chi.at(1) * V.adjoint() - a / std::sqrt(2.0)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((V * fc.chi.at(-1) * V.adjoint() - a.adjoint() / std::sqrt(2.0)).cwiseAbs().maxCoeff() < 1e-12);
    CMatrix expected0 = CMatrix::Zero(8, 8);
    for (int n = 0; n < 8; ++n) expected0(n, n) = 0.5 * (2 * n + 1);
    CHECK((V * fc.chi2.at(0) * V.adjoint() - expected0).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Fourier components pair as adjoints") {
    const Built b = build(generic_params(), true, 6);
    CHECK((b.fc.chi.at(-1) - b.fc.chi.at(1).adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((b.fc.chi2.at(-2) - b.fc.chi2.at(2).adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((b.fc.chi2.at(0) - b.fc.chi2.at(0).adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((b.fc.tau_z - b.fc.tau_z.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("generator preserves trace and Hermiticity") {
    std::mt19937 rng(7);
    for (bool coupled : {false, true}) {
        for (RateModel model : {RateModel::FloquetMarkov, RateModel::Lindblad}) {
            const Built b = build(coupled ? paper_parameter_set("fig2-coupled") : generic_params(), coupled, 6, model);
            CHECK(b.L.trace_violation() < 1e-10);
            for (int k = 0; k < 5; ++k) {
                const CMatrix X = random_hermitian(b.qs.dim(), rng);
                const CMatrix Y = b.L.apply(X);
                CHECK(std::abs(Y.trace()) < 1e-10);
                CHECK((Y - Y.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
            }
        }
    }
}

TEST_CASE("spectrum of the generator: stability, unique null, trace sum") {
    const Built b = build(generic_params(), true, 6);
    const Eigendecomposition eig = eigendecompose(b.L);
    int nulls = 0;
    for (Eigen::Index m = 0; m < eig.eigenvalues.size(); ++m) {
        CHECK(eig.eigenvalues(m).real() <= 1e-10);
        nulls += std::abs(eig.eigenvalues(m)) < 1e-10;
    }
    CHECK(nulls == 1);
    const Complex sum = eig.eigenvalues.sum();
    const Complex tr = b.L.matrix().trace();
    CHECK(std::abs(sum - tr) < 1e-10 * std::max(1.0, std::abs(tr)));

    // Left stationary vector is the identity, right one the steady state.
    const Eigen::Index s = eig.stationary_index();
    const CMatrix left = b.L.unvec(eig.left.col(s));
    const Complex scale = left(0, 0);
    CHECK((left - scale * CMatrix::Identity(b.qs.dim(), b.qs.dim())).cwiseAbs().maxCoeff() <
          1e-8 * std::abs(scale));
    const SteadyState ss = steady_state(b.L, b.qs);
    CMatrix right = b.L.unvec(eig.right.col(s));
    right /= right.trace();
    CHECK((right - ss.rho).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("damped linear oscillator at T = 0 has the textbook generator spectrum") {
    ModelParams p;
    p.gamma = 0.01;
    p.omega_ex = 0.98;
    const int n = 6;
    const Built b = build(p, false, n);
    const Eigendecomposition eig = eigendecompose(b.L);
    std::multiset<std::pair<long, long>> got, expected;
    auto key = [](Complex z) { return std::pair<long, long>{std::lround(z.real() * 1e8), std::lround(z.imag() * 1e8)}; };
    for (Eigen::Index m = 0; m < eig.eigenvalues.size(); ++m) got.insert(key(eig.eigenvalues(m)));
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            expected.insert(key(Complex(-0.5 * p.gamma * (j + k), -p.detuning() * (j - k))));
    CHECK(got == expected);
}

TEST_CASE("photon number decays at gamma at T = 0, population flows downward only") {
    ModelParams p;
    p.gamma = 0.01;
    p.omega_ex = 0.97;
    const Built b = build(p, false, 6);
    // Quasienergy states are Fock states here; find |3>.
    int idx3 = -1;
    for (int i = 0; i < b.qs.dim(); ++i)
        if (std::abs(b.qs.states(3, i)) > 0.999) idx3 = i;
    REQUIRE(idx3 >= 0);
    CMatrix rho = CMatrix::Zero(6, 6);
    rho(idx3, idx3) = 1.0;
    const CMatrix drho = b.L.apply(rho);
    const CMatrix N = b.qs.states.adjoint() * b.h.number() * b.qs.states;
    CHECK((N * drho).trace().real() == doctest::Approx(-p.gamma * 3.0).epsilon(1e-10));
    for (int i = 0; i < 6; ++i) {
        const int fock = [&] {
            for (int n = 0; n < 6; ++n)
                if (std::abs(b.qs.states(n, i)) > 0.999) return n;
            return -1;
        }();
        if (fock > 3) CHECK(std::abs(drho(i, i)) < 1e-15);
    }
}

TEST_CASE("n = 0 and n = +-2 components of the coordinate add nothing") {
    const Built b = build(generic_params(), true, 5);
    std::map<int, CMatrix> components = b.fc.chi;
    const Liouvillian L1 = build_rate_tensor(components, b.qs.energies, generic_params());
    const CMatrix zero = CMatrix::Zero(b.qs.dim(), b.qs.dim());
    components[0] = zero;
    components[2] = zero;
    components[-2] = zero;
    const Liouvillian L2 = build_rate_tensor(components, b.qs.energies, generic_params());
    CHECK((L1.matrix() - L2.matrix()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((L1.matrix() - b.L.matrix()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("mismatched Fourier components are rejected") {
    const Built b = build(generic_params(), true, 5);
    std::map<int, CMatrix> components = b.fc.chi;
    components[1] = CMatrix::Zero(3, 3);
    CHECK_THROWS_AS(build_rate_tensor(components, b.qs.energies, generic_params()), ConfigError);
}

TEST_CASE("dense eigendecomposition refuses oversized generators") {
    ModelParams p = generic_params();
    const Built b = build(p, true, 33);  // dim 66, dim^2 = 4356
    CHECK_THROWS_AS(eigendecompose(b.L), NumericalError);
}
