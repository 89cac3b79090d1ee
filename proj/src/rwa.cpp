#include "qdr/rwa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace qdr {

HilbertSpace::HilbertSpace(int n_fock, bool with_qubit) : n_fock_(n_fock), with_qubit_(with_qubit) {
    if (n_fock < 2) throw ConfigError("Fock truncation must keep at least 2 levels");
}

HilbertSpace HilbertSpace::coupled(int n_fock) { return HilbertSpace(n_fock, true); }
HilbertSpace HilbertSpace::detector_only(int n_fock) { return HilbertSpace(n_fock, false); }

int HilbertSpace::index(int n, int s) const {
    if (n < 0 || n >= n_fock_) throw std::out_of_range("Fock index out of range");
    if (!with_qubit_) return n;
    return n * 2 + (s > 0 ? 0 : 1);
}

std::pair<int, int> HilbertSpace::label(int idx) const {
    if (idx < 0 || idx >= dim()) throw std::out_of_range("flat index out of range");
    if (!with_qubit_) return {idx, 0};
    return {idx / 2, idx % 2 == 0 ? 1 : -1};
}

CMatrix HilbertSpace::lift(const CMatrix& fock_op, const CMatrix& qubit_op) const {
    const int q = qubit_dim();
    CMatrix out = CMatrix::Zero(dim(), dim());
    for (int i = 0; i < n_fock_; ++i)
        for (int j = 0; j < n_fock_; ++j) {
            if (fock_op(i, j) == Complex(0.0)) continue;
            out.block(i * q, j * q, q, q) = fock_op(i, j) * qubit_op;
        }
    return out;
}

CMatrix HilbertSpace::annihilation() const {
    CMatrix a = CMatrix::Zero(n_fock_, n_fock_);
    for (int n = 1; n < n_fock_; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return lift(a, CMatrix::Identity(qubit_dim(), qubit_dim()));
}

CMatrix HilbertSpace::number() const {
    CMatrix n = CMatrix::Zero(n_fock_, n_fock_);
    for (int k = 0; k < n_fock_; ++k) n(k, k) = static_cast<double>(k);
    return lift(n, CMatrix::Identity(qubit_dim(), qubit_dim()));
}

CMatrix HilbertSpace::tau_z() const {
    if (!with_qubit_) return CMatrix::Zero(dim(), dim());
    CMatrix z = CMatrix::Zero(2, 2);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    return lift(CMatrix::Identity(n_fock_, n_fock_), z);
}

CMatrix HilbertSpace::tau_plus() const {
    if (!with_qubit_) return CMatrix::Zero(dim(), dim());
    CMatrix t = CMatrix::Zero(2, 2);
    t(0, 1) = 1.0;
    return lift(CMatrix::Identity(n_fock_, n_fock_), t);
}

CMatrix HilbertSpace::tau_minus() const { return tau_plus().adjoint(); }

RwaHamiltonian build_rwa_hamiltonian(const ModelParams& p, const HilbertSpace& h, QubitFlip flip) {
    const int nf = h.n_fock();
    CMatrix fock = CMatrix::Zero(nf, nf);
    for (int n = 0; n < nf; ++n) {
        const double nd = n;
        fock(n, n) = p.detuning() * nd - 0.5 * p.alpha * nd * (nd + 1.0);
    }
    for (int n = 0; n + 1 < nf; ++n) {
        const double drive = 0.5 * p.f * std::sqrt(n + 1.0);
        fock(n + 1, n) = drive;
        fock(n, n + 1) = drive;
    }

    if (!h.has_qubit()) return {fock};

    const int d = h.dim();
    CMatrix H = CMatrix::Zero(d, d);
    const double theta = p.theta();
    const double parametric = p.g * std::cos(theta);
    const double two_photon = flip == QubitFlip::Included ? 0.5 * p.g * std::sin(theta) : 0.0;
    const double qubit = 0.5 * p.qubit_detuning();

    for (int i = 0; i < nf; ++i)
        for (int j = 0; j < nf; ++j)
            for (int s : {1, -1}) H(h.index(i, s), h.index(j, s)) = fock(i, j);

    for (int n = 0; n < nf; ++n)
        for (int s : {1, -1}) H(h.index(n, s), h.index(n, s)) += s * (qubit + parametric * n);

    // a+^2 tau-: |n, +> -> sqrt((n+1)(n+2)) |n+2, ->
    if (two_photon != 0.0) {
        for (int n = 0; n + 2 < nf; ++n) {
            const double el = two_photon * std::sqrt((n + 1.0) * (n + 2.0));
            H(h.index(n + 2, -1), h.index(n, 1)) = el;
            H(h.index(n, 1), h.index(n + 2, -1)) = el;
        }
    }
    return {H};
}

namespace {

void check_residual(const CMatrix& H, const RVector& w, const CMatrix& V) {
    const double norm = std::max(H.cwiseAbs().maxCoeff(), 1e-300);
    const double residual = (H * V - V * w.asDiagonal()).cwiseAbs().maxCoeff();
    if (residual > 1e-10 * std::max(norm, 1.0)) {
        std::ostringstream msg;
        msg << "quasienergy eigenvector residual " << residual << " exceeds tolerance (|H|_max = " << norm
            << ")";
        throw NumericalError(msg.str());
    }
}

std::pair<RVector, CMatrix> hermitian_eigen(const CMatrix& H) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(H);
    if (solver.info() != Eigen::Success) {
        Eigen::JacobiSVD<CMatrix> svd(H);
        const auto& sv = svd.singularValues();
        std::ostringstream msg;
        msg << "Hermitian eigensolver failed (dim " << H.rows() << ", singular values in ["
            << sv(sv.size() - 1) << ", " << sv(0) << "])";
        throw NumericalError(msg.str());
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace

QuasiSpectrum quasienergy_spectrum(const RwaHamiltonian& ham, const HilbertSpace& h) {
    const CMatrix& H = ham.matrix;
    const int d = h.dim();
    if (H.rows() != d || H.cols() != d) throw ConfigError("Hamiltonian does not match Hilbert space");

    bool conserved = false;
    if (h.has_qubit()) {
        conserved = true;
        for (int i = 0; i < d && conserved; ++i)
            for (int j = 0; j < d; ++j)
                if (h.label(i).second != h.label(j).second && H(i, j) != Complex(0.0)) {
                    conserved = false;
                    break;
                }
    }

    RVector energies(d);
    CMatrix states = CMatrix::Zero(d, d);
    std::vector<int> sector(d, 0);

    if (conserved) {
        // Diagonalize each tau_z block separately so every state carries a
        // definite qubit label even at exact degeneracies.
        int col = 0;
        for (int s : {1, -1}) {
            std::vector<int> idx;
            for (int n = 0; n < h.n_fock(); ++n) idx.push_back(h.index(n, s));
            const int b = static_cast<int>(idx.size());
            CMatrix block(b, b);
            for (int i = 0; i < b; ++i)
                for (int j = 0; j < b; ++j) block(i, j) = H(idx[i], idx[j]);
            auto [w, V] = hermitian_eigen(block);
            for (int k = 0; k < b; ++k, ++col) {
                energies(col) = w(k);
                for (int i = 0; i < b; ++i) states(idx[i], col) = V(i, k);
                sector[col] = s;
            }
        }
        std::vector<int> order(d);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return energies(a) < energies(b); });
        RVector e2(d);
        CMatrix s2(d, d);
        std::vector<int> sec2(d);
        for (int k = 0; k < d; ++k) {
            e2(k) = energies(order[k]);
            s2.col(k) = states.col(order[k]);
            sec2[k] = sector[order[k]];
        }
        energies = std::move(e2);
        states = std::move(s2);
        sector = std::move(sec2);
    } else {
        auto [w, V] = hermitian_eigen(H);
        energies = w;
        states = V;
    }

    check_residual(H, energies, states);
    return {energies, states, sector, conserved};
}

BranchAssignment track_branches(const QuasiSpectrum& previous, const QuasiSpectrum& current) {
    const int d = previous.dim();
    if (current.dim() != d) throw ConfigError("branch tracking across spectra of different size");
    const Eigen::MatrixXd overlap = (previous.states.adjoint() * current.states).cwiseAbs2();

    struct Candidate {
        double value;
        int prev;
        int cur;
    };
    std::vector<Candidate> candidates;
    candidates.reserve(static_cast<size_t>(d) * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) candidates.push_back({overlap(i, j), i, j});
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.value != b.value) return a.value > b.value;
        if (a.prev != b.prev) return a.prev < b.prev;
        return a.cur < b.cur;
    });

    BranchAssignment out;
    out.perm.assign(d, -1);
    std::vector<bool> used(d, false);
    int assigned = 0;
    for (const auto& c : candidates) {
        if (assigned == d) break;
        if (out.perm[c.prev] >= 0 || used[c.cur]) continue;
        out.perm[c.prev] = c.cur;
        used[c.cur] = true;
        out.min_overlap = std::min(out.min_overlap, c.value);
        ++assigned;
    }
    return out;
}

double rabi_gap_formula(double f, double alpha, int photons) {
    const int N = photons;
    const double factorial_n = std::tgamma(N + 1.0);
    const double factorial_nm1 = std::tgamma(static_cast<double>(N));
    return f * std::pow(2.0 * f / (3.0 * alpha), N - 1) * std::sqrt(factorial_n) /
           (factorial_nm1 * factorial_nm1);
}

double rabi_gap_perturbative(double f, double alpha, int photons) {
    const int N = photons;
    const double factorial_n = std::tgamma(N + 1.0);
    const double factorial_nm1 = std::tgamma(static_cast<double>(N));
    return f * std::pow(f / alpha, N - 1) * std::sqrt(factorial_n) / (factorial_nm1 * factorial_nm1);
}

namespace {

struct GapSample {
    double gap = 0.0;
    double min_weight = 0.0;
};

GapSample branch_gap(ModelParams p, const HilbertSpace& h, double omega_ex, int photons) {
    p.omega_ex = omega_ex;
    const auto qs = quasienergy_spectrum(build_rwa_hamiltonian(p, h), h);
    const int d = qs.dim();
    // Weight of each dressed state on the bare pair {|0>, |N>}.
    std::vector<std::pair<double, int>> weights(d);
    for (int k = 0; k < d; ++k)
        weights[k] = {std::norm(qs.states(0, k)) + std::norm(qs.states(photons, k)), k};
    std::partial_sort(weights.begin(), weights.begin() + 2, weights.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });
    return {std::abs(qs.energies(weights[0].second) - qs.energies(weights[1].second)), weights[1].first};
}

}  // namespace

std::vector<Resonance> locate_multiphoton_resonances(const ModelParams& params, int n_fock, int N_max) {
    if (N_max < 1) throw ConfigError("N_max must be >= 1");
    if (!(params.f > 0.0)) throw ConfigError("resonance location requires a finite drive f > 0");
    if (!(params.alpha > 0.0)) throw ConfigError("resonance location requires alpha > 0");
    if (N_max + 1 > n_fock) throw ConfigError("Fock truncation too small for the requested photon number");

    ModelParams p = params;
    p.g = 0.0;
    const auto h = HilbertSpace::detector_only(n_fock);
    const double half_window = 0.25 * p.alpha;
    constexpr int kCoarse = 401;

    std::vector<Resonance> out;
    for (int N = 1; N <= N_max; ++N) {
        const double center = p.Omega - 0.5 * p.alpha * (N + 1);
        const double lo = center - half_window;
        const double step = 2.0 * half_window / (kCoarse - 1);

        int best = 0;
        double best_gap = std::numeric_limits<double>::infinity();
        for (int i = 0; i < kCoarse; ++i) {
            const double g = branch_gap(p, h, lo + i * step, N).gap;
            if (g < best_gap) {
                best_gap = g;
                best = i;
            }
        }

        // Golden-section refinement inside the neighbouring coarse cells.
        double a = lo + std::max(best - 1, 0) * step;
        double b = lo + std::min(best + 1, kCoarse - 1) * step;
        const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = b - ratio * (b - a);
        double x2 = a + ratio * (b - a);
        double f1 = branch_gap(p, h, x1, N).gap;
        double f2 = branch_gap(p, h, x2, N).gap;
        for (int it = 0; it < 200 && (b - a) > 1e-13; ++it) {
            if (f1 < f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - ratio * (b - a);
                f1 = branch_gap(p, h, x1, N).gap;
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + ratio * (b - a);
                f2 = branch_gap(p, h, x2, N).gap;
            }
        }
        const double omega_min = 0.5 * (a + b);
        const auto sample = branch_gap(p, h, omega_min, N);

        Resonance r;
        r.photons = N;
        r.omega_ex = omega_min;
        r.gap = sample.gap;
        r.gap_formula = rabi_gap_formula(p.f, p.alpha, N);
        r.gap_perturbative = rabi_gap_perturbative(p.f, p.alpha, N);
        r.resolved = sample.min_weight >= 0.5;
        out.push_back(r);
    }
    return out;
}

}  // namespace qdr
