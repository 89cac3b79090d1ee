#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qdr/circuit_model.hpp"
#include "qdr/types.hpp"

namespace qdr {

/// Truncated Fock space of the detector, optionally tensored with the qubit.
/// Flat index = n * qubit_dim + q with q = 0 for tau_z = +1 and q = 1 for
/// tau_z = -1 (qubit index runs fastest).
class HilbertSpace {
public:
    static HilbertSpace coupled(int n_fock);
    static HilbertSpace detector_only(int n_fock);

    int n_fock() const { return n_fock_; }
    bool has_qubit() const { return with_qubit_; }
    int qubit_dim() const { return with_qubit_ ? 2 : 1; }
    int dim() const { return n_fock_ * qubit_dim(); }

    /// tau_z eigenvalue s in {+1, -1}; ignored for the detector-only space.
    int index(int n, int s = 1) const;
    /// (fock n, tau_z s) of a flat index; s = 0 for the detector-only space.
    std::pair<int, int> label(int idx) const;

    // Operators on the full space, in the product basis.
    CMatrix annihilation() const;
    CMatrix number() const;
    CMatrix tau_z() const;
    CMatrix tau_plus() const;
    CMatrix tau_minus() const;

private:
    HilbertSpace(int n_fock, bool with_qubit);

    CMatrix lift(const CMatrix& fock_op, const CMatrix& qubit_op) const;

    int n_fock_;
    bool with_qubit_;
};

/// Whether the two-photon qubit flip term is kept. Dropping it pins the qubit
/// in tau_z eigenstates (used to validate the shifted-detector shortcut).
enum class QubitFlip { Included, Dropped };

struct RwaHamiltonian {
    CMatrix matrix;
};

/// Rotating-frame Hamiltonian
///   1/2 dw_qb tau_z + g cos(theta) n tau_z + g/2 sin(theta) (a+^2 tau- + a^2 tau+)
///   + dOmega n - alpha/2 a+a a a+ + f/2 (a + a+).
/// The nonlinear term is diagonal with entries n(n+1) for every retained level.
RwaHamiltonian build_rwa_hamiltonian(const ModelParams& p, const HilbertSpace& h,
                                     QubitFlip flip = QubitFlip::Included);

struct QuasiSpectrum {
    RVector energies;  ///< ascending
    CMatrix states;    ///< column alpha is |phi_alpha> in the product basis
    /// tau_z of each state when the qubit is conserved, else 0.
    std::vector<int> sector;
    bool qubit_conserved = false;

    int dim() const { return static_cast<int>(energies.size()); }
};

QuasiSpectrum quasienergy_spectrum(const RwaHamiltonian& H, const HilbertSpace& h);

/// Continuity labelling: perm[k] is the index into `current` continuing the
/// branch k of `previous`, assigned greedily by maximal overlap (ties broken by
/// energy order).
struct BranchAssignment {
    std::vector<int> perm;
    double min_overlap = 1.0;
};
BranchAssignment track_branches(const QuasiSpectrum& previous, const QuasiSpectrum& current);

struct Resonance {
    int photons = 0;
    double omega_ex = 0.0;          ///< location of the minimal gap
    double gap = 0.0;               ///< numerically scanned minimal splitting
    double gap_formula = 0.0;       ///< perturbative Rabi law f (2f/3alpha)^(N-1) sqrt(N!)/(N-1)!^2
    double gap_perturbative = 0.0;  ///< lowest-order ladder result f (f/alpha)^(N-1) sqrt(N!)/(N-1)!^2
    bool resolved = true;
};

double rabi_gap_formula(double f, double alpha, int photons);
double rabi_gap_perturbative(double f, double alpha, int photons);

/// Scans omega_ex around Omega - alpha (N+1)/2 for N = 1..N_max on the
/// detector-only model and returns the avoided crossing of the dressed |0> and
/// |N> branches.
std::vector<Resonance> locate_multiphoton_resonances(const ModelParams& p, int n_fock, int N_max);

struct ConvergenceReport {
    int n_fock = 0;           ///< truncation that passed (or the cap)
    double amplitude = 0.0;   ///< A at n_fock
    double amplitude_doubled = 0.0;
    double relative_change = 0.0;
    bool converged = false;
    std::vector<int> tried;
};

/// Compares the detector steady-state amplitude at p.omega_ex for n and 2n
/// levels, doubling n from n_fock until the relative change is below 1e-4.
/// Throws NumericalError if the cap is reached without convergence.
ConvergenceReport check_truncation_convergence(const ModelParams& p, int n_fock, int cap = 80);

}  // namespace qdr
