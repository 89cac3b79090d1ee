#pragma once

#include <map>

#include "qdr/circuit_model.hpp"
#include "qdr/rwa.hpp"
#include "qdr/types.hpp"

namespace qdr {

/// Matrix elements of the detector coordinate and of the qubit operators in the
/// quasienergy basis. Entries are in units of chi0 (chi0^2 for chi2) with the
/// bath-coupling normalization chi[+1] = <a>/sqrt(2), chi[-1] = <a+>/sqrt(2).
struct FourierComponents {
    std::map<int, CMatrix> chi;   ///< n in {-1, +1}
    std::map<int, CMatrix> chi2;  ///< n in {-2, 0, +2}
    CMatrix tau_z;
    CMatrix tau_plus;
    CMatrix tau_minus;
    /// Displacement unit applied to the observables (A, spectra). The bath
    /// coupling used by build_rate_tensor is always expressed with chi0 = 1.
    double chi0 = 1.0;

    CMatrix tau_x() const { return tau_plus + tau_minus; }
};

FourierComponents fourier_components(const QuasiSpectrum& qs, const HilbertSpace& h, double chi0 = 1.0);

/// Ohmic Planck weight N(eps) = gamma eps [coth(eps / 2T) - 1 + Theta(-eps)],
/// continued by its limits at eps = 0 (2 gamma T) and T = 0.
double planck_weight(double eps, double gamma, double temp);

enum class RateModel {
    FloquetMarkov,  ///< N evaluated at eps_a - eps_b + n omega_ex
    Lindblad,       ///< N evaluated at n omega_ex (quasienergy dependence dropped)
};

/// Generator of the master equation on vectorized density matrices,
/// vec(rho)[a * dim + b] = rho(a, b).
class Liouvillian {
public:
    Liouvillian(CMatrix generator, int dim) : generator_(std::move(generator)), dim_(dim) {}

    const CMatrix& matrix() const { return generator_; }
    int dim() const { return dim_; }
    Eigen::Index super_dim() const { return generator_.rows(); }
    Eigen::Index super_index(int a, int b) const { return static_cast<Eigen::Index>(a) * dim_ + b; }

    CVector vec(const CMatrix& rho) const;
    CMatrix unvec(const CVector& v) const;
    CMatrix apply(const CMatrix& rho) const { return unvec(generator_ * vec(rho)); }

    /// max over columns of |sum_a D(aa, col)|.
    double trace_violation() const;

private:
    CMatrix generator_;
    int dim_;
};

/// Assembles D = -i(eps_a - eps_b) + L with the rate tensor built from the
/// Fourier components in `components` (every n present, paired with -n).
/// Throws NumericalError when trace preservation fails.
Liouvillian build_rate_tensor(const std::map<int, CMatrix>& components, const RVector& energies,
                              const ModelParams& p, RateModel model = RateModel::FloquetMarkov);

Liouvillian build_rate_tensor(const FourierComponents& fc, const QuasiSpectrum& qs, const ModelParams& p,
                              RateModel model = RateModel::FloquetMarkov);

/// Right eigenvectors as columns of `right`, left eigenvectors as columns of
/// `left`, binormalized so that left.adjoint() * right = identity. Sorted by
/// descending real part.
struct Eigendecomposition {
    CVector eigenvalues;
    CMatrix right;
    CMatrix left;
    double biorthogonality_residual = 0.0;

    Eigen::Index stationary_index() const;
};

/// Dense non-Hermitian eigendecomposition (LAPACK zgeev). Throws NumericalError
/// when the eigenvector basis is numerically defective.
Eigendecomposition eigendecompose(const Liouvillian& L);

}  // namespace qdr
