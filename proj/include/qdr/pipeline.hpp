#pragma once

#include <optional>
#include <vector>

#include "qdr/liouvillian.hpp"
#include "qdr/propagation.hpp"
#include "qdr/rwa.hpp"
#include "qdr/spectra.hpp"
#include "qdr/steady_state.hpp"

namespace qdr {

/// Everything computed for one (parameters, qubit mode) point.
struct PointSolution {
    ModelParams params;  ///< effective parameters (Omega shifted for pinned modes)
    HilbertSpace space;
    QuasiSpectrum qs;
    FourierComponents fc;
    Liouvillian L;
    SteadyState ss;
};

struct SolveOptions {
    int n_fock = 20;
    RateModel rate_model = RateModel::FloquetMarkov;
    double chi0 = 1.0;
    /// Coupled mode only: drop the qubit-flip term and pin this sector, for
    /// validating the shifted-detector shortcut.
    std::optional<QubitSector> pinned_sector;
};

/// Up/Down use the detector-only model with Omega -> Omega +- g; DetectorOnly
/// ignores g; Coupled solves the full qubit-detector problem (in the tau_z = -1
/// sector if the qubit happens to be conserved).
PointSolution solve_point(const ModelParams& p, QubitMode mode, const SolveOptions& opt = {});

ResponseRecord detector_response(const PointSolution& s, QubitMode mode);

struct DiscriminationPoint {
    double omega_ex = 0.0;
    double A_up = 0.0;
    double A_down = 0.0;
    double D = 0.0;
    double coupled_A_up = 0.0;  ///< cross-check values, NaN unless requested
    double coupled_A_down = 0.0;
};

/// D = |A_up - A_down| along a grid, optionally cross-checked against the
/// coupled model with the qubit pinned in each eigenstate.
std::vector<DiscriminationPoint> discrimination_power(const ModelParams& p, const std::vector<double>& grid,
                                                      int n_fock, bool cross_check = false);

struct PointMetrics {
    double A_up = 0.0;
    double A_down = 0.0;
    double D = 0.0;
    double S_chi_zero = 0.0;      ///< mean of the up/down zero-frequency noise of chi+
    double S_chi2_qubit = 0.0;    ///< S_{chi2}[-omega_qb] of the excited-state detector
    double Gamma = 0.0;           ///< units of Omega
    double T_meas = 0.0;          ///< units of 2 pi / Omega
    double efficiency = 0.0;
};

/// Readout metrics at p.omega_ex from the two pinned detectors.
PointMetrics point_metrics(const ModelParams& p, int n_fock, RateModel model = RateModel::FloquetMarkov);

/// Maximum elementwise deviation, in the Fock (product) basis, between the
/// null-space steady state at n_fock and the RK4-propagated state computed
/// with reference_n_fock levels (0: same truncation), compared on the common
/// block. PASS below 1e-6.
OracleComparison oracle_compare(const ModelParams& p, QubitMode mode, int n_fock, int reference_n_fock = 0,
                                const PropagationOptions& opt = {});

}  // namespace qdr
