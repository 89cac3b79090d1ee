#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "qdr/config.hpp"
#include "qdr/pipeline.hpp"

namespace qdr {

struct SweepConfig {
    ModelParams base;
    SweepSettings settings;
    int jobs = 1;
};

struct SweepResultRow {
    double omega_ex = 0.0;
    double f = 0.0;
    QubitMode mode = QubitMode::DetectorOnly;
    double A = 0.0;
    double A_abs = 0.0;
    double P_inf = 0.0;
    double D = 0.0;
    double Gamma = 0.0;
    double T_meas = 0.0;
    double efficiency = 0.0;
    double null_residual = 0.0;
    int n_fock_used = 0;
    std::string error;  ///< empty on success
};

std::vector<double> linspace(double from, double to, int points);

/// Runs fn(i) for i in [0, count) on `jobs` threads pulling indices from a
/// shared counter. Exceptions must be handled inside fn.
void parallel_for(size_t count, int jobs, const std::function<void(size_t)>& fn);

/// One row per (f, mode, omega_ex), sorted in that order (f ascending, modes
/// in the configured order, omega ascending). Per-point failures are recorded
/// in the error column with NaN values; the sweep continues.
std::vector<SweepResultRow> run_sweep(const SweepConfig& cfg);

extern const char* const kSweepCsvHeader;
void write_sweep_csv(std::ostream& out, const std::vector<SweepResultRow>& rows);

/// Scientific notation with 17 significant digits (round-trip exact);
/// "inf", "-inf" and "nan" for non-finite values.
std::string format_number(double v);

/// Quasienergies of the detector-only model along the grid, labelled by
/// branch continuity.
struct BranchRow {
    double omega_ex = 0.0;
    int branch = 0;
    double quasienergy = 0.0;
    double overlap = 1.0;  ///< minimal overlap used to continue the labelling
};
std::vector<BranchRow> quasienergy_branches(const ModelParams& p, const std::vector<double>& grid, int n_fock);
void write_branches_csv(std::ostream& out, const std::vector<BranchRow>& rows);

}  // namespace qdr
