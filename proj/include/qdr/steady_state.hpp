#pragma once

#include <optional>
#include <string>

#include "qdr/liouvillian.hpp"
#include "qdr/rwa.hpp"

namespace qdr {

/// Qubit eigenstate used to pin the steady state when tau_z is conserved.
enum class QubitSector { Up = 1, Down = -1 };

struct SteadyState {
    CMatrix rho;          ///< quasienergy basis
    double residual = 0;  ///< max |D vec(rho)|
    int null_dim = 1;     ///< dimension of the stationary manifold (2 when tau_z is conserved)
};

/// Stationary state as the normalized null vector of D. When the qubit is
/// conserved (null_dim = 2) a sector must be given and the state is computed
/// inside that sector. Dense bordered solve with iterative refinement up to
/// dim^2 = 4096, shifted inverse iteration above.
SteadyState steady_state(const Liouvillian& L, const QuasiSpectrum& qs,
                         std::optional<QubitSector> sector = std::nullopt);

enum class QubitMode { Coupled, Up, Down, DetectorOnly };

std::string to_string(QubitMode mode);
QubitMode qubit_mode_from_string(const std::string& name);

struct ResponseRecord {
    double omega_ex = 0.0;
    double A = 0.0;      ///< signed amplitude of <chi+>, units of chi0
    double A_abs = 0.0;
    double P_inf = 0.0;  ///< maximal qubit population difference
    QubitMode mode = QubitMode::DetectorOnly;
};

/// A = sum rho_ab (chi_ba,+1 + chi_ba,-1); fills omega_ex, A and A_abs.
ResponseRecord response_amplitude(const SteadyState& ss, const FourierComponents& fc);

/// P_inf = cos(theta) tr(rho tau_z) + sin(theta) tr(rho tau_x).
double population_difference(const SteadyState& ss, const FourierComponents& fc, const ModelParams& p);

}  // namespace qdr
