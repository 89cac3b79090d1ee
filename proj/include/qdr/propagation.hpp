#pragma once

#include <string>

#include "qdr/liouvillian.hpp"
#include "qdr/rwa.hpp"

namespace qdr {

/// Brute-force time propagation of d rho/dt = D rho with classical RK4,
/// independent of the eigensolver and null-space paths. The fixed-step map is
/// raised to large powers by repeated squaring so very long horizons (the
/// coupled model relaxes the qubit on ~1/Gamma) stay affordable.
struct PropagationOptions {
    double min_horizon = 0.0;   ///< propagate at least this long (e.g. 20/gamma)
    double step_factor = 0.01;  ///< h = step_factor / ||D||_inf
    double tolerance = 1e-12;   ///< max |rho(2T) - rho(T)| declaring stationarity
    int max_doublings = 90;
    bool check_halving = true;  ///< repeat with h/2 and report the difference
};

struct PropagationResult {
    CMatrix rho;
    double step = 0.0;
    double horizon = 0.0;
    int doublings = 0;
    double last_change = 0.0;     ///< max |rho(T) - rho(T/2)| at the end
    double halving_change = 0.0;  ///< max |rho_h - rho_{h/2}|, 0 if not checked
    bool converged = false;
};

PropagationResult propagate_to_stationarity(const Liouvillian& L, const CMatrix& rho0,
                                            const PropagationOptions& opt = {});

/// |n = 0> (with the qubit in tau_z = -1 when present) expressed in the
/// quasienergy basis.
CMatrix ground_product_state(const QuasiSpectrum& qs, const HilbertSpace& h);

struct OracleComparison {
    double omega_ex = 0.0;
    double max_deviation = 0.0;  ///< max_ab |rho_null - rho_propagated|
    bool pass = false;
    std::string diagnostics;
};

}  // namespace qdr
