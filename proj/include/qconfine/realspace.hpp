#pragma once

#include "qconfine/config.hpp"

namespace qconfine {

struct WavefunctionSample {
    double x = 0.0;
    double value = 0.0;  ///< length^{-1/2}
    bool inside_well = false;
};

/// sqrt(2/L) sin(j pi / L (x - L/2)) for |x| < L/2, zero elsewhere.
WavefunctionSample psi_closed(const WellConfig& cfg, QuantumIndex j, double x);

struct Reconstruction {
    double value = 0.0;
    double error = 0.0;           ///< quadrature estimate + special-function error
    double imag_residual = 0.0;   ///< imaginary part of the plane-wave sum
};

/*!
 * Rebuilds psi_j(x) as the plane-wave superposition of its momentum
 * amplitudes. The amplitudes are integrated adaptively up to K = 10 j pi / L;
 * beyond K, where c_j(k) has no removable points, the 1/(k^2 - b^2) tail is
 * integrated exactly via Si and Ci.
 *
 * The transform of psi_closed is -c_j(k) with c_j as returned by amplitude(),
 * so the superposition carries that global -1. Throws DomainError if the
 * imaginary residual exceeds 1e-9.
 */
Reconstruction reconstruct(const WellConfig& cfg, QuantumIndex j, double x, double tol);

/// reconstruct(...).value
double psi_reconstruct(const WellConfig& cfg, QuantumIndex j, double x, double tol);

/// Strict sign changes of psi_closed over grid_points cell centres in the
/// well; equals j - 1. Throws GridTooCoarse when grid_points < 64 j.
int node_count(const WellConfig& cfg, QuantumIndex j, int grid_points);

}  // namespace qconfine
