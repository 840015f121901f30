#pragma once

#include "qconfine/config.hpp"

namespace qconfine {

enum class Parity { Odd, Even };

/// c_j(k) of a confined standing wave; length^{1/2} units.
/// Odd j gives a purely real value, even j a purely imaginary one.
struct MomentumAmplitude {
    double re = 0.0;
    double im = 0.0;
    Parity parity = Parity::Odd;

    double norm_sq() const noexcept { return re * re + im * im; }
};

/// |c_j(k)|^2 in length units.
struct MomentumDensity {
    double value = 0.0;
};

Parity parity_of(QuantumIndex j) noexcept;

/*!
 * Momentum amplitude
 *
 *   c_j(k) = j sqrt(pi L) / (j^2 pi^2 - k^2 L^2) * (e^{-ikL/2} - (-1)^j e^{ikL/2})
 *
 * evaluated without cancellation near the removable points |kL| = j pi.
 */
MomentumAmplitude amplitude(const WellConfig& cfg, QuantumIndex j, double k);

/// |c_j(k)|^2: 4 j^2 pi L cos^2(kL/2) / (j^2 pi^2 - k^2 L^2)^2 for odd j and
/// the sin^2 analogue for even j. Finite and smooth everywhere.
MomentumDensity density(const WellConfig& cfg, QuantumIndex j, double k);

/// The density at k = +-j pi / L, which is L / (4 pi) for every j.
double singular_point_value(const WellConfig& cfg, QuantumIndex j);

/// Upper bound 32 j^2 pi / (3 K^3 L^3) on the density mass outside |k| > K.
/// Valid for K L >= sqrt(2) j pi; throws TruncationTooSmall otherwise.
double tail_bound(const WellConfig& cfg, QuantumIndex j, double k_cut);

namespace detail {
/// sin(v)/v with a series near zero.
double sinc(double v) noexcept;

/// Signed real factor a with c_j(k) = a (odd j) or c_j(k) = i a (even j),
/// in units of sqrt(L). u = kL.
double scaled_amplitude(int j, double u) noexcept;
}  // namespace detail

}  // namespace qconfine
