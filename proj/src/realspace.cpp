#include "qconfine/realspace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_expint.h>

#include "qconfine/error.hpp"
#include "qconfine/momentum.hpp"
#include "qconfine/quadrature.hpp"

namespace qconfine {

namespace {

constexpr double pi = std::numbers::pi;

struct Value {
    double v;
    double err;
};

Value si(double x)
{
    gsl_sf_result r;
    gsl_sf_Si_e(x, &r);
    return {r.val, r.err};
}

Value ci(double x)
{
    gsl_sf_result r;
    gsl_sf_Ci_e(x, &r);
    return {r.val, r.err};
}

// D(w) = integral over k > K of cos(w k) [1/(k - b) - 1/(k + b)], K > b, w >= 0.
Value tail_kernel(double w, double k_cut, double b)
{
    const double lo = k_cut - b;
    const double hi = k_cut + b;
    if (w * hi < 1e-8) return {std::log(hi / lo), 1e-15};

    const Value ci_lo = ci(w * lo);
    const Value ci_hi = ci(w * hi);
    const Value si_lo = si(w * lo);
    const Value si_hi = si(w * hi);
    const double c = std::cos(w * b);
    const double s = std::sin(w * b);
    const double v = c * (ci_hi.v - ci_lo.v) - s * (pi - si_lo.v - si_hi.v);
    const double err = std::abs(c) * (ci_hi.err + ci_lo.err) + std::abs(s) * (si_lo.err + si_hi.err);
    return {v, err};
}

// GSL aborts on domain errors by default; results carry their own status.
void silence_gsl()
{
    static const bool done = [] {
        gsl_set_error_handler_off();
        return true;
    }();
    (void)done;
}

}  // namespace

WavefunctionSample psi_closed(const WellConfig& cfg, QuantumIndex j, double x)
{
    require_1d(cfg);
    const double len = cfg.length();
    WavefunctionSample s;
    s.x = x;
    s.inside_well = std::abs(x) < 0.5 * len;
    if (s.inside_well) {
        s.value = std::sqrt(2.0 / len) * std::sin(j.value() * pi / len * (x - 0.5 * len));
    }
    return s;
}

Reconstruction reconstruct(const WellConfig& cfg, QuantumIndex j, double x, double tol)
{
    require_1d(cfg);
    silence_gsl();
    const double len = cfg.length();
    const double b = j.value() * pi / len;
    const double k_cut = 10.0 * b;
    const double halfperiod = pi / std::max(len, 0.5 * len + std::abs(x));

    IntegrandSpec spec;
    spec.parity = IntegrandParity::Even;
    spec.oscillation_halfperiod = halfperiod;
    spec.truncation_k = k_cut;
    if (j.is_odd()) {
        spec.f = [&](double k) { return amplitude(cfg, j, k).re * std::cos(k * x); };
    } else {
        spec.f = [&](double k) { return -amplitude(cfg, j, k).im * std::sin(k * x); };
    }
    // Integral of h(k) cos(w k) over k > K with h = j sqrt(pi L)/(j^2 pi^2 - k^2 L^2)
    // equals -D(w) / (2 sqrt(pi L)); the integrand above is h times a sum of
    // two such cosines with w = L/2 + x and L/2 - x.
    spec.tail_at = [&](double kc) {
        const Value plus = tail_kernel(std::abs(0.5 * len + x), kc, b);
        const Value minus = tail_kernel(std::abs(0.5 * len - x), kc, b);
        const double scale = -1.0 / (2.0 * std::sqrt(pi * len));
        const double d = j.is_odd() ? plus.v + minus.v : minus.v - plus.v;
        // Both half-lines.
        return TailEstimate{2.0 * scale * d, 2.0 * std::abs(scale) * (plus.err + minus.err)};
    };

    const double norm = 1.0 / std::sqrt(2.0 * pi);
    const QuadratureResult real = integrate(spec, tol / norm);

    // Imaginary part: the odd-in-k partner of the real integrand.
    auto imag_f = [&](double k) {
        const MomentumAmplitude a = amplitude(cfg, j, k);
        return a.re * std::sin(k * x) + a.im * std::cos(k * x);
    };
    const QuadratureResult imag =
        integrate_interval(imag_f, -k_cut, k_cut, 0.5 * halfperiod, tol / norm);

    Reconstruction r;
    r.value = -norm * real.value;
    r.error = norm * real.total_error();
    r.imag_residual = norm * imag.value;
    if (!(std::abs(r.imag_residual) <= 1e-9)) {
        throw Error(ErrorCode::DomainError, "plane-wave superposition left an imaginary residual of " +
                                                std::to_string(r.imag_residual));
    }
    return r;
}

double psi_reconstruct(const WellConfig& cfg, QuantumIndex j, double x, double tol)
{
    return reconstruct(cfg, j, x, tol).value;
}

int node_count(const WellConfig& cfg, QuantumIndex j, int grid_points)
{
    require_1d(cfg);
    if (grid_points < 64 * j.value()) {
        throw Error(ErrorCode::GridTooCoarse, "node counting needs at least 64 j grid points, got " +
                                                  std::to_string(grid_points));
    }
    const double len = cfg.length();
    int changes = 0;
    double previous = 0.0;
    for (int i = 0; i < grid_points; ++i) {
        const double x = -0.5 * len + len * (i + 0.5) / grid_points;
        const double v = psi_closed(cfg, j, x).value;
        if (v == 0.0) continue;
        if (previous != 0.0 && (v > 0.0) != (previous > 0.0)) ++changes;
        previous = v;
    }
    return changes;
}

}  // namespace qconfine
