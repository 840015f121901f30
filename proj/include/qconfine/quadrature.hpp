#pragma once

#include <cstddef>
#include <functional>

#include "qconfine/config.hpp"
#include "qconfine/error.hpp"

namespace qconfine {

/// Value of a whole-line integral together with its error budget.
struct QuadratureResult {
    double value = 0.0;
    double quad_error = 0.0;  ///< estimated error on the truncated domain
    double tail_error = 0.0;  ///< bound on what the tail treatment misses
    std::size_t evaluations = 0;
    bool converged = true;

    double total_error() const noexcept { return quad_error + tail_error; }
};

enum class IntegrandParity { Even, General };

/// Treatment of the region |k| > K: an estimate of its contribution (zero
/// for a pure bound) and a bound on the error of that estimate.
struct TailEstimate {
    double value = 0.0;
    double error = 0.0;
};

struct IntegrandSpec {
    std::function<double(double)> f;
    IntegrandParity parity = IntegrandParity::General;
    double oscillation_halfperiod = 1.0;
    double truncation_k = 1.0;
    std::function<TailEstimate(double)> tail_at;
};

/// Thrown when the refinement budget runs out; carries the best result.
class ToleranceNotMet : public Error {
public:
    explicit ToleranceNotMet(QuadratureResult partial);
    const QuadratureResult& partial() const noexcept { return partial_; }

private:
    QuadratureResult partial_;
};

inline constexpr std::size_t default_max_evaluations = 40'000'000;

/*!
 * Adaptive Gauss-Kronrod (7/15) integration of spec.f over [0, K] (Even,
 * result doubled) or [-K, K] (General), plus spec.tail_at(K).
 *
 * The domain is first cut into panels no wider than half the oscillation
 * half-period; the panel with the largest |K15 - G7| is bisected until the
 * summed estimates fall below max(tol, rel_tol |value|) / 2. Evaluation and
 * summation order are fixed, so results are bit-reproducible.
 *
 * Throws NonFiniteIntegrand, and ToleranceNotMet when max_evaluations is
 * exhausted first.
 */
QuadratureResult integrate(const IntegrandSpec& spec, double tol, double rel_tol = 0.0,
                           std::size_t max_evaluations = default_max_evaluations);

/// The same adaptive rule on a finite interval [a, b], without a tail.
QuadratureResult integrate_interval(const std::function<double(double)>& f, double a,
                                    double b, double initial_width, double tol,
                                    double rel_tol = 0.0,
                                    std::size_t max_evaluations = default_max_evaluations);

/// Density integrand with the truncation rule K >= max(sqrt(2), 10) j pi / L
/// and tail_bound(K) <= tol / 2.
IntegrandSpec density_integrand(const WellConfig& cfg, QuantumIndex j, double tol);

/// Estimated power-law growth exponent of |o(k)| for large k.
double growth_exponent(const std::function<double(double)>& o, double k_scale);

/*!
 * Expectation value of an even function o(k) in the confined state j:
 * the integral of |c_j(k)|^2 o(k) over the real line.
 *
 * o may grow at most like k^2; faster growth throws DivergentMoment.
 */
QuadratureResult moment(const WellConfig& cfg, QuantumIndex j,
                        const std::function<double(double)>& o, double tol,
                        double rel_tol = 0.0);

}  // namespace qconfine
