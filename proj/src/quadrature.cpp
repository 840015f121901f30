#include "qconfine/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

#include "qconfine/momentum.hpp"

namespace qconfine {

namespace {

constexpr double pi = std::numbers::pi;

// Kronrod 15-point nodes (positive half) and weights; the odd-indexed nodes
// are the 7-point Gauss nodes.
constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    double value;
    double error;
};

double checked(const std::function<double(double)>& f, double x)
{
    const double y = f(x);
    if (!std::isfinite(y)) {
        throw Error(ErrorCode::NonFiniteIntegrand,
                    "integrand is not finite at k = " + std::to_string(x));
    }
    return y;
}

Panel gauss_kronrod(const std::function<double(double)>& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = checked(f, center);
    double kronrod = fc * wgk[7];
    double gauss = fc * wg[3];
    for (int i = 0; i < 7; ++i) {
        const double dx = half * xgk[i];
        const double pair = checked(f, center - dx) + checked(f, center + dx);
        kronrod += wgk[i] * pair;
        if (i % 2 == 1) gauss += wg[i / 2] * pair;
    }
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

double ordered_sum(std::vector<Panel>& panels, double Panel::*field)
{
    std::sort(panels.begin(), panels.end(),
              [](const Panel& l, const Panel& r) { return l.a < r.a; });
    double s = 0.0;
    for (const Panel& p : panels) s += p.*field;
    return s;
}

}  // namespace

ToleranceNotMet::ToleranceNotMet(QuadratureResult partial)
    : Error(ErrorCode::ToleranceNotMet,
            "quadrature refinement budget exhausted; estimated error " +
                std::to_string(partial.total_error())),
      partial_(partial)
{
}

QuadratureResult integrate_interval(const std::function<double(double)>& f, double a,
                                    double b, double initial_width, double tol,
                                    double rel_tol, std::size_t max_evaluations)
{
    if (!(b > a) || !(initial_width > 0.0)) return {0.0, 0.0, 0.0, 0, true};

    // The first pass alone must fit the budget.
    const auto wanted = static_cast<std::size_t>(std::ceil((b - a) / initial_width));
    const std::size_t n0 = std::clamp<std::size_t>(wanted, 1, std::max<std::size_t>(max_evaluations / 15, 1));
    const double width = (b - a) / static_cast<double>(n0);

    std::vector<Panel> panels;
    panels.reserve(n0 + 64);
    for (std::size_t i = 0; i < n0; ++i) {
        const double lo = a + width * static_cast<double>(i);
        const double hi = i + 1 == n0 ? b : a + width * static_cast<double>(i + 1);
        panels.push_back(gauss_kronrod(f, lo, hi));
    }
    std::size_t evaluations = 15 * n0;

    auto worse = [&panels](std::size_t l, std::size_t r) {
        return panels[l].error < panels[r].error ||
               (panels[l].error == panels[r].error && panels[l].a > panels[r].a);
    };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)> queue(worse);
    double value = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
        queue.push(i);
        value += panels[i].value;
        error += panels[i].error;
    }

    const double min_width = 1e-13 * std::max({std::abs(a), std::abs(b), 1.0});
    bool converged = true;
    while (error > 0.5 * std::max(tol, rel_tol * std::abs(value))) {
        if (queue.empty()) {
            converged = false;
            break;
        }
        if (evaluations + 30 > max_evaluations) {
            converged = false;
            break;
        }
        const std::size_t top = queue.top();
        queue.pop();
        const Panel old = panels[top];
        const double mid = 0.5 * (old.a + old.b);
        if (old.b - old.a < min_width) continue;  // frozen at the roundoff floor

        const Panel left = gauss_kronrod(f, old.a, mid);
        const Panel right = gauss_kronrod(f, mid, old.b);
        evaluations += 30;
        value += left.value + right.value - old.value;
        error += left.error + right.error - old.error;
        panels[top] = left;
        panels.push_back(right);
        queue.push(top);
        queue.push(panels.size() - 1);
    }

    QuadratureResult result;
    result.value = ordered_sum(panels, &Panel::value);
    result.quad_error = ordered_sum(panels, &Panel::error);
    result.evaluations = evaluations;
    result.converged =
        converged ||
        result.quad_error <= 0.5 * std::max(tol, rel_tol * std::abs(result.value));
    return result;
}

QuadratureResult integrate(const IntegrandSpec& spec, double tol, double rel_tol,
                           std::size_t max_evaluations)
{
    const double k_cut = spec.truncation_k;
    const double width = 0.5 * spec.oscillation_halfperiod;
    const bool even = spec.parity == IntegrandParity::Even;

    // For an even integrand the doubled half-line carries twice the panel error.
    QuadratureResult r = even ? integrate_interval(spec.f, 0.0, k_cut, width, 0.5 * tol,
                                                   rel_tol, max_evaluations)
                              : integrate_interval(spec.f, -k_cut, k_cut, width, tol,
                                                   rel_tol, max_evaluations);
    if (even) {
        r.value *= 2.0;
        r.quad_error *= 2.0;
    }
    if (spec.tail_at) {
        const TailEstimate tail = spec.tail_at(k_cut);
        r.value += tail.value;
        r.tail_error = tail.error;
    }
    if (!r.converged) throw ToleranceNotMet(r);
    return r;
}

IntegrandSpec density_integrand(const WellConfig& cfg, QuantumIndex j, double tol)
{
    require_1d(cfg);
    const double len = cfg.length();
    const double jd = j.value();
    // 32 j^2 pi / (3 (KL)^3) <= tol / 2
    const double kl_tail = std::cbrt(64.0 * jd * jd * pi / (3.0 * tol));
    const double kl = std::max(10.0 * jd * pi, kl_tail);

    IntegrandSpec spec;
    spec.f = [cfg, j](double k) { return density(cfg, j, k).value; };
    spec.parity = IntegrandParity::Even;
    spec.oscillation_halfperiod = pi / len;
    spec.truncation_k = kl / len;
    spec.tail_at = [cfg, j](double k_cut) {
        return TailEstimate{0.0, tail_bound(cfg, j, k_cut)};
    };
    return spec;
}

double growth_exponent(const std::function<double(double)>& o, double k_scale)
{
    std::array<double, 4> mags{};
    for (int i = 0; i < 4; ++i) {
        const double y = o(k_scale * std::pow(10.0, 3 + i));
        if (!std::isfinite(y)) return std::numeric_limits<double>::infinity();
        mags[i] = std::abs(y);
    }
    double slope = 0.0;
    for (int i = 1; i < 3; ++i) {
        if (mags[i] > 0.0 && mags[i + 1] > 0.0) {
            slope = std::max(slope, std::log10(mags[i + 1] / mags[i]));
        } else if (mags[i] == 0.0 && mags[i + 1] > 0.0) {
            slope = std::numeric_limits<double>::infinity();
        }
    }
    return slope;
}

namespace {

constexpr double max_growth = 2.05;

// Tail of the moment integrand beyond K, with K L a multiple of 2 pi.
// Writing |c_j|^2 o = g(k) (1 + s cos kL) with
//   g(k) = 2 j^2 pi L o(k) / (k^2 L^2 - j^2 pi^2)^2,  s = +1 (odd j), -1 (even j),
// the smooth part is integrated after k = K / t; the oscillatory part equals
// -g'(K)/L^2 up to a remainder bounded by |g''(K)| / L^3.
struct MomentTail {
    TailEstimate estimate;
    double smooth_quad_error = 0.0;
    std::size_t evaluations = 0;
};

MomentTail moment_tail(const std::function<double(double)>& g, double sign, double len,
                       double k_cut, double tol)
{
    auto smooth = [&g, k_cut](double t) {
        if (t <= 0.0) return 0.0;
        return g(k_cut / t) * k_cut / (t * t);
    };
    const QuadratureResult s = integrate_interval(smooth, 0.0, 1.0, 0.125, tol, 0.0);

    const double h = 1e-2 * k_cut;
    const double gp2 = g(k_cut + 2 * h);
    const double gp1 = g(k_cut + h);
    const double g0 = g(k_cut);
    const double gm1 = g(k_cut - h);
    const double gm2 = g(k_cut - 2 * h);
    const double d1 = (-gp2 + 8 * gp1 - 8 * gm1 + gm2) / (12 * h);
    const double d2 = (-gp2 + 16 * gp1 - 30 * g0 + 16 * gm1 - gm2) / (12 * h * h);

    const double oscillatory = -sign * d1 / (len * len);
    const double remainder = 2.0 * std::abs(d2) / (len * len * len);

    MomentTail tail;
    // Both half-lines.
    tail.estimate.value = 2.0 * (s.value + oscillatory);
    tail.estimate.error = 2.0 * remainder;
    tail.smooth_quad_error = 2.0 * s.quad_error;
    tail.evaluations = s.evaluations + 5;
    return tail;
}

}  // namespace

QuadratureResult moment(const WellConfig& cfg, QuantumIndex j,
                        const std::function<double(double)>& o, double tol, double rel_tol)
{
    require_1d(cfg);
    const double len = cfg.length();
    const int jv = j.value();
    const double jd = jv;
    const double jpi = jd * pi;

    if (growth_exponent(o, jpi / len) > max_growth) {
        throw Error(ErrorCode::DivergentMoment,
                    "o(k) grows faster than k^2; the moment has no guaranteed tail bound");
    }

    auto g = [&o, len, jd, jpi](double k) {
        const double u = k * len;
        const double d = u * u - jpi * jpi;
        return 2.0 * jd * jd * pi * len * o(k) / (d * d);
    };
    const double sign = j.is_odd() ? 1.0 : -1.0;

    // Smallest K L = 2 pi n >= 10 j pi, doubled until the remainder fits.
    double kl = 2.0 * pi * std::ceil(5.0 * jd);
    MomentTail tail;
    for (int iter = 0;; ++iter) {
        tail = moment_tail(g, sign, len, kl / len, tol / 16.0);
        if (tail.estimate.error <= tol / 4.0 || iter == 12) break;
        kl *= 2.0;
    }

    IntegrandSpec spec;
    spec.f = [&o, &cfg, j](double k) { return density(cfg, j, k).value * o(k); };
    spec.parity = IntegrandParity::Even;
    spec.oscillation_halfperiod = pi / len;
    spec.truncation_k = kl / len;
    spec.tail_at = [&tail](double) { return tail.estimate; };

    QuadratureResult r;
    try {
        r = integrate(spec, tol, rel_tol);
    } catch (const ToleranceNotMet& e) {
        QuadratureResult partial = e.partial();
        partial.quad_error += tail.smooth_quad_error;
        throw ToleranceNotMet(partial);
    }
    r.quad_error += tail.smooth_quad_error;
    r.evaluations += tail.evaluations;
    return r;
}

}  // namespace qconfine
