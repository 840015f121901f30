#include "qconfine/momentum.hpp"

#include <cmath>
#include <numbers>

#include "qconfine/error.hpp"

namespace qconfine {

namespace {
constexpr double pi = std::numbers::pi;
// Width of the window around u = j pi served by the sinc factorization.
constexpr double sinc_window = 0.5;
}  // namespace

namespace detail {

double sinc(double v) noexcept
{
    if (std::abs(v) < 1e-4) {
        const double v2 = v * v;
        return 1.0 - v2 / 6.0 + v2 * v2 / 120.0;
    }
    return std::sin(v) / v;
}

double scaled_amplitude(int j, double u) noexcept
{
    // Amplitude parity: even in u for odd j, odd in u for even j.
    const bool odd = (j & 1) != 0;
    const double sign = (u < 0.0 && !odd) ? -1.0 : 1.0;
    const double w = std::abs(u);
    const double jpi = j * pi;
    const double jd = j;

    if (std::abs(w - jpi) < sinc_window) {
        // With v = (w - j pi)/2, cos(w/2) = -sin(j pi/2) sin(v) for odd j and
        // sin(w/2) = cos(j pi/2) sin(v) for even j, while
        // j^2 pi^2 - w^2 = -2 v (j pi + w). The 1/v cancels into sinc(v).
        const double v = 0.5 * (w - jpi);
        const double phase = odd ? (((j - 1) / 2) % 2 == 0 ? 1.0 : -1.0)
                                 : ((j / 2) % 2 == 0 ? 1.0 : -1.0);
        const double a = jd * std::sqrt(pi) * phase * sinc(v) / (jpi + w);
        return sign * a;
    }

    const double denom = jpi * jpi - w * w;
    const double a = odd ? 2.0 * jd * std::sqrt(pi) * std::cos(0.5 * w) / denom
                         : -2.0 * jd * std::sqrt(pi) * std::sin(0.5 * w) / denom;
    return sign * a;
}

}  // namespace detail

Parity parity_of(QuantumIndex j) noexcept
{
    return j.is_odd() ? Parity::Odd : Parity::Even;
}

MomentumAmplitude amplitude(const WellConfig& cfg, QuantumIndex j, double k)
{
    require_1d(cfg);
    const double len = cfg.length();
    const double a = std::sqrt(len) * detail::scaled_amplitude(j.value(), k * len);
    if (j.is_odd()) return {a, 0.0, Parity::Odd};
    return {0.0, a, Parity::Even};
}

MomentumDensity density(const WellConfig& cfg, QuantumIndex j, double k)
{
    require_1d(cfg);
    const double len = cfg.length();
    const double a = detail::scaled_amplitude(j.value(), k * len);
    return {len * a * a};
}

double singular_point_value(const WellConfig& cfg, QuantumIndex /*j*/)
{
    require_1d(cfg);
    return cfg.length() / (4.0 * pi);
}

double tail_bound(const WellConfig& cfg, QuantumIndex j, double k_cut)
{
    require_1d(cfg);
    const double len = cfg.length();
    const double jd = j.value();
    const double kl = k_cut * len;
    if (!(kl >= std::numbers::sqrt2 * jd * pi)) {
        throw Error(ErrorCode::TruncationTooSmall,
                    "tail bound needs K L >= sqrt(2) j pi");
    }
    return 32.0 * jd * jd * pi / (3.0 * kl * kl * kl);
}

}  // namespace qconfine
