#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "qconfine/error.hpp"
#include "qconfine/parallel.hpp"
#include "qconfine/spectra.hpp"

using namespace qconfine;
using oracle::hp;
using std::numbers::pi;

namespace {

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected a qconfine::Error");
    return ErrorCode::BadRange;
}

WellConfig natural(double mass, std::vector<double> lengths = {1.0})
{
    return make_config(UnitSystem::natural(), mass, std::move(lengths));
}

WellConfig electron() { return make_config(UnitSystem::ev_nm(), 510998.95, {1.0}); }

const auto nonrel = DispersionModel::builtin(DispersionKind::NonRelativistic);
const auto massless = DispersionModel::builtin(DispersionKind::MasslessSquared);
const auto relativistic = DispersionModel::builtin(DispersionKind::RelativisticSquared);

bool close(double a, double b, double rel) { return oracle::rel_close(a, b, rel); }

}  // namespace

TEST_CASE("closed forms: examples")
{
    CHECK(close(energy_nonrel(natural(1), QuantumIndex(1)), pi * pi / 2, 1e-15));
    CHECK(close(energy_nonrel(natural(1), QuantumIndex(3)), 9 * pi * pi / 2, 1e-15));
    CHECK(energy_nonrel(natural(1), QuantumIndex(3)) == doctest::Approx(44.4132).epsilon(1e-5));

    CHECK(close(energy_massless(natural(0), QuantumIndex(1)), pi, 1e-15));
    CHECK(close(energy_massless(natural(0), QuantumIndex(2)), 2 * pi, 1e-15));
    CHECK(close(energy_massless(natural(0, {2.0}), QuantumIndex(1)), pi / 2, 1e-15));

    CHECK(close(energy_rel_sq(natural(1), QuantumIndex(1)), 1 + pi * pi, 1e-15));
    CHECK(close(energy_rel_sq(natural(0), QuantumIndex(2)), 4 * pi * pi, 1e-15));
    CHECK(code_of([] { energy_rel_sq(natural(1), QuantumIndex(0)); }) ==
          ErrorCode::BadQuantumIndex);

    CHECK(close(energy_rel(natural(1), QuantumIndex(1)), 3.29690830947562, 1e-14));
    CHECK(close(energy_rel(natural(1), QuantumIndex(2)), 6.36226513156733, 1e-14));
    CHECK(code_of([] { energy_nonrel(natural(0), QuantumIndex(1)); }) ==
          ErrorCode::MasslessNonRelativistic);
}

TEST_CASE("closed forms: electron in a 1 nm well against 50-digit arithmetic")
{
    const hp mc2 = hp("510998.95");
    const hp hbar_c = hp("197.3269804");
    const hp p = hbar_c * oracle::hp_pi();
    const hp e_nonrel = p * p / (2 * mc2);
    const hp e_rel = sqrt(mc2 * mc2 + p * p);
    const hp corr = e_rel - mc2 - e_nonrel;

    const auto cfg = electron();
    CHECK(close(energy_nonrel(cfg, QuantumIndex(1)), static_cast<double>(e_nonrel), 1e-13));
    CHECK(energy_nonrel(cfg, QuantumIndex(1)) == doctest::Approx(0.37603).epsilon(1e-4));
    CHECK(close(energy_rel(cfg, QuantumIndex(1)), static_cast<double>(e_rel), 1e-15));
    CHECK(close(energy_rel(cfg, QuantumIndex(1)), 510999.326030024, 1e-14));
    CHECK(close(rel_correction(cfg, QuantumIndex(1)), static_cast<double>(corr), 1e-12));
    CHECK(rel_correction(cfg, QuantumIndex(1)) == doctest::Approx(-1.38e-7).epsilon(0.05));

    // Leading order -mc^2 x^4 / 8.
    const hp x = p / mc2;
    const hp leading = -mc2 * x * x * x * x / 8;
    CHECK(close(rel_correction(cfg, QuantumIndex(1)), static_cast<double>(leading), 1e-5));
}

TEST_CASE("rel_correction: natural units and the heavy limit")
{
    CHECK(close(rel_correction(natural(1), QuantumIndex(1)), std::sqrt(1 + pi * pi) - 1 - pi * pi / 2,
                1e-14));
    CHECK(close(rel_correction(natural(1), QuantumIndex(1)), -2.637893891069, 1e-12));
    double previous = -INFINITY;
    for (double m = 1.0; m <= 1e12; m *= 10) {
        const double c = rel_correction(natural(m), QuantumIndex(2));
        CHECK(c < 0.0);
        CHECK(c > previous);
        previous = c;
    }
    CHECK(previous > -1e-30);
    CHECK(code_of([] { rel_correction(natural(0), QuantumIndex(1)); }) ==
          ErrorCode::MasslessNonRelativistic);
}

TEST_CASE("Pythagorean identity")
{
    for (const double m : {0.0, 0.5, 1.0, 10.0}) {
        for (const double len : {0.5, 1.0, 2.0}) {
            const auto cfg = natural(m, {len});
            for (int j = 1; j <= 100; ++j) {
                const double e = energy_rel(cfg, QuantumIndex(j));
                const double p = energy_massless(cfg, QuantumIndex(j));
                CHECK(close(e * e, m * m + p * p, 1e-12));
            }
        }
    }
}

TEST_CASE("monotonicity, scaling and limit ordering")
{
    const auto cfg = natural(1);
    for (int j = 1; j < 200; ++j) {
        const QuantumIndex a(j), b(j + 1);
        CHECK(energy_nonrel(cfg, a) < energy_nonrel(cfg, b));
        CHECK(energy_massless(cfg, a) < energy_massless(cfg, b));
        CHECK(energy_rel(cfg, a) < energy_rel(cfg, b));
        CHECK(1.0 < energy_rel(cfg, a));
        CHECK(energy_rel(cfg, a) <= 1.0 + energy_nonrel(cfg, a));
    }
    for (const int j : {1, 4, 9}) {
        const QuantumIndex q(j);
        const double n1 = energy_nonrel(natural(1, {1.0}), q);
        const double m1 = energy_massless(natural(1, {1.0}), q);
        for (const double len : {0.5, 2.0}) {
            CHECK(close(energy_nonrel(natural(1, {len}), q), n1 / (len * len), 1e-14));
            CHECK(close(energy_massless(natural(1, {len}), q), m1 / len, 1e-14));
        }
    }
}

TEST_CASE("nonrelativistic limit")
{
    for (const double x : {1e-2, 1e-3, 1e-4, 1e-6}) {
        for (const int j : {1, 3}) {
            // x = j pi / m with c = hbar = L = 1.
            const double m = j * pi / x;
            const auto cfg = natural(m);
            const QuantumIndex q(j);
            const double en = energy_nonrel(cfg, q);
            const double dev = std::abs(energy_rel(cfg, q) - m - en);
            const double via_correction = std::abs(rel_correction(cfg, q));
            CHECK(via_correction / en <= x * x / 2);
            CHECK(via_correction / en == doctest::Approx(x * x / 4).epsilon(0.01));
            if (x >= 1e-3) CHECK(dev / en <= x * x / 2 + 1e-9);
        }
    }
}

TEST_CASE("moment_energy examples")
{
    const auto a = moment_energy(natural(1), QuantumIndex(1), nonrel);
    CHECK(close(a.value, pi * pi / 2, 1e-6));
    CHECK(a.error >= 0.0);
    const auto b = moment_energy(natural(1), QuantumIndex(1), relativistic);
    CHECK(close(b.value, 3.29690830947562, 1e-6));
    const auto c = moment_energy(natural(0), QuantumIndex(2), massless);
    CHECK(close(c.value, 2 * pi, 1e-6));
    CHECK(std::abs(c.value - 2 * pi) <= std::max(c.error, 1e-12) * 10);
}

TEST_CASE("moment_energy against closed forms")
{
    for (const double m : {0.5, 1.0, 10.0}) {
        const auto cfg = natural(m);
        for (const int j : {1, 2, 7, 20}) {
            const QuantumIndex q(j);
            INFO("m " << m << " j " << j);
            CHECK(close(moment_energy(cfg, q, nonrel).value, energy_nonrel(cfg, q), 1e-6));
            CHECK(close(moment_energy(cfg, q, massless).value, energy_massless(cfg, q), 1e-6));
            CHECK(close(moment_energy(cfg, q, relativistic).value, energy_rel(cfg, q), 1e-6));
        }
    }
    const auto ev = electron();
    CHECK(close(moment_energy(ev, QuantumIndex(1), nonrel).value, energy_nonrel(ev, QuantumIndex(1)),
                1e-6));
    CHECK(close(moment_energy(ev, QuantumIndex(1), relativistic).value,
                energy_rel(ev, QuantumIndex(1)), 1e-6));
}

TEST_CASE("mean_energy_rel: massless regression value")
{
    // hbar c <|k|> for j = 1, L = 1; brute-force oracle below.
    const double frozen = 2.43063455922977;
    const auto r = mean_energy_rel(natural(0), QuantumIndex(1), 1e-10);
    CHECK(close(r.value, frozen, 1e-11));

    const double big_k = 200 * pi;
    const double body = oracle::trapezoid(
        [](double k) { return std::abs(k) * oracle::density_safe(1, 1.0, k); }, -big_k, big_k,
        10'000'000);
    // Both tails of |k| 2 pi (1 + 2 pi^2 / k^2) / k^4, the cos^2 average.
    const double tail = 2 * (pi / (big_k * big_k) + pi * pi * pi / std::pow(big_k, 4));
    CHECK(close(body + tail, frozen, 1e-8));
}

TEST_CASE("mean_energy_rel: heavy limit and Jensen")
{
    const double m = 1000 * pi;  // x = 1e-3 at j = 1
    const auto cfg = natural(m);
    const auto r = mean_energy_rel(cfg, QuantumIndex(1));
    CHECK(close(r.value, m + energy_nonrel(cfg, QuantumIndex(1)), 1e-5));

    for (const double mass : {0.0, 1.0, 5.0}) {
        const auto c = natural(mass);
        for (int j = 1; j <= 10; ++j) {
            const double mean = mean_energy_rel(c, QuantumIndex(j)).value;
            CHECK(mean <= energy_rel(c, QuantumIndex(j)) * (1 + 1e-12));
            CHECK(mean >= mass);
        }
    }
}

TEST_CASE("energy_multidim")
{
    const std::vector<QuantumIndex> one_one = {QuantumIndex(1), QuantumIndex(1)};
    CHECK(close(energy_multidim(natural(1, {1.0, 1.0}), one_one), 4.554032147688, 1e-12));
    const std::vector<QuantumIndex> ones = {QuantumIndex(1), QuantumIndex(1), QuantumIndex(1)};
    CHECK(close(energy_multidim(natural(0, {1.0, 1.0, 1.0}), ones), 5.441398092703, 1e-12));
    CHECK(close(energy_multidim(natural(0, {1.0, 1.0, 1.0}), ones), pi * std::sqrt(3.0), 1e-15));

    for (const double len : {0.3, 1.0, 7.0}) {
        for (int j = 1; j < 30; ++j) {
            const auto cfg = natural(2.0, {len});
            const QuantumIndex q[] = {QuantumIndex(j)};
            CHECK(energy_multidim(cfg, q) == energy_rel(cfg, QuantumIndex(j)));
        }
    }
    CHECK(code_of([&] { energy_multidim(natural(1, {1.0, 1.0}), ones); }) ==
          ErrorCode::DimensionMismatch);
    CHECK(code_of([] { energy_rel(natural(1, {1.0, 1.0}), QuantumIndex(1)); }) ==
          ErrorCode::DimensionMismatch);
}

TEST_CASE("spectrum_table")
{
    const auto rows = spectrum_table(natural(1), relativistic, 1, 3, 1e-8, false);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].j == 1);
    CHECK(close(rows[0].energy_closed, std::sqrt(1 + pi * pi), 1e-15));
    CHECK(close(rows[1].energy_closed, std::sqrt(1 + 4 * pi * pi), 1e-15));
    CHECK(close(rows[2].energy_closed, std::sqrt(1 + 9 * pi * pi), 1e-15));
    CHECK_FALSE(rows[0].energy_numeric.has_value());
    CHECK(rows[0].correction.has_value());

    for (const auto& model : {nonrel, massless, relativistic}) {
        const auto numeric = spectrum_table(natural(1), model, 1, 12, 1e-8, true);
        REQUIRE(numeric.size() == 12);
        for (std::size_t i = 0; i < numeric.size(); ++i) {
            const auto& row = numeric[i];
            CHECK(row.j == static_cast<int>(i) + 1);
            REQUIRE(row.energy_numeric.has_value());
            const double diff = std::abs(*row.energy_numeric - row.energy_closed);
            CHECK(diff <= std::max(1e-8, 1e-6 * row.energy_closed));
        }
    }

    const auto massless_rows = spectrum_table(natural(0), massless, 5, 6, 1e-8, false);
    CHECK_FALSE(massless_rows[0].correction.has_value());
    CHECK(massless_rows[0].j == 5);

    CHECK(code_of([] { spectrum_table(natural(1), relativistic, 3, 2, 1e-8, false); }) ==
          ErrorCode::BadRange);
    CHECK(code_of([] { spectrum_table(natural(1), relativistic, 0, 2, 1e-8, false); }) ==
          ErrorCode::BadRange);
    CHECK(code_of([] { spectrum_table(natural(1), relativistic, 1, 10001, 1e-8, false); }) ==
          ErrorCode::BadRange);
    CHECK_NOTHROW(spectrum_table(natural(1), relativistic, 9990, 10000, 1e-8, false));
}

TEST_CASE("parallel_for visits every index and rethrows the lowest failure")
{
    ::setenv("QCONFINE_THREADS", "4", 1);
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    CHECK(std::count(hits.begin(), hits.end(), 1) == 1000);
    try {
        parallel_for(100, [](std::size_t i) {
            if (i % 7 == 3) throw Error(ErrorCode::BadRange, std::to_string(i));
        });
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()) == "3");
    }
    ::unsetenv("QCONFINE_THREADS");
}
