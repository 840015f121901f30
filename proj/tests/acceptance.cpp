// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "expr_corpus.hpp"
#include "oracles.hpp"
#include "qconfine/cli.hpp"
#include "qconfine/dispersion.hpp"
#include "qconfine/error.hpp"
#include "qconfine/expr.hpp"
#include "qconfine/momentum.hpp"
#include "qconfine/quadrature.hpp"
#include "qconfine/realspace.hpp"
#include "qconfine/spectra.hpp"

using namespace qconfine;
using oracle::hp;
using std::numbers::pi;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

std::string fmt(const char* pattern, double a, double b = 0.0)
{
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

WellConfig natural(double mass, double len = 1.0)
{
    return make_config(UnitSystem::natural(), mass, {len});
}

// 1
Verdict normalization()
{
    double worst = 0.0;
    for (const double len : {0.5, 1.0, 3.0}) {
        const auto cfg = natural(1.0, len);
        for (int j = 1; j <= 20; ++j) {
            const auto r = integrate(density_integrand(cfg, QuantumIndex(j), 1e-10), 1e-10);
            worst = std::max(worst, std::abs(r.value - 1.0));
        }
    }
    return {worst <= 1e-8, fmt("max |norm - 1| = %.3g (limit 1e-8)", worst)};
}

// 2
Verdict second_moment()
{
    double worst = 0.0;
    for (const double len : {0.5, 1.0, 3.0}) {
        const auto cfg = natural(1.0, len);
        for (int j = 1; j <= 20; ++j) {
            const auto r = moment(cfg, QuantumIndex(j), [](double k) { return k * k; }, 1e-10,
                                  1e-10);
            const double expected = j * j * pi * pi / (len * len);
            worst = std::max(worst, std::abs(r.value - expected) / expected);
        }
    }
    return {worst <= 1e-6, fmt("max rel error = %.3g (limit 1e-6)", worst)};
}

// 3
Verdict pipeline_equivalence()
{
    const auto nonrel = DispersionModel::builtin(DispersionKind::NonRelativistic);
    const auto massless = DispersionModel::builtin(DispersionKind::MasslessSquared);
    const auto rel = DispersionModel::builtin(DispersionKind::RelativisticSquared);
    double worst = 0.0;
    int checks = 0;
    auto track = [&](double got, double want) {
        worst = std::max(worst, std::abs(got - want) / std::abs(want));
        ++checks;
    };
    for (const double m : {0.0, 1.0, 10.0}) {
        const auto cfg = natural(m);
        for (int j = 1; j <= 20; ++j) {
            const QuantumIndex q(j);
            if (m > 0) track(moment_energy(cfg, q, nonrel).value, energy_nonrel(cfg, q));
            track(moment_energy(cfg, q, massless).value, energy_massless(cfg, q));
            track(moment_energy(cfg, q, rel).value, energy_rel(cfg, q));
        }
    }
    return {worst <= 1e-6 && checks == 160,
            fmt("max rel error = %.3g over %.0f comparisons (limit 1e-6)", worst, checks)};
}

// 4
Verdict nonrelativistic_limit()
{
    double worst_ratio = 0.0;  // (deviation / E_nonrel) / (x^2 / 2)
    double worst_lib = 0.0;
    for (const char* xs : {"1e-2", "1e-3", "1e-4"}) {
        const hp x(xs);
        for (int j = 1; j <= 3; ++j) {
            // hbar = c = L = 1, so x = j pi / m.
            const hp m = hp(j) * oracle::hp_pi() / x;
            const hp p = hp(j) * oracle::hp_pi();
            const hp e_nonrel = p * p / (2 * m);
            const hp dev = abs(sqrt(m * m + p * p) - m - e_nonrel);
            const hp ratio = dev / e_nonrel / (x * x / 2);
            worst_ratio = std::max(worst_ratio, static_cast<double>(ratio));

            const auto cfg = natural(static_cast<double>(m));
            const double lib = -rel_correction(cfg, QuantumIndex(j)) / energy_nonrel(cfg, QuantumIndex(j));
            worst_lib = std::max(worst_lib, std::abs(lib / static_cast<double>(dev / e_nonrel) - 1));
        }
    }
    return {worst_ratio <= 1.0 && worst_lib <= 1e-9,
            fmt("max deviation / (x^2/2) = %.4f (limit 1), library vs 50-digit rel diff %.2g",
                worst_ratio, worst_lib)};
}

// 5
Verdict pythagorean()
{
    double worst = 0.0;
    for (const double m : {0.0, 1.0, 10.0}) {
        const auto cfg = natural(m);
        for (int j = 1; j <= 100; ++j) {
            const double e = energy_rel(cfg, QuantumIndex(j));
            const double p = energy_massless(cfg, QuantumIndex(j));
            const double rhs = m * m + p * p;
            worst = std::max(worst, std::abs(e * e - rhs) / rhs);
        }
    }
    return {worst <= 1e-12, fmt("max rel error = %.3g (limit 1e-12)", worst)};
}

// 6
Verdict reconstruction()
{
    const double len = 1.0;
    const auto cfg = natural(1.0, len);
    const int n = 512;
    double worst_in = 0.0, worst_out = 0.0;
    for (int j = 1; j <= 5; ++j) {
        for (int i = 0; i < n; ++i) {
            const double x = -len + 2 * len * i / (n - 1);
            const double rebuilt = psi_reconstruct(cfg, QuantumIndex(j), x, 1e-9);
            const auto closed = psi_closed(cfg, QuantumIndex(j), x);
            if (closed.inside_well) {
                worst_in = std::max(worst_in, std::abs(rebuilt - closed.value));
            } else {
                worst_out = std::max(worst_out, std::abs(rebuilt));
            }
        }
    }
    const double limit_in = 1e-6 * std::sqrt(2 / len);
    return {worst_in <= limit_in && worst_out <= 1e-6,
            fmt("max inside deviation = %.3g, max outside magnitude = %.3g", worst_in, worst_out)};
}

// 7
Verdict removable_singularity()
{
    const double len = 1.0;
    const auto cfg = natural(1.0, len);
    const double limit_value = len / (4 * pi);
    double worst = 0.0;
    double worst_hp = 0.0;  // diagnostic only
    bool finite = true;
    for (const int j : {1, 2, 5, 12}) {
        const double k0 = j * pi / len;
        for (int s = 2; s <= 10; ++s) {
            const double delta = std::pow(10.0, -s);
            for (const double k : {k0 + delta, k0 - delta, -k0 + delta, -k0 - delta}) {
                const double d = density(cfg, QuantumIndex(j), k).value;
                if (!std::isfinite(d)) finite = false;
                if (s >= 4) worst = std::max(worst, std::abs(d - limit_value) / limit_value);
                const double exact = oracle::density_hp(j, len, k);
                worst_hp = std::max(worst_hp, std::abs(d - exact) / exact);
            }
        }
        const double at = density(cfg, QuantumIndex(j), k0).value;
        if (!std::isfinite(at)) finite = false;
        worst = std::max(worst, std::abs(at - limit_value) / limit_value);
    }
    std::string detail = fmt("max rel deviation from L/(4 pi) at delta <= 1e-4 = %.3g (limit 1e-6)",
                             worst);
    detail += fmt(", all finite = %.0f, max rel diff from 50-digit density = %.2g", finite,
                  worst_hp);
    return {finite && worst <= 1e-6, detail};
}

// 8
Verdict electron()
{
    const auto cfg = make_config(UnitSystem::ev_nm(), 510998.95, {1.0});
    const hp mc2("510998.95");
    const hp p = hp("197.3269804") * oracle::hp_pi();
    const hp nonrel_hp = p * p / (2 * mc2);
    const hp corr_hp = sqrt(mc2 * mc2 + p * p) - mc2 - nonrel_hp;

    const double e = energy_nonrel(cfg, QuantumIndex(1));
    const double c = rel_correction(cfg, QuantumIndex(1));
    const bool oracle_ok = std::abs(static_cast<double>(nonrel_hp) - 0.37603) <= 1e-4 &&
                           std::abs(static_cast<double>(corr_hp) / -1.38e-7 - 1) <= 0.05;
    const bool lib_ok = std::abs(e - static_cast<double>(nonrel_hp)) <= 1e-12 &&
                        std::abs(c / static_cast<double>(corr_hp) - 1) <= 1e-9 &&
                        std::abs(e - 0.37603) <= 1e-4 && std::abs(c / -1.38e-7 - 1) <= 0.05;
    return {oracle_ok && lib_ok, fmt("E_nonrel = %.6f eV, correction = %.4g eV", e, c)};
}

// 9
Verdict parser_suite()
{
    int bad = 0;
    const auto all = corpus::cases();
    for (const auto& c : all) {
        const auto e = expr::parse(c.text);
        const double want = c.expected();
        if (std::abs(expr::eval(e, corpus::vars) - want) > 1e-15 * std::max(1.0, std::abs(want))) ++bad;
        if (!(expr::parse(expr::to_string(e)) == e)) ++bad;
    }
    if (expr::eval(expr::parse("2^3^2"), {}) != 512.0) ++bad;
    if (expr::eval(expr::parse("-k^2"), {{"k", 3.0}}) != -9.0) ++bad;

    double worst = 0.0;
    std::mt19937_64 rng(2024);
    for (const double m : {1.0, 0.25}) {
        const auto cfg = natural(m);
        std::uniform_real_distribution<double> dist(-100.0, 100.0);
        for (const auto kind : {DispersionKind::NonRelativistic, DispersionKind::MasslessSquared,
                                DispersionKind::RelativisticSquared}) {
            const auto fast = builtin(cfg, kind);
            const auto slow = bind(cfg, DispersionModel::custom(expr::parse(builtin_text(kind)),
                                                                EnergyTransform::Identity));
            for (int i = 0; i < 100; ++i) {
                const double k = dist(rng);
                worst = std::max(worst, std::abs(fast(k) - slow(k)) / std::abs(fast(k)));
            }
        }
    }
    return {bad == 0 && all.size() >= 50 && worst <= 1e-12,
            fmt("corpus failures = %.0f, builtin/custom max rel diff = %.3g", bad, worst)};
}

// 10
Verdict cli_determinism()
{
    const std::vector<std::string> well = {"--units", "natural", "--mass", "1", "--length", "1"};
    const std::vector<std::vector<std::string>> commands = {
        {"spectrum", "--numeric"},
        {"density", "--j", "3"},
        {"verify"},
        {"moment", "--dispersion", "relativistic", "--transform", "sqrt"},
        {"reconstruct", "--j", "2", "--samples", "65"},
    };
    int mismatches = 0, failures = 0;
    for (auto args : commands) {
        args.insert(args.end(), well.begin(), well.end());
        for (const char* format : {"csv", "json"}) {
            auto full = args;
            full.insert(full.end(), {"--format", format});
            std::ostringstream a, b, err;
            if (cli::run(full, a, err) != 0 || cli::run(full, b, err) != 0) ++failures;
            if (a.str() != b.str() || a.str().empty()) ++mismatches;
        }
    }
    std::ostringstream out, err;
    const int verify_code = cli::run({"verify", "--config", QCONFINE_DEFAULT_CONFIG}, out, err);
    return {mismatches == 0 && failures == 0 && verify_code == 0,
            fmt("byte mismatches = %.0f, verify on default config exit = %.0f", mismatches,
                verify_code)};
}

struct Criterion {
    const char* id;
    const char* title;
    double budget_s;
    std::function<Verdict()> check;
};

}  // namespace

int main()
{
    const std::vector<Criterion> criteria = {
        {"AC1", "normalization identity", 10, normalization},
        {"AC2", "second-moment identity", 15, second_moment},
        {"AC3", "pipeline matches closed forms", 30, pipeline_equivalence},
        {"AC4", "nonrelativistic limit", 1, nonrelativistic_limit},
        {"AC5", "Pythagorean identity", 1, pythagorean},
        {"AC6", "real-space reconstruction", 60, reconstruction},
        {"AC7", "removable-singularity stability", 1, removable_singularity},
        {"AC8", "electron in a 1 nm well", 1, electron},
        {"AC9", "parser suite", 1, parser_suite},
        {"AC10", "CLI determinism", 5, cli_determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v{false, ""};
        try {
            v = c.check();
        } catch (const std::exception& e) {
            v = {false, std::string("threw: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool ok = v.pass && secs <= c.budget_s;
        if (!ok) ++failed;
        std::printf("[%s] %s %s: %s (%.2f s, budget %.0f s)\n", ok ? "PASS" : "FAIL", c.id,
                    c.title, v.detail.c_str(), secs, c.budget_s);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
                criteria.size());
    return failed == 0 ? 0 : 1;
}
