#include "qconfine/spectra.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qconfine/error.hpp"
#include "qconfine/parallel.hpp"
#include "qconfine/quadrature.hpp"

namespace qconfine {

namespace {

constexpr double pi = std::numbers::pi;

// (hbar c j pi / L)^2 summed over axes: the squared momentum energy.
double momentum_energy_sq(const WellConfig& cfg, std::span<const QuantumIndex> j)
{
    const double hbar_c = cfg.hbar() * cfg.c();
    double sum = 0.0;
    for (std::size_t a = 0; a < j.size(); ++a) {
        const double p = hbar_c * j[a].value() * pi / cfg.length(a);
        sum += p * p;
    }
    return sum;
}

void require_massive(const WellConfig& cfg)
{
    if (cfg.massless()) {
        throw Error(ErrorCode::MasslessNonRelativistic,
                    "nonrelativistic energies need a mass > 0");
    }
}

}  // namespace

double energy_nonrel(const WellConfig& cfg, QuantumIndex j)
{
    require_1d(cfg);
    require_massive(cfg);
    const double hbar = cfg.hbar();
    const double len = cfg.length();
    const double jd = j.value();
    return jd * jd * hbar * hbar * pi * pi / (2.0 * cfg.mass() * len * len);
}

double energy_massless(const WellConfig& cfg, QuantumIndex j)
{
    require_1d(cfg);
    return cfg.hbar() * cfg.c() * j.value() * pi / cfg.length();
}

double energy_rel_sq(const WellConfig& cfg, QuantumIndex j)
{
    require_1d(cfg);
    const double rest = cfg.rest_energy();
    const QuantumIndex js[] = {j};
    return rest * rest + momentum_energy_sq(cfg, js);
}

double energy_rel(const WellConfig& cfg, QuantumIndex j)
{
    return std::sqrt(energy_rel_sq(cfg, j));
}

double rel_correction(const WellConfig& cfg, QuantumIndex j)
{
    require_1d(cfg);
    require_massive(cfg);
    const double rest = cfg.rest_energy();
    const double p = energy_massless(cfg, j);
    const double e = energy_rel(cfg, j);
    const double s = e + rest;
    return -(p * p) * (p * p) / (2.0 * rest * s * s);
}

EnergyEstimate moment_energy(const WellConfig& cfg, QuantumIndex j,
                             const DispersionModel& model, double tol)
{
    require_1d(cfg);
    const auto o = bind(cfg, model);
    const QuadratureResult r = moment(cfg, j, o, tol, 1e-10);
    const auto e = apply_transform(model.transform(), r.value, r.total_error(), cfg.hbar());
    return {e.value, e.error};
}

EnergyEstimate mean_energy_rel(const WellConfig& cfg, QuantumIndex j, double tol)
{
    require_1d(cfg);
    const double rest = cfg.rest_energy();
    const double hbar_c = cfg.hbar() * cfg.c();
    auto o = [rest2 = rest * rest, hbar_c](double k) {
        return std::sqrt(rest2 + hbar_c * hbar_c * k * k);
    };
    const QuadratureResult r = moment(cfg, j, o, tol, 1e-10);
    return {r.value, r.total_error()};
}

double energy_multidim(const WellConfig& cfg, std::span<const QuantumIndex> j)
{
    if (j.size() != cfg.dimension()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "quantum index has " + std::to_string(j.size()) + " components for a " +
                        std::to_string(cfg.dimension()) + "-dimensional well");
    }
    const double rest = cfg.rest_energy();
    return std::sqrt(rest * rest + momentum_energy_sq(cfg, j));
}

std::vector<SpectrumRow> spectrum_table(const WellConfig& cfg, const DispersionModel& model,
                                        int j_from, int j_to, double tol, bool with_numeric)
{
    require_1d(cfg);
    if (j_from < 1 || j_to < j_from || j_to > max_quantum_index) {
        throw Error(ErrorCode::BadRange, "level range must satisfy 1 <= from <= to <= 10000, got " +
                                             std::to_string(j_from) + ".." + std::to_string(j_to));
    }
    if (model.kind() == DispersionKind::Custom) {
        throw Error(ErrorCode::BadRange, "spectrum tables need a builtin model");
    }
    if (model.kind() == DispersionKind::NonRelativistic) require_massive(cfg);

    std::vector<SpectrumRow> rows(static_cast<std::size_t>(j_to - j_from + 1));
    parallel_for(rows.size(), [&](std::size_t i) {
        const QuantumIndex j(j_from + static_cast<int>(i));
        SpectrumRow& row = rows[i];
        row.j = j.value();
        switch (model.kind()) {
        case DispersionKind::NonRelativistic: row.energy_closed = energy_nonrel(cfg, j); break;
        case DispersionKind::MasslessSquared: row.energy_closed = energy_massless(cfg, j); break;
        default: row.energy_closed = energy_rel(cfg, j); break;
        }
        if (with_numeric) {
            const EnergyEstimate e = moment_energy(cfg, j, model, tol);
            row.energy_numeric = e.value;
            row.numeric_error = e.error;
        }
        if (!cfg.massless()) row.correction = rel_correction(cfg, j);
    });
    return rows;
}

}  // namespace qconfine
