#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qconfine/config.hpp"
#include "qconfine/dispersion.hpp"

namespace qconfine {

/// One level of a spectrum; energies in the config's energy unit.
struct SpectrumRow {
    int j = 1;
    double energy_closed = 0.0;
    std::optional<double> energy_numeric;
    std::optional<double> numeric_error;
    std::optional<double> correction;  ///< E_rel - mc^2 - E_nonrel
};

struct EnergyEstimate {
    double value;
    double error;
};

inline constexpr double default_moment_tol = 1e-8;
inline constexpr double default_identity_tol = 1e-10;

// Closed forms for a one-dimensional well of length L.

/// j^2 hbar^2 pi^2 / (2 m L^2). Throws MasslessNonRelativistic.
double energy_nonrel(const WellConfig& cfg, QuantumIndex j);
/// hbar c j pi / L.
double energy_massless(const WellConfig& cfg, QuantumIndex j);
/// m^2 c^4 + j^2 hbar^2 c^2 pi^2 / L^2.
double energy_rel_sq(const WellConfig& cfg, QuantumIndex j);
/// sqrt(energy_rel_sq).
double energy_rel(const WellConfig& cfg, QuantumIndex j);

/// energy_rel - mc^2 - energy_nonrel, evaluated without cancellation as
/// -p^4 / (2 mc^2 (E + mc^2)^2) with p = hbar c j pi / L. Always <= 0.
double rel_correction(const WellConfig& cfg, QuantumIndex j);

/// Energy of level j from the expectation value of the model's o(k),
/// passed through the model's transform.
EnergyEstimate moment_energy(const WellConfig& cfg, QuantumIndex j,
                             const DispersionModel& model, double tol = default_moment_tol);

/// <sqrt(m^2 c^4 + hbar^2 c^2 k^2)>, the mean of the relativistic energy,
/// as opposed to the default sqrt(<E^2>).
EnergyEstimate mean_energy_rel(const WellConfig& cfg, QuantumIndex j,
                               double tol = default_moment_tol);

/// sqrt(m^2 c^4 + hbar^2 c^2 pi^2 sum_a j_a^2 / L_a^2) for a separable box.
double energy_multidim(const WellConfig& cfg, std::span<const QuantumIndex> j);

/// Rows for j_from..j_to (1 <= j_from <= j_to <= 10^4), sorted by j. The model
/// must be a builtin; numeric columns come from moment_energy when requested.
std::vector<SpectrumRow> spectrum_table(const WellConfig& cfg, const DispersionModel& model,
                                        int j_from, int j_to, double tol, bool with_numeric);

inline constexpr int max_quantum_index = 10'000;

}  // namespace qconfine
