#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qconfine/units.hpp"

namespace qconfine {

/// Quantum number of a confined standing wave along one axis; always >= 1.
class QuantumIndex {
public:
    explicit QuantumIndex(int j);

    int value() const noexcept { return j_; }
    bool is_odd() const noexcept { return (j_ & 1) != 0; }

    friend bool operator==(QuantumIndex, QuantumIndex) = default;

private:
    int j_;
};

/*!
 * Validated, immutable description of a box well: one length per axis
 * (1 to 3 axes), the particle's rest mass and the unit system the numbers
 * are expressed in.
 */
class WellConfig {
public:
    const UnitSystem& units() const noexcept { return units_; }
    double mass() const noexcept { return mass_; }
    std::span<const double> lengths() const noexcept { return lengths_; }
    std::size_t dimension() const noexcept { return lengths_.size(); }

    /// Length of the given axis; throws BadAxis.
    double length(std::size_t axis = 0) const;

    double hbar() const noexcept { return units_.hbar(); }
    double c() const noexcept { return units_.c(); }
    double rest_energy() const noexcept { return mass_ * c() * c(); }
    bool massless() const noexcept { return mass_ == 0.0; }

    friend bool operator==(const WellConfig&, const WellConfig&) = default;

private:
    friend WellConfig make_config(UnitSystem, double, std::vector<double>);

    WellConfig(UnitSystem units, double mass, std::vector<double> lengths)
        : units_(units), mass_(mass), lengths_(std::move(lengths)) {}

    UnitSystem units_;
    double mass_;
    std::vector<double> lengths_;
};

/// Throws NonPositiveLength, NegativeMass or BadDimensionCount.
WellConfig make_config(UnitSystem units, double mass, std::vector<double> lengths);

/// pi / L_axis, the wavenumber spacing of standing waves along that axis.
double ground_wavenumber(const WellConfig& cfg, std::size_t axis = 0);

/// Re-expresses a config in another unit system. Natural units carry no
/// physical scale, so conversions to or from Natural throw BadUnits.
WellConfig convert(const WellConfig& cfg, UnitKind target);

/// Throws DimensionMismatch unless cfg is one-dimensional.
void require_1d(const WellConfig& cfg);

// JSON document {"units": ..., "mass": ..., "lengths": [...]}.
nlohmann::ordered_json to_json(const WellConfig& cfg);
WellConfig config_from_json(const nlohmann::json& doc);
WellConfig parse_config(std::string_view text);

}  // namespace qconfine
