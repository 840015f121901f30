#pragma once

#include <string_view>

namespace qconfine {

/// CODATA 2018 values. Every constant used anywhere in the library comes
/// from this table.
namespace codata2018 {
inline constexpr double hbar_si = 1.054571817e-34;          // J s
inline constexpr double c_si = 2.99792458e8;                // m / s
inline constexpr double elementary_charge = 1.602176634e-19;  // J / eV
inline constexpr double hbar_c_ev_nm = 197.3269804;         // eV nm
}  // namespace codata2018

enum class UnitKind { Natural, SI, EvNm };

/*!
 * A unit system fixes hbar and c and the meaning of the mass, length and
 * energy numbers carried by a WellConfig.
 *
 *  - Natural: hbar = c = 1, all quantities in one arbitrary scale.
 *  - SI: kg, m, J.
 *  - EvNm: mass in eV/c^2, length in nm, energy in eV. Speeds are measured
 *    in units of c, so c = 1 and hbar = hbar*c = 197.3269804 eV nm.
 */
class UnitSystem {
public:
    static UnitSystem natural() noexcept { return {UnitKind::Natural, 1.0, 1.0}; }
    static UnitSystem si() noexcept
    {
        return {UnitKind::SI, codata2018::hbar_si, codata2018::c_si};
    }
    static UnitSystem ev_nm() noexcept
    {
        return {UnitKind::EvNm, codata2018::hbar_c_ev_nm, 1.0};
    }
    static UnitSystem of(UnitKind kind) noexcept;

    UnitKind kind() const noexcept { return kind_; }
    double hbar() const noexcept { return hbar_; }
    double c() const noexcept { return c_; }

    friend bool operator==(const UnitSystem&, const UnitSystem&) = default;

private:
    UnitSystem(UnitKind kind, double hbar, double c) noexcept
        : kind_(kind), hbar_(hbar), c_(c) {}

    UnitKind kind_;
    double hbar_;
    double c_;
};

/// "natural", "si" or "ev_nm"; the spellings used by config files and the CLI.
std::string_view to_string(UnitKind kind) noexcept;
UnitKind parse_unit_kind(std::string_view text);

}  // namespace qconfine
