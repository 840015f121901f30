#include "qconfine/config.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qconfine/error.hpp"

namespace qconfine {

UnitSystem UnitSystem::of(UnitKind kind) noexcept
{
    switch (kind) {
    case UnitKind::SI: return si();
    case UnitKind::EvNm: return ev_nm();
    case UnitKind::Natural: break;
    }
    return natural();
}

std::string_view to_string(UnitKind kind) noexcept
{
    switch (kind) {
    case UnitKind::SI: return "si";
    case UnitKind::EvNm: return "ev_nm";
    case UnitKind::Natural: break;
    }
    return "natural";
}

UnitKind parse_unit_kind(std::string_view text)
{
    if (text == "natural") return UnitKind::Natural;
    if (text == "si") return UnitKind::SI;
    if (text == "ev_nm") return UnitKind::EvNm;
    throw Error(ErrorCode::BadUnits,
                "unknown unit system '" + std::string(text) +
                    "' (expected natural, si or ev_nm)");
}

QuantumIndex::QuantumIndex(int j) : j_(j)
{
    if (j < 1) {
        throw Error(ErrorCode::BadQuantumIndex,
                    "quantum index must be a positive integer, got " +
                        std::to_string(j));
    }
}

double WellConfig::length(std::size_t axis) const
{
    if (axis >= lengths_.size()) {
        throw Error(ErrorCode::BadAxis, "axis " + std::to_string(axis) +
                                            " out of range for a " +
                                            std::to_string(lengths_.size()) +
                                            "-dimensional well");
    }
    return lengths_[axis];
}

WellConfig make_config(UnitSystem units, double mass, std::vector<double> lengths)
{
    if (lengths.empty() || lengths.size() > 3) {
        throw Error(ErrorCode::BadDimensionCount,
                    "a well has 1 to 3 axes, got " + std::to_string(lengths.size()));
    }
    for (double l : lengths) {
        if (!(l > 0.0) || !std::isfinite(l)) {
            throw Error(ErrorCode::NonPositiveLength,
                        "well lengths must be finite and > 0");
        }
    }
    if (!(mass >= 0.0) || !std::isfinite(mass)) {
        throw Error(ErrorCode::NegativeMass, "mass must be finite and >= 0");
    }
    return WellConfig(units, mass, std::move(lengths));
}

double ground_wavenumber(const WellConfig& cfg, std::size_t axis)
{
    return std::numbers::pi / cfg.length(axis);
}

WellConfig convert(const WellConfig& cfg, UnitKind target)
{
    const UnitKind source = cfg.units().kind();
    if (source == target) return cfg;
    if (source == UnitKind::Natural || target == UnitKind::Natural) {
        throw Error(ErrorCode::BadUnits,
                    "natural units carry no scale; cannot convert to or from them");
    }
    // kg <-> eV/c^2 and m <-> nm
    constexpr double kg_per_ev =
        codata2018::elementary_charge / (codata2018::c_si * codata2018::c_si);
    const bool to_ev = target == UnitKind::EvNm;
    const double mass = to_ev ? cfg.mass() / kg_per_ev : cfg.mass() * kg_per_ev;
    std::vector<double> lengths(cfg.lengths().begin(), cfg.lengths().end());
    for (double& l : lengths) l = to_ev ? l * 1e9 : l * 1e-9;
    return make_config(UnitSystem::of(target), mass, std::move(lengths));
}

void require_1d(const WellConfig& cfg)
{
    if (cfg.dimension() != 1) {
        throw Error(ErrorCode::DimensionMismatch,
                    "operation needs a one-dimensional well, got " +
                        std::to_string(cfg.dimension()) + " axes");
    }
}

nlohmann::ordered_json to_json(const WellConfig& cfg)
{
    nlohmann::ordered_json doc;
    doc["units"] = std::string(to_string(cfg.units().kind()));
    doc["mass"] = cfg.mass();
    doc["lengths"] = std::vector<double>(cfg.lengths().begin(), cfg.lengths().end());
    return doc;
}

WellConfig config_from_json(const nlohmann::json& doc)
{
    // An emitted JSON document carries its config echo under "meta".
    const nlohmann::json& src =
        doc.is_object() && doc.contains("meta") ? doc.at("meta") : doc;
    try {
        const auto kind = parse_unit_kind(src.at("units").get<std::string>());
        const double mass = src.at("mass").get<double>();
        auto lengths = src.at("lengths").get<std::vector<double>>();
        return make_config(UnitSystem::of(kind), mass, std::move(lengths));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ConfigParse, std::string("bad config document: ") + e.what());
    }
}

WellConfig parse_config(std::string_view text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ConfigParse, std::string("config is not valid JSON: ") + e.what());
    }
    return config_from_json(doc);
}

}  // namespace qconfine
