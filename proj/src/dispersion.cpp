#include "qconfine/dispersion.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "qconfine/error.hpp"

namespace qconfine {

DispersionModel DispersionModel::builtin(DispersionKind kind)
{
    switch (kind) {
    case DispersionKind::NonRelativistic:
        return {kind, EnergyTransform::Identity, std::nullopt, {}};
    case DispersionKind::MasslessSquared:
        return {kind, EnergyTransform::HbarTimesSqrt, std::nullopt, {}};
    case DispersionKind::RelativisticSquared:
        return {kind, EnergyTransform::Sqrt, std::nullopt, {}};
    case DispersionKind::Custom: break;
    }
    throw Error(ErrorCode::BadRange, "Custom is not a builtin dispersion");
}

DispersionModel DispersionModel::custom(expr::Expr e, EnergyTransform transform,
                                        expr::Bindings params)
{
    return {DispersionKind::Custom, transform, std::move(e), std::move(params)};
}

std::function<double(double)> builtin(const WellConfig& cfg, DispersionKind kind)
{
    const double hbar = cfg.hbar();
    const double c = cfg.c();
    const double m = cfg.mass();
    switch (kind) {
    case DispersionKind::NonRelativistic:
        if (cfg.massless()) {
            throw Error(ErrorCode::MasslessNonRelativistic,
                        "the nonrelativistic dispersion needs a mass > 0");
        }
        return [a = hbar * hbar / (2.0 * m)](double k) { return a * k * k; };
    case DispersionKind::MasslessSquared:
        return [c2 = c * c](double k) { return c2 * k * k; };
    case DispersionKind::RelativisticSquared:
        return [rest2 = m * m * c * c * c * c, a = hbar * hbar * c * c](double k) {
            return rest2 + a * k * k;
        };
    case DispersionKind::Custom: break;
    }
    throw Error(ErrorCode::BadRange, "Custom is not a builtin dispersion");
}

std::string_view builtin_text(DispersionKind kind)
{
    switch (kind) {
    case DispersionKind::NonRelativistic: return "hbar^2*k^2/(2*m)";
    case DispersionKind::MasslessSquared: return "c^2*k^2";
    case DispersionKind::RelativisticSquared: return "m^2*c^4 + hbar^2*c^2*k^2";
    case DispersionKind::Custom: break;
    }
    return "";
}

expr::Bindings constant_bindings(const WellConfig& cfg)
{
    return {{"pi", std::numbers::pi}, {"hbar", cfg.hbar()}, {"c", cfg.c()}, {"m", cfg.mass()}};
}

void check_even(const std::function<double(double)>& o, double k_scale)
{
    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> dist(0.0, 20.0 * k_scale);
    for (int i = 0; i < 32; ++i) {
        const double k = dist(rng);
        const double plus = o(k);
        const double minus = o(-k);
        if (std::abs(plus - minus) > 1e-9 * (1.0 + std::abs(plus))) {
            throw Error(ErrorCode::NotEven, "dispersion is not even in k (o(" +
                                                std::to_string(k) + ") != o(-k))");
        }
    }
}

std::function<double(double)> bind(const WellConfig& cfg, const DispersionModel& model)
{
    if (model.kind() != DispersionKind::Custom) return builtin(cfg, model.kind());

    expr::Bindings constants = constant_bindings(cfg);
    for (const auto& [name, value] : model.params()) constants[name] = value;
    auto f = expr::compile(*model.expression(), "k", constants);
    check_even(f, ground_wavenumber(cfg));
    return f;
}

TransformedValue apply_transform(EnergyTransform t, double moment, double moment_error,
                                 double hbar)
{
    if (t == EnergyTransform::Identity) return {moment, moment_error};
    if (moment < 0.0) {
        throw Error(ErrorCode::DomainError, "cannot take the square root of a negative moment");
    }
    const double root = std::sqrt(moment);
    const double err = root > 0.0 ? moment_error / (2.0 * root) : std::sqrt(moment_error);
    const double scale = t == EnergyTransform::HbarTimesSqrt ? hbar : 1.0;
    return {scale * root, scale * err};
}

std::optional<DispersionKind> parse_builtin_name(std::string_view name)
{
    if (name == "nonrel") return DispersionKind::NonRelativistic;
    if (name == "massless") return DispersionKind::MasslessSquared;
    if (name == "relativistic") return DispersionKind::RelativisticSquared;
    return std::nullopt;
}

std::string_view builtin_name(DispersionKind kind)
{
    switch (kind) {
    case DispersionKind::NonRelativistic: return "nonrel";
    case DispersionKind::MasslessSquared: return "massless";
    case DispersionKind::RelativisticSquared: return "relativistic";
    case DispersionKind::Custom: break;
    }
    return "custom";
}

EnergyTransform parse_transform(std::string_view name)
{
    if (name == "identity") return EnergyTransform::Identity;
    if (name == "sqrt") return EnergyTransform::Sqrt;
    if (name == "hbar_sqrt") return EnergyTransform::HbarTimesSqrt;
    throw Error(ErrorCode::BadRange, "unknown transform '" + std::string(name) +
                                         "' (expected identity, sqrt or hbar_sqrt)");
}

std::string_view transform_name(EnergyTransform t)
{
    switch (t) {
    case EnergyTransform::Identity: return "identity";
    case EnergyTransform::Sqrt: return "sqrt";
    case EnergyTransform::HbarTimesSqrt: return "hbar_sqrt";
    }
    return "identity";
}

}  // namespace qconfine
