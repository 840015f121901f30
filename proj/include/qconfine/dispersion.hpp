#pragma once

#include <functional>
#include <optional>
#include <string_view>

#include "qconfine/config.hpp"
#include "qconfine/expr.hpp"

namespace qconfine {

enum class DispersionKind { NonRelativistic, MasslessSquared, RelativisticSquared, Custom };

/// Maps the raw moment <o> to an energy.
enum class EnergyTransform { Identity, Sqrt, HbarTimesSqrt };

/*!
 * A free-particle eigenvalue o(k) together with the transform that turns its
 * confined-state expectation value into an energy:
 *
 *   NonRelativistic      hbar^2 k^2 / 2m          Identity
 *   MasslessSquared      omega^2 = c^2 k^2        HbarTimesSqrt
 *   RelativisticSquared  m^2 c^4 + hbar^2 c^2 k^2 Sqrt
 *   Custom               any even expression      caller's choice
 */
class DispersionModel {
public:
    static DispersionModel builtin(DispersionKind kind);
    static DispersionModel custom(expr::Expr e, EnergyTransform transform,
                                  expr::Bindings params = {});

    DispersionKind kind() const noexcept { return kind_; }
    EnergyTransform transform() const noexcept { return transform_; }
    const std::optional<expr::Expr>& expression() const noexcept { return expr_; }
    const expr::Bindings& params() const noexcept { return params_; }

private:
    DispersionModel(DispersionKind kind, EnergyTransform transform,
                    std::optional<expr::Expr> e, expr::Bindings params)
        : kind_(kind), transform_(transform), expr_(std::move(e)), params_(std::move(params))
    {
    }

    DispersionKind kind_;
    EnergyTransform transform_;
    std::optional<expr::Expr> expr_;
    expr::Bindings params_;
};

/// Closure for a builtin model with cfg's constants bound.
/// Throws MasslessNonRelativistic for NonRelativistic at m = 0.
std::function<double(double)> builtin(const WellConfig& cfg, DispersionKind kind);

/// Source text of a builtin model in the expression language.
std::string_view builtin_text(DispersionKind kind);

/// pi, hbar, c and m from cfg.
expr::Bindings constant_bindings(const WellConfig& cfg);

/// Checks |o(k) - o(-k)| <= 1e-9 (1 + |o(k)|) at 32 fixed pseudo-random
/// points in [0, 20 k_scale]; throws NotEven otherwise.
void check_even(const std::function<double(double)>& o, double k_scale);

/// Function of k for any model. Custom expressions get cfg's constants,
/// then the model's parameters, and must pass check_even.
std::function<double(double)> bind(const WellConfig& cfg, const DispersionModel& model);

struct TransformedValue {
    double value;
    double error;
};

/// Applies the model transform with first-order error propagation.
TransformedValue apply_transform(EnergyTransform t, double moment, double moment_error,
                                 double hbar);

// CLI spellings.
std::optional<DispersionKind> parse_builtin_name(std::string_view name);
std::string_view builtin_name(DispersionKind kind);
EnergyTransform parse_transform(std::string_view name);
std::string_view transform_name(EnergyTransform t);

}  // namespace qconfine
