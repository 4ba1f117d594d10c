#pragma once

#include <optional>
#include <string>
#include <variant>

#include "tsglm/quad.hpp"
#include "tsglm/tableau.hpp"

namespace tsglm {

/// Identifier of a built-in method. The order-4 family carries its two free
/// coefficient functions (both must vanish at alpha = 0).
struct MethodId {
    enum class Kind { TwoStageOrder4, TwoStageOrder5, StarterRK4 };
    Kind kind = Kind::TwoStageOrder4;
    Poly<Rational> free_a_tilde_22;
    Poly<Rational> free_b_tilde_2;
};

/// The explicit 2-stage family of uniform order 4 / uniform stage order 3,
/// c = (0, 1). `free_at22` and `free_bt2` are the two free coefficient
/// functions; they must vanish at alpha = 0 (throws std::invalid_argument
/// otherwise). Defaults (0, 0) minimize coupling to the previous step's
/// second stage.
[[nodiscard]] Tableau<Rational> make_order4(const Poly<Rational>& free_at22 = {},
                                            const Poly<Rational>& free_bt2 = {});

/// The explicit 2-stage method of uniform order 5 / uniform stage order 4,
/// c = (0, (11 - sqrt41)/10), built over Q(sqrt41).
[[nodiscard]] Tableau<Quad> make_order5();

/// Starting method for the first step: a 4-stage explicit continuous RK in
/// one-step form (u = 1, v = 1, a~ = b~ = 0). Abscissae (0, 1/3, 2/3, 1);
/// endpoint weights are the classical 3/8-rule weights, and the continuous
/// weights are the integrated Lagrange basis on the abscissae, so the dense
/// output integrates cubics exactly on every prefix [0, alpha]. Stage
/// coefficients are linear ramps through the classical stage values.
[[nodiscard]] Tableau<Rational> make_starter();

/// A built-in resolved by CLI name, with the metadata the files and the
/// verifier use.
struct BuiltinMethod {
    std::variant<Tableau<Rational>, Tableau<Quad>> tableau;
    int declared_order = 0;
    int declared_stage_order = 0;
};

/// Built-ins by name: "order4", "order5", "starter". Throws
/// std::invalid_argument for unknown names.
[[nodiscard]] BuiltinMethod builtin_method(const std::string& name);

[[nodiscard]] const std::vector<std::string>& builtin_method_names();

}  // namespace tsglm
