#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsglm/integrator.hpp"

namespace tsglm {

/// A built-in RFDE test instance: the problem, its exact solution when one
/// exists, and where the solution loses smoothness.
struct TestProblem {
    Problem problem;
    ExactFn exact;  ///< null when no closed form is available
    std::string label;
    std::vector<double> breaking_points;
    std::string note;
};

/// y'(t) = -y(t-1), phi = 1, r = 1, on [0, 4]. The exact solution is the
/// method-of-steps piecewise polynomial, computed by exact rational
/// antidifferentiation (valid out to t = 8 for span overrides).
[[nodiscard]] TestProblem linear_constant_delay();

/// y'(t) = y(t - tau) + g(t) with g = cos(t) - sin(t - tau), phi = sin,
/// so y(t) = sin(t) exactly; globally smooth, no breaking points. On [0, 2].
[[nodiscard]] TestProblem manufactured_smooth(double tau = 0.3);

/// y'(t) = lambda (y - sin t) + cos t + 0.1 (y(t-1) - sin(t-1)), phi = sin.
/// The delay term is compensated so y(t) = sin(t) stays the exact smooth
/// solution for every lambda. On [0, 2].
[[nodiscard]] TestProblem mildly_stiff(double lambda = -50.0);

/// Delay-free y' = -y + cos t, y(0) = 1 (r = 0; f reads only theta = 0).
/// Exact: (sin t + cos t)/2 + e^{-t}/2. On [0, 1].
[[nodiscard]] TestProblem ode_reduction();

/// dim = 2 rotation system y' = A y(t - tau) + g(t) with A = [[0,-1],[1,0]]
/// and forcing manufactured so y = (cos t, sin t) exactly. On [0, 2].
[[nodiscard]] TestProblem rotation2d(double tau = 0.3);

[[nodiscard]] const std::vector<std::string>& problem_labels();

/// Registry lookup with default parameters; throws std::invalid_argument
/// for unknown labels.
[[nodiscard]] TestProblem problem_by_label(const std::string& label);

}  // namespace tsglm
