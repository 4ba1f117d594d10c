#include "tsglm/problems.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "tsglm/rational.hpp"

namespace tsglm {

namespace {

InitialFunction scalar_phi(std::function<double(double)> fn, double r) {
    return {[fn = std::move(fn)](double theta, std::span<double> out) { out[0] = fn(theta); },
            r, 1};
}

}  // namespace

TestProblem linear_constant_delay() {
    // method of steps: on [m, m+1], q_m'(s) = -q_{m-1}(s) with s = t - m,
    // q_{-1} = phi = 1; each piece is one exact rational antiderivative
    constexpr int kPieces = 8;
    auto pieces = std::make_shared<std::vector<Poly<double>>>();
    Poly<Rational> prev = Poly<Rational>::one();  // phi on [-1, 0]
    for (int m = 0; m < kPieces; ++m) {
        Poly<Rational> piece =
            Poly<Rational>::constant(prev.eval(Rational(1))) - prev.antiderivative();
        pieces->push_back(to_double_poly(piece));
        prev = piece;
    }

    TestProblem tp;
    tp.label = "linear_constant_delay";
    tp.breaking_points = {1.0, 2.0, 3.0};
    tp.note = "phi' jumps at t=0; the jump propagates to t = 1, 2, 3";
    tp.problem.f = [](double, const ShiftedView& xt, std::span<double> dydt) {
        dydt[0] = -xt.eval1(-1.0);
    };
    tp.problem.phi = scalar_phi([](double) { return 1.0; }, 1.0);
    tp.problem.t0 = 0.0;
    tp.problem.T = 4.0;
    tp.exact = [pieces](double t, std::span<double> y) {
        if (t <= 0.0) {
            y[0] = 1.0;
            return;
        }
        if (t > kPieces) throw std::domain_error("linear_constant_delay: exact only up to t = 8");
        const int m = std::min(static_cast<int>(std::floor(t)), kPieces - 1);
        y[0] = (*pieces)[static_cast<size_t>(m)].eval(t - m);
    };
    return tp;
}

TestProblem manufactured_smooth(double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("manufactured_smooth: tau must be positive");
    TestProblem tp;
    tp.label = "manufactured_smooth";
    tp.note = "y = sin(t) exactly; globally smooth";
    tp.problem.f = [tau](double t, const ShiftedView& xt, std::span<double> dydt) {
        dydt[0] = xt.eval1(-tau) + std::cos(t) - std::sin(t - tau);
    };
    tp.problem.phi = scalar_phi([](double theta) { return std::sin(theta); }, tau);
    tp.problem.t0 = 0.0;
    tp.problem.T = 2.0;
    tp.exact = [](double t, std::span<double> y) { y[0] = std::sin(t); };
    return tp;
}

TestProblem mildly_stiff(double lambda) {
    if (!(lambda <= -1.0)) throw std::invalid_argument("mildly_stiff: lambda must be <= -1");
    TestProblem tp;
    tp.label = "mildly_stiff";
    tp.note = "delay forcing compensated so y = sin(t) is exact for any lambda";
    tp.problem.f = [lambda](double t, const ShiftedView& xt, std::span<double> dydt) {
        dydt[0] = lambda * (xt.eval1(0.0) - std::sin(t)) + std::cos(t) +
                  0.1 * (xt.eval1(-1.0) - std::sin(t - 1.0));
    };
    tp.problem.phi = scalar_phi([](double theta) { return std::sin(theta); }, 1.0);
    tp.problem.t0 = 0.0;
    tp.problem.T = 2.0;
    tp.exact = [](double t, std::span<double> y) { y[0] = std::sin(t); };
    return tp;
}

TestProblem ode_reduction() {
    TestProblem tp;
    tp.label = "ode_reduction";
    tp.note = "delay-free; f reads the shifted function only at theta = 0";
    tp.problem.f = [](double t, const ShiftedView& xt, std::span<double> dydt) {
        dydt[0] = -xt.eval1(0.0) + std::cos(t);
    };
    tp.problem.phi = scalar_phi([](double) { return 1.0; }, 0.0);
    tp.problem.t0 = 0.0;
    tp.problem.T = 1.0;
    tp.exact = [](double t, std::span<double> y) {
        y[0] = 0.5 * (std::sin(t) + std::cos(t)) + 0.5 * std::exp(-t);
    };
    return tp;
}

TestProblem rotation2d(double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("rotation2d: tau must be positive");
    TestProblem tp;
    tp.label = "rotation2d";
    tp.note = "vector-valued path coverage; y = (cos t, sin t) exactly";
    tp.problem.f = [tau](double t, const ShiftedView& xt, std::span<double> dydt) {
        double past[2];
        xt.eval(-tau, past);
        // A y(t - tau) with A = [[0,-1],[1,0]], plus forcing for y = (cos, sin)
        dydt[0] = -past[1] + (-std::sin(t) + std::sin(t - tau));
        dydt[1] = past[0] + (std::cos(t) - std::cos(t - tau));
    };
    tp.problem.phi = {[](double theta, std::span<double> out) {
                          out[0] = std::cos(theta);
                          out[1] = std::sin(theta);
                      },
                      tau, 2};
    tp.problem.t0 = 0.0;
    tp.problem.T = 2.0;
    tp.exact = [](double t, std::span<double> y) {
        y[0] = std::cos(t);
        y[1] = std::sin(t);
    };
    return tp;
}

const std::vector<std::string>& problem_labels() {
    static const std::vector<std::string> labels = {
        "linear_constant_delay", "manufactured_smooth", "mildly_stiff", "ode_reduction",
        "rotation2d"};
    return labels;
}

TestProblem problem_by_label(const std::string& label) {
    if (label == "linear_constant_delay") return linear_constant_delay();
    if (label == "manufactured_smooth") return manufactured_smooth();
    if (label == "mildly_stiff") return mildly_stiff();
    if (label == "ode_reduction") return ode_reduction();
    if (label == "rotation2d") return rotation2d();
    throw std::invalid_argument("unknown problem '" + label + "'");
}

}  // namespace tsglm
