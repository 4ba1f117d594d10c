#pragma once

#include <cmath>
#include <concepts>
#include <cstdio>
#include <string>

#include "tsglm/quad.hpp"
#include "tsglm/rational.hpp"

namespace tsglm {

/// Uniform interface over the three coefficient scalar kinds: exact
/// rationals (order-4 family), Q(sqrt41) (order-5 method) and double
/// (runtime stepping). Exact kinds ignore tolerances.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
    static constexpr bool exact = true;
    static Rational zero() { return {}; }
    static Rational one() { return Rational(1); }
    static Rational from_int(long long n) { return Rational(n); }
    static bool is_zero(const Rational& x, double /*tol*/ = 0.0) { return x.is_zero(); }
    static double to_double(const Rational& x) { return x.to_double(); }
    static std::string str(const Rational& x) { return x.str(); }
    static std::string name() { return "rational"; }
};

template <>
struct scalar_traits<Quad> {
    static constexpr bool exact = true;
    static Quad zero() { return {}; }
    static Quad one() { return Quad(1); }
    static Quad from_int(long long n) { return Quad(n); }
    static bool is_zero(const Quad& x, double /*tol*/ = 0.0) { return x.is_zero(); }
    static double to_double(const Quad& x) { return x.to_double(); }
    static std::string str(const Quad& x) { return x.str(); }
    static std::string name() { return "sqrt41"; }
};

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static double from_int(long long n) { return static_cast<double>(n); }
    static bool is_zero(double x, double tol = 0.0) { return std::abs(x) <= tol; }
    static double to_double(double x) { return x; }
    static std::string str(double x) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return buf;
    }
    static std::string name() { return "double"; }
};

template <class S>
concept Scalar = requires(const S& x, const S& y) {
    { x + y } -> std::convertible_to<S>;
    { x * y } -> std::convertible_to<S>;
    { x - y } -> std::convertible_to<S>;
    { scalar_traits<S>::zero() } -> std::convertible_to<S>;
};

[[nodiscard]] inline double to_double(const Rational& x) { return x.to_double(); }
[[nodiscard]] inline double to_double(const Quad& x) { return x.to_double(); }
[[nodiscard]] inline double to_double(double x) { return x; }

[[nodiscard]] inline Quad widen(const Rational& x) { return Quad(x); }

}  // namespace tsglm
