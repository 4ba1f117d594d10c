#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "tsglm/rational.hpp"

namespace tsglm {

/// Element of the quadratic field Q(sqrt(41)): a + b*sqrt(41) with exact
/// rational parts. Closed under +, -, *, / and with exact equality and
/// ordering (sqrt(41) is irrational, so the representation is unique).
class Quad {
public:
    Quad() = default;
    Quad(long long n) : a_(n) {}          // NOLINT: implicit by design
    Quad(const Rational& a) : a_(a) {}    // NOLINT: implicit by design
    Quad(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

    [[nodiscard]] static Quad sqrt41() { return Quad(Rational(0), Rational(1)); }

    [[nodiscard]] const Rational& rat() const noexcept { return a_; }
    [[nodiscard]] const Rational& irr() const noexcept { return b_; }
    [[nodiscard]] bool is_zero() const noexcept { return a_.is_zero() && b_.is_zero(); }
    [[nodiscard]] bool is_rational() const noexcept { return b_.is_zero(); }

    [[nodiscard]] double to_double() const noexcept {
        return a_.to_double() + b_.to_double() * std::sqrt(41.0);
    }

    friend Quad operator+(const Quad& x, const Quad& y) {
        return {x.a_ + y.a_, x.b_ + y.b_};
    }
    friend Quad operator-(const Quad& x, const Quad& y) {
        return {x.a_ - y.a_, x.b_ - y.b_};
    }
    friend Quad operator*(const Quad& x, const Quad& y) {
        return {x.a_ * y.a_ + Rational(41) * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_};
    }
    friend Quad operator/(const Quad& x, const Quad& y) {
        // multiply by the conjugate; the field norm a^2 - 41 b^2 vanishes
        // only at zero since sqrt(41) is irrational
        Rational norm = y.a_ * y.a_ - Rational(41) * y.b_ * y.b_;
        if (norm.is_zero()) throw std::invalid_argument("Quad: division by zero");
        Quad num = x * Quad(y.a_, -y.b_);
        return {num.a_ / norm, num.b_ / norm};
    }
    Quad operator-() const { return {-a_, -b_}; }
    Quad& operator+=(const Quad& y) { return *this = *this + y; }
    Quad& operator-=(const Quad& y) { return *this = *this - y; }
    Quad& operator*=(const Quad& y) { return *this = *this * y; }
    Quad& operator/=(const Quad& y) { return *this = *this / y; }

    friend bool operator==(const Quad& x, const Quad& y) noexcept {
        return x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator!=(const Quad& x, const Quad& y) noexcept { return !(x == y); }

    /// Exact sign: decide sign(a + b*sqrt41) by comparing a^2 with 41 b^2
    /// when a and b disagree in sign.
    [[nodiscard]] int sign() const {
        if (b_.is_zero()) return a_.sign();
        if (a_.is_zero()) return b_.sign();
        if (a_.sign() == b_.sign()) return a_.sign();
        // |a| vs sqrt(41)|b|
        Rational a2 = a_ * a_;
        Rational b2 = Rational(41) * b_ * b_;
        if (a2 == b2) return 0;  // unreachable: would make sqrt41 rational
        return a2 > b2 ? a_.sign() : b_.sign();
    }

    friend bool operator<(const Quad& x, const Quad& y) { return (x - y).sign() < 0; }
    friend bool operator>(const Quad& x, const Quad& y) { return y < x; }
    friend bool operator<=(const Quad& x, const Quad& y) { return !(y < x); }
    friend bool operator>=(const Quad& x, const Quad& y) { return !(x < y); }

    [[nodiscard]] std::string str() const {
        if (b_.is_zero()) return a_.str();
        return "(" + a_.str() + "," + b_.str() + ")sqrt41";
    }

private:
    Rational a_;
    Rational b_;
};

}  // namespace tsglm
