#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tsglm {

/// Exact rational number on 64-bit numerator/denominator.
///
/// Always stored normalized: gcd(num, den) == 1, den > 0. Intermediate
/// products are computed in 128-bit arithmetic and range-checked after
/// reduction; anything that leaves int64 range throws std::overflow_error
/// instead of wrapping.
class Rational {
public:
    Rational() = default;
    Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
    Rational(long long n, long long d) {
        if (d == 0) throw std::invalid_argument("Rational: zero denominator");
        __int128 nn = n, dd = d;
        if (dd < 0) { nn = -nn; dd = -dd; }
        normalize_set(nn, dd);
    }

    [[nodiscard]] long long num() const noexcept { return num_; }
    [[nodiscard]] long long den() const noexcept { return den_; }
    [[nodiscard]] bool is_zero() const noexcept { return num_ == 0; }
    [[nodiscard]] int sign() const noexcept { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    [[nodiscard]] double to_double() const noexcept {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    friend Rational operator+(const Rational& x, const Rational& y) {
        return from128(i128(x.num_) * y.den_ + i128(y.num_) * x.den_,
                       i128(x.den_) * y.den_);
    }
    friend Rational operator-(const Rational& x, const Rational& y) {
        return from128(i128(x.num_) * y.den_ - i128(y.num_) * x.den_,
                       i128(x.den_) * y.den_);
    }
    friend Rational operator*(const Rational& x, const Rational& y) {
        return from128(i128(x.num_) * y.num_, i128(x.den_) * y.den_);
    }
    friend Rational operator/(const Rational& x, const Rational& y) {
        if (y.num_ == 0) throw std::invalid_argument("Rational: division by zero");
        return from128(i128(x.num_) * y.den_, i128(x.den_) * y.num_);
    }
    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    Rational& operator+=(const Rational& y) { return *this = *this + y; }
    Rational& operator-=(const Rational& y) { return *this = *this - y; }
    Rational& operator*=(const Rational& y) { return *this = *this * y; }
    Rational& operator/=(const Rational& y) { return *this = *this / y; }

    friend bool operator==(const Rational& x, const Rational& y) noexcept {
        return x.num_ == y.num_ && x.den_ == y.den_;
    }
    friend bool operator!=(const Rational& x, const Rational& y) noexcept { return !(x == y); }
    friend bool operator<(const Rational& x, const Rational& y) noexcept {
        return i128(x.num_) * y.den_ < i128(y.num_) * x.den_;
    }
    friend bool operator>(const Rational& x, const Rational& y) noexcept { return y < x; }
    friend bool operator<=(const Rational& x, const Rational& y) noexcept { return !(y < x); }
    friend bool operator>=(const Rational& x, const Rational& y) noexcept { return !(x < y); }

    [[nodiscard]] Rational abs() const { return num_ < 0 ? -*this : *this; }

    /// "p" for integers, "p/q" otherwise.
    [[nodiscard]] std::string str() const {
        std::string s = std::to_string(num_);
        if (den_ != 1) s += "/" + std::to_string(den_);
        return s;
    }

private:
    using i128 = __int128;

    static i128 gcd128(i128 a, i128 b) noexcept {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            i128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static Rational from128(i128 n, i128 d) {
        Rational r;
        if (d < 0) { n = -n; d = -d; }
        r.normalize_set(n, d);
        return r;
    }

    void normalize_set(i128 n, i128 d) {
        if (n == 0) {
            num_ = 0;
            den_ = 1;
            return;
        }
        i128 g = gcd128(n, d);
        n /= g;
        d /= g;
        constexpr i128 lo = INT64_MIN, hi = INT64_MAX;
        if (n < lo || n > hi || d > hi)
            throw std::overflow_error("Rational: value exceeds 64-bit range");
        num_ = static_cast<long long>(n);
        den_ = static_cast<long long>(d);
    }

    long long num_ = 0;
    long long den_ = 1;
};

}  // namespace tsglm
