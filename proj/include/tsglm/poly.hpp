#pragma once

#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsglm/scalar.hpp"

namespace tsglm {

/// Univariate polynomial in the continuous-output parameter alpha,
/// coefficients in ascending degree. The atom of all method coefficients.
///
/// Trailing zero coefficients are trimmed so the degree is canonical; the
/// zero polynomial has an empty coefficient sequence (degree() == -1).
/// Evaluation uses Horner's scheme, which is exact for the exact scalar
/// kinds.
template <Scalar S>
class Poly {
public:
    using scalar_type = S;

    Poly() = default;
    Poly(std::initializer_list<S> coeffs) : c_(coeffs) { normalize(); }
    explicit Poly(std::vector<S> coeffs) : c_(std::move(coeffs)) { normalize(); }

    [[nodiscard]] static Poly zero() { return {}; }
    [[nodiscard]] static Poly constant(S v) { return Poly({std::move(v)}); }
    [[nodiscard]] static Poly one() { return constant(scalar_traits<S>::one()); }
    /// The polynomial alpha itself.
    [[nodiscard]] static Poly identity() {
        return Poly({scalar_traits<S>::zero(), scalar_traits<S>::one()});
    }
    [[nodiscard]] static Poly monomial(int k, S v) {
        std::vector<S> c(static_cast<size_t>(k) + 1, scalar_traits<S>::zero());
        c.back() = std::move(v);
        return Poly(std::move(c));
    }

    [[nodiscard]] int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    [[nodiscard]] std::span<const S> coeffs() const noexcept { return c_; }

    /// Coefficient of alpha^k; zero beyond the stored degree.
    [[nodiscard]] S operator[](size_t k) const {
        return k < c_.size() ? c_[k] : scalar_traits<S>::zero();
    }

    [[nodiscard]] bool is_zero(double tol = 0.0) const {
        for (const S& x : c_)
            if (!scalar_traits<S>::is_zero(x, tol)) return false;
        return true;
    }

    [[nodiscard]] S eval(const S& alpha) const {
        if (c_.empty()) return scalar_traits<S>::zero();
        S acc = c_.back();
        for (size_t k = c_.size() - 1; k-- > 0;) acc = acc * alpha + c_[k];
        return acc;
    }

    friend Poly operator+(const Poly& p, const Poly& q) {
        std::vector<S> c(std::max(p.c_.size(), q.c_.size()), scalar_traits<S>::zero());
        for (size_t k = 0; k < p.c_.size(); ++k) c[k] = c[k] + p.c_[k];
        for (size_t k = 0; k < q.c_.size(); ++k) c[k] = c[k] + q.c_[k];
        return Poly(std::move(c));
    }
    friend Poly operator-(const Poly& p, const Poly& q) {
        std::vector<S> c(std::max(p.c_.size(), q.c_.size()), scalar_traits<S>::zero());
        for (size_t k = 0; k < p.c_.size(); ++k) c[k] = c[k] + p.c_[k];
        for (size_t k = 0; k < q.c_.size(); ++k) c[k] = c[k] - q.c_[k];
        return Poly(std::move(c));
    }
    Poly operator-() const {
        std::vector<S> c(c_);
        for (S& x : c) x = -x;
        return Poly(std::move(c));
    }

    /// Convolution product; deg(p*q) = deg p + deg q for nonzero inputs.
    friend Poly operator*(const Poly& p, const Poly& q) {
        if (p.c_.empty() || q.c_.empty()) return {};
        std::vector<S> c(p.c_.size() + q.c_.size() - 1, scalar_traits<S>::zero());
        for (size_t i = 0; i < p.c_.size(); ++i)
            for (size_t j = 0; j < q.c_.size(); ++j) c[i + j] = c[i + j] + p.c_[i] * q.c_[j];
        return Poly(std::move(c));
    }
    friend Poly operator*(const S& s, const Poly& p) { return Poly::constant(s) * p; }
    friend Poly operator*(const Poly& p, const S& s) { return Poly::constant(s) * p; }
    friend Poly operator/(const Poly& p, const S& s) {
        std::vector<S> c(p.c_.begin(), p.c_.end());
        for (S& x : c) x = x / s;
        return Poly(std::move(c));
    }

    Poly& operator+=(const Poly& q) { return *this = *this + q; }
    Poly& operator-=(const Poly& q) { return *this = *this - q; }
    Poly& operator*=(const Poly& q) { return *this = *this * q; }

    [[nodiscard]] Poly pow(int n) const {
        Poly r = one();
        for (int k = 0; k < n; ++k) r *= *this;
        return r;
    }

    /// Antiderivative with zero constant term.
    [[nodiscard]] Poly antiderivative() const {
        if (c_.empty()) return {};
        std::vector<S> c(c_.size() + 1, scalar_traits<S>::zero());
        for (size_t k = 0; k < c_.size(); ++k)
            c[k + 1] = c_[k] / scalar_traits<S>::from_int(static_cast<long long>(k) + 1);
        return Poly(std::move(c));
    }

    friend bool operator==(const Poly& p, const Poly& q) { return p.c_ == q.c_; }
    friend bool operator!=(const Poly& p, const Poly& q) { return !(p == q); }

    [[nodiscard]] std::string str(const char* var = "alpha") const {
        if (c_.empty()) return "0";
        std::string s;
        for (size_t k = 0; k < c_.size(); ++k) {
            if (scalar_traits<S>::is_zero(c_[k], 0.0)) continue;
            if (!s.empty()) s += " + ";
            s += scalar_traits<S>::str(c_[k]);
            if (k >= 1) s += std::string("*") + var;
            if (k >= 2) s += "^" + std::to_string(k);
        }
        return s.empty() ? "0" : s;
    }

private:
    void normalize() {
        while (!c_.empty() && scalar_traits<S>::is_zero(c_.back(), 0.0)) c_.pop_back();
    }

    std::vector<S> c_;
};

/// Scalar power with the 0^0 = 1 convention used throughout the order
/// conditions (k = 1 terms).
template <Scalar S>
[[nodiscard]] S scalar_pow(const S& x, int n) {
    S r = scalar_traits<S>::one();
    for (int k = 0; k < n; ++k) r = r * x;
    return r;
}

template <Scalar S>
[[nodiscard]] Poly<double> to_double_poly(const Poly<S>& p) {
    std::vector<double> c;
    c.reserve(static_cast<size_t>(p.degree() + 1));
    for (const S& x : p.coeffs()) c.push_back(scalar_traits<S>::to_double(x));
    return Poly<double>(std::move(c));
}

}  // namespace tsglm
