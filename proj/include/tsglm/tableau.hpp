#pragma once

#include <string>
#include <vector>

#include "tsglm/poly.hpp"

namespace tsglm {

/// A complete two-step general linear method: abscissae c_i plus the
/// polynomial coefficient functions
///   a_ij, u_i, a~_ij   (stage row i, domains [0, c_i])
///   b_j, v, b~_j       (output row, domain [0, 1]).
///
/// Structural contract (checked by validate()):
///   c_i >= 0;
///   a_ij(0) = a~_ij(0) = 0 and u_i(0) = 1;
///   b_j(0) = b~_j(0) = 0 and v(0) = 1.
/// The last two lines are what make the stage functions and the dense
/// output continuous across steps.
template <Scalar S>
struct Tableau {
    std::string name;
    int s = 0;                                  ///< stage count
    std::vector<S> c;                           ///< abscissae, size s
    std::vector<std::vector<Poly<S>>> a;        ///< s x s, current-step stage weights
    std::vector<std::vector<Poly<S>>> a_tilde;  ///< s x s, previous-step stage weights
    std::vector<Poly<S>> u;                     ///< size s
    std::vector<Poly<S>> b;                     ///< size s
    std::vector<Poly<S>> b_tilde;               ///< size s
    Poly<S> v;

    [[nodiscard]] static Tableau empty(std::string name, int stages) {
        Tableau t;
        t.name = std::move(name);
        t.s = stages;
        t.c.assign(stages, scalar_traits<S>::zero());
        t.a.assign(stages, std::vector<Poly<S>>(stages));
        t.a_tilde.assign(stages, std::vector<Poly<S>>(stages));
        t.u.assign(stages, Poly<S>::one());
        t.b.assign(stages, Poly<S>{});
        t.b_tilde.assign(stages, Poly<S>{});
        t.v = Poly<S>::one();
        return t;
    }

    friend bool operator==(const Tableau& x, const Tableau& y) {
        return x.name == y.name && x.s == y.s && x.c == y.c && x.a == y.a &&
               x.a_tilde == y.a_tilde && x.u == y.u && x.b == y.b &&
               x.b_tilde == y.b_tilde && x.v == y.v;
    }
};

/// One failed structural condition; violations are data, not exceptions.
struct Violation {
    std::string condition;

    friend bool operator==(const Violation& a, const Violation& b) {
        return a.condition == b.condition;
    }
};

/// The distinct abscissae c*_1 < ... < c*_{s*} and, for each, the set of
/// stage indices (0-based) sharing that value. Grouping uses exact scalar
/// equality, decided at construction time.
template <Scalar S>
struct DistinctAbscissae {
    std::vector<S> c_star;
    std::vector<std::vector<int>> groups;
};

template <Scalar S>
[[nodiscard]] std::vector<Violation> validate(const Tableau<S>& t) {
    std::vector<Violation> out;
    auto bad_shape = [&](const char* what) { out.push_back({std::string("shape: ") + what}); };
    if (t.s <= 0) bad_shape("stage count must be positive");
    const auto n = static_cast<size_t>(t.s);
    if (t.c.size() != n) bad_shape("c size != s");
    if (t.a.size() != n || t.a_tilde.size() != n) bad_shape("a/a~ row count != s");
    if (t.u.size() != n || t.b.size() != n || t.b_tilde.size() != n)
        bad_shape("u/b/b~ size != s");
    if (!out.empty()) return out;
    for (size_t i = 0; i < n; ++i)
        if (t.a[i].size() != n || t.a_tilde[i].size() != n) {
            bad_shape("a/a~ column count != s");
            return out;
        }

    const S zero = scalar_traits<S>::zero();
    const S one = scalar_traits<S>::one();
    auto idx1 = [](size_t i) { return std::to_string(i + 1); };
    for (size_t i = 0; i < n; ++i) {
        if (t.c[i] < zero) out.push_back({"c[" + idx1(i) + "] < 0"});
        if (!(t.u[i].eval(zero) == one)) out.push_back({"u[" + idx1(i) + "](0) != 1"});
        for (size_t j = 0; j < n; ++j) {
            if (!(t.a[i][j].eval(zero) == zero))
                out.push_back({"a[" + idx1(i) + "][" + idx1(j) + "](0) != 0"});
            if (!(t.a_tilde[i][j].eval(zero) == zero))
                out.push_back({"a~[" + idx1(i) + "][" + idx1(j) + "](0) != 0"});
        }
        if (!(t.b[i].eval(zero) == zero)) out.push_back({"b[" + idx1(i) + "](0) != 0"});
        if (!(t.b_tilde[i].eval(zero) == zero))
            out.push_back({"b~[" + idx1(i) + "](0) != 0"});
    }
    if (!(t.v.eval(zero) == one)) out.push_back({"v(0) != 1"});
    return out;
}

/// Explicit iff a_ij is the zero polynomial for every j >= i.
template <Scalar S>
[[nodiscard]] bool is_explicit(const Tableau<S>& t, double tol = 0.0) {
    for (int i = 0; i < t.s; ++i)
        for (int j = i; j < t.s; ++j)
            if (!t.a[i][j].is_zero(tol)) return false;
    return true;
}

/// One-step reduction: u_i = 1, a~_ij = 0, v = 1, b~_j = 0 as polynomial
/// identities. Such a tableau is an ordinary continuous RK method and its
/// step does not depend on the carried previous-step data.
template <Scalar S>
[[nodiscard]] bool is_one_step(const Tableau<S>& t, double tol = 0.0) {
    const Poly<S> one = Poly<S>::one();
    if (!(t.v - one).is_zero(tol)) return false;
    for (int i = 0; i < t.s; ++i) {
        if (!(t.u[i] - one).is_zero(tol)) return false;
        if (!t.b_tilde[i].is_zero(tol)) return false;
        for (int j = 0; j < t.s; ++j)
            if (!t.a_tilde[i][j].is_zero(tol)) return false;
    }
    return true;
}

template <Scalar S>
[[nodiscard]] DistinctAbscissae<S> distinct_abscissae(const Tableau<S>& t) {
    DistinctAbscissae<S> d;
    for (int i = 0; i < t.s; ++i) {
        // insertion into the sorted list of distinct values, exact equality
        size_t pos = 0;
        bool found = false;
        for (; pos < d.c_star.size(); ++pos) {
            if (d.c_star[pos] == t.c[i]) {
                d.groups[pos].push_back(i);
                found = true;
                break;
            }
            if (t.c[i] < d.c_star[pos]) break;
        }
        if (!found) {
            d.c_star.insert(d.c_star.begin() + static_cast<long>(pos), t.c[i]);
            d.groups.insert(d.groups.begin() + static_cast<long>(pos), {i});
        }
    }
    return d;
}

template <Scalar S>
[[nodiscard]] Tableau<double> to_double_tableau(const Tableau<S>& t) {
    Tableau<double> r = Tableau<double>::empty(t.name, t.s);
    for (int i = 0; i < t.s; ++i) {
        r.c[static_cast<size_t>(i)] = scalar_traits<S>::to_double(t.c[static_cast<size_t>(i)]);
        r.u[static_cast<size_t>(i)] = to_double_poly(t.u[static_cast<size_t>(i)]);
        r.b[static_cast<size_t>(i)] = to_double_poly(t.b[static_cast<size_t>(i)]);
        r.b_tilde[static_cast<size_t>(i)] = to_double_poly(t.b_tilde[static_cast<size_t>(i)]);
        for (int j = 0; j < t.s; ++j) {
            r.a[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                to_double_poly(t.a[static_cast<size_t>(i)][static_cast<size_t>(j)]);
            r.a_tilde[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                to_double_poly(t.a_tilde[static_cast<size_t>(i)][static_cast<size_t>(j)]);
        }
    }
    r.v = to_double_poly(t.v);
    return r;
}

}  // namespace tsglm
