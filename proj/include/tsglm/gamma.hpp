#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsglm/tableau.hpp"

namespace tsglm {

/// The quadrature-defect polynomials governing uniform order and uniform
/// stage order:
///
///   Gamma_k(a)  = 1/(k-1)! [ (1-v(a))(-1)^k/k + sum_j b~_j(a)(-(1-c_j))^{k-1}
///                            + sum_j b_j(a) c_j^{k-1} - a^k/k ]
///   Gamma_ik(a) = same with (u_i, a~_i*, a_i*) in place of (v, b~, b).
///
/// Gamma_ik lives on [0, c_i]; for a stage with c_i = 0 that domain is the
/// single point 0, so "Gamma_ik = 0" means Gamma_ik(0) = 0 there, not the
/// formal polynomial vanishing. All zero tests below honor that rule.
template <Scalar S>
struct GammaSet {
    int k_max = 0;
    std::vector<S> c;                                ///< abscissae of the source tableau
    std::vector<Poly<S>> gamma;                      ///< gamma[k-1] = Gamma_k
    std::vector<std::vector<Poly<S>>> gamma_stage;   ///< gamma_stage[i][k-1] = Gamma_{i,k}

    [[nodiscard]] const Poly<S>& at(int k) const { return gamma.at(static_cast<size_t>(k - 1)); }
    [[nodiscard]] const Poly<S>& stage_at(int i, int k) const {
        return gamma_stage.at(static_cast<size_t>(i)).at(static_cast<size_t>(k - 1));
    }
};

namespace detail {

template <Scalar S>
[[nodiscard]] S int_factorial(int n) {
    long long f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return scalar_traits<S>::from_int(f);
}

/// One row of the defect formula shared by Gamma_k and Gamma_ik.
template <Scalar S>
[[nodiscard]] Poly<S> gamma_row(const Poly<S>& head, const std::vector<Poly<S>>& tilde_row,
                                const std::vector<Poly<S>>& plain_row, const std::vector<S>& c,
                                int k) {
    const S one = scalar_traits<S>::one();
    const S kk = scalar_traits<S>::from_int(k);
    // (1 - head)(-1)^k / k
    Poly<S> acc = (Poly<S>::one() - head) / kk;
    if (k % 2 != 0) acc = -acc;
    for (size_t j = 0; j < c.size(); ++j) {
        const S neg_gap = c[j] - one;                      // -(1 - c_j)
        const S w_tilde = k == 1 ? one : scalar_pow(neg_gap, k - 1);
        const S w_plain = k == 1 ? one : scalar_pow(c[j], k - 1);
        acc += tilde_row[j] * w_tilde;
        acc += plain_row[j] * w_plain;
    }
    acc -= Poly<S>::monomial(k, one) / kk;
    return acc / int_factorial<S>(k - 1);
}

}  // namespace detail

template <Scalar S>
[[nodiscard]] GammaSet<S> build_gammas(const Tableau<S>& t, int k_max) {
    if (k_max < 1) throw std::invalid_argument("build_gammas: k_max must be >= 1");
    GammaSet<S> g;
    g.k_max = k_max;
    g.c = t.c;
    g.gamma.reserve(static_cast<size_t>(k_max));
    for (int k = 1; k <= k_max; ++k)
        g.gamma.push_back(detail::gamma_row(t.v, t.b_tilde, t.b, t.c, k));
    g.gamma_stage.resize(static_cast<size_t>(t.s));
    for (int i = 0; i < t.s; ++i) {
        auto& row = g.gamma_stage[static_cast<size_t>(i)];
        row.reserve(static_cast<size_t>(k_max));
        for (int k = 1; k <= k_max; ++k)
            row.push_back(detail::gamma_row(t.u[static_cast<size_t>(i)],
                                            t.a_tilde[static_cast<size_t>(i)],
                                            t.a[static_cast<size_t>(i)], t.c, k));
    }
    return g;
}

/// Zero test for the output defect (domain [0,1] is never degenerate).
template <Scalar S>
[[nodiscard]] bool gamma_vanishes(const GammaSet<S>& g, int k, double tol = 0.0) {
    return g.at(k).is_zero(tol);
}

/// Zero test for a stage defect on its own domain [0, c_i]: identical zero
/// for c_i > 0, value at 0 for the degenerate c_i = 0 stage.
template <Scalar S>
[[nodiscard]] bool stage_gamma_vanishes(const GammaSet<S>& g, int i, int k, double tol = 0.0) {
    const Poly<S>& p = g.stage_at(i, k);
    if (scalar_traits<S>::is_zero(g.c.at(static_cast<size_t>(i)), tol))
        return scalar_traits<S>::is_zero(p[0], tol);
    return p.is_zero(tol);
}

/// Largest p~ <= k_max with Gamma_k = 0 and Gamma_ik = 0 for all k <= p~.
template <Scalar S>
[[nodiscard]] int uniform_stage_order(const GammaSet<S>& g, double tol = 0.0) {
    for (int k = 1; k <= g.k_max; ++k) {
        bool ok = gamma_vanishes(g, k, tol);
        for (size_t i = 0; ok && i < g.c.size(); ++i)
            ok = stage_gamma_vanishes(g, static_cast<int>(i), k, tol);
        if (!ok) return k - 1;
    }
    return g.k_max;
}

namespace detail {

/// sum over a group of b_i (x) Gamma_{i,kk} as a coefficient matrix; the
/// identity must vanish on [0,1] x [0,c*]. A degenerate c* = 0 direction
/// only constrains the beta-degree-0 column.
template <Scalar S>
[[nodiscard]] bool grouped_bilinear_vanishes(const Tableau<S>& t, const GammaSet<S>& g,
                                             const std::vector<int>& group, const S& c_star,
                                             int kk, double tol) {
    int da = 0, db = 0;
    for (int i : group) {
        da = std::max(da, t.b[static_cast<size_t>(i)].degree());
        db = std::max(db, g.stage_at(i, kk).degree());
    }
    if (da < 0 || db < 0) return true;
    const bool beta_degenerate = scalar_traits<S>::is_zero(c_star, tol);
    std::vector<std::vector<S>> m(static_cast<size_t>(da + 1),
                                  std::vector<S>(static_cast<size_t>(db + 1),
                                                 scalar_traits<S>::zero()));
    for (int i : group) {
        const auto& bi = t.b[static_cast<size_t>(i)];
        const auto& gi = g.stage_at(i, kk);
        for (int p = 0; p <= bi.degree(); ++p)
            for (int q = 0; q <= gi.degree(); ++q)
                m[static_cast<size_t>(p)][static_cast<size_t>(q)] =
                    m[static_cast<size_t>(p)][static_cast<size_t>(q)] +
                    bi[static_cast<size_t>(p)] * gi[static_cast<size_t>(q)];
    }
    for (int p = 0; p <= da; ++p)
        for (int q = 0; q <= (beta_degenerate ? 0 : db); ++q)
            if (!scalar_traits<S>::is_zero(m[static_cast<size_t>(p)][static_cast<size_t>(q)], tol))
                return false;
    return true;
}

/// sum over two groups of b_i(alpha) a_ij(beta) Gamma_{j,2}(gamma) = 0 on
/// [0,1] x [0,c*_m] x [0,c*_l], with the same degenerate-direction rule.
template <Scalar S>
[[nodiscard]] bool grouped_trilinear_vanishes(const Tableau<S>& t, const GammaSet<S>& g,
                                              const std::vector<int>& gm, const S& cm,
                                              const std::vector<int>& gl, const S& cl,
                                              double tol) {
    const bool beta_degenerate = scalar_traits<S>::is_zero(cm, tol);
    const bool gamma_degenerate = scalar_traits<S>::is_zero(cl, tol);
    int da = 0, db = 0, dg = 0;
    for (int i : gm) {
        da = std::max(da, t.b[static_cast<size_t>(i)].degree());
        for (int j : gl) db = std::max(db, t.a[static_cast<size_t>(i)][static_cast<size_t>(j)].degree());
    }
    for (int j : gl) dg = std::max(dg, g.stage_at(j, 2).degree());
    if (da < 0 || db < 0 || dg < 0) return true;

    std::vector<S> tens(static_cast<size_t>((da + 1) * (db + 1) * (dg + 1)),
                        scalar_traits<S>::zero());
    auto at = [&](int p, int q, int r) -> S& {
        return tens[static_cast<size_t>((p * (db + 1) + q) * (dg + 1) + r)];
    };
    for (int i : gm) {
        const auto& bi = t.b[static_cast<size_t>(i)];
        for (int j : gl) {
            const auto& aij = t.a[static_cast<size_t>(i)][static_cast<size_t>(j)];
            const auto& gj = g.stage_at(j, 2);
            for (int p = 0; p <= bi.degree(); ++p)
                for (int q = 0; q <= aij.degree(); ++q)
                    for (int r = 0; r <= gj.degree(); ++r)
                        at(p, q, r) = at(p, q, r) + bi[static_cast<size_t>(p)] *
                                                        aij[static_cast<size_t>(q)] *
                                                        gj[static_cast<size_t>(r)];
        }
    }
    for (int p = 0; p <= da; ++p)
        for (int q = 0; q <= (beta_degenerate ? 0 : db); ++q)
            for (int r = 0; r <= (gamma_degenerate ? 0 : dg); ++r)
                if (!scalar_traits<S>::is_zero(at(p, q, r), tol)) return false;
    return true;
}

}  // namespace detail

/// Certification narrative for one tableau. p >= p~ always (stage order
/// bounds order from below); discrete_order_at_1 is the necessary-condition
/// count of vanishing endpoint defects, not a sufficiency claim.
struct OrderReport {
    int uniform_stage_order = 0;
    int uniform_order = 0;
    int discrete_order_at_1 = 0;
    struct Witness {
        std::string condition;   ///< which identity failed
        std::string poly;        ///< the offending polynomial
        std::string first_coeff; ///< its lowest-degree nonzero coefficient
    };
    std::vector<Witness> witnesses;
    std::string note;  ///< e.g. "indeterminate above order 4"
};

namespace detail {

template <Scalar S>
void add_witness(OrderReport& rep, const std::string& cond, const Poly<S>& p) {
    std::string fc = "0";
    for (int k = 0; k <= p.degree(); ++k)
        if (!scalar_traits<S>::is_zero(p[static_cast<size_t>(k)], 0.0)) {
            fc = scalar_traits<S>::str(p[static_cast<size_t>(k)]) + " at degree " +
                 std::to_string(k);
            break;
        }
    rep.witnesses.push_back({cond, p.str(), fc});
}

}  // namespace detail

/// The largest uniform order certified by the theorem chain:
///   order 1 from the stage-order-one identities (Gamma_1 = Gamma_i1 = 0);
///   order 2 iff Gamma_2 = 0;
///   order 3 adds the grouped products sum b_i(alpha) Gamma_i2(beta) = 0;
///   order 4 adds the k=3 grouped products and the double products
///     sum b_i(alpha) a_ij(beta) Gamma_j2(gamma) = 0;
///   beyond 4 only the stage-order route applies: stage order p~ plus
///     Gamma_{p~+1} = 0 certifies p~ + 1.
template <Scalar S>
[[nodiscard]] int uniform_order(const Tableau<S>& t, const GammaSet<S>& g, double tol = 0.0,
                                OrderReport* report = nullptr) {
    OrderReport scratch;
    OrderReport& rep = report ? *report : scratch;
    const int p_stage = uniform_stage_order(g, tol);
    rep.uniform_stage_order = p_stage;

    const auto groups = distinct_abscissae(t);
    if (report && p_stage < g.k_max) {
        // what broke the stage order: the first non-vanishing defect at p~+1
        const int k = p_stage + 1;
        if (!gamma_vanishes(g, k, tol))
            detail::add_witness(rep, "Gamma_" + std::to_string(k) + " != 0", g.at(k));
        for (size_t i = 0; i < g.c.size(); ++i)
            if (!stage_gamma_vanishes(g, static_cast<int>(i), k, tol)) {
                detail::add_witness(rep,
                                    "Gamma_{" + std::to_string(i + 1) + "," +
                                        std::to_string(k) + "} != 0 on [0,c_" +
                                        std::to_string(i + 1) + "]",
                                    g.stage_at(static_cast<int>(i), k));
                break;
            }
    }
    int p = 0;
    bool eq18 = gamma_vanishes(g, 1, tol);
    if (!eq18 && report) detail::add_witness(rep, "Gamma_1 != 0", g.at(1));
    for (size_t i = 0; eq18 && i < g.c.size(); ++i) {
        eq18 = stage_gamma_vanishes(g, static_cast<int>(i), 1, tol);
        if (!eq18 && report)
            detail::add_witness(rep, "Gamma_{" + std::to_string(i + 1) + ",1} != 0",
                                g.stage_at(static_cast<int>(i), 1));
    }
    if (eq18) {
        p = 1;
        if (g.k_max >= 2 && gamma_vanishes(g, 2, tol)) {
            p = 2;
            bool grouped2 = true;
            for (size_t m = 0; m < groups.groups.size(); ++m)
                if (!detail::grouped_bilinear_vanishes(t, g, groups.groups[m], groups.c_star[m],
                                                       2, tol)) {
                    grouped2 = false;
                    if (report)
                        detail::add_witness(
                            rep,
                            "sum b_i(alpha) Gamma_{i,2}(beta) != 0 over the group at c* = " +
                                scalar_traits<S>::str(groups.c_star[m]),
                            g.stage_at(groups.groups[m].front(), 2));
                }
            if (g.k_max >= 3 && gamma_vanishes(g, 3, tol) && grouped2) {
                p = 3;
                bool grouped3 = true;
                for (size_t m = 0; m < groups.groups.size(); ++m)
                    grouped3 = grouped3 && detail::grouped_bilinear_vanishes(
                                               t, g, groups.groups[m], groups.c_star[m], 3, tol);
                bool doubles = true;
                for (size_t m = 0; doubles && m < groups.groups.size(); ++m)
                    for (size_t l = 0; doubles && l < groups.groups.size(); ++l)
                        doubles = detail::grouped_trilinear_vanishes(
                            t, g, groups.groups[m], groups.c_star[m], groups.groups[l],
                            groups.c_star[l], tol);
                if (g.k_max >= 4 && gamma_vanishes(g, 4, tol) && grouped3 && doubles) p = 4;
            }
        } else if (g.k_max >= 2 && report) {
            detail::add_witness(rep, "Gamma_2 != 0", g.at(2));
        }
    }

    p = std::max(p, p_stage);
    if (p == p_stage && p + 1 <= g.k_max && gamma_vanishes(g, p + 1, tol)) p += 1;
    if (p + 1 <= g.k_max && gamma_vanishes(g, p + 1, tol) && p > p_stage)
        rep.note = "indeterminate above order " + std::to_string(p) +
                   ": Gamma_" + std::to_string(p + 1) +
                   " vanishes but no theorem applies (stage order " +
                   std::to_string(p_stage) + " too low)";
    rep.uniform_order = p;

    rep.discrete_order_at_1 = 0;
    const S one = scalar_traits<S>::one();
    for (int k = 1; k <= g.k_max; ++k) {
        if (!scalar_traits<S>::is_zero(g.at(k).eval(one), tol)) break;
        rep.discrete_order_at_1 = k;
    }
    return p;
}

/// Endpoint defect (k-1)! * Gamma_k(1): the classical barrier normalization
/// (so the order-4 family yields 4/15 at k = 5). Nonzero certifies that
/// discrete order k is impossible.
template <Scalar S>
[[nodiscard]] S discrete_order_barrier(const GammaSet<S>& g, int k) {
    return detail::int_factorial<S>(k - 1) * g.at(k).eval(scalar_traits<S>::one());
}

/// Leading quadrature term Gamma_{p+1} of the local error expansion. The
/// stage-feedback contribution (the D_j terms) is not computable from a
/// black-box right-hand side and is not included.
template <Scalar S>
[[nodiscard]] const Poly<S>& principal_error_poly(const GammaSet<S>& g, int p) {
    return g.at(p + 1);
}

/// Full report at a given defect depth.
template <Scalar S>
[[nodiscard]] OrderReport analyze_order(const Tableau<S>& t, int k_max, double tol = 0.0) {
    const GammaSet<S> g = build_gammas(t, k_max);
    OrderReport rep;
    uniform_order(t, g, tol, &rep);
    return rep;
}

}  // namespace tsglm
