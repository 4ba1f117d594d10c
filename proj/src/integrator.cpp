#include "tsglm/integrator.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <sstream>

#include "tsglm/methods.hpp"

namespace tsglm {

namespace {

const Tableau<double>& starter_tableau() {
    static const Tableau<double> t = to_double_tableau(make_starter());
    return t;
}

void check_finite(std::span<const double> v, const char* what, int index, double t) {
    for (double x : v)
        if (!std::isfinite(x)) {
            std::ostringstream os;
            os << "non-finite " << what << " " << (index + 1) << " at t = " << t;
            throw std::runtime_error(os.str());
        }
}

/// Synthetic record for the very first step: a constant segment carrying
/// phi(0) (the starter's one-step coefficients ignore eta_bar(0) and K_bar,
/// so only the alpha = 1 value matters).
StepRecord initial_record(const Problem& prob, double h, int stages) {
    State y0(static_cast<size_t>(prob.dim()), 0.0);
    prob.phi.phi(0.0, y0);
    DenseSegment seg;
    seg.t_start = prob.t0 - h;
    seg.h = h;
    seg.value.reserve(y0.size());
    for (double v : y0) seg.value.push_back(Poly<double>::constant(v));
    return {std::move(seg), std::vector<State>(static_cast<size_t>(stages),
                                               State(static_cast<size_t>(prob.dim()), 0.0)),
            prob.t0};
}

}  // namespace

std::pair<DenseSegment, StepRecord> step(const Tableau<double>& tab, const Problem& prob,
                                         const StepRecord& rec, const HistoryFn& hist, double h,
                                         long* f_evals) {
    if (!is_explicit(tab)) throw std::invalid_argument("step: tableau is not explicit");
    if (rec.k_prev.size() != static_cast<size_t>(tab.s))
        throw std::invalid_argument("step: record stage count does not match tableau");
    const int dim = prob.dim();
    const double sigma = rec.t_prev;

    State eta0(static_cast<size_t>(dim)), etah(static_cast<size_t>(dim));
    rec.eta_prev.eval(0.0, eta0);
    rec.eta_prev.eval(1.0, etah);

    const Poly<double> one = Poly<double>::one();
    std::vector<State> K(static_cast<size_t>(tab.s), State(static_cast<size_t>(dim), 0.0));
    std::vector<Poly<double>> overlay(static_cast<size_t>(dim));
    for (int i = 0; i < tab.s; ++i) {
        const auto ui = static_cast<size_t>(i);
        const Poly<double> one_minus_u = one - tab.u[ui];
        for (int d = 0; d < dim; ++d) {
            const auto ud = static_cast<size_t>(d);
            Poly<double> acc = one_minus_u * eta0[ud] + tab.u[ui] * etah[ud];
            for (int j = 0; j < tab.s; ++j) {
                const auto uj = static_cast<size_t>(j);
                if (!tab.a_tilde[ui][uj].is_zero())
                    acc += tab.a_tilde[ui][uj] * (h * rec.k_prev[uj][ud]);
                if (j < i && !tab.a[ui][uj].is_zero()) acc += tab.a[ui][uj] * (h * K[uj][ud]);
            }
            overlay[ud] = std::move(acc);
        }
        const double ci = tab.c[ui];
        const double ti = sigma + ci * h;
        ShiftedView view(hist, ti, overlay, sigma, h, ci);
        try {
            prob.f(ti, view, K[ui]);
        } catch (const std::exception& e) {
            std::ostringstream os;
            os << "f failed at stage " << (i + 1) << ", t = " << ti << ": " << e.what();
            throw std::runtime_error(os.str());
        }
        if (f_evals) ++*f_evals;
        check_finite(K[ui], "stage value", i, ti);
    }

    DenseSegment seg;
    seg.t_start = sigma;
    seg.h = h;
    seg.value.resize(static_cast<size_t>(dim));
    const Poly<double> one_minus_v = one - tab.v;
    for (int d = 0; d < dim; ++d) {
        const auto ud = static_cast<size_t>(d);
        Poly<double> acc = one_minus_v * eta0[ud] + tab.v * etah[ud];
        for (int j = 0; j < tab.s; ++j) {
            const auto uj = static_cast<size_t>(j);
            if (!tab.b_tilde[uj].is_zero()) acc += tab.b_tilde[uj] * (h * rec.k_prev[uj][ud]);
            if (!tab.b[uj].is_zero()) acc += tab.b[uj] * (h * K[uj][ud]);
        }
        seg.value[ud] = std::move(acc);
        check_finite(seg.value[ud].coeffs(), "dense output component", d, sigma);
    }
    StepRecord next{seg, std::move(K), sigma + h};
    return {std::move(seg), std::move(next)};
}

Solution integrate(const Tableau<double>& tab, const Problem& prob, double h,
                   const IntegrateOptions& opts) {
    if (prob.dim() < 1) throw std::invalid_argument("integrate: dim must be >= 1");
    if (!(prob.T >= prob.t0)) throw std::invalid_argument("integrate: T must be >= t0");
    if (auto v = validate(tab); !v.empty())
        throw std::invalid_argument("integrate: invalid tableau: " + v.front().condition);
    if (!is_explicit(tab)) throw std::invalid_argument("integrate: tableau is not explicit");
    for (double ci : tab.c)
        if (ci > 1.0)
            throw std::invalid_argument(
                "integrate: abscissa c_i > 1 unsupported (stage would extend past the step)");

    Solution sol{HistoryFn(prob.phi, prob.t0), {}, Solution::Status::completed, {}};
    const double span = prob.T - prob.t0;
    if (span == 0.0) return sol;
    if (!(h > 0.0)) throw std::invalid_argument("integrate: h must be positive");
    if (h > span * (1.0 + 1e-9)) throw std::invalid_argument("integrate: h exceeds T - t0");

    long n = std::lround(span / h);
    double h_last = h;
    if (n < 1) n = 1;
    if (std::abs(static_cast<double>(n) * h - span) > 1e-9 * span) {
        n = static_cast<long>(std::floor(span / h + 1e-12));
        h_last = span - static_cast<double>(n) * h;
        if (h_last > 1e-9 * h) {
            sol.stats.nonuniform_final_step = true;
            n += 1;
        } else {
            h_last = h;
        }
    }

    try {
        StepRecord rec = initial_record(prob, h, starter_tableau().s);
        const double h1 = n == 1 ? (sol.stats.nonuniform_final_step ? h_last : h) : h;
        DenseSegment seg0 =
            step(starter_tableau(), prob, rec, sol.history, h1, &sol.stats.f_evals).first;
        sol.history.append(seg0);
        ++sol.stats.steps;

        if (n > 1) {
            // previous-stage slopes for the first two-step step, recomputed
            // from the starter's dense output at t0 + c_j h
            std::vector<State> kbar(static_cast<size_t>(tab.s),
                                    State(static_cast<size_t>(prob.dim()), 0.0));
            for (int j = 0; j < tab.s; ++j) {
                const double tj = prob.t0 + tab.c[static_cast<size_t>(j)] * h;
                ShiftedView view(sol.history, tj);
                prob.f(tj, view, kbar[static_cast<size_t>(j)]);
                ++sol.stats.f_evals;
                check_finite(kbar[static_cast<size_t>(j)], "seed slope", j, tj);
            }
            StepRecord two_step_rec{seg0, std::move(kbar), prob.t0 + h1};
            for (long k = 1; k < n; ++k) {
                const bool last = k == n - 1;
                const double hk = last && sol.stats.nonuniform_final_step ? h_last : h;
                auto [seg, next] = step(tab, prob, two_step_rec, sol.history, hk,
                                        &sol.stats.f_evals);
                sol.history.append(seg);
                ++sol.stats.steps;
                two_step_rec = std::move(next);
                if (opts.prune_history)
                    sol.history.prune_before(sol.history.t_end() - prob.r() - 2.0 * h);
            }
        }
    } catch (const std::exception& e) {
        sol.status = Solution::Status::failed;
        std::ostringstream os;
        os << "step " << (sol.stats.steps + 1) << ": " << e.what();
        sol.failure = os.str();
    }
    return sol;
}

std::vector<OrderSample> observed_order(const Tableau<double>& tab, const Problem& prob,
                                        const ExactFn& exact, const std::vector<double>& h_list,
                                        int probe_per_step) {
    if (!exact) throw std::invalid_argument("observed_order: exact solution missing");
    if (h_list.size() < 3)
        throw std::invalid_argument("observed_order: need at least 3 step sizes");
    for (size_t i = 1; i < h_list.size(); ++i)
        if (std::abs(h_list[i] * 2.0 - h_list[i - 1]) > 1e-9 * h_list[i - 1])
            throw std::invalid_argument("observed_order: each h must halve the previous");
    if (probe_per_step < 1) throw std::invalid_argument("observed_order: probe must be >= 1");

    auto run_one = [&](double h) {
        OrderSample s;
        s.h = h;
        Solution sol = integrate(tab, prob, h);
        if (sol.stats.nonuniform_final_step)
            throw std::invalid_argument("observed_order: h does not divide the span");
        if (sol.status != Solution::Status::completed) {
            s.failed = true;
            s.failure = sol.failure;
            s.uniform_err = s.endpoint_err = std::numeric_limits<double>::infinity();
            return s;
        }
        const int dim = prob.dim();
        State y(static_cast<size_t>(dim)), yex(static_cast<size_t>(dim));
        double emax = 0.0;
        for (const DenseSegment& seg : sol.history.segments()) {
            for (int k = 1; k <= probe_per_step; ++k) {
                const double alpha = static_cast<double>(k) / probe_per_step;
                seg.eval(alpha, y);
                exact(seg.t_start + alpha * seg.h, yex);
                for (int d = 0; d < dim; ++d)
                    emax = std::max(emax, std::abs(y[static_cast<size_t>(d)] -
                                                   yex[static_cast<size_t>(d)]));
            }
        }
        sol.history.eval(prob.T, y);
        exact(prob.T, yex);
        double eend = 0.0;
        for (int d = 0; d < dim; ++d)
            eend = std::max(eend, std::abs(y[static_cast<size_t>(d)] - yex[static_cast<size_t>(d)]));
        s.uniform_err = emax;
        s.endpoint_err = eend;
        return s;
    };

    std::vector<std::future<OrderSample>> jobs;
    jobs.reserve(h_list.size());
    for (double h : h_list)
        jobs.push_back(std::async(std::launch::async, run_one, h));
    std::vector<OrderSample> rows;
    rows.reserve(h_list.size());
    for (auto& j : jobs) rows.push_back(j.get());
    for (size_t i = 1; i < rows.size(); ++i) {
        rows[i].rate_uniform = std::log2(rows[i - 1].uniform_err / rows[i].uniform_err);
        rows[i].rate_endpoint = std::log2(rows[i - 1].endpoint_err / rows[i].endpoint_err);
    }
    return rows;
}

}  // namespace tsglm
