#pragma once

#include <functional>
#include <string>

#include "tsglm/history.hpp"
#include "tsglm/tableau.hpp"

namespace tsglm {

/// An RFDE instance y'(t) = f(t, y_t) on [t0, T] with initial function phi
/// on [-r, 0]. The right-hand side receives the shifted function as an
/// evaluable view, not a sampled array, and must be re-entrant across
/// concurrently running integrations.
struct Problem {
    std::function<void(double t, const ShiftedView& xt, std::span<double> dydt)> f;
    InitialFunction phi;
    double t0 = 0.0;
    double T = 0.0;
    [[nodiscard]] int dim() const noexcept { return phi.dim; }
    [[nodiscard]] double r() const noexcept { return phi.r; }
};

/// The data one step hands to the next: the previous dense segment
/// (eta_bar over [0, h]) and the previous stage values K_bar.
struct StepRecord {
    DenseSegment eta_prev;
    std::vector<State> k_prev;  ///< size s of the active tableau
    double t_prev = 0.0;        ///< sigma of the step about to run
};

struct Stats {
    long steps = 0;
    long f_evals = 0;
    bool nonuniform_final_step = false;
};

struct Solution {
    enum class Status { completed, failed };
    HistoryFn history;
    Stats stats;
    Status status = Status::completed;
    std::string failure;  ///< reason when status == failed
};

struct IntegrateOptions {
    bool prune_history = false;  ///< drop segments ending before t - r - 2h
};

/// One TSGLM step from sigma = rec.t_prev with stepsize h: builds the stage
/// overlays in order (explicit tableaux only), evaluates the stage values
/// K_i = f(sigma + c_i h, Y^i), and assembles the dense output segment.
/// `f_evals`, when given, is incremented per f call. Throws on f failure or
/// non-finite stage/output values (message carries stage index and time).
[[nodiscard]] std::pair<DenseSegment, StepRecord> step(const Tableau<double>& tab,
                                                       const Problem& prob,
                                                       const StepRecord& rec,
                                                       const HistoryFn& hist, double h,
                                                       long* f_evals = nullptr);

/// Fixed-step integration over [t0, T]: the first step runs the built-in
/// starter, whose dense output also seeds the previous-stage values for the
/// first genuine two-step step; the rest is step() iterated. If h does not
/// divide T - t0 (1e-9 relative), the final step shrinks to fit and the run
/// is flagged nonuniform_final_step. Tableaux with any c_i > 1 are
/// rejected. Step failures are reported via Solution::status.
[[nodiscard]] Solution integrate(const Tableau<double>& tab, const Problem& prob, double h,
                                 const IntegrateOptions& opts = {});

/// One row of a convergence study.
struct OrderSample {
    double h = 0.0;
    double uniform_err = 0.0;   ///< max over a probe grid of |eta - y_exact|, max norm
    double endpoint_err = 0.0;  ///< |eta(T) - y_exact(T)|, max norm
    double rate_uniform = 0.0;  ///< log2(err(2h)/err(h)); 0 for the first row
    double rate_endpoint = 0.0;
    bool failed = false;        ///< integration did not complete
    std::string failure;
};

using ExactFn = std::function<void(double t, std::span<double> y)>;

/// Convergence study over a halving h-list (at least 3 entries, each half
/// the previous). Integrations across the list run concurrently; rows come
/// back in h order. Failed integrations get infinite errors. Runs with a
/// shrunk final step are excluded (invalid_argument) since the two-step
/// formulas assume a uniform h.
[[nodiscard]] std::vector<OrderSample> observed_order(const Tableau<double>& tab,
                                                      const Problem& prob, const ExactFn& exact,
                                                      const std::vector<double>& h_list,
                                                      int probe_per_step = 33);

}  // namespace tsglm
