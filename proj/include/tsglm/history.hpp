#pragma once

#include <functional>
#include <span>
#include <vector>

#include "tsglm/poly.hpp"

namespace tsglm {

using State = std::vector<double>;

/// The initial function phi on [-r, 0]. Kept as a callable, never sampled:
/// the exactness of pre-history evaluations matters for order measurement.
/// Continuity of phi on [-r, 0] is the caller's contract.
struct InitialFunction {
    std::function<void(double theta, std::span<double> out)> phi;
    double r = 0.0;  ///< delay horizon, >= 0 and finite
    int dim = 1;
};

/// One step's dense output: per-component polynomials in the local
/// parameter alpha = (t - t_start)/h over [0, 1].
struct DenseSegment {
    double t_start = 0.0;
    double h = 0.0;
    std::vector<Poly<double>> value;  ///< size dim

    [[nodiscard]] int dim() const noexcept { return static_cast<int>(value.size()); }
    [[nodiscard]] double t_end() const noexcept { return t_start + h; }
    void eval(double alpha, std::span<double> out) const {
        for (size_t d = 0; d < value.size(); ++d) out[d] = value[d].eval(alpha);
    }
};

/// Piecewise-polynomial approximate solution over [t0 - r, t_end]:
/// phi before t0, contiguous dense segments after. Queries outside the
/// domain throw std::domain_error. Appends enforce contiguity and seam
/// continuity (the step construction makes seams exact; a mismatch signals
/// a method or implementation bug).
///
/// Value semantics: copies are independent snapshots; readers holding an
/// old copy are unaffected by later appends.
class HistoryFn {
public:
    HistoryFn(InitialFunction phi, double t0);

    void eval(double t, std::span<double> out) const;
    [[nodiscard]] double eval1(double t) const;  ///< dim == 1 convenience

    /// Append the next dense segment; throws on a time gap or a seam
    /// discontinuity beyond 1e-12 relative.
    void append(DenseSegment seg);

    /// Drop whole segments ending before t_min (memory-bounded mode).
    void prune_before(double t_min);

    [[nodiscard]] double t0() const noexcept { return t0_; }
    [[nodiscard]] double r() const noexcept { return phi_.r; }
    [[nodiscard]] int dim() const noexcept { return phi_.dim; }
    [[nodiscard]] double t_end() const noexcept {
        return segments_.empty() ? t0_ : segments_.back().t_end();
    }
    [[nodiscard]] const std::vector<DenseSegment>& segments() const noexcept { return segments_; }
    [[nodiscard]] size_t pruned_count() const noexcept { return pruned_; }

private:
    InitialFunction phi_;
    double t0_ = 0.0;
    std::vector<DenseSegment> segments_;
    size_t pruned_ = 0;
};

/// The shifted function x_T(theta) = x(T + theta), theta in [-r, 0], which
/// right-hand sides evaluate. During a step it carries the current stage
/// overlay: arguments in (sigma, sigma + c_i h] route to the overlay
/// polynomial, everything at or before sigma routes to the base history
/// (the two agree at the seam by construction). theta = 0 is allowed and
/// hits the overlay at the current stage abscissa, which is well defined
/// for explicit tableaux.
class ShiftedView {
public:
    /// Pure history view at time T (no overlay).
    ShiftedView(const HistoryFn& base, double T)
        : base_(&base), T_(T) {}

    /// Stage view: overlay polynomials on (sigma, sigma + alpha_max * h].
    ShiftedView(const HistoryFn& base, double T, std::span<const Poly<double>> overlay,
                double sigma, double h, double alpha_max)
        : base_(&base), T_(T), overlay_(overlay), sigma_(sigma), h_(h), alpha_max_(alpha_max) {}

    void eval(double theta, std::span<double> out) const;
    [[nodiscard]] double eval1(double theta) const;  ///< dim == 1 convenience

    [[nodiscard]] double time() const noexcept { return T_; }
    [[nodiscard]] double delay_horizon() const noexcept { return base_->r(); }
    [[nodiscard]] int dim() const noexcept { return base_->dim(); }

private:
    const HistoryFn* base_;
    double T_;
    std::span<const Poly<double>> overlay_{};
    double sigma_ = 0.0;
    double h_ = 1.0;
    double alpha_max_ = 0.0;
};

}  // namespace tsglm
