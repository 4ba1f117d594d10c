#include "tsglm/history.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tsglm {

namespace {

[[noreturn]] void domain_error_at(double t, double lo, double hi) {
    std::ostringstream os;
    os << "history query t = " << t << " outside domain [" << lo << ", " << hi << "]";
    throw std::domain_error(os.str());
}

}  // namespace

HistoryFn::HistoryFn(InitialFunction phi, double t0) : phi_(std::move(phi)), t0_(t0) {
    if (!(phi_.r >= 0.0) || !std::isfinite(phi_.r))
        throw std::invalid_argument("HistoryFn: delay horizon must be finite and >= 0");
    if (phi_.dim < 1) throw std::invalid_argument("HistoryFn: dim must be >= 1");
}

void HistoryFn::eval(double t, std::span<double> out) const {
    const double hi = t_end();
    const double slop = 1e-9 * (1.0 + phi_.r + (hi - t0_));
    if (t < t0_ - phi_.r - slop || t > hi + slop) domain_error_at(t, t0_ - phi_.r, hi);
    if (t <= t0_ || segments_.empty()) {
        phi_.phi(std::clamp(t - t0_, -phi_.r, 0.0), out);
        return;
    }
    // first segment whose (t_start, t_end] contains t
    auto it = std::lower_bound(segments_.begin(), segments_.end(), t,
                               [](const DenseSegment& s, double x) { return s.t_end() < x; });
    if (it == segments_.end()) it = std::prev(segments_.end());
    if (t <= it->t_start && it != segments_.begin()) --it;  // seams belong to the left segment
    if (it->t_start > t + slop) domain_error_at(t, t0_ - phi_.r, hi);  // pruned-away region
    const double alpha = std::clamp((t - it->t_start) / it->h, 0.0, 1.0);
    it->eval(alpha, out);
}

double HistoryFn::eval1(double t) const {
    double y = 0.0;
    eval(t, std::span<double>(&y, 1));
    return y;
}

void HistoryFn::append(DenseSegment seg) {
    if (seg.dim() != phi_.dim) throw std::invalid_argument("append: dimension mismatch");
    if (!(seg.h > 0.0)) throw std::invalid_argument("append: segment width must be positive");
    const double expected = t_end();
    if (std::abs(seg.t_start - expected) > 1e-9 * std::max(1.0, std::abs(expected))) {
        std::ostringstream os;
        os << "append: segment gap, expected t_start = " << expected << ", got " << seg.t_start;
        throw std::invalid_argument(os.str());
    }
    if (!segments_.empty()) {
        const DenseSegment& prev = segments_.back();
        for (int d = 0; d < seg.dim(); ++d) {
            const double left = prev.value[static_cast<size_t>(d)].eval(1.0);
            const double right = seg.value[static_cast<size_t>(d)].eval(0.0);
            if (std::abs(left - right) > 1e-12 * (1.0 + std::abs(left))) {
                std::ostringstream os;
                os << "continuity violation at t = " << seg.t_start << " component " << d
                   << ": left " << left << " vs right " << right;
                throw std::runtime_error(os.str());
            }
        }
    }
    segments_.push_back(std::move(seg));
}

void HistoryFn::prune_before(double t_min) {
    auto it = segments_.begin();
    while (it != segments_.end() && it->t_end() < t_min) ++it;
    pruned_ += static_cast<size_t>(std::distance(segments_.begin(), it));
    segments_.erase(segments_.begin(), it);
}

void ShiftedView::eval(double theta, std::span<double> out) const {
    const double r = base_->r();
    const double slop = 1e-9 * (1.0 + r);
    if (theta > slop)
        throw std::domain_error("shifted-function query with theta > 0 (future value)");
    if (theta < -r - slop)
        throw std::domain_error("shifted-function query with theta < -r");
    const double t = T_ + std::min(theta, 0.0);
    if (!overlay_.empty() && t > sigma_) {
        const double alpha = std::clamp((t - sigma_) / h_, 0.0, alpha_max_);
        for (size_t d = 0; d < overlay_.size(); ++d) out[d] = overlay_[d].eval(alpha);
        return;
    }
    base_->eval(t, out);
}

double ShiftedView::eval1(double theta) const {
    double y = 0.0;
    eval(theta, std::span<double>(&y, 1));
    return y;
}

}  // namespace tsglm
