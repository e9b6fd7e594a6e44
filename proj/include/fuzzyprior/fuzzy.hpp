#pragma once

// Elementary fuzzy-set operations on sampled membership functions:
// gamma-cuts, core, support, complement, crispness and convexity.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <vector>

#include "fuzzyprior/grid.hpp"

namespace fuzzyprior {

struct ClosedInterval {
    double lo;
    double hi;

    double width() const noexcept { return hi - lo; }
    friend bool operator==(const ClosedInterval&, const ClosedInterval&) = default;
};

/// Finite union of closed intervals, sorted and pairwise separated
/// (previous.hi < next.lo). Single points are allowed.
class CutSet {
public:
    CutSet() = default;

    /// Appends [lo, hi], merging with the last interval when they touch.
    /// Intervals must arrive in nondecreasing order of lo.
    void append(double lo, double hi) {
        if (!intervals_.empty() && lo <= intervals_.back().hi) {
            intervals_.back().hi = std::max(intervals_.back().hi, hi);
            return;
        }
        intervals_.push_back({lo, hi});
    }

    const std::vector<ClosedInterval>& intervals() const noexcept { return intervals_; }
    bool empty() const noexcept { return intervals_.empty(); }
    std::size_t size() const noexcept { return intervals_.size(); }

    double measure() const noexcept {
        double total = 0.0;
        for (const auto& iv : intervals_) total += iv.width();
        return total;
    }

    bool contains(double x) const noexcept {
        return std::any_of(intervals_.begin(), intervals_.end(),
                           [x](const ClosedInterval& iv) { return iv.lo <= x && x <= iv.hi; });
    }

    /// Every interval of *this lies inside some interval of other, with
    /// endpoints allowed to overshoot by slack.
    bool subset_of(const CutSet& other, double slack = 0.0) const {
        return std::all_of(intervals_.begin(), intervals_.end(), [&](const ClosedInterval& iv) {
            return std::any_of(other.intervals_.begin(), other.intervals_.end(),
                               [&](const ClosedInterval& o) {
                                   return o.lo - slack <= iv.lo && iv.hi <= o.hi + slack;
                               });
        });
    }

    friend bool operator==(const CutSet&, const CutSet&) = default;

private:
    std::vector<ClosedInterval> intervals_;
};

/// {theta : m(theta) >= gamma - tol} under the piecewise-linear interpolant.
/// Crossing points inside a cell are found by inverting the linear piece.
/// A positive tol absorbs rounding when gamma equals a peak value that
/// falls between or on grid points.
inline CutSet gamma_cut(const Membership& m, double gamma, double tol = 0.0) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw Error(ErrorKind::Parameter, "gamma must lie in [0, 1]");
    }
    if (!(tol >= 0.0)) throw Error(ErrorKind::Parameter, "cut tolerance must be >= 0");

    const GridFunction& f = m.function();
    const double level = gamma - tol;
    CutSet cut;
    for (std::size_t k = 0; k + 1 < f.size(); ++k) {
        const double v0 = f[k];
        const double v1 = f[k + 1];
        const double x0 = f.abscissa(k);
        const double x1 = f.abscissa(k + 1);
        const bool in0 = v0 >= level;
        const bool in1 = v1 >= level;
        if (in0 && in1) {
            cut.append(x0, x1);
        } else if (in0) {
            cut.append(x0, x0 + (v0 - level) / (v0 - v1) * (x1 - x0));
        } else if (in1) {
            cut.append(x1 - (v1 - level) / (v1 - v0) * (x1 - x0), x1);
        }
    }
    return cut;
}

inline CutSet core(const Membership& m) { return gamma_cut(m, 1.0); }

/// Closure of {theta : m(theta) > 0}. The open set itself is not
/// representable as closed intervals; the two differ only at endpoints.
inline CutSet support(const Membership& m) {
    const GridFunction& f = m.function();
    CutSet cut;
    for (std::size_t k = 0; k + 1 < f.size(); ++k) {
        if (f[k] > 0.0 || f[k + 1] > 0.0) cut.append(f.abscissa(k), f.abscissa(k + 1));
    }
    return cut;
}

inline Membership complement(const Membership& m) {
    return Membership(m.function().map([](double v) { return 1.0 - v; }));
}

inline bool is_crisp(const Membership& m, double tol = 0.0) {
    if (!(tol >= 0.0)) throw Error(ErrorKind::Parameter, "crispness tolerance must be >= 0");
    const auto v = m.function().values();
    return std::all_of(v.begin(), v.end(), [tol](double x) {
        return std::abs(x) <= tol || std::abs(x - 1.0) <= tol;
    });
}

/// Every gamma-cut is a single interval (or empty). Cut topology of a
/// piecewise-linear function only changes at sample values, so those are
/// the only levels checked.
inline bool is_convex_fuzzy(const Membership& m) {
    const auto v = m.function().values();
    const std::set<double> levels(v.begin(), v.end());
    return std::all_of(levels.begin(), levels.end(),
                       [&m](double gamma) { return gamma_cut(m, gamma).size() <= 1; });
}

}  // namespace fuzzyprior
