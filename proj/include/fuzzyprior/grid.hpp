#pragma once

// Bounded-interval functions sampled on a uniform grid. Densities and
// membership functions are both stored this way and share quadrature,
// interpolation and root finding.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fuzzyprior/error.hpp"

namespace fuzzyprior {

inline constexpr std::size_t kDefaultGridSize = 2001;
inline constexpr double kNormalizationTol = 1e-6;

class Interval {
public:
    Interval(double lo, double hi) : lo_(lo), hi_(hi) {
        if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) {
            throw Error(ErrorKind::Parameter, "interval requires finite lo < hi");
        }
    }

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    double length() const noexcept { return hi_ - lo_; }
    bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }

    friend bool operator==(const Interval&, const Interval&) = default;

private:
    double lo_;
    double hi_;
};

class GridFunction {
public:
    GridFunction(Interval domain, std::vector<double> values)
        : domain_(domain), values_(std::move(values)) {
        if (values_.size() < 3 || values_.size() % 2 == 0) {
            throw Error(ErrorKind::Parameter,
                        "grid size must be odd and >= 3, got " + std::to_string(values_.size()));
        }
        for (double v : values_) {
            if (!std::isfinite(v)) {
                throw Error(ErrorKind::Parameter, "grid values must be finite");
            }
        }
    }

    /// Samples f at the n grid abscissae of domain.
    template <class F>
    static GridFunction sample(Interval domain, std::size_t n, F&& f) {
        if (n < 3 || n % 2 == 0) {
            throw Error(ErrorKind::Parameter,
                        "grid size must be odd and >= 3, got " + std::to_string(n));
        }
        std::vector<double> values(n);
        for (std::size_t k = 0; k < n; ++k) {
            values[k] = f(abscissa(domain, n, k));
        }
        return GridFunction(domain, std::move(values));
    }

    static GridFunction constant(Interval domain, std::size_t n, double c) {
        return sample(domain, n, [c](double) { return c; });
    }

    static double abscissa(const Interval& domain, std::size_t n, std::size_t k) noexcept {
        if (k + 1 == n) return domain.hi();
        return domain.lo() + static_cast<double>(k) * (domain.length() / static_cast<double>(n - 1));
    }

    const Interval& domain() const noexcept { return domain_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t k) const { return values_[k]; }
    double step() const noexcept { return domain_.length() / static_cast<double>(size() - 1); }
    double abscissa(std::size_t k) const noexcept { return abscissa(domain_, size(), k); }

    bool same_grid(const GridFunction& other) const noexcept {
        return domain_ == other.domain_ && size() == other.size();
    }

    /// Linear interpolation; exact at grid abscissae.
    double operator()(double theta) const {
        if (!domain_.contains(theta)) {
            throw Error(ErrorKind::Domain, "evaluation point " + std::to_string(theta) +
                                               " outside [" + std::to_string(domain_.lo()) + ", " +
                                               std::to_string(domain_.hi()) + "]");
        }
        const std::size_t last = size() - 1;
        const double t = (theta - domain_.lo()) / step();
        const auto nearest = std::min<std::size_t>(static_cast<std::size_t>(std::llround(t)), last);
        if (abscissa(nearest) == theta) return values_[nearest];

        auto k = std::min<std::size_t>(static_cast<std::size_t>(std::floor(t)), last - 1);
        while (k > 0 && abscissa(k) > theta) --k;
        while (k + 1 < last && abscissa(k + 1) < theta) ++k;
        const double x0 = abscissa(k);
        const double x1 = abscissa(k + 1);
        const double frac = (theta - x0) / (x1 - x0);
        return values_[k] + frac * (values_[k + 1] - values_[k]);
    }

    double max() const noexcept { return *std::max_element(values_.begin(), values_.end()); }
    double min() const noexcept { return *std::min_element(values_.begin(), values_.end()); }

    /// Applies op to every sample, keeping the grid.
    template <class Op>
    GridFunction map(Op&& op) const {
        std::vector<double> out(size());
        std::transform(values_.begin(), values_.end(), out.begin(), op);
        return GridFunction(domain_, std::move(out));
    }

private:
    Interval domain_;
    std::vector<double> values_;
};

inline void require_same_grid(const GridFunction& f, const GridFunction& g) {
    if (!f.same_grid(g)) {
        throw Error(ErrorKind::GridMismatch, "functions are sampled on different grids");
    }
}

/// Pointwise combination of two functions on the same grid.
template <class Op>
GridFunction zip(const GridFunction& f, const GridFunction& g, Op&& op) {
    require_same_grid(f, g);
    std::vector<double> out(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) out[k] = op(f[k], g[k]);
    return GridFunction(f.domain(), std::move(out));
}

inline double evaluate(const GridFunction& f, double theta) { return f(theta); }

/// Composite Simpson rule over the full grid.
inline double integrate(const GridFunction& f) {
    const auto v = f.values();
    const std::size_t last = v.size() - 1;
    double odd = 0.0;
    double even = 0.0;
    for (std::size_t k = 1; k < last; k += 2) odd += v[k];
    for (std::size_t k = 2; k < last; k += 2) even += v[k];
    return f.step() / 3.0 * (v.front() + v.back() + 4.0 * odd + 2.0 * even);
}

/// Bisection for g(x) = target on [lo, hi]; g must be monotone there.
/// Stops once |g(x) - target| <= tol and the bracket is no wider than
/// tol * max(1, |x|).
template <class F>
double solve_root(F&& g, double lo, double hi, double target, double tol) {
    if (!(lo < hi) || !(tol > 0.0)) {
        throw Error(ErrorKind::Parameter, "solve_root requires lo < hi and tol > 0");
    }
    double f_lo = g(lo) - target;
    const double f_hi = g(hi) - target;
    if (std::abs(f_lo) <= tol) return lo;
    if (std::abs(f_hi) <= tol) return hi;
    if ((f_lo < 0.0) == (f_hi < 0.0)) {
        throw Error(ErrorKind::Bracketing, "solve_root: no sign change on the bracket");
    }
    double mid = 0.5 * (lo + hi);
    for (int iter = 0; iter < 2000; ++iter) {
        mid = 0.5 * (lo + hi);
        const double f_mid = g(mid) - target;
        if (std::abs(f_mid) <= tol && (hi - lo) <= tol * std::max(1.0, std::abs(mid))) break;
        if (mid <= lo || mid >= hi) break;  // bracket exhausted at double resolution
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return mid;
}

/// Nonnegative grid function integrating to one.
class Density {
public:
    explicit Density(GridFunction f, double tol = kNormalizationTol) : f_(std::move(f)) {
        for (double v : f_.values()) {
            if (v < 0.0) throw Error(ErrorKind::Parameter, "density values must be nonnegative");
        }
        const double total = integrate(f_);
        if (std::abs(total - 1.0) > tol) throw NotADensityError(total);
    }

    /// Divides a nonnegative function by its integral.
    static Density normalize(const GridFunction& f) {
        for (double v : f.values()) {
            if (v < 0.0) throw Error(ErrorKind::Parameter, "density values must be nonnegative");
        }
        const double total = integrate(f);
        if (!(total > 0.0)) throw Error(ErrorKind::Degenerate, "cannot normalize a zero-mass function");
        return Density(f.map([total](double v) { return v / total; }));
    }

    const GridFunction& function() const noexcept { return f_; }
    double operator()(double theta) const { return f_(theta); }
    double operator[](std::size_t k) const { return f_[k]; }
    std::size_t size() const noexcept { return f_.size(); }

private:
    GridFunction f_;
};

/// Grid function with every sample in [0, 1].
class Membership {
public:
    explicit Membership(GridFunction f) : f_(std::move(f)) {
        for (double v : f_.values()) {
            if (v < 0.0 || v > 1.0) {
                throw Error(ErrorKind::Parameter,
                            "membership values must lie in [0, 1], got " + std::to_string(v));
            }
        }
    }

    const GridFunction& function() const noexcept { return f_; }
    double operator()(double theta) const { return f_(theta); }
    double operator[](std::size_t k) const { return f_[k]; }
    std::size_t size() const noexcept { return f_.size(); }

private:
    GridFunction f_;
};

}  // namespace fuzzyprior
