#pragma once

// The no-data decision problem that turns a density into a membership
// function. For loss coefficients (a1, a2, b1, b2) the loss of action A at
// theta is
//
//   a1 (1 - I_A(theta)) + a2/2 (1 - I_A(theta))^2
//     + integral over the domain of { b1 I_A + b2/2 I_A^2 },
//
// and the Bayes action under a density pi minimizes, at each theta, the
// quadratic  [a1 (1-v) + a2/2 (1-v)^2] pi(theta) + b1 v + b2/2 v^2  over v.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fuzzyprior/grid.hpp"

namespace fuzzyprior {

class LossParams {
public:
    LossParams(double a1, double a2, double b1, double b2) : a1_(a1), a2_(a2), b1_(b1), b2_(b2) {
        const bool finite = std::isfinite(a1) && std::isfinite(a2) && std::isfinite(b1) && std::isfinite(b2);
        if (!finite || a1 < 0.0 || a2 < 0.0 || b1 < 0.0 || b2 < 0.0) {
            throw Error(ErrorKind::Parameter, "loss coefficients must be finite and >= 0");
        }
        if (!(a1 + a2 > 0.0)) throw Error(ErrorKind::Parameter, "one of a1, a2 must be positive");
        if (!(b1 + b2 > 0.0)) throw Error(ErrorKind::Parameter, "one of b1, b2 must be positive");
    }

    double a1() const noexcept { return a1_; }
    double a2() const noexcept { return a2_; }
    double b1() const noexcept { return b1_; }
    double b2() const noexcept { return b2_; }

    LossParams scaled(double lambda) const {
        if (!(lambda > 0.0)) throw Error(ErrorKind::Parameter, "scale factor must be positive");
        return {lambda * a1_, lambda * a2_, lambda * b1_, lambda * b2_};
    }

    /// Both quadratic terms absent: the optimal action is crisp.
    bool is_linear() const noexcept { return a2_ == 0.0 && b2_ == 0.0; }

private:
    double a1_;
    double a2_;
    double b1_;
    double b2_;
};

/// Density levels separating the zero, graded and full-membership branches.
/// upper is +infinity when a1 = 0.
struct Thresholds {
    double lower;
    double upper;
};

inline Thresholds thresholds(const LossParams& p) noexcept {
    const double lower = p.b1() / (p.a1() + p.a2());
    const double upper = p.a1() > 0.0 ? (p.b1() + p.b2()) / p.a1()
                                      : std::numeric_limits<double>::infinity();
    return {lower, upper};
}

/// The graded-branch formula, without branch selection.
inline double graded_membership(const LossParams& p, double density) noexcept {
    return ((p.a1() + p.a2()) * density - p.b1()) / (p.a2() * density + p.b2());
}

/// Optimal membership value at a point where the density equals `density`.
/// Values exactly at a threshold take the graded branch. In the linear
/// corner (a2 = b2 = 0) the tie at density = b1/a1 resolves to 1.
inline double optimal_membership(const LossParams& p, double density) noexcept {
    if (p.is_linear()) return density >= p.b1() / p.a1() ? 1.0 : 0.0;
    const Thresholds t = thresholds(p);
    if (density < t.lower) return 0.0;
    if (density > t.upper) return 1.0;
    return std::clamp(graded_membership(p, density), 0.0, 1.0);
}

/// The pointwise objective minimized by optimal_membership.
inline double pointwise_objective(const LossParams& p, double density, double v) noexcept {
    const double miss = 1.0 - v;
    return (p.a1() * miss + 0.5 * p.a2() * miss * miss) * density + p.b1() * v + 0.5 * p.b2() * v * v;
}

/// Size penalty: integral of b1 m + b2/2 m^2 over the domain.
inline double size_penalty(const LossParams& p, const Membership& m) {
    return integrate(m.function().map([&p](double v) { return p.b1() * v + 0.5 * p.b2() * v * v; }));
}

inline double loss(const LossParams& p, const Membership& m, double theta) {
    const double miss = 1.0 - m(theta);
    return p.a1() * miss + 0.5 * p.a2() * miss * miss + size_penalty(p, m);
}

/// Expected loss of m under prior, assuming the prior integrates to one.
inline double risk(const LossParams& p, const Membership& m, const Density& prior) {
    return integrate(zip(m.function(), prior.function(),
                         [&p](double v, double density) { return pointwise_objective(p, density, v); }));
}

inline Membership prior_to_membership(const LossParams& p, const Density& prior) {
    return Membership(prior.function().map([&p](double density) { return optimal_membership(p, density); }));
}

}  // namespace fuzzyprior
