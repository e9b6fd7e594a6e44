#pragma once

// From a membership function back to priors. For fixed loss coefficients
// the density that produces membership m is
//
//   pi(theta) = (b1 + b2 m(theta)) / (a1 + a2 (1 - m(theta))),
//
// which integrates to b1 c1 + b2 c2 with
//   c1 = integral 1 / (a1 + a2 (1 - m)),   c2 = integral m / (a1 + a2 (1 - m)).
// Calibration picks b2 (or, with a2 = 0, the crisp rates r1 < r2) so that
// the result is a density.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "fuzzyprior/decision.hpp"
#include "fuzzyprior/grid.hpp"

namespace fuzzyprior {

/// Accepted deviation of the inverse map's integral from one.
inline constexpr double kInverseNormalizationTol = 1e-4;

struct CalibrationConstants {
    double c1;
    double c2;
};

struct B2Calibration {
    double b2;
    CalibrationConstants constants;
    double b1_max;             // 1 / c1
    bool strictly_inside;      // min(m) > 0 and max(m) < 1
};

/// Density thresholds of the a2 = 0 solution: membership is 0 below r1,
/// 1 above r2 and affine in between.
struct CrispRates {
    double r1;
    double r2;
};

struct A2ZeroCalibration {
    CrispRates rates;
    LossParams params;
    Density prior;
};

namespace detail {

inline double inverse_denominator(double a1, double a2, double v) noexcept { return a1 + a2 * (1.0 - v); }

inline void require_positive_denominator(double a1, double a2, const Membership& m) {
    for (double v : m.function().values()) {
        if (!(inverse_denominator(a1, a2, v) > 0.0)) {
            throw Error(ErrorKind::Singularity,
                        "a1 + a2 (1 - m) vanishes: a1 = 0 requires m < 1 everywhere");
        }
    }
}

}  // namespace detail

/// The pointwise inverse map, without the normalization check.
inline GridFunction inverse_map(const LossParams& p, const Membership& m) {
    detail::require_positive_denominator(p.a1(), p.a2(), m);
    return m.function().map([&p](double v) {
        return (p.b1() + p.b2() * v) / detail::inverse_denominator(p.a1(), p.a2(), v);
    });
}

/// Prior whose optimal membership under p is m. Throws NotADensityError
/// (carrying the integral) when the inverse map does not integrate to one
/// within kInverseNormalizationTol; the result is never renormalized.
inline Density membership_to_prior(const LossParams& p, const Membership& m) {
    return Density(inverse_map(p, m), kInverseNormalizationTol);
}

inline CalibrationConstants calibration_constants(double a1, double a2, const Membership& m) {
    if (!(a1 >= 0.0 && a2 >= 0.0 && a1 + a2 > 0.0)) {
        throw Error(ErrorKind::Parameter, "a1, a2 must be >= 0 with a1 + a2 > 0");
    }
    detail::require_positive_denominator(a1, a2, m);
    const GridFunction& f = m.function();
    const double c1 = integrate(f.map([=](double v) { return 1.0 / detail::inverse_denominator(a1, a2, v); }));
    const double c2 = integrate(f.map([=](double v) { return v / detail::inverse_denominator(a1, a2, v); }));
    return {c1, c2};
}

/// Solves b1 c1 + b2 c2 = 1 for b2. Feasible b1 lie in [0, 1/c1].
inline B2Calibration calibrate_b2(double a1, double a2, double b1, const Membership& m) {
    if (!(b1 >= 0.0)) throw Error(ErrorKind::Parameter, "b1 must be >= 0");
    const CalibrationConstants cc = calibration_constants(a1, a2, m);
    if (!(cc.c2 > 0.0)) {
        throw Error(ErrorKind::Degenerate, "membership integrates to zero; no b2 normalizes the prior");
    }
    const double b1_max = 1.0 / cc.c1;
    // a few ulps of slack so that b1 computed as 1/c1 itself is accepted
    if (b1 > b1_max * (1.0 + 8 * std::numeric_limits<double>::epsilon())) {
        throw InfeasibleError("b1 = " + std::to_string(b1) + " exceeds its bound 1/c1 = " +
                                  std::to_string(b1_max),
                              b1_max);
    }
    const double b2 = std::max(0.0, (1.0 - b1 * cc.c1) / cc.c2);
    const auto v = m.function().values();
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return {b2, cc, b1_max, *lo > 0.0 && *hi < 1.0};
}

/// The a2 = 0 parametrization. With r1 < 1/length the affine prior
/// (r2 - r1) m + r1 is a density for exactly one r2; the returned loss
/// coefficients realize (r1, r2) with b2 fixed to 1.
inline A2ZeroCalibration calibrate_a2zero(double r1, const Membership& m) {
    const double length = m.function().domain().length();
    if (!(r1 >= 0.0)) throw Error(ErrorKind::Parameter, "r1 must be >= 0");
    if (!(r1 < 1.0 / length)) {
        throw InfeasibleError("r1 = " + std::to_string(r1) + " must be below 1/length = " +
                                  std::to_string(1.0 / length),
                              1.0 / length);
    }
    const double mass = integrate(m.function());
    if (!(mass > 0.0)) {
        throw Error(ErrorKind::Degenerate, "membership integrates to zero; no r2 normalizes the prior");
    }
    const double r2 = r1 + (1.0 - r1 * length) / mass;
    const double spread = r2 - r1;
    LossParams params(1.0 / spread, 0.0, r1 / spread, 1.0);
    Density prior(m.function().map([=](double v) { return spread * v + r1; }));
    return {{r1, r2}, params, std::move(prior)};
}

/// The three sample-wise clauses of family membership, on raw values:
/// at most r1 where m = 0, the affine prior (r2 - r1) m + r1 where
/// 0 < m < 1, at least r2 where m = 1.
inline bool family_clauses_hold(const GridFunction& values, const Membership& m, const CrispRates& rates, double tol) {
    require_same_grid(values, m.function());
    if (!(tol >= 0.0)) throw Error(ErrorKind::Parameter, "tolerance must be >= 0");
    for (std::size_t k = 0; k < m.size(); ++k) {
        const double v = m[k];
        const double density = values[k];
        if (v == 0.0) {
            if (density > rates.r1 + tol) return false;
        } else if (v == 1.0) {
            if (density < rates.r2 - tol) return false;
        } else if (std::abs(density - ((rates.r2 - rates.r1) * v + rates.r1)) > tol) {
            return false;
        }
    }
    return true;
}

/// Whether prior is one of the densities sharing m as their optimal
/// membership under the crisp rates. Density construction already
/// guarantees normalization.
inline bool in_prior_family(const Density& prior, const Membership& m, const CrispRates& rates, double tol) {
    return family_clauses_hold(prior.function(), m, rates, tol);
}

enum class InverseRegime {
    Unique,    // values strictly inside (0, 1)
    Family,    // {m = 0} and {m = 1} both have positive measure
    Boundary,  // touches 0 or 1, but not on two positive-measure sets
};

inline const char* to_string(InverseRegime r) noexcept {
    switch (r) {
    case InverseRegime::Unique: return "unique";
    case InverseRegime::Family: return "family";
    case InverseRegime::Boundary: return "boundary";
    }
    return "?";
}

struct UniquenessReport {
    double min_value;
    double max_value;
    bool strictly_inside;
    double zero_measure;  // length of {m = 0} under the interpolant
    double one_measure;   // length of {m = 1} under the interpolant
    InverseRegime regime;
};

inline UniquenessReport uniqueness_report(const Membership& m) {
    const GridFunction& f = m.function();
    double zero = 0.0;
    double one = 0.0;
    for (std::size_t k = 0; k + 1 < f.size(); ++k) {
        const double h = f.abscissa(k + 1) - f.abscissa(k);
        if (f[k] == 0.0 && f[k + 1] == 0.0) zero += h;
        if (f[k] == 1.0 && f[k + 1] == 1.0) one += h;
    }
    const double lo = f.min();
    const double hi = f.max();
    const bool inside = lo > 0.0 && hi < 1.0;
    InverseRegime regime = InverseRegime::Boundary;
    if (inside) {
        regime = InverseRegime::Unique;
    } else if (zero > 0.0 && one > 0.0) {
        regime = InverseRegime::Family;
    }
    return {lo, hi, inside, zero, one, regime};
}

}  // namespace fuzzyprior
