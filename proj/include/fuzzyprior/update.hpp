#pragma once

// Updating a membership function with data: membership -> prior through
// the inverse map, prior -> posterior by Bayes' rule on the grid, and
// posterior -> membership with the same loss coefficients.

#include <cmath>
#include <utility>

#include "fuzzyprior/decision.hpp"
#include "fuzzyprior/grid.hpp"
#include "fuzzyprior/inverse.hpp"

namespace fuzzyprior {

/// Nonnegative, not identically zero, pointwise likelihood.
class Likelihood {
public:
    explicit Likelihood(GridFunction f) : f_(std::move(f)) {
        for (double v : f_.values()) {
            if (v < 0.0) throw Error(ErrorKind::Parameter, "likelihood values must be nonnegative");
        }
        if (!(f_.max() > 0.0)) throw Error(ErrorKind::Parameter, "likelihood is identically zero");
    }

    const GridFunction& function() const noexcept { return f_; }
    double operator[](std::size_t k) const { return f_[k]; }

private:
    GridFunction f_;
};

/// theta^successes (1 - theta)^failures; the domain must lie within [0, 1].
inline Likelihood binomial_likelihood(const Interval& domain, std::size_t n, double successes, double failures) {
    if (!(successes >= 0.0 && failures >= 0.0)) {
        throw Error(ErrorKind::Parameter, "binomial counts must be >= 0");
    }
    if (domain.lo() < 0.0 || domain.hi() > 1.0) {
        throw Error(ErrorKind::Parameter, "binomial likelihood needs a domain inside [0, 1]");
    }
    return Likelihood(GridFunction::sample(domain, n, [=](double t) {
        return std::pow(t, successes) * std::pow(1.0 - t, failures);
    }));
}

/// exp(-(theta - mean)^2 / (2 sd^2)), unnormalized.
inline Likelihood gaussian_likelihood(const Interval& domain, std::size_t n, double mean, double sd) {
    if (!(sd > 0.0) || !std::isfinite(mean)) {
        throw Error(ErrorKind::Parameter, "gaussian likelihood needs finite mean and sd > 0");
    }
    return Likelihood(GridFunction::sample(domain, n, [=](double t) {
        const double z = (t - mean) / sd;
        return std::exp(-0.5 * z * z);
    }));
}

inline Density posterior(const Density& prior, const Likelihood& lik) {
    const GridFunction joint = zip(prior.function(), lik.function(), [](double p, double l) { return p * l; });
    const double evidence = integrate(joint);
    if (!(evidence > 0.0)) {
        throw Error(ErrorKind::Degenerate, "evidence integral is zero: likelihood vanishes on the prior's support");
    }
    return Density(joint.map([evidence](double v) { return v / evidence; }));
}

inline Membership fuzzy_update(const Membership& m, const LossParams& p, const Likelihood& lik) {
    return prior_to_membership(p, posterior(membership_to_prior(p, m), lik));
}

}  // namespace fuzzyprior
