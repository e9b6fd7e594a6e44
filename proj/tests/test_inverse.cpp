#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "fuzzyprior/decision.hpp"
#include "fuzzyprior/gallery.hpp"
#include "fuzzyprior/inverse.hpp"
#include "generators.hpp"

namespace fp = fuzzyprior;
using fp::Density;
using fp::GridFunction;
using fp::Interval;
using fp::LossParams;
using fp::Membership;

namespace {

constexpr std::size_t kN = 2001;

// Adaptive Gauss-Kronrod values of the calibration integrals for
// m = 6.075 t^2 (1 - t), computed independently of this library.
constexpr double kB1MaxCase1 = 3.3973341024926706;  // a1 = 1, a2 = 7
constexpr double kB2Case1Small = 5.15165324736911;   // b1 = 0.01
constexpr double kB2Case1Large = 0.07198843557776752;  // b1 = 3.35
constexpr double kB1MaxCase2 = 4.912868966706593;   // a1 = 4, a2 = 2
constexpr double kB2Case2Small = 9.019830759229816;
constexpr double kB2Case2Large = 0.759556951393111;  // b1 = 4.50

Membership constant_membership(double v, std::size_t n = kN) {
    return Membership(GridFunction::constant(Interval(0, 1), n, v));
}

Membership indicator(std::size_t first, std::size_t last, std::size_t n = kN) {
    std::vector<double> v(n, 0.0);
    for (std::size_t k = first; k <= last; ++k) v[k] = 1.0;
    return Membership(GridFunction(Interval(0, 1), v));
}

}  // namespace

TEST(MembershipToPrior, PointValueAtEq9Peak) {
    // 2/3 is grid point 2000 of 3001; pi = (0.01 + 5.15 * 0.9) / (1 + 7 * 0.1)
    const auto m = fp::eq9_membership(3001);
    const auto pi = fp::inverse_map(LossParams(1, 7, 0.01, 5.15), m);
    EXPECT_NEAR(pi[2000], 4.645 / 1.7, 1e-9);
    EXPECT_NEAR(pi[2000], 2.732, 1e-3);
}

TEST(MembershipToPrior, RoundedB2IsNotExactlyADensity) {
    // b2 = 5.15 is the two-digit rounding of 5.1517; the integral misses 1 by ~3e-4.
    const auto m = fp::eq9_membership();
    try {
        fp::membership_to_prior(LossParams(1, 7, 0.01, 5.15), m);
        FAIL() << "expected NotADensityError";
    } catch (const fp::NotADensityError& e) {
        const auto cc = fp::calibration_constants(1, 7, m);
        EXPECT_NEAR(e.integral(), 0.01 * cc.c1 + 5.15 * cc.c2, 1e-12);
        EXPECT_GT(std::abs(e.integral() - 1.0), 1e-4);
    }
}

TEST(MembershipToPrior, A2ZeroIsAffine) {
    fp::testing::Rng rng(21);
    const auto m = fp::testing::random_membership(rng, 501);
    const double a1 = 2.0, b1 = 0.3, b2 = 1.7;
    const auto pi = fp::inverse_map(LossParams(a1, 0, b1, b2), m);
    for (std::size_t k = 0; k < m.size(); ++k) ASSERT_NEAR(pi[k], b1 / a1 + (b2 / a1) * m[k], 1e-15);
}

TEST(MembershipToPrior, ConstantHalfGivesUniform) {
    const Density pi = fp::membership_to_prior(LossParams(1, 0, 0.5, 1), constant_membership(0.5));
    for (std::size_t k = 0; k < pi.size(); ++k) ASSERT_EQ(pi[k], 1.0);
}

TEST(MembershipToPrior, ZeroDenominatorIsSingular) {
    // a1 = 0 needs m < 1 everywhere
    try {
        fp::membership_to_prior(LossParams(0, 1, 1, 1), constant_membership(1.0));
        FAIL();
    } catch (const fp::Error& e) {
        EXPECT_EQ(e.kind(), fp::ErrorKind::Singularity);
    }
}

TEST(CalibrateB2, ReportedConstants) {
    const auto m = fp::eq9_membership();
    const auto case1 = fp::calibrate_b2(1, 7, 0.01, m);
    EXPECT_NEAR(case1.b1_max, 3.40, 0.01);
    EXPECT_NEAR(case1.b2, 5.15, 0.01);
    EXPECT_NEAR(fp::calibrate_b2(1, 7, 3.35, m).b2, 0.072, 0.01);
    const auto case2 = fp::calibrate_b2(4, 2, 0.01, m);
    EXPECT_NEAR(case2.b1_max, 4.91, 0.01);
    EXPECT_NEAR(case2.b2, 9.02, 0.01);
    EXPECT_NEAR(fp::calibrate_b2(4, 2, 4.50, m).b2, 0.76, 0.01);
}

TEST(CalibrateB2, MatchesIndependentQuadrature) {
    const auto m = fp::eq9_membership();
    EXPECT_NEAR(fp::calibrate_b2(1, 7, 0.01, m).b1_max, kB1MaxCase1, 1e-9);
    EXPECT_NEAR(fp::calibrate_b2(1, 7, 0.01, m).b2, kB2Case1Small, 1e-9);
    EXPECT_NEAR(fp::calibrate_b2(1, 7, 3.35, m).b2, kB2Case1Large, 1e-9);
    EXPECT_NEAR(fp::calibrate_b2(4, 2, 0.01, m).b1_max, kB1MaxCase2, 1e-9);
    EXPECT_NEAR(fp::calibrate_b2(4, 2, 0.01, m).b2, kB2Case2Small, 1e-9);
    EXPECT_NEAR(fp::calibrate_b2(4, 2, 4.50, m).b2, kB2Case2Large, 1e-9);
}

TEST(CalibrateB2, AgreesWithBisectionOnTheNormalization) {
    fp::testing::Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const auto m = fp::testing::random_membership(rng, 801, 0.05, 0.95);
        const double a1 = fp::testing::uniform(rng, 0.1, 5), a2 = fp::testing::uniform(rng, 0, 5);
        const double b1 = fp::testing::uniform(rng, 0, 0.9) / fp::calibration_constants(a1, a2, m).c1;
        const double b2 = fp::solve_root(
            [&](double b) { return fp::integrate(fp::inverse_map(LossParams(a1, a2, b1, b), m)); }, 0.0, 1e3, 1.0,
            1e-13);
        EXPECT_NEAR(fp::calibrate_b2(a1, a2, b1, m).b2, b2, 1e-9 * std::max(1.0, b2));
    }
}

TEST(CalibrateB2, InfeasibleB1CarriesTheBound) {
    const auto m = fp::eq9_membership();
    try {
        fp::calibrate_b2(1, 7, 3.5, m);
        FAIL();
    } catch (const fp::InfeasibleError& e) {
        EXPECT_NEAR(e.bound(), kB1MaxCase1, 1e-9);
        EXPECT_EQ(e.kind(), fp::ErrorKind::Infeasible);
    }
    EXPECT_THROW(fp::calibrate_b2(1, 7, -0.1, m), fp::Error);
    EXPECT_THROW(fp::calibrate_b2(1, 1, 0.5, constant_membership(0.0)), fp::Error);
}

TEST(CalibrateB2, ReportsStrictInterior) {
    EXPECT_FALSE(fp::calibrate_b2(1, 7, 0.01, fp::eq9_membership()).strictly_inside);
    EXPECT_TRUE(fp::calibrate_b2(1, 7, 0.01, constant_membership(0.4)).strictly_inside);
}

TEST(CalibrateA2Zero, Eq9ClosedForm) {
    const auto cal = fp::calibrate_a2zero(0.5, fp::eq9_membership());
    EXPECT_NEAR(cal.rates.r2, 0.5 + 0.5 / 0.50625, 1e-12);
    EXPECT_NEAR(cal.rates.r2, 1.48765, 1e-5);
    EXPECT_EQ(cal.params.a2(), 0.0);
    EXPECT_EQ(cal.params.b2(), 1.0);
    EXPECT_NEAR(cal.params.b1() / cal.params.a1(), 0.5, 1e-15);
    EXPECT_NEAR((cal.params.b1() + cal.params.b2()) / cal.params.a1(), cal.rates.r2, 1e-12);
    EXPECT_NEAR(fp::integrate(cal.prior.function()), 1.0, 1e-12);
}

TEST(CalibrateA2Zero, AgreesWithBisection) {
    const auto m = fp::eq9_membership();
    const double r1 = 0.3;
    const double r2 = fp::solve_root(
        [&](double r) {
            return fp::integrate(m.function().map([&](double v) { return (r - r1) * v + r1; }));
        },
        r1, 100.0, 1.0, 1e-14);
    EXPECT_NEAR(fp::calibrate_a2zero(r1, m).rates.r2, r2, 1e-10);
}

TEST(CalibrateA2Zero, DegenerateAndTrivialCases) {
    const auto full = fp::calibrate_a2zero(0.0, constant_membership(1.0));
    EXPECT_NEAR(full.rates.r2, 1.0, 1e-15);
    for (std::size_t k = 0; k < full.prior.size(); ++k) ASSERT_NEAR(full.prior[k], 1.0, 1e-15);

    const auto m = fp::eq9_membership();
    const auto plain = fp::calibrate_a2zero(0.0, m);
    const double mass = fp::integrate(m.function());
    EXPECT_NEAR(plain.rates.r2, 1.0 / mass, 1e-15);
    for (std::size_t k = 0; k < m.size(); ++k) ASSERT_NEAR(plain.prior[k], m[k] / mass, 1e-14);
}

TEST(CalibrateA2Zero, Errors) {
    const auto m = fp::eq9_membership();
    try {
        fp::calibrate_a2zero(1.0, m);
        FAIL();
    } catch (const fp::InfeasibleError& e) {
        EXPECT_DOUBLE_EQ(e.bound(), 1.0);
    }
    // longer domain lowers the bound to 1/length
    const Membership wide(GridFunction::constant(Interval(0, 4), 101, 0.5));
    EXPECT_THROW(fp::calibrate_a2zero(0.3, wide), fp::InfeasibleError);
    EXPECT_NO_THROW(fp::calibrate_a2zero(0.2, wide));
    EXPECT_THROW(fp::calibrate_a2zero(-0.1, m), fp::Error);
    try {
        fp::calibrate_a2zero(0.5, constant_membership(0.0));
        FAIL();
    } catch (const fp::Error& e) {
        EXPECT_EQ(e.kind(), fp::ErrorKind::Degenerate);
    }
}

TEST(InPriorFamily, Examples) {
    const auto m = fp::eq9_membership();
    const auto cal = fp::calibrate_a2zero(0.5, m);
    EXPECT_TRUE(fp::in_prior_family(cal.prior, m, cal.rates, 1e-12));

    const Density uniform(GridFunction::constant(Interval(0, 1), kN, 1.0));
    EXPECT_FALSE(fp::in_prior_family(uniform, indicator(500, 1500), {0.4, 1.2}, 1e-9));
    EXPECT_TRUE(fp::in_prior_family(uniform, indicator(500, 1500), {1.0, 1.0}, 1e-9));
}

TEST(InPriorFamily, ZeroSetClauseIsolation) {
    // m vanishes on [0, 0.25]. Only the zero-set values of the canonical prior
    // are changed and the clauses are checked without renormalizing.
    std::vector<double> v(kN);
    for (std::size_t k = 0; k < kN; ++k) v[k] = std::clamp(4.0 * (k / double(kN - 1) - 0.25), 0.0, 1.0);
    const Membership m(GridFunction(Interval(0, 1), v));
    const auto cal = fp::calibrate_a2zero(0.4, m);
    auto with_zero_set = [&](double value) {
        std::vector<double> p(cal.prior.function().values().begin(), cal.prior.function().values().end());
        for (std::size_t k = 0; k < kN; ++k) {
            if (m[k] == 0.0) p[k] = value;
        }
        return GridFunction(Interval(0, 1), p);
    };
    EXPECT_TRUE(fp::family_clauses_hold(with_zero_set(0.1), m, cal.rates, 1e-12));
    EXPECT_TRUE(fp::family_clauses_hold(with_zero_set(0.4), m, cal.rates, 1e-12));
    EXPECT_FALSE(fp::family_clauses_hold(with_zero_set(0.41), m, cal.rates, 1e-12));
}

TEST(InPriorFamily, GridMismatch) {
    const auto m = fp::eq9_membership(101);
    const auto cal = fp::calibrate_a2zero(0.5, fp::eq9_membership());
    EXPECT_THROW(fp::in_prior_family(cal.prior, m, cal.rates, 1e-9), fp::Error);
}

TEST(UniquenessReport, Regimes) {
    const auto half = fp::uniqueness_report(constant_membership(0.5));
    EXPECT_EQ(half.regime, fp::InverseRegime::Unique);
    EXPECT_TRUE(half.strictly_inside);

    const auto crisp = fp::uniqueness_report(indicator(500, 1500));
    EXPECT_EQ(crisp.regime, fp::InverseRegime::Family);
    EXPECT_NEAR(crisp.one_measure, 0.5, 1e-12);
    EXPECT_NEAR(crisp.zero_measure, 0.5 - 2.0 / (kN - 1), 1e-12);

    const auto eq9 = fp::uniqueness_report(fp::eq9_membership());
    EXPECT_EQ(eq9.regime, fp::InverseRegime::Boundary);
    EXPECT_EQ(eq9.min_value, 0.0);
    EXPECT_EQ(eq9.zero_measure, 0.0);
    EXPECT_EQ(eq9.one_measure, 0.0);
}

TEST(InverseProperties, UniqueRegimeRoundtrip) {
    fp::testing::Rng rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        const auto m = fp::testing::random_membership(rng, 1001, 0.05, 0.95);
        const double a1 = fp::testing::uniform(rng, 0.0, 5), a2 = fp::testing::uniform(rng, 0.01, 5);
        const double b1 = fp::testing::uniform(rng, 0, 1) / fp::calibration_constants(a1, a2, m).c1;
        const auto cal = fp::calibrate_b2(a1, a2, b1, m);
        const LossParams p(a1, a2, b1, cal.b2);
        const Density prior = fp::membership_to_prior(p, m);
        EXPECT_NEAR(fp::integrate(prior.function()), 1.0, 1e-6);
        const auto back = fp::prior_to_membership(p, prior);
        ASSERT_LE(fp::testing::sup_norm_diff(back.function(), m.function()), 1e-6) << "trial " << trial;
    }
}

TEST(InverseProperties, ForwardRoundtripLandsInTheFamily) {
    fp::testing::Rng rng(43);
    for (int trial = 0; trial < 30; ++trial) {
        const Density prior = fp::testing::random_density(rng, 801);
        const double a1 = fp::testing::uniform(rng, 0.5, 3);
        const double pmax = prior.function().max();
        const double b1 = a1 * fp::testing::uniform(rng, 0.0, 0.8) * pmax;
        const double b2 = a1 * fp::testing::uniform(rng, 0.05, 0.8) * pmax;
        const LossParams p(a1, 0, b1, b2);
        const auto m = fp::prior_to_membership(p, prior);
        const fp::CrispRates rates{b1 / a1, (b1 + b2) / a1};
        ASSERT_TRUE(fp::in_prior_family(prior, m, rates, 1e-9)) << "trial " << trial;
    }
}

TEST(InverseProperties, ConcentrationDecreasesWithB1) {
    const auto m = fp::eq9_membership();
    for (auto [a1, a2] : {std::pair{1.0, 7.0}, std::pair{4.0, 2.0}, std::pair{0.5, 0.5}}) {
        const double b1_max = 1.0 / fp::calibration_constants(a1, a2, m).c1;
        double previous = INFINITY;
        for (int i = 0; i <= 20; ++i) {
            const double b1 = b1_max * i / 20.0;
            const auto cal = fp::calibrate_b2(a1, a2, b1, m);
            const double peak = fp::membership_to_prior(LossParams(a1, a2, b1, cal.b2), m).function().max();
            ASSERT_LE(peak, previous + 1e-12) << "a1=" << a1 << " b1=" << b1;
            previous = peak;
        }
    }
}

TEST(InverseProperties, A2ZeroConsistency) {
    fp::testing::Rng rng(47);
    for (int trial = 0; trial < 20; ++trial) {
        const auto m = fp::testing::random_membership(rng, 801);
        const double r1 = fp::testing::uniform(rng, 0.0, 0.99);
        const auto cal = fp::calibrate_a2zero(r1, m);
        const auto back = fp::prior_to_membership(cal.params, cal.prior);
        ASSERT_LE(fp::testing::sup_norm_diff(back.function(), m.function()), 1e-6);
    }
}
