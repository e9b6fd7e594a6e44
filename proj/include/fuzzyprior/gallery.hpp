#pragma once

// The worked example: the membership 6.075 theta^2 (1 - theta) on [0, 1]
// and four loss functions under which it is the optimal membership, each
// with its own calibrated prior.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "fuzzyprior/decision.hpp"
#include "fuzzyprior/inverse.hpp"

namespace fuzzyprior {

inline constexpr std::size_t kCurveExportPoints = 501;

inline double eq9_value(double theta) noexcept { return 6.075 * theta * theta * (1.0 - theta); }

inline Membership eq9_membership(std::size_t n = kDefaultGridSize) {
    return Membership(GridFunction::sample(Interval(0.0, 1.0), n, eq9_value));
}

struct Figure1Case {
    double a1;
    double a2;
    double b1;
    double b2_expected;  // as reported, 2-3 significant figures
    const char* label;
};

inline constexpr std::array<Figure1Case, 4> kFigure1Cases{{
    {1.0, 7.0, 0.01, 5.15, "a1=1,a2=7,b1=0.01"},
    {1.0, 7.0, 3.35, 0.072, "a1=1,a2=7,b1=3.35"},
    {4.0, 2.0, 0.01, 9.02, "a1=4,a2=2,b1=0.01"},
    {4.0, 2.0, 4.50, 0.76, "a1=4,a2=2,b1=4.50"},
}};

struct Figure1Row {
    Figure1Case spec;
    double b1_max;
    double b2;
    Density prior;
    double prior_max;
    double prior_argmax;
    double roundtrip_error;  // sup-norm distance of the re-derived membership
};

struct Figure1Table {
    Membership membership;
    std::vector<Figure1Row> rows;

    /// Row indices sorted by decreasing prior maximum.
    std::vector<std::size_t> order_by_max() const {
        std::vector<std::size_t> idx(rows.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(),
                         [this](std::size_t l, std::size_t r) { return rows[l].prior_max > rows[r].prior_max; });
        return idx;
    }
};

inline double sup_distance(const GridFunction& f, const GridFunction& g) {
    require_same_grid(f, g);
    double worst = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) worst = std::max(worst, std::abs(f[k] - g[k]));
    return worst;
}

inline Figure1Table reproduce_figure1(std::size_t n = kDefaultGridSize) {
    Figure1Table table{eq9_membership(n), {}};
    const Membership& m = table.membership;
    for (const Figure1Case& c : kFigure1Cases) {
        const B2Calibration cal = calibrate_b2(c.a1, c.a2, c.b1, m);
        const LossParams p(c.a1, c.a2, c.b1, cal.b2);
        Density prior = membership_to_prior(p, m);
        const auto v = prior.function().values();
        const auto peak = static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
        const double err = sup_distance(prior_to_membership(p, prior).function(), m.function());
        table.rows.push_back({c, cal.b1_max, cal.b2, prior, v[peak], prior.function().abscissa(peak), err});
    }
    return table;
}

/// Resamples f at `points` equally spaced abscissae for plotting.
inline std::vector<std::pair<double, double>> export_curve(const GridFunction& f,
                                                           std::size_t points = kCurveExportPoints) {
    std::vector<std::pair<double, double>> rows;
    rows.reserve(points);
    const Interval& d = f.domain();
    for (std::size_t k = 0; k < points; ++k) {
        const double x = k + 1 == points
                             ? d.hi()
                             : d.lo() + static_cast<double>(k) * (d.length() / static_cast<double>(points - 1));
        rows.emplace_back(x, f(x));
    }
    return rows;
}

}  // namespace fuzzyprior
