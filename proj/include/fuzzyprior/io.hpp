#pragma once

// Text output: curves as two-column CSV with one header line, numbers as
// 17 significant digits so that output is reproducible byte for byte.

#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "fuzzyprior/fuzzy.hpp"
#include "fuzzyprior/grid.hpp"

namespace fuzzyprior {

inline std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline void write_curve(std::ostream& out, const std::string& name,
                        const std::vector<std::pair<double, double>>& rows) {
    out << "theta," << name << '\n';
    for (const auto& [x, y] : rows) out << format_real(x) << ',' << format_real(y) << '\n';
}

inline void write_curve(std::ostream& out, const std::string& name, const GridFunction& f) {
    out << "theta," << name << '\n';
    for (std::size_t k = 0; k < f.size(); ++k) out << format_real(f.abscissa(k)) << ',' << format_real(f[k]) << '\n';
}

/// "[lo,hi];[lo,hi]" or "empty".
inline std::string format_cut(const CutSet& cut) {
    if (cut.empty()) return "empty";
    std::string s;
    for (const auto& iv : cut.intervals()) {
        if (!s.empty()) s += ';';
        s += '[' + format_real(iv.lo) + ',' + format_real(iv.hi) + ']';
    }
    return s;
}

}  // namespace fuzzyprior
