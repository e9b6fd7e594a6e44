#pragma once

// Subcommands of the fuzzyprior tool. Kept in a header so the test suite
// can drive the exact same code paths in-process.
//
// Curves go to --out when given (the report then goes to stdout);
// otherwise the curve goes to stdout and the report to stderr.
// Exit status: 0 success, 1 invalid input, 2 numerical or feasibility error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fuzzyprior/decision.hpp"
#include "fuzzyprior/function_spec.hpp"
#include "fuzzyprior/fuzzy.hpp"
#include "fuzzyprior/gallery.hpp"
#include "fuzzyprior/inverse.hpp"
#include "fuzzyprior/io.hpp"
#include "fuzzyprior/update.hpp"

namespace fuzzyprior::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitNumerical = 2;

namespace detail {

inline std::vector<double> default_gammas() {
    std::vector<double> g;
    for (int k = 1; k <= 10; ++k) g.push_back(k / 10.0);
    return g;
}

inline std::string gamma_label(double g) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", g);
    return buf;
}

inline LossParams params_from(const std::vector<double>& v) {
    if (v.size() != 4) throw Error(ErrorKind::Validation, "--params needs a1 a2 b1 b2");
    return {v[0], v[1], v[2], v[3]};
}

inline void kv(std::ostream& os, const std::string& key, double value) { os << key << ": " << format_real(value) << '\n'; }
inline void kv(std::ostream& os, const std::string& key, const std::string& value) { os << key << ": " << value << '\n'; }

inline void write_cut_table(std::ostream& os, const Membership& m, const std::vector<double>& gammas, double tol) {
    for (double g : gammas) kv(os, "cut " + gamma_label(g), format_cut(gamma_cut(m, g, tol)));
}

inline void write_uniqueness(std::ostream& os, const UniquenessReport& r) {
    kv(os, "membership_min", r.min_value);
    kv(os, "membership_max", r.max_value);
    kv(os, "strictly_inside", r.strictly_inside ? "true" : "false");
    kv(os, "measure_zero_set", r.zero_measure);
    kv(os, "measure_one_set", r.one_measure);
    kv(os, "regime", to_string(r.regime));
}

/// Nondecreasing membership along increasing density.
inline bool monotone_link(const Density& prior, const Membership& m) {
    std::vector<std::size_t> idx(prior.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t l, std::size_t r) { return prior[l] < prior[r]; });
    for (std::size_t i = 0; i + 1 < idx.size(); ++i) {
        if (m[idx[i]] > m[idx[i + 1]]) return false;
    }
    return true;
}

/// Routes the curve to --out or stdout and returns the report stream.
class Sink {
public:
    Sink(const std::string& out_path, std::ostream& out, std::ostream& err) : out_(out), err_(err) {
        if (!out_path.empty()) {
            file_.open(out_path);
            if (!file_) throw Error(ErrorKind::Validation, "cannot write '" + out_path + "'");
        }
    }

    std::ostream& curve() { return file_.is_open() ? static_cast<std::ostream&>(file_) : out_; }
    std::ostream& report() { return file_.is_open() ? out_ : err_; }

private:
    std::ofstream file_;
    std::ostream& out_;
    std::ostream& err_;
};

}  // namespace detail

struct CommonOptions {
    std::optional<std::size_t> grid;
    std::string out;
    double tol = 0.0;
    std::vector<double> gammas = detail::default_gammas();
};

inline void cmd_convert(const CommonOptions& opt, const std::string& prior_arg, const std::vector<double>& params,
                        std::ostream& out, std::ostream& err) {
    const FunctionSpec spec = load_function_spec(prior_arg);
    const std::size_t n = resolve_grid_size({&spec}, opt.grid);
    const LossParams p = detail::params_from(params);
    const Density prior = to_density(spec, n);
    const Membership m = prior_to_membership(p, prior);
    const Thresholds t = thresholds(p);

    detail::Sink sink(opt.out, out, err);
    write_curve(sink.curve(), "membership", m.function());
    std::ostream& r = sink.report();
    detail::kv(r, "grid_n", std::to_string(n));
    detail::kv(r, "a1", p.a1());
    detail::kv(r, "a2", p.a2());
    detail::kv(r, "b1", p.b1());
    detail::kv(r, "b2", p.b2());
    detail::kv(r, "threshold_lower", t.lower);
    detail::kv(r, "threshold_upper", std::isinf(t.upper) ? std::string("inf") : format_real(t.upper));
    detail::kv(r, "prior_max", prior.function().max());
    detail::kv(r, "membership_min", m.function().min());
    detail::kv(r, "membership_max", m.function().max());
    detail::kv(r, "risk", risk(p, m, prior));
    detail::kv(r, "monotone_link", detail::monotone_link(prior, m) ? "true" : "false");
    detail::write_cut_table(r, m, opt.gammas, opt.tol);
}

inline void cmd_invert(const CommonOptions& opt, const std::string& membership_arg, bool a2zero, double a1, double a2,
                       double b1, double r1, std::ostream& out, std::ostream& err) {
    const FunctionSpec spec = load_function_spec(membership_arg);
    const std::size_t n = resolve_grid_size({&spec}, opt.grid);
    const Membership m = to_membership(spec, n);
    const UniquenessReport uniq = uniqueness_report(m);

    if (a2zero) {
        const A2ZeroCalibration cal = calibrate_a2zero(r1, m);
        const double roundtrip = sup_distance(prior_to_membership(cal.params, cal.prior).function(), m.function());
        detail::Sink sink(opt.out, out, err);
        write_curve(sink.curve(), "prior", cal.prior.function());
        std::ostream& r = sink.report();
        detail::kv(r, "grid_n", std::to_string(n));
        detail::kv(r, "mode", "a2zero");
        detail::kv(r, "r1", cal.rates.r1);
        detail::kv(r, "r1_bound", 1.0 / m.function().domain().length());
        detail::kv(r, "r2", cal.rates.r2);
        detail::kv(r, "membership_integral", integrate(m.function()));
        detail::kv(r, "a1", cal.params.a1());
        detail::kv(r, "a2", cal.params.a2());
        detail::kv(r, "b1", cal.params.b1());
        detail::kv(r, "b2", cal.params.b2());
        detail::kv(r, "prior_integral", integrate(cal.prior.function()));
        detail::kv(r, "roundtrip_sup_error", roundtrip);
        detail::write_uniqueness(r, uniq);
        return;
    }

    const B2Calibration cal = calibrate_b2(a1, a2, b1, m);
    const LossParams p(a1, a2, b1, cal.b2);
    const Density prior = membership_to_prior(p, m);
    const double roundtrip = sup_distance(prior_to_membership(p, prior).function(), m.function());
    detail::Sink sink(opt.out, out, err);
    write_curve(sink.curve(), "prior", prior.function());
    std::ostream& r = sink.report();
    detail::kv(r, "grid_n", std::to_string(n));
    detail::kv(r, "mode", "calibrate_b2");
    detail::kv(r, "a1", a1);
    detail::kv(r, "a2", a2);
    detail::kv(r, "b1", b1);
    detail::kv(r, "c1", cal.constants.c1);
    detail::kv(r, "c2", cal.constants.c2);
    detail::kv(r, "b1_max", cal.b1_max);
    detail::kv(r, "b2", cal.b2);
    detail::kv(r, "prior_integral", integrate(prior.function()));
    detail::kv(r, "roundtrip_sup_error", roundtrip);
    detail::write_uniqueness(r, uniq);
}

inline void cmd_update(const CommonOptions& opt, const std::string& membership_arg, const std::vector<double>& params,
                       const std::string& likelihood_arg, std::ostream& out, std::ostream& err) {
    const FunctionSpec mspec = load_function_spec(membership_arg);
    const FunctionSpec lspec = load_function_spec(likelihood_arg);
    const std::size_t n = resolve_grid_size({&mspec, &lspec}, opt.grid);
    const Membership m = to_membership(mspec, n);
    const Likelihood lik = to_likelihood(lspec, n);
    if (params.size() != 3 && params.size() != 4) {
        throw Error(ErrorKind::Validation, "--params needs a1 a2 b1 [b2]; b2 is calibrated when omitted");
    }
    const bool calibrated = params.size() == 3;
    const double b2 = calibrated ? calibrate_b2(params[0], params[1], params[2], m).b2 : params[3];
    const LossParams p(params[0], params[1], params[2], b2);
    const Membership updated = fuzzy_update(m, p, lik);

    detail::Sink sink(opt.out, out, err);
    write_curve(sink.curve(), "membership", updated.function());
    std::ostream& r = sink.report();
    detail::kv(r, "grid_n", std::to_string(n));
    detail::kv(r, "a1", p.a1());
    detail::kv(r, "a2", p.a2());
    detail::kv(r, "b1", p.b1());
    detail::kv(r, "b2", p.b2());
    detail::kv(r, "b2_source", calibrated ? "calibrated" : "given");
    detail::kv(r, "membership_min", updated.function().min());
    detail::kv(r, "membership_max", updated.function().max());
    detail::write_cut_table(r, updated, opt.gammas, opt.tol);
}

/// Constants table on stdout; with --out DIR also membership.csv,
/// prior_1.csv .. prior_4.csv (501 rows each) and constants.csv.
inline void cmd_figure1(const CommonOptions& opt, std::ostream& out) {
    const std::size_t n = opt.grid.value_or(kDefaultGridSize);
    const Figure1Table table = reproduce_figure1(n);
    const auto order = table.order_by_max();

    std::ostringstream csv;
    csv << "label,a1,a2,b1,b1_max,b2,b2_expected,prior_max,prior_argmax,roundtrip_error,rank_by_max\n";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const Figure1Row& row = table.rows[i];
        const auto rank = static_cast<std::size_t>(std::find(order.begin(), order.end(), i) - order.begin()) + 1;
        csv << row.spec.label << ',' << format_real(row.spec.a1) << ',' << format_real(row.spec.a2) << ','
            << format_real(row.spec.b1) << ',' << format_real(row.b1_max) << ',' << format_real(row.b2) << ','
            << format_real(row.spec.b2_expected) << ',' << format_real(row.prior_max) << ','
            << format_real(row.prior_argmax) << ',' << format_real(row.roundtrip_error) << ',' << rank << '\n';
    }
    out << csv.str();

    if (opt.out.empty()) return;
    const std::filesystem::path dir(opt.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    auto open = [&dir](const std::string& name) {
        std::ofstream f(dir / name);
        if (!f) throw Error(ErrorKind::Validation, "cannot write '" + (dir / name).string() + "'");
        return f;
    };
    {
        auto f = open("membership.csv");
        write_curve(f, "membership", export_curve(table.membership.function()));
    }
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        auto f = open("prior_" + std::to_string(i + 1) + ".csv");
        write_curve(f, "prior", export_curve(table.rows[i].prior.function()));
    }
    auto f = open("constants.csv");
    f << csv.str();
}

inline void cmd_cuts(const CommonOptions& opt, const std::string& membership_arg, std::ostream& out) {
    const FunctionSpec spec = load_function_spec(membership_arg);
    const std::size_t n = resolve_grid_size({&spec}, opt.grid);
    const Membership m = to_membership(spec, n);

    std::ofstream file;
    if (!opt.out.empty()) {
        file.open(opt.out);
        if (!file) throw Error(ErrorKind::Validation, "cannot write '" + opt.out + "'");
    }
    std::ostream& r = file.is_open() ? static_cast<std::ostream&>(file) : out;
    detail::kv(r, "grid_n", std::to_string(n));
    detail::kv(r, "crisp", is_crisp(m, opt.tol) ? "true" : "false");
    detail::kv(r, "convex", is_convex_fuzzy(m) ? "true" : "false");
    detail::kv(r, "core", format_cut(core(m)));
    detail::kv(r, "support", format_cut(support(m)));
    detail::write_uniqueness(r, uniqueness_report(m));
    detail::write_cut_table(r, m, opt.gammas, opt.tol);
}

inline void cmd_risk(const CommonOptions& opt, const std::string& prior_arg, const std::string& membership_arg,
                     const std::vector<double>& params, std::ostream& out) {
    const FunctionSpec pspec = load_function_spec(prior_arg);
    const FunctionSpec mspec = load_function_spec(membership_arg);
    const std::size_t n = resolve_grid_size({&pspec, &mspec}, opt.grid);
    const LossParams p = detail::params_from(params);
    const Density prior = to_density(pspec, n);
    const Membership m = to_membership(mspec, n);
    const double given = risk(p, m, prior);
    const double best = risk(p, prior_to_membership(p, prior), prior);
    detail::kv(out, "grid_n", std::to_string(n));
    detail::kv(out, "risk", given);
    detail::kv(out, "optimal_risk", best);
    detail::kv(out, "excess_risk", given - best);
}

/// Entry point shared by main() and the tests. args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Convert between prior densities and fuzzy membership functions", "fuzzyprior"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::size_t grid = 0;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--grid", grid, "Grid size (odd, >= 3); default 2001")->check(CLI::PositiveNumber);
        sub->add_option("--out", opt.out, "Output path");
        sub->add_option("--tol", opt.tol, "Tolerance for gamma-cuts and crispness")->check(CLI::NonNegativeNumber);
        sub->add_option("--gamma", opt.gammas, "Comma-separated gamma levels")->delimiter(',');
    };

    std::string prior_arg;
    std::string membership_arg;
    std::string likelihood_arg;
    std::vector<double> params;
    bool a2zero = false;
    double a1 = 0.0;
    double a2 = 0.0;
    double b1 = 0.0;
    double r1 = 0.0;

    auto* convert = app.add_subcommand("convert", "Optimal membership function for a prior");
    add_common(convert);
    convert->add_option("--prior", prior_arg, "Prior: JSON file or inline JSON")->required();
    convert->add_option("--params", params, "Loss coefficients a1 a2 b1 b2")->required()->expected(4);

    auto* invert = app.add_subcommand("invert", "Prior whose optimal membership is the given one");
    add_common(invert);
    invert->add_option("--membership", membership_arg, "Membership: JSON file or inline JSON")->required();
    auto* a2zero_flag = invert->add_flag("--a2zero", a2zero, "Use the a2 = 0 parametrization with --r1");
    auto* a1_opt = invert->add_option("--a1", a1, "Loss coefficient a1");
    auto* a2_opt = invert->add_option("--a2", a2, "Loss coefficient a2");
    auto* b1_opt = invert->add_option("--b1", b1, "Loss coefficient b1");
    auto* r1_opt = invert->add_option("--r1", r1, "Lower crisp rate (with --a2zero)");
    r1_opt->needs(a2zero_flag);
    a1_opt->excludes(a2zero_flag);
    a2_opt->excludes(a2zero_flag);
    b1_opt->excludes(a2zero_flag);

    auto* update = app.add_subcommand("update", "Update a membership function with a likelihood");
    add_common(update);
    update->add_option("--membership", membership_arg, "Membership: JSON file or inline JSON")->required();
    update->add_option("--likelihood", likelihood_arg, "Likelihood: JSON file or inline JSON")->required();
    update->add_option("--params", params, "a1 a2 b1 [b2]; b2 is calibrated when omitted")->required()->expected(3, 4);

    auto* figure1 = app.add_subcommand("figure1", "Worked example: four priors sharing one membership");
    add_common(figure1);

    auto* cuts = app.add_subcommand("cuts", "Gamma-cuts, core, support and shape diagnostics");
    add_common(cuts);
    cuts->add_option("--membership", membership_arg, "Membership: JSON file or inline JSON")->required();

    auto* risk_cmd = app.add_subcommand("risk", "Expected loss of a membership under a prior");
    add_common(risk_cmd);
    risk_cmd->add_option("--prior", prior_arg, "Prior: JSON file or inline JSON")->required();
    risk_cmd->add_option("--membership", membership_arg, "Membership: JSON file or inline JSON")->required();
    risk_cmd->add_option("--params", params, "Loss coefficients a1 a2 b1 b2")->required()->expected(4);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        for (CLI::App* sub : app.get_subcommands()) {
            if (sub->count("--grid") > 0) opt.grid = grid;
        }
        if (invert->parsed() && !a2zero && (a1_opt->count() == 0 || a2_opt->count() == 0 || b1_opt->count() == 0)) {
            throw Error(ErrorKind::Validation, "invert needs --a1 --a2 --b1, or --a2zero --r1");
        }
        if (invert->parsed() && a2zero && r1_opt->count() == 0) {
            throw Error(ErrorKind::Validation, "--a2zero needs --r1");
        }
        if (convert->parsed()) cmd_convert(opt, prior_arg, params, out, err);
        if (invert->parsed()) cmd_invert(opt, membership_arg, a2zero, a1, a2, b1, r1, out, err);
        if (update->parsed()) cmd_update(opt, membership_arg, params, likelihood_arg, out, err);
        if (figure1->parsed()) cmd_figure1(opt, out);
        if (cuts->parsed()) cmd_cuts(opt, membership_arg, out);
        if (risk_cmd->parsed()) cmd_risk(opt, prior_arg, membership_arg, params, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return is_validation(e.kind()) ? kExitInvalid : kExitNumerical;
    }
    return kExitOk;
}

}  // namespace fuzzyprior::cli
