#include "tabor/scenario_io.hpp"
#include "tabor/series.hpp"
#include "tabor/verify.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <thread>
#include <vector>

namespace {

using namespace tabor;

unsigned worker_count() {
    if (const char* env = std::getenv("TABOR_SVA_THREADS")) {
        long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

/// Ordered parallel map over an index range.
template <typename F>
auto parallel_map(std::size_t count, F&& fn) {
    using R = decltype(fn(std::size_t{0}));
    std::vector<R> out(count);
    unsigned workers = std::min<std::size_t>(worker_count(), count ? count : 1);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::future<void>> jobs;
    for (unsigned w = 0; w < workers; ++w) {
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < count; i += workers) out[i] = fn(i);
        }));
    }
    for (auto& j : jobs) j.get();
    return out;
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct EvalRow {
    double t = 0, value = 0, error = 0;
    std::string t_exact, value_exact;
};

int cmd_eval(const std::string& function, double alpha, const std::string& c_str,
             const std::string& xnorm_str, const std::string& norm_str, unsigned grid,
             const std::string& lo_str, const std::string& hi_str, double tol,
             const std::string& out_path) {
    Rational lo = rational_from_string(lo_str);
    Rational hi = rational_from_string(hi_str);
    if (hi < lo || grid == 0) {
        std::cerr << "eval: empty grid\n";
        return 2;
    }
    NormKind norm = norm_str == "l1" ? NormKind::L1
                                     : (norm_str == "linf" ? NormKind::Linf : NormKind::Euclidean);
    Rational c = rational_from_string(c_str);
    Rational x_norm = rational_from_string(xnorm_str);
    unsigned alpha_int = 0;
    bool integral_alpha = alpha >= 1 && alpha <= 64 && alpha == static_cast<unsigned>(alpha);
    if (integral_alpha) alpha_int = static_cast<unsigned>(alpha);

    auto rows = parallel_map(grid + 1, [&](std::size_t j) {
        Rational t = lo + (hi - lo) * Rational(static_cast<long long>(j), grid);
        double td = t.to_double();
        EvalRow row;
        row.t = td;
        row.t_exact = t.str();
        auto dy = DyadicRational::try_from_rational(t);
        bool exact = dy && dy->exponent() <= 40;
        if (function == "takagi") {
            if (exact) {
                Rational v = takagi_dyadic_exact(*dy);
                row.value = v.to_double();
                row.error = 0;
                row.value_exact = v.str();
            } else {
                SeriesValue s = takagi(td, tol);
                row.value = s.value;
                row.error = s.error_bound;
            }
        } else if (function == "tau") {
            if (exact && integral_alpha) {
                Rational v = tau_alpha_dyadic_exact(alpha_int, *dy);
                row.value = v.to_double();
                row.error = 0;
                row.value_exact = v.str();
            } else {
                SeriesValue s = tau_alpha(alpha, td, tol);
                row.value = s.value;
                row.error = s.error_bound;
            }
        } else {  // phi-perp
            if (exact && integral_alpha) {
                Rational v = c * x_norm.abs().pow(alpha_int) * tau_alpha_dyadic_exact(alpha_int, *dy);
                row.value = v.to_double();
                row.error = 0;
                row.value_exact = v.str();
            } else {
                PhiSpec phi = PhiSpec::power(c, alpha, norm);
                SeriesValue s = phi_perp(phi, td, x_norm.to_double(), tol);
                row.value = s.value;
                row.error = s.error_bound;
            }
        }
        return row;
    });

    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "eval: cannot write " << out_path << "\n";
        return 2;
    }
    out << "t,value,error_bound,t_exact,value_exact\n";
    for (const auto& r : rows)
        out << fmt17(r.t) << ',' << fmt17(r.value) << ',' << fmt17(r.error) << ',' << r.t_exact
            << ',' << r.value_exact << '\n';
    return 0;
}

int cmd_verify(const std::string& path, int depth_flag, const std::string& reading,
               bool json_output, bool no_mutations, bool no_extensions) {
    Scenario sc = load_scenario(path);
    RunOptions opt;
    opt.depth = depth_flag >= 0 ? static_cast<unsigned>(depth_flag) : sc.dyadic_depth;
    opt.reading = reading == "cvn-a" ? CvnReading::PrintedHalfB
                                     : (reading == "cvn-b" ? CvnReading::TwoDzBothSides
                                                           : sc.reading);
    opt.run_mutations = !no_mutations;
    opt.run_extensions = !no_extensions;

    RunResult res = run_scenario(sc, opt);
    unsigned pass = 0, fail = 0, approx = 0;
    for (const auto& rep : res.reports) {
        if (json_output)
            std::cout << report_to_json(rep).dump() << "\n";
        else
            std::cout << report_to_text(rep) << "\n";
        switch (rep.verdict) {
            case Verdict::Pass: ++pass; break;
            case Verdict::Fail: ++fail; break;
            case Verdict::Approximate: ++approx; break;
        }
    }
    int code = res.exit_code();
    if (json_output) {
        Json summary;
        summary["summary"] = {{"scenario", sc.name},
                              {"pass", pass},
                              {"fail", fail},
                              {"approximate", approx},
                              {"exit_code", code}};
        std::cout << summary.dump() << "\n";
    } else {
        std::cout << "summary: " << sc.name << "  pass=" << pass << " fail=" << fail
                  << " approx=" << approx << " exit=" << code << "\n";
    }
    return code;
}

void dump_union(std::ostream& out, const std::string& block, const SetUnion& u) {
    for (std::size_t pi = 0; pi < u.parts.size(); ++pi) {
        const GeneratorSet& g = u.parts[pi];
        auto emit = [&](const char* kind, const RatVec& v) {
            out << block << ',' << pi << ',' << kind;
            for (const auto& c : v) out << ',' << c.str();
            for (const auto& c : v) out << ',' << fmt17(c.to_double());
            out << '\n';
        };
        for (const auto& p : g.points) emit("point", p);
        for (const auto& r : g.rays) emit("ray", r);
    }
}

int cmd_set_dump(const std::string& path, const std::string& t_str, unsigned pair_index,
                 const std::string& out_path) {
    Scenario sc = load_scenario(path);
    Rational t = rational_from_string(t_str);
    auto dy = DyadicRational::try_from_rational(t);
    if (!dy) {
        std::cerr << "set-dump: t must be dyadic (exactness gate)\n";
        return 2;
    }
    auto pairs = sc.all_pairs();
    if (pair_index >= pairs.size()) {
        std::cerr << "set-dump: pair index out of range (have " << pairs.size() << ")\n";
        return 2;
    }
    const auto& [x, y] = pairs[pair_index];
    ConclusionSets sets = conclusion_sets(sc, x, y, *dy);

    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "set-dump: cannot write " << out_path << "\n";
        return 2;
    }
    out << "block,part,kind,coords...,floats...\n";
    dump_union(out, "A_perp", sets.a_perp);
    dump_union(out, "B_perp", sets.b_perp);
    dump_union(out, "LHS", sets.lhs);
    dump_union(out, "RHS", sets.rhs);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Set-valued convexity verifier: Takagi/Tabor error terms, polyhedral "
                 "set arithmetic, and inclusion theorem checks"};
    app.require_subcommand(1);

    // eval
    std::string function = "takagi", c_str = "1", xnorm_str = "1", norm_str = "euclidean";
    std::string lo_str = "0", hi_str = "1", out_path = "out.csv";
    double alpha = 1.0, tol = 5e-11;
    unsigned grid = 1000;
    auto* eval = app.add_subcommand("eval", "Emit CSV plot data for T, tau_alpha, or phi_perp");
    eval->add_option("--function", function)->check(CLI::IsMember({"takagi", "tau", "phi-perp"}));
    eval->add_option("--alpha", alpha);
    eval->add_option("--c", c_str, "phi coefficient (rational, e.g. 1/4)");
    eval->add_option("--x-norm", xnorm_str, "norm of x for phi-perp (rational)");
    eval->add_option("--norm", norm_str)->check(CLI::IsMember({"euclidean", "l1", "linf"}));
    eval->add_option("--grid", grid);
    eval->add_option("--lo", lo_str);
    eval->add_option("--hi", hi_str);
    eval->add_option("--tol", tol);
    eval->add_option("--out", out_path)->required();

    // verify
    std::string scenario_path, reading = "";
    int depth_flag = -1;
    bool json_output = false, text_output = false, no_mutations = false, no_extensions = false;
    auto* verify = app.add_subcommand("verify", "Run the scenario's checks in fixed order");
    verify->add_option("scenario", scenario_path)->required();
    verify->add_option("--depth", depth_flag);
    verify->add_option("--reading", reading)->check(CLI::IsMember({"cvn-a", "cvn-b"}));
    verify->add_flag("--json", json_output);
    verify->add_flag("--text", text_output);
    verify->add_flag("--no-mutations", no_mutations);
    verify->add_flag("--no-extensions", no_extensions);

    // set-dump
    std::string t_str = "1/2";
    unsigned pair_index = 0;
    auto* dump = app.add_subcommand("set-dump", "Dump transform and inclusion sets as CSV blocks");
    dump->add_option("scenario", scenario_path)->required();
    dump->add_option("--t", t_str, "dyadic t (rational, e.g. 3/8)");
    dump->add_option("--pair", pair_index);
    dump->add_option("--out", out_path)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval->parsed())
            return cmd_eval(function, alpha, c_str, xnorm_str, norm_str, grid, lo_str, hi_str,
                            tol, out_path);
        if (verify->parsed())
            return cmd_verify(scenario_path, depth_flag, reading, json_output && !text_output,
                              no_mutations, no_extensions);
        if (dump->parsed()) return cmd_set_dump(scenario_path, t_str, pair_index, out_path);
    } catch (const tabor::ScenarioError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
