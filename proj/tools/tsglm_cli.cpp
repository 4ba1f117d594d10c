// tsglm command line: verify tableaux, run integrations, run convergence
// sweeps, export built-in methods. Exit codes: 0 success, 1 runtime or
// integration failure, 2 input/parse failure.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "tsglm/gamma.hpp"
#include "tsglm/methods.hpp"
#include "tsglm/problems.hpp"
#include "tsglm/tableau_io.hpp"

namespace {

using namespace tsglm;

constexpr int kExitRuntime = 1;
constexpr int kExitInput = 2;

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

template <Scalar S>
std::string pretty(const S& x) {
    if constexpr (std::is_same_v<S, Quad>) {
        if (x.is_rational()) return x.rat().str();
        return "(" + x.rat().str() + ") + (" + x.irr().str() +
               ") sqrt41 ~= " + fmt17(x.to_double());
    } else {
        return scalar_traits<S>::str(x);
    }
}

struct MethodSpec {
    LoadedTableau loaded;
    std::string source;
};

MethodSpec resolve_method(const std::string& method, const std::string& tableau_path) {
    if (!method.empty() && !tableau_path.empty())
        throw CLI::ValidationError("give either --method or --tableau, not both");
    if (!method.empty()) {
        BuiltinMethod bm = builtin_method(method);
        LoadedTableau lt;
        lt.tableau = std::move(bm.tableau);
        lt.declared_order = bm.declared_order;
        lt.declared_stage_order = bm.declared_stage_order;
        return {std::move(lt), "method " + method};
    }
    if (!tableau_path.empty()) return {load_tableau_file(tableau_path), tableau_path};
    throw CLI::ValidationError("--method or --tableau is required");
}

Tableau<double> runtime_tableau(const LoadedTableau& lt) {
    return std::visit([](const auto& t) { return to_double_tableau(t); }, lt.tableau);
}

// ------------------------------------------------------------------ verify

template <Scalar S>
int verify_report(const Tableau<S>& t, const LoadedTableau& lt, double tol) {
    std::cout << "tableau: " << t.name << " (" << t.s << " stages, "
              << scalar_traits<S>::name() << " scalars)\n";
    const auto violations = validate(t);
    if (!violations.empty()) {
        std::cout << "structural check: " << violations.size() << " violation(s)\n";
        for (const auto& v : violations) std::cout << "  " << v.condition << "\n";
        return kExitRuntime;
    }
    std::cout << "structural check: ok\n";
    std::cout << "explicit: " << (is_explicit(t, tol) ? "yes" : "no") << "\n";
    std::cout << "one-step reduction: " << (is_one_step(t, tol) ? "yes" : "no") << "\n";

    const int declared = lt.declared_order.value_or(0);
    const int declared_stage = lt.declared_stage_order.value_or(0);
    const int k_max = std::max({declared + 1, declared_stage + 2, 6});
    const GammaSet<S> g = build_gammas(t, k_max);
    OrderReport rep;
    uniform_order(t, g, tol, &rep);

    std::cout << "uniform stage order: " << rep.uniform_stage_order << "\n";
    std::cout << "uniform order: " << rep.uniform_order << "\n";
    std::cout << "discrete order at alpha = 1 (necessary): " << rep.discrete_order_at_1 << "\n";
    for (int k = rep.uniform_order + 1; k <= std::min(rep.uniform_order + 1, k_max); ++k)
        std::cout << "barrier defect (k-1)! Gamma_k(1) at k = " << k << ": "
                  << pretty(discrete_order_barrier(g, k)) << "\n";
    // stage defects one past the stage order, at both ends of their domain
    const int ks = rep.uniform_stage_order + 1;
    if (ks <= k_max)
        for (int i = 0; i < t.s; ++i) {
            if (scalar_traits<S>::is_zero(t.c[static_cast<size_t>(i)], tol)) continue;
            const auto& p = g.stage_at(i, ks);
            std::cout << "stage " << (i + 1) << " defect Gamma_{" << (i + 1) << "," << ks
                      << "}: at alpha=1: " << pretty(p.eval(scalar_traits<S>::one()))
                      << "; at alpha=c_" << (i + 1) << ": "
                      << pretty(p.eval(t.c[static_cast<size_t>(i)])) << "\n";
        }
    if (!rep.note.empty()) std::cout << "note: " << rep.note << "\n";
    for (const auto& w : rep.witnesses)
        std::cout << "witness: " << w.condition << "  [" << w.poly << "; first coeff "
                  << w.first_coeff << "]\n";

    if (lt.declared_order) {
        const bool ok = rep.uniform_order >= *lt.declared_order &&
                        rep.uniform_stage_order >= declared_stage;
        std::cout << "declared order " << *lt.declared_order
                  << (lt.declared_stage_order
                          ? " / stage order " + std::to_string(*lt.declared_stage_order)
                          : "")
                  << ": " << (ok ? "certified" : "NOT certified") << "\n";
        return ok ? 0 : kExitRuntime;
    }
    std::cout << "no declared order in metadata\n";
    return 0;
}

int cmd_verify(const std::string& method, const std::string& tableau_path) {
    const MethodSpec spec = resolve_method(method, tableau_path);
    const char* exact_env = std::getenv("TSGLM_EXACT");
    const bool float_mode = exact_env && std::string(exact_env) == "0";
    if (float_mode) {
        std::cout << "arithmetic: double (diagnostic mode, zero tolerance 1e-12)\n";
        return verify_report(runtime_tableau(spec.loaded), spec.loaded, 1e-12);
    }
    std::cout << "arithmetic: exact\n";
    return std::visit([&](const auto& t) { return verify_report(t, spec.loaded, 0.0); },
                      spec.loaded.tableau);
}

// --------------------------------------------------------------------- run

int cmd_run(const std::string& method, const std::string& tableau_path,
            const std::string& problem_label, double h, std::optional<double> t_end,
            const std::string& out_path, int probe) {
    const MethodSpec spec = resolve_method(method, tableau_path);
    const Tableau<double> tab = runtime_tableau(spec.loaded);
    TestProblem tp = problem_by_label(problem_label);
    if (t_end) tp.problem.T = *t_end;

    const Solution sol = integrate(tab, tp.problem, h);
    if (sol.status != Solution::Status::completed) {
        std::cerr << "integration failed: " << sol.failure << "\n";
        return kExitRuntime;
    }

    std::ostringstream csv;
    csv << "t";
    for (int d = 0; d < tp.problem.dim(); ++d) csv << ",y" << d;
    csv << "\n";
    const int dim = tp.problem.dim();
    std::vector<double> y(static_cast<size_t>(dim));
    auto emit_row = [&](double t, std::span<const double> vals) {
        csv << fmt17(t);
        for (double v : vals) csv << ',' << fmt17(v);
        csv << "\n";
    };
    tp.problem.phi.phi(0.0, y);
    emit_row(tp.problem.t0, y);
    for (const DenseSegment& seg : sol.history.segments())
        for (int k = 1; k <= probe; ++k) {
            const double alpha = static_cast<double>(k) / probe;
            seg.eval(alpha, y);
            emit_row(seg.t_start + alpha * seg.h, y);
        }

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            std::cerr << "cannot open output file " << out_path << "\n";
            return kExitInput;
        }
        os = &file;
    }
    *os << csv.str();

    std::ostream& summary = out_path.empty() ? std::cerr : std::cout;
    sol.history.eval(sol.history.t_end(), y);
    summary << "steps: " << sol.stats.steps << "  f_evals: " << sol.stats.f_evals
            << "  endpoint t = " << fmt17(sol.history.t_end()) << ":";
    for (double v : y) summary << ' ' << fmt17(v);
    if (sol.stats.nonuniform_final_step) summary << "  [warning: nonuniform-final-step]";
    summary << "\n";
    return 0;
}

// ------------------------------------------------------------------- order

int cmd_order(const std::string& method, const std::string& tableau_path,
              const std::string& problem_label, std::vector<double> h_list,
              std::optional<double> t_end, const std::string& out_path, int probe) {
    const MethodSpec spec = resolve_method(method, tableau_path);
    const Tableau<double> tab = runtime_tableau(spec.loaded);
    TestProblem tp = problem_by_label(problem_label);
    if (t_end) tp.problem.T = *t_end;
    if (!tp.exact) {
        std::cerr << "problem '" << problem_label << "' has no exact solution\n";
        return kExitInput;
    }

    const auto rows = observed_order(tab, tp.problem, tp.exact, h_list, probe);
    std::ostringstream csv;
    csv << "h,uniform_err,endpoint_err,rate_uniform,rate_endpoint\n";
    for (const auto& r : rows)
        csv << fmt17(r.h) << ',' << fmt17(r.uniform_err) << ',' << fmt17(r.endpoint_err) << ','
            << fmt17(r.rate_uniform) << ',' << fmt17(r.rate_endpoint) << "\n";

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            std::cerr << "cannot open output file " << out_path << "\n";
            return kExitInput;
        }
        os = &file;
    }
    *os << csv.str();

    std::ostream& summary = out_path.empty() ? std::cerr : std::cout;
    bool any_failed = false;
    for (const auto& r : rows)
        if (r.failed) {
            summary << "h = " << fmt17(r.h) << " failed: " << r.failure << "\n";
            any_failed = true;
        }
    summary << "final rates: uniform " << fmt17(rows.back().rate_uniform) << "  endpoint "
            << fmt17(rows.back().rate_endpoint) << "\n";
    return any_failed ? kExitRuntime : 0;
}

// ------------------------------------------------------------------ export

int cmd_export(const std::string& method, const std::string& out_path) {
    BuiltinMethod bm = builtin_method(method);
    const std::string text = std::visit(
        [&](const auto& t) { return serialize(t, bm.declared_order, bm.declared_stage_order); },
        bm.tableau);
    if (out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream file(out_path);
    if (!file) {
        std::cerr << "cannot open output file " << out_path << "\n";
        return kExitInput;
    }
    file << text;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-step general linear methods for delay differential equations"};
    app.require_subcommand(1);
    // the spec'd --h option needs the short help flag out of the way
    app.set_help_flag("--help", "print help");

    std::string method, tableau_path, problem_label, out_path;
    std::optional<double> t_end;
    double h = 0.0;
    std::vector<double> h_list;
    int probe = 33;

    auto add_method_opts = [&](CLI::App* sub) {
        sub->set_help_flag("--help", "print help");
        sub->add_option("--method", method, "built-in method name (order4, order5, starter)");
        sub->add_option("--tableau", tableau_path, "tableau file");
    };

    CLI::App* verify = app.add_subcommand("verify", "certify a tableau's order conditions");
    add_method_opts(verify);
    std::string verify_positional;
    verify->add_option("file", verify_positional, "tableau file (same as --tableau)");

    CLI::App* run = app.add_subcommand("run", "integrate a problem, emit dense CSV");
    add_method_opts(run);
    run->add_option("--problem", problem_label, "problem label")->required();
    run->add_option("--h", h, "stepsize")->required();
    run->add_option("--t-end", t_end, "override the problem's right endpoint");
    run->add_option("--out", out_path, "CSV output path (default stdout)");
    run->add_option("--probe", probe, "dense samples per step (default 33)");

    CLI::App* order = app.add_subcommand("order", "convergence sweep over a halving h-list");
    add_method_opts(order);
    order->add_option("--problem", problem_label, "problem label")->required();
    order->add_option("--h-list", h_list, "comma-separated halving stepsizes")
        ->required()
        ->delimiter(',');
    order->add_option("--t-end", t_end, "override the problem's right endpoint");
    order->add_option("--out", out_path, "CSV output path (default stdout)");
    order->add_option("--probe", probe, "dense samples per step (default 33)");

    CLI::App* exp = app.add_subcommand("export", "write a built-in method as a tableau file");
    exp->set_help_flag("--help", "print help");
    exp->add_option("--method", method, "built-in method name")->required();
    exp->add_option("--out", out_path, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitInput;
    }

    try {
        if (verify->parsed()) {
            if (!verify_positional.empty()) {
                if (!tableau_path.empty() || !method.empty()) {
                    std::cerr << "give the tableau once\n";
                    return kExitInput;
                }
                tableau_path = verify_positional;
            }
            return cmd_verify(method, tableau_path);
        }
        if (run->parsed())
            return cmd_run(method, tableau_path, problem_label, h, t_end, out_path, probe);
        if (order->parsed())
            return cmd_order(method, tableau_path, problem_label, h_list, t_end, out_path, probe);
        if (exp->parsed()) return cmd_export(method, out_path);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitInput;
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}
