#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hlest/hlest.hpp"

namespace hlest::cli {

using nlohmann::json;

inline std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct Common {
    std::string out;
    bool as_json = false;
};

inline void add_common(CLI::App* app, Common& c) {
    app->add_option("--out", c.out, "write output to this path instead of stdout");
    app->add_flag("--json", c.as_json, "structured JSON output");
}

inline json trace_json(const QueryResult& r) {
    json t = json::array();
    for (const auto& it : r.trace)
        t.push_back({{"q", it.q},
                     {"delta_q", it.delta_q},
                     {"R_q", it.R_q},
                     {"sigma", it.sigma},
                     {"t", it.t},
                     {"Q", it.Q},
                     {"L_cum", it.L_cum.str()}});
    return t;
}

inline std::vector<double> log_spaced(double from, double to, int points) {
    require(from > 0.0 && to > 0.0, "sweep: eps bounds must be positive");
    require(points >= 1, "sweep: points must be >= 1");
    std::vector<double> v;
    for (int i = 0; i < points; ++i) {
        const double f = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
        // Round to 12 significant digits so decade endpoints print cleanly.
        const double x = from * std::pow(to / from, f);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", x);
        v.push_back(std::stod(buf));
    }
    return v;
}

inline std::vector<double> int_spaced(double from, double to, int points) {
    require(points >= 1, "sweep: points must be >= 1");
    std::vector<double> v;
    for (int i = 0; i < points; ++i) {
        const double f = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
        const double x = std::round(from + (to - from) * f);
        if (v.empty() || v.back() != x) v.push_back(x);
    }
    return v;
}

// Runs one command line (without the program name). Output goes to `out` unless
// --out names a file; diagnostics go to `err`. Returns the process exit code:
// 0 success, 1 domain error, 2 usage error.
inline int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Heisenberg-limited estimation cost and probe-state analysis"};
    app.require_subcommand(1);
    std::ostringstream buf;
    Common common;

    // qae-mse
    auto* qae = app.add_subcommand("qae-mse", "amplitude-estimation MSE over a theta grid");
    int q = 8, points = 10000;
    std::string qprobe = "sine";
    bool full_range = false;
    std::optional<double> lo, hi;
    qae->add_option("--q", q, "probe qubits")->required()->check(CLI::Range(3, 12));
    qae->add_option("--probe", qprobe, "uniform | sine | optimal | compare")
        ->check(CLI::IsMember({"uniform", "sine", "optimal", "compare"}));
    qae->add_option("--points", points, "theta grid size")->check(CLI::Range(1, 10000000));
    qae->add_flag("--full-range", full_range, "use [0, pi/2) instead of [0.01, pi/2 - 0.01)");
    qae->add_option("--theta-lo", lo, "grid start");
    qae->add_option("--theta-hi", hi, "grid end (excluded)");
    add_common(qae, common);

    // probe-failure
    auto* pf = app.add_subcommand("probe-failure", "phase-estimation failure probability of probe states");
    std::string pfam = "all";
    int p = 3, grid = 100000;
    double alpha = 0.98;
    bool kscan = false;
    double a_from = 0.0, a_to = 30.0;
    int a_steps = 31;
    pf->add_option("--probe", pfam, "uniform | cos1 | cos2 | kaiser | all")
        ->check(CLI::IsMember({"uniform", "cos1", "cos2", "kaiser", "all"}));
    pf->add_option("--p", p, "probe qubits")->check(CLI::Range(1, 12));
    pf->add_option("--alpha", alpha, "kaiser shape parameter")->check(CLI::NonNegativeNumber);
    pf->add_option("--grid", grid, "theta grid size over [0, 1)")->check(CLI::Range(1, 100000000));
    pf->add_flag("--kaiser-scan", kscan, "tabulate max failure against alpha");
    pf->add_option("--alpha-from", a_from)->check(CLI::NonNegativeNumber);
    pf->add_option("--alpha-to", a_to)->check(CLI::NonNegativeNumber);
    pf->add_option("--alpha-steps", a_steps)->check(CLI::Range(1, 100000));
    add_common(pf, common);

    // complexity
    auto* cx = app.add_subcommand("complexity", "total query count of one estimation method");
    std::string method;
    int N = 0, eta = -1, k = 1;
    double eps = 1e-3;
    bool trace = false;
    std::optional<double> v_override;
    cx->add_option("--method", method, "shadow | qae | wyy | method1 | method2")
        ->required()
        ->check(CLI::IsMember({"shadow", "qae", "wyy", "method1", "method2"}));
    cx->add_option("--N", N, "fermionic modes")->required()->check(CLI::Range(1, 100000));
    cx->add_option("--eta", eta, "particle number")->check(CLI::Range(0, 100000));
    cx->add_option("--k", k, "RDM order")->check(CLI::Range(1, 100000));
    cx->add_option("--eps", eps, "target root-MSE")->required()->check(CLI::Range(0.0, 1.0));
    cx->add_flag("--trace", trace, "JSON with the per-iteration trace");
    cx->add_option("--v", v_override, "probe variance override (method1, method2, wyy)")->check(CLI::PositiveNumber);
    add_common(cx, common);

    // sweep
    auto* sw = app.add_subcommand("sweep", "query counts of every method along one axis");
    std::string mode, axis;
    int sk = 1, spoints = 5, sN = 64;
    double from = 0.1, to = 1e-5, seps = 1e-3;
    std::vector<double> values;
    sw->add_option("--mode", mode, "femo (N=152, eta=113) | hubbard (eta = ceil(7N/8))")
        ->required()
        ->check(CLI::IsMember({"femo", "hubbard"}));
    sw->add_option("--axis", axis, "eps | N")->required()->check(CLI::IsMember({"eps", "N"}));
    sw->add_option("--k", sk)->check(CLI::Range(1, 100000));
    sw->add_option("--from", from);
    sw->add_option("--to", to);
    sw->add_option("--points", spoints)->check(CLI::Range(1, 100000));
    sw->add_option("--values", values, "explicit axis values (overrides from/to/points)")->delimiter(',');
    sw->add_option("--N", sN, "mode count for a hubbard eps sweep")->check(CLI::Range(1, 100000));
    sw->add_option("--eps", seps, "precision for an N sweep")->check(CLI::Range(0.0, 1.0));
    add_common(sw, common);

    // hs-degree
    auto* hs = app.add_subcommand("hs-degree", "minimal polynomial degree for Hamiltonian simulation");
    double ht = 1.0, heps = 0.5;
    hs->add_option("--t", ht, "simulation time")->required();
    hs->add_option("--eps", heps, "polynomial accuracy")->required();
    add_common(hs, common);

    // oracle
    auto* orc = app.add_subcommand("oracle", "dense brute-force checks");
    orc->require_subcommand(1);
    auto* fnorm = orc->add_subcommand("fermion-norm", "sector norm of the summed squared k-RDM observables");
    int oN = 2, oeta = 1, ok = 1;
    fnorm->add_option("--N", oN)->required()->check(CLI::Range(1, kMaxDenseModes));
    fnorm->add_option("--eta", oeta)->required()->check(CLI::Range(0, kMaxDenseModes));
    fnorm->add_option("--k", ok)->required()->check(CLI::Range(1, kMaxDenseModes));
    add_common(fnorm, common);
    auto* ident = orc->add_subcommand("identity", "exact binomial convolution identity table");
    int nmax = 12;
    ident->add_option("--Nmax", nmax)->check(CLI::Range(0, 200));
    add_common(ident, common);
    auto* mc = orc->add_subcommand("mc", "Monte-Carlo exceedance of randomly weighted observable sums");
    int mN = 4, meta = 2, mk = 1, trials = 10000;
    std::uint64_t seed = 1;
    std::string mprobe = "cos1";
    std::optional<double> mt;
    mc->add_option("--N", mN)->check(CLI::Range(1, 6));
    mc->add_option("--eta", meta)->check(CLI::Range(0, 6));
    mc->add_option("--k", mk)->check(CLI::Range(1, 6));
    mc->add_option("--trials", trials)->check(CLI::Range(100, 10000000));
    mc->add_option("--seed", seed);
    mc->add_option("--probe", mprobe)->check(CLI::IsMember({"uniform", "cos1", "cos2"}));
    mc->add_option("--threshold", mt, "default: sigma from the sector bound");
    add_common(mc, common);

    std::vector<std::string> argv_store{"hlest"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_store) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (qae->parsed()) {
            double a = full_range ? 0.0 : 0.01, b = full_range ? std::numbers::pi / 2 : std::numbers::pi / 2 - 0.01;
            if (lo) a = *lo;
            if (hi) b = *hi;
            const auto thetas = theta_grid(a, b, points);
            const auto sine = make_probe(Family::sine_qae, q);
            const auto uni = make_probe(Family::uniform, q);
            std::vector<std::vector<double>> cols;
            std::vector<std::string> names;
            auto add_col = [&](const std::string& name, auto f) {
                std::vector<double> c;
                c.reserve(thetas.size());
                for (double th : thetas) c.push_back(f(QaeSpec(q, th)));
                cols.push_back(std::move(c));
                names.push_back(name);
            };
            auto sine_f = [&](const QaeSpec& s) { return mse_quadform(sine, s); };
            auto uni_f = [&](const QaeSpec& s) { return mse_quadform(uni, s); };
            auto opt_f = [&](const QaeSpec& s) {
                require(q <= 9, "qae-mse: the optimal probe needs q <= 9");
                return optimal_mse(s);
            };
            if (qprobe == "compare") {
                add_col("mse_sine", sine_f);
                add_col("mse_uniform", uni_f);
                add_col("mse_optimal", opt_f);
            } else if (qprobe == "sine") {
                add_col("mse", sine_f);
            } else if (qprobe == "uniform") {
                add_col("mse", uni_f);
            } else {
                add_col("mse", opt_f);
            }
            if (common.as_json) {
                json j = {{"q", q}, {"probe", qprobe}, {"points", points}};
                for (std::size_t c = 0; c < cols.size(); ++c) {
                    std::size_t best = 0;
                    for (std::size_t i = 1; i < thetas.size(); ++i)
                        if (cols[c][i] > cols[c][best]) best = i;
                    j["max"][names[c]] = {{"max", cols[c][best]}, {"argmax", thetas[best]}};
                }
                buf << j.dump(2) << "\n";
            } else {
                buf << "theta";
                for (const auto& n : names) buf << ',' << n;
                buf << '\n';
                for (std::size_t i = 0; i < thetas.size(); ++i) {
                    buf << fmt(thetas[i]);
                    for (const auto& c : cols) buf << ',' << fmt(c[i]);
                    buf << '\n';
                }
            }
        } else if (pf->parsed()) {
            auto build = [&](const std::string& f) {
                const Family fam = parse_family(f);
                return fam == Family::kaiser ? make_probe(fam, p, alpha) : make_probe(fam, p);
            };
            if (kscan) {
                require(a_to >= a_from, "probe-failure: need alpha-to >= alpha-from");
                buf << "alpha,max_failure\n";
                for (int i = 0; i < a_steps; ++i) {
                    const double a = a_steps == 1 ? a_from : a_from + (a_to - a_from) * i / (a_steps - 1);
                    buf << fmt(a) << ',' << fmt(max_failure(make_probe(Family::kaiser, p, a), grid).max) << '\n';
                }
            } else {
                std::vector<std::string> fams =
                    pfam == "all" ? std::vector<std::string>{"uniform", "cos1", "cos2", "kaiser"}
                                  : std::vector<std::string>{pfam};
                std::vector<MaxFailure> res;
                for (const auto& f : fams) res.push_back(max_failure(build(f), grid));
                if (common.as_json) {
                    json j = {{"p", p}, {"grid", grid}};
                    for (std::size_t i = 0; i < fams.size(); ++i) {
                        const auto s = build(fams[i]);
                        j["families"][fams[i]] = {
                            {"max_failure", res[i].max}, {"argmax", res[i].argmax}, {"variance", probe_variance(s)}};
                        if (fams[i] == "kaiser") j["families"][fams[i]]["alpha"] = alpha;
                    }
                    buf << j.dump(2) << "\n";
                } else {
                    buf << "theta";
                    if (fams.size() == 1)
                        buf << ",failure_prob";
                    else
                        for (const auto& f : fams) buf << ',' << f;
                    buf << '\n';
                    for (std::size_t i = 0; i < res[0].curve.thetas.size(); ++i) {
                        buf << fmt(res[0].curve.thetas[i]);
                        for (const auto& r : res) buf << ',' << fmt(r.curve.probs[i]);
                        buf << '\n';
                    }
                }
            }
        } else if (cx->parsed()) {
            const Method m = parse_method(method);
            QueryResult r;
            if (m == Method::method1 || m == Method::method2) {
                require(eta >= 0, "complexity: --eta is required for " + method);
            }
            if (m == Method::method1) {
                Method1Options o;
                if (v_override) o.v = *v_override;
                r = method1_queries(N, eta, k, eps, o);
            } else if (m == Method::method2) {
                Method2Options o;
                if (v_override) o.v = *v_override;
                r = method2_queries(N, eta, k, eps, o);
            } else if (m == Method::wyy) {
                WyyOptions o;
                if (v_override) o.v = *v_override;
                r = wyy_queries(N, k, eps, o);
            } else {
                r = run_method({N, eta, k, eps, m});
            }
            if (trace || common.as_json) {
                json j = {{"method", method}, {"N", N}, {"k", k}, {"eps", eps}, {"L", r.L.str()}};
                if (eta >= 0) j["eta"] = eta;
                if (trace) j["trace"] = trace_json(r);
                buf << j.dump(2) << "\n";
            } else {
                buf << r.L.str() << "\n";
            }
        } else if (sw->parsed()) {
            const bool femo = mode == "femo";
            ComplexityParams base;
            base.k = sk;
            base.N = femo ? 152 : sN;
            base.eta = femo ? 113 : hubbard_filling(base.N);
            base.eps = seps;
            const SweepAxis ax = axis == "eps" ? SweepAxis::eps : SweepAxis::N;
            std::vector<double> vals = values;
            if (vals.empty()) {
                if (ax == SweepAxis::eps)
                    vals = log_spaced(from, to, spoints);
                else
                    vals = int_spaced(sw->count("--from") ? from : 16, sw->count("--to") ? to : 96, spoints);
            }
            const auto rows = complexity_sweep(base, ax, vals, !femo);
            if (common.as_json) {
                json j = json::array();
                for (const auto& r : rows) {
                    json row = {{"axis", r.axis}, {"N", r.N}, {"eta", r.eta}, {"eps", r.eps}};
                    for (std::size_t i = 0; i < kSweepColumns.size(); ++i)
                        row[method_name(kSweepColumns[i])] = r.cells[i] ? json(r.cells[i]->str()) : json(nullptr);
                    j.push_back(row);
                }
                buf << j.dump(2) << "\n";
            } else {
                buf << sweep_csv(rows);
            }
        } else if (hs->parsed()) {
            const auto Q = hs_degree(ht, heps);
            if (common.as_json)
                buf << json{{"t", ht}, {"eps", heps}, {"Q", Q}}.dump(2) << "\n";
            else
                buf << Q << "\n";
        } else if (fnorm->parsed()) {
            const auto r = sector_norm_report(oN, oeta, ok);
            buf << json{{"N", oN},
                        {"eta", oeta},
                        {"k", ok},
                        {"brute_norm", r.brute_norm},
                        {"closed_coefficient", r.closed_coefficient},
                        {"upper_bound", r.upper_bound},
                        {"identity_deviation", r.identity_deviation},
                        {"commutator_norm", r.commutator_norm}}
                       .dump(2)
                << "\n";
        } else if (ident->parsed()) {
            buf << "N,eta,k,lhs_numerator,lhs_denominator,rhs,result\n";
            bool all = true;
            for (int n = 0; n <= nmax; ++n)
                for (int kk = 0; kk <= n; ++kk)
                    for (int e = kk; e + kk <= n; ++e) {
                        const auto c = identity_check(n, e, kk);
                        all = all && c.holds();
                        buf << n << ',' << e << ',' << kk << ',' << c.lhs_numerator.str() << ','
                            << c.lhs_denominator.str() << ',' << c.rhs.str() << ',' << (c.holds() ? "pass" : "fail")
                            << '\n';
                    }
            if (!all) err << "identity: at least one case failed\n";
        } else if (mc->parsed()) {
            const auto probe = make_probe(parse_family(mprobe), 3);
            const double thr = mt ? *mt : sigma_method1(mN, meta, mk, probe_variance(probe), 1.0 / 1024.0);
            const auto norms = coefficient_norm_samples(mN, meta, mk, probe, trials, seed);
            buf << json{{"N", mN},
                        {"eta", meta},
                        {"k", mk},
                        {"probe", mprobe},
                        {"trials", trials},
                        {"seed", seed},
                        {"threshold", thr},
                        {"max_norm", *std::max_element(norms.begin(), norms.end())},
                        {"exceedance_rate", exceedance_rate(norms, thr)}}
                       .dump(2)
                << "\n";
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    if (!common.out.empty()) {
        std::ofstream f(common.out, std::ios::binary);
        if (!f) {
            err << "error: cannot open " << common.out << "\n";
            return 1;
        }
        f << buf.str();
    } else {
        out << buf.str();
    }
    return 0;
}

}  // namespace hlest::cli
