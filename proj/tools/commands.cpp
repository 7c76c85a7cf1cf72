#include "commands.hpp"

#include <ostream>

#include <CLI11.hpp>

#include "pcub/cauchy_kernel.hpp"
#include "pcub/cubature.hpp"
#include "pcub/errors.hpp"
#include "pcub/io.hpp"
#include "pcub/random.hpp"
#include "pcub/verify.hpp"

namespace pcub::cli {

namespace {

using io::Json;

constexpr int kDefaultMTau = 256;

struct Output {
    std::string text;
    int code = kOk;
};

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

GaussOptions gauss_options(const RunConfig& rc) {
    GaussOptions g;
    if (rc.tol) g.rel_tol = *rc.tol;
    return g;
}

Annulus outer_annulus(const Json& cfg, const Annulus& ann) {
    if (cfg.contains("outer_annulus")) return io::annulus_from_json(cfg.at("outer_annulus"));
    return Annulus(0.9 * ann.a(), 1.1 * ann.b());
}

int m_tau(const Json& cfg) {
    const int m = cfg.contains("M_tau") ? io::require_int(cfg, "M_tau") : kDefaultMTau;
    if (m < 1) throw ConfigError("M_tau must be positive");
    return m;
}

template <class T>
std::vector<T> list_of(const Json& cfg, const char* key) {
    const auto& v = io::require(cfg, key);
    if (!v.is_array() || v.empty()) throw ConfigError(std::string("'") + key + "' must be a nonempty list");
    try {
        return v.get<std::vector<T>>();
    } catch (const Json::exception&) {
        throw ConfigError(std::string("'") + key + "' has entries of the wrong type");
    }
}

Complex complex_of(const Json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError(std::string(what) + " must be a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

Output cmd_rule(const RunConfig& rc, const Json& cfg) {
    const Annulus ann = io::annulus_from_json(io::require(cfg, "annulus"));
    const int d = io::require_int(cfg, "d");
    const int N = io::require_int(cfg, "N");
    const auto mu = io::measure_from_json(io::require(cfg, "measure"), d, ann);
    const auto gauss = build_gauss_measure(mu, N, gauss_options(rc));
    const auto residuals = io::rule_residuals(mu, gauss);
    if (rc.format.value_or("json") == "csv") return {io::rules_to_csv(gauss, residuals)};
    return {dump(io::rules_to_json(gauss, residuals))};
}

std::string report_csv(const ErrorReport& report) {
    std::string out = std::string(io::kCsvVersion) + "\n";
    out += "k,l,re_exact,im_exact,re_cubature,im_cubature,re_error,im_error\n";
    for (const auto& [idx, ce] : report.components) {
        out += std::to_string(idx.k) + "," + std::to_string(idx.l);
        for (Complex v : {ce.exact, ce.cubature, ce.error})
            out += "," + io::format_double(v.real()) + "," + io::format_double(v.imag());
        out += "\n";
    }
    return out;
}

Output cmd_cubature(const RunConfig& rc, const Json& cfg) {
    const Annulus ann = io::annulus_from_json(io::require(cfg, "annulus"));
    const int d = io::require_int(cfg, "d");
    const int N = io::require_int(cfg, "N");
    const double L = io::require_double(cfg, "L");
    const auto mu = io::measure_from_json(io::require(cfg, "measure"), d, ann);
    const auto f = io::hardy_components_from_json(io::require(io::require(cfg, "function"), "components"), d, L);
    const Annulus outer = outer_annulus(cfg, ann);

    const auto gauss = build_gauss_measure(mu, N, gauss_options(rc));
    auto report = error_functional(f, mu, gauss);

    std::map<int, double> Ck;
    if (cfg.contains("Ck")) {
        for (const auto& e : cfg.at("Ck")) Ck[io::require_int(e, "k")] = io::require_double(e, "C_k");
    } else {
        Ck = estimate_Ck_all(mu, gauss, outer, m_tau(cfg));
    }
    attach_bound(report, f, Ck, outer);

    if (rc.format.value_or("json") == "csv") return {report_csv(report)};
    Json out{{"N", N}, {"L", L}, {"annulus", io::to_json(ann)}, {"outer_annulus", io::to_json(outer)}};
    out["Ck_source"] = cfg.contains("Ck") ? "config" : "estimate_Ck";
    out.update(io::to_json(report));
    return {dump(out)};
}

Output cmd_kernel(const RunConfig& rc, const Json& cfg) {
    struct Row {
        int k;
        Complex z, tau;
        Side side;
        Complex K;
    };
    std::vector<Row> rows;
    const int d = cfg.contains("d") ? io::require_int(cfg, "d") : 3;

    if (cfg.contains("queries")) {
        for (const auto& q : cfg.at("queries")) {
            const std::string s = io::require(q, "side").get<std::string>();
            if (s != "inner" && s != "outer") throw ConfigError("side must be 'inner' or 'outer'");
            const KernelQuery kq{io::require_int(q, "k"), d, complex_of(io::require(q, "z"), "z"),
                                 complex_of(io::require(q, "tau"), "tau"), s == "inner" ? Side::inner : Side::outer};
            rows.push_back({kq.k, kq.z, kq.tau, kq.side, kernel_Kk(kq)});
        }
    }
    if (cfg.contains("points")) {
        const Annulus ann = io::annulus_from_json(io::require(cfg, "annulus"));
        const auto ks = list_of<int>(cfg, "k");
        const int M = cfg.contains("M_tau") ? io::require_int(cfg, "M_tau") : 8;
        if (M < 1) throw ConfigError("M_tau must be positive");
        for (const auto& p : cfg.at("points")) {
            const Complex z = complex_of(p, "point");
            if (!ann.contains(z)) throw DomainError("kernel point outside the annulus");
            for (int k : ks)
                for (Side side : {Side::outer, Side::inner})
                    for (int m = 0; m < M; ++m) {
                        const Complex tau = std::polar(side == Side::outer ? ann.b() : ann.a(), kTwoPi * m / M);
                        rows.push_back({k, z, tau, side, kernel_Kk({k, d, z, tau, side})});
                    }
        }
    }
    if (rows.empty()) throw ConfigError("kernel config needs 'queries' or 'points'");

    auto side_name = [](Side s) { return s == Side::outer ? "outer" : "inner"; };
    if (rc.format.value_or("csv") == "csv") {
        std::string out = std::string(io::kCsvVersion) + "\nk,re_z,im_z,re_tau,im_tau,side,re_K,im_K\n";
        for (const auto& r : rows)
            out += std::to_string(r.k) + "," + io::format_double(r.z.real()) + "," + io::format_double(r.z.imag()) + "," +
                   io::format_double(r.tau.real()) + "," + io::format_double(r.tau.imag()) + "," + side_name(r.side) +
                   "," + io::format_double(r.K.real()) + "," + io::format_double(r.K.imag()) + "\n";
        return {out};
    }
    Json list = Json::array();
    for (const auto& r : rows)
        list.push_back(Json{{"k", r.k},
                            {"z", io::to_json(r.z)},
                            {"tau", io::to_json(r.tau)},
                            {"side", side_name(r.side)},
                            {"K", io::to_json(r.K)}});
    return {dump(Json{{"d", d}, {"rows", list}})};
}

Output cmd_verify(const RunConfig& rc, const Json& cfg) {
    VerifyOptions opt;
    opt.gauss = gauss_options(rc);
    if (cfg.contains("seed")) opt.seed = io::require(cfg, "seed").get<std::uint64_t>();
    if (cfg.contains("suites")) opt.suites = list_of<std::string>(cfg, "suites");
    if (cfg.contains("perturb")) {
        const auto& p = cfg.at("perturb");
        opt.perturb_suite = io::require(p, "suite").get<std::string>();
        opt.perturbation = io::require_double(p, "amount");
    }
    if (rc.seed) opt.seed = *rc.seed;
    if (!rc.suites.empty()) opt.suites = rc.suites;

    const auto results = run_verify(opt);
    bool all = true;
    for (const auto& r : results) all = all && r.passed;

    std::string text;
    if (rc.format.value_or("json") == "csv") {
        text = std::string(io::kCsvVersion) + "\n# rng=" + Rng::kName + " seed=" + std::to_string(opt.seed) +
               "\nsuite,passed,checks,worst,tolerance\n";
        for (const auto& r : results)
            text += r.name + "," + (r.passed ? "true" : "false") + "," + std::to_string(r.checks) + "," +
                    io::format_double(r.worst) + "," + io::format_double(r.tolerance) + "\n";
    } else {
        Json suites = Json::array();
        for (const auto& r : results) {
            Json s{{"name", r.name}, {"passed", r.passed}, {"checks", r.checks}, {"worst", r.worst},
                   {"tolerance", r.tolerance}};
            if (!r.passed) s["detail"] = r.detail;
            suites.push_back(std::move(s));
        }
        text = dump(Json{{"rng", Rng::kName}, {"seed", opt.seed}, {"passed", all}, {"suites", suites}});
    }
    return {text, all ? kOk : kVerifyFailed};
}

HardyElement truncate_degree(const HardyElement& f, int k0, double L) {
    HardyElement out(f.dimension(), L);
    for (const auto& [idx, c] : f.components())
        if (idx.k <= k0) out.set(idx, c.series());
    return out;
}

Output cmd_bound(const RunConfig& rc, const Json& cfg) {
    const Annulus ann = io::annulus_from_json(io::require(cfg, "annulus"));
    const int d = io::require_int(cfg, "d");
    const auto mu = io::measure_from_json(io::require(cfg, "measure"), d, ann);
    const Annulus outer = outer_annulus(cfg, ann);
    const int M = m_tau(cfg);
    const auto Ns = list_of<int>(cfg, "N_values");
    const auto Ls = list_of<double>(cfg, "L_values");

    HardyElement f(d, 2.0);
    std::uint64_t seed = 0;
    if (cfg.contains("function")) {
        f = io::hardy_components_from_json(io::require(cfg.at("function"), "components"), d, 2.0);
    } else {
        const auto& r = io::require(cfg, "random_function");
        seed = rc.seed.value_or(r.contains("seed") ? io::require(r, "seed").get<std::uint64_t>() : 20240601);
        Rng rng(seed);
        HardyElement g(d, 2.0);
        const int k_max = std::min(io::require_int(r, "k_max"), mu.max_degree());
        for (const auto& [idx, m] : mu.components)
            if (idx.k <= k_max)
                g.set(idx, random_component_series(rng, idx.k, d, io::require_int(r, "j_min"), io::require_int(r, "j_max")));
        f = g;
    }
    std::vector<int> k0s;
    if (cfg.contains("k0_values")) k0s = list_of<int>(cfg, "k0_values");
    else k0s.push_back(f.max_degree());

    Json rows = Json::array();
    for (int N : Ns) {
        const auto gauss = build_gauss_measure(mu, N, gauss_options(rc));
        const auto Ck = estimate_Ck_all(mu, gauss, outer, M);
        for (double L : Ls)
            for (int k0 : k0s) {
                const auto g = truncate_degree(f, k0, L);
                auto rep = error_functional(g, mu, gauss);
                attach_bound(rep, g, Ck, outer);
                const double e = std::abs(rep.total_error);
                rows.push_back(Json{{"N", N},
                                    {"L", L},
                                    {"k0", k0},
                                    {"abs_error", e},
                                    {"bound", rep.bound},
                                    {"bound_unsquared", rep.bound_unsquared},
                                    {"ratio", rep.bound > 0 ? e / rep.bound : 0.0},
                                    {"ratio_unsquared", rep.bound_unsquared > 0 ? e / rep.bound_unsquared : 0.0}});
            }
    }

    if (rc.format.value_or("json") == "csv") {
        std::string out = std::string(io::kCsvVersion) + "\nN,L,k0,abs_error,bound,bound_unsquared,ratio,ratio_unsquared\n";
        for (const auto& r : rows) {
            out += std::to_string(r["N"].get<int>()) + "," + io::format_double(r["L"].get<double>()) + "," +
                   std::to_string(r["k0"].get<int>());
            for (const char* key : {"abs_error", "bound", "bound_unsquared", "ratio", "ratio_unsquared"})
                out += "," + io::format_double(r[key].get<double>());
            out += "\n";
        }
        return {out};
    }
    Json out{{"annulus", io::to_json(ann)}, {"outer_annulus", io::to_json(outer)}, {"M_tau", M}};
    if (!cfg.contains("function")) {
        out["rng"] = Rng::kName;
        out["seed"] = seed;
    }
    out["rows"] = rows;
    return {dump(out)};
}

Output dispatch(const RunConfig& rc) {
    if (rc.tol && !(*rc.tol > 0.0)) throw ConfigError("--tol must be positive");
    if (rc.format && *rc.format != "json" && *rc.format != "csv") throw ConfigError("--format must be json or csv");

    Json cfg = Json::object();
    if (!rc.config_path.empty()) cfg = io::read_json_file(rc.config_path);
    else if (rc.command != "verify") throw ConfigError("--config is required for '" + rc.command + "'");
    if (!cfg.is_object()) throw ConfigError("config must be a JSON object");

    if (rc.command == "rule") return cmd_rule(rc, cfg);
    if (rc.command == "cubature") return cmd_cubature(rc, cfg);
    if (rc.command == "kernel") return cmd_kernel(rc, cfg);
    if (rc.command == "verify") return cmd_verify(rc, cfg);
    if (rc.command == "bound") return cmd_bound(rc, cfg);
    throw ConfigError("unknown command '" + rc.command + "'");
}

} // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        const Output o = dispatch(config);
        if (config.out_path.empty()) out << o.text;
        else io::write_text(config.out_path, o.text);
        if (o.code == kVerifyFailed) err << "pcub: verification failed\n";
        return o.code;
    } catch (const ConfigError& e) {
        err << "pcub: config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const Json::exception& e) {
        err << "pcub: config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const DegenerateMeasure& e) {
        err << "pcub: degenerate measure (support size " << e.support_size() << "): " << e.what() << "\n";
        return kDomainError;
    } catch (const DomainError& e) {
        err << "pcub: domain error: " << e.what() << "\n";
        return kDomainError;
    } catch (const SolverError& e) {
        err << "pcub: solver failure (residual " << e.residual() << "): " << e.what() << "\n";
        return kSolverError;
    } catch (const std::exception& e) {
        err << "pcub: error: " << e.what() << "\n";
        return kSolverError;
    }
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Polyharmonic Gauss-Jacobi cubature on the annulus"};
    app.require_subcommand(1);
    RunConfig rc;
    std::string format;
    double tol = 0.0;
    std::uint64_t seed = 0;

    for (const char* name : {"rule", "cubature", "kernel", "verify", "bound"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", rc.config_path, "JSON config file");
        sub->add_option("--out", rc.out_path, "output file (default stdout)");
        sub->add_option("--format", format, "json or csv");
        sub->add_option("--tol", tol, "relative moment tolerance for the Gaussian rules");
        sub->add_option("--seed", seed, "seed for randomized suites");
        sub->add_option("--suite", rc.suites, "restrict verify to these suites");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kConfigError;
    }
    rc.command = app.get_subcommands().front()->get_name();
    const auto* sub = app.get_subcommands().front();
    if (sub->count("--format")) rc.format = format;
    if (sub->count("--tol")) rc.tol = tol;
    if (sub->count("--seed")) rc.seed = seed;
    return run(rc, out, err);
}

} // namespace pcub::cli
