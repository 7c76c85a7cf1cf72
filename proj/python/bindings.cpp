#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "commands.hpp"
#include "pcub/cauchy_kernel.hpp"
#include "pcub/chebyshev_quadrature.hpp"
#include "pcub/cubature.hpp"
#include "pcub/errors.hpp"
#include "pcub/hardy_annulus.hpp"
#include "pcub/io.hpp"
#include "pcub/sphere_harmonics.hpp"
#include "pcub/verify.hpp"

namespace py = pybind11;
using namespace pcub;

namespace {

using Coefficients = std::map<std::int64_t, Complex>;
using Components = std::map<std::pair<int, int>, Coefficients>;

LaurentSeries series_of(const Coefficients& c) { return LaurentSeries(LaurentSeries::Map(c.begin(), c.end())); }

Side side_of(const std::string& s) {
    if (s == "outer") return Side::outer;
    if (s == "inner") return Side::inner;
    throw DomainError("side must be 'inner' or 'outer'");
}

HardyElement element_of(const Components& comps, int d, double L) {
    HardyElement f(d, L);
    for (const auto& [kl, c] : comps) f.set({kl.first, kl.second}, series_of(c));
    return f;
}

Components components_of(const HardyElement& f) {
    Components out;
    for (const auto& [idx, c] : f.components())
        out[{idx.k, idx.l}] = Coefficients(c.series().terms().begin(), c.series().terms().end());
    return out;
}

PseudoPositiveMeasure measure_of(const std::map<std::pair<int, int>, RadialMeasure>& comps, int d, double a,
                                 double b) {
    PseudoPositiveMeasure mu{d, Annulus(a, b), {}};
    for (const auto& [kl, m] : comps) mu.components.emplace(SphericalIndex{kl.first, kl.second}, m);
    return mu;
}

py::dict report_dict(const ErrorReport& r) {
    return py::reinterpret_steal<py::dict>(
        py::module_::import("json").attr("loads")(io::to_json(r).dump()).release());
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Polyharmonic cubature on annuli";

    static py::exception<ConfigError> config_error(m, "ConfigError", PyExc_ValueError);
    static py::exception<DomainError> domain_error(m, "DomainError", PyExc_ValueError);
    static py::exception<DegenerateMeasure> degenerate(m, "DegenerateMeasure", domain_error.ptr());
    static py::exception<SolverError> solver_error(m, "SolverError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const DegenerateMeasure& e) {
            degenerate(e.what());
        } catch (const DomainError& e) {
            domain_error(e.what());
        } catch (const ConfigError& e) {
            config_error(e.what());
        } catch (const SolverError& e) {
            solver_error(e.what());
        }
    });

    // Spherical harmonics
    m.def("dim_harmonics", &dim_harmonics, py::arg("d"), py::arg("k"));
    m.def(
        "eval_harmonic",
        [](int d, int k, int l, std::vector<double> theta) { return eval_harmonic(d, {k, l}, theta); },
        py::arg("d"), py::arg("k"), py::arg("l"), py::arg("theta"));
    m.def("zonal_order", &zonal_order, py::arg("d"), py::arg("k"));

    // Hardy space
    m.def("riesz_set", &riesz_set, py::arg("k"), py::arg("d"), py::arg("j_min"), py::arg("j_max"));
    m.def(
        "h2_norm", [](const Coefficients& c, double a, double b) { return h2_norm(series_of(c), Annulus(a, b)); },
        py::arg("coefficients"), py::arg("a"), py::arg("b"));
    m.def(
        "hl2_norm",
        [](const Components& comps, int d, double L, double a, double b) {
            return hl2_norm(element_of(comps, d, L), Annulus(a, b));
        },
        py::arg("components"), py::arg("d"), py::arg("L"), py::arg("a"), py::arg("b"));
    m.def(
        "evaluate",
        [](const Components& comps, int d, double L, Complex z, std::vector<double> theta, double a, double b) {
            return evaluate(element_of(comps, d, L), z, theta, Annulus(a, b));
        },
        py::arg("components"), py::arg("d"), py::arg("L"), py::arg("z"), py::arg("theta"), py::arg("a"),
        py::arg("b"));
    m.def(
        "split",
        [](int k, int d, const Coefficients& c) {
            const auto [f1, f2] = split_f1_f2(ComponentFunction(k, d, series_of(c)));
            return std::make_pair(Coefficients(f1.terms().begin(), f1.terms().end()),
                                  Coefficients(f2.terms().begin(), f2.terms().end()));
        },
        py::arg("k"), py::arg("d"), py::arg("coefficients"));

    // Kernels
    m.def(
        "kernel",
        [](int k, int d, Complex z, Complex tau, const std::string& side) {
            return kernel_Kk({k, d, z, tau, side_of(side)});
        },
        py::arg("k"), py::arg("d"), py::arg("z"), py::arg("tau"), py::arg("side") = "outer");
    m.def(
        "kernel_series",
        [](int k, int d, Complex z, Complex tau, const std::string& side, double tol) {
            return kernel_Kk_series({k, d, z, tau, side_of(side)}, tol);
        },
        py::arg("k"), py::arg("d"), py::arg("z"), py::arg("tau"), py::arg("side") = "outer", py::arg("tol") = 1e-17);
    m.def(
        "reproduce_component",
        [](int k, int d, const Coefficients& c, Complex z, double a, double b, int M) {
            return reproduce_component(ComponentFunction(k, d, series_of(c)), z, Annulus(a, b), M);
        },
        py::arg("k"), py::arg("d"), py::arg("coefficients"), py::arg("z"), py::arg("a"), py::arg("b"),
        py::arg("M") = 1024);
    m.def(
        "kernel_bound",
        [](int k_max, double eps, double a, double b, int grid, int d) {
            return kernel_bound(k_max, eps, Annulus(a, b), grid, d);
        },
        py::arg("k_max"), py::arg("eps"), py::arg("a"), py::arg("b"), py::arg("grid") = 64, py::arg("d") = 3);

    // Radial quadrature
    py::class_<RadialMeasure>(m, "RadialMeasure")
        .def(py::init([](double a, double b, const std::vector<std::pair<double, double>>& atoms,
                         std::vector<double> density) {
                 std::vector<Atom> list;
                 for (const auto& [t, w] : atoms) list.push_back({t, w});
                 return RadialMeasure(a, b, std::move(list), std::move(density));
             }),
             py::arg("a"), py::arg("b"), py::arg("atoms") = std::vector<std::pair<double, double>>{},
             py::arg("density") = std::vector<double>{})
        .def_property_readonly("a", &RadialMeasure::a)
        .def_property_readonly("b", &RadialMeasure::b)
        .def_property_readonly("atoms",
                               [](const RadialMeasure& mu) {
                                   std::vector<std::pair<double, double>> out;
                                   for (const auto& at : mu.atoms()) out.emplace_back(at.location, at.weight);
                                   return out;
                               })
        .def_property_readonly("density", &RadialMeasure::density)
        .def("violations", &RadialMeasure::violations)
        .def("moments", [](const RadialMeasure& mu, std::vector<int> e) { return moments(mu, e).values; });

    m.def("basis_exponents", [](int k, int d, int N) { return build_basis(k, d, N).exponents; }, py::arg("k"),
          py::arg("d"), py::arg("N"));
    m.def(
        "gauss_rule",
        [](const RadialMeasure& mu, int k, int d, int N, double rel_tol) {
            GaussOptions opt;
            opt.rel_tol = rel_tol;
            const auto rule = gauss_rule(mu, build_basis(k, d, 2 * N), opt);
            return std::make_pair(rule.nodes, rule.weights);
        },
        py::arg("measure"), py::arg("k"), py::arg("d"), py::arg("N"), py::arg("rel_tol") = 1e-10,
        "2N nodes and weights exact on the 4N exponents of V_{k,d,2N}.");
    m.def(
        "interpolate",
        [](int k, int d, int N, std::vector<double> nodes, std::vector<double> values) {
            return interpolate(build_basis(k, d, N), nodes, values);
        },
        py::arg("k"), py::arg("d"), py::arg("N"), py::arg("nodes"), py::arg("values"),
        "Coefficients on basis_exponents(k, d, N) matching the values at the nodes.");

    // Cubature
    m.def(
        "cubature",
        [](const Components& f, const std::map<std::pair<int, int>, RadialMeasure>& measure, int d, double L,
           double a, double b, int N) {
            const auto mu = measure_of(measure, d, a, b);
            return cubature_CN(element_of(f, d, L), build_gauss_measure(mu, N));
        },
        py::arg("f"), py::arg("measure"), py::arg("d"), py::arg("L"), py::arg("a"), py::arg("b"), py::arg("N"));
    m.def(
        "error_report",
        [](const Components& f, const std::map<std::pair<int, int>, RadialMeasure>& measure, int d, double L,
           double a, double b, int N, std::optional<std::pair<double, double>> outer, int M_tau) {
            const auto mu = measure_of(measure, d, a, b);
            const auto el = element_of(f, d, L);
            const auto gauss = build_gauss_measure(mu, N);
            auto report = error_functional(el, mu, gauss);
            const auto [oa, ob] = outer.value_or(std::make_pair(0.9 * a, 1.1 * b));
            const Annulus out(oa, ob);
            attach_bound(report, el, estimate_Ck_all(mu, gauss, out, M_tau), out);
            return report_dict(report);
        },
        py::arg("f"), py::arg("measure"), py::arg("d"), py::arg("L"), py::arg("a"), py::arg("b"), py::arg("N"),
        py::arg("outer") = py::none(), py::arg("M_tau") = 256,
        "Exact integral, cubature value, error and its bound, as a dict.");
    m.def(
        "ingest_function",
        [](const std::function<double(double, std::vector<double>)>& F, int d, double L, int k_max, double a,
           double b, std::int64_t j_min, std::int64_t j_max, int sphere_res) {
            const auto f = ingest_function(
                [&](double r, std::span<const double> th) { return F(r, {th.begin(), th.end()}); }, d, L, k_max,
                Annulus(a, b), j_min, j_max, sphere_res);
            return components_of(f);
        },
        py::arg("F"), py::arg("d"), py::arg("L"), py::arg("k_max"), py::arg("a"), py::arg("b"), py::arg("j_min"),
        py::arg("j_max"), py::arg("sphere_res") = 16);

    // Self-check and command line
    m.def(
        "verify",
        [](std::uint64_t seed, std::vector<std::string> suites) {
            VerifyOptions opt;
            opt.seed = seed;
            opt.suites = std::move(suites);
            py::list out;
            for (const auto& r : run_verify(opt)) {
                py::dict d;
                d["name"] = r.name;
                d["passed"] = r.passed;
                d["checks"] = r.checks;
                d["worst"] = r.worst;
                d["tolerance"] = r.tolerance;
                d["detail"] = r.detail;
                out.append(d);
            }
            return out;
        },
        py::arg("seed") = VerifyOptions{}.seed, py::arg("suites") = std::vector<std::string>{});
    m.def(
        "run_cli",
        [](std::vector<std::string> args) {
            args.insert(args.begin(), "pcub");
            std::vector<char*> argv;
            for (auto& s : args) argv.push_back(s.data());
            std::ostringstream out, err;
            const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command-line tool in process; returns (exit code, stdout, stderr).");
}
