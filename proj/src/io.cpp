#include "pcub/io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "pcub/errors.hpp"

namespace pcub::io {

namespace {

constexpr const char* kEll = "ℓ";

std::string where(const char* key) { return std::string("missing or invalid key '") + key + "'"; }

} // namespace

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return {buf, res.ptr};
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str());
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << text;
    if (!out) throw ConfigError("write failed for " + path.string());
}

const Json& require(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ConfigError(where(key));
    return j.at(key);
}

int require_int(const Json& j, const char* key) {
    const auto& v = require(j, key);
    if (!v.is_number_integer()) throw ConfigError(where(key) + ": expected an integer");
    return v.get<int>();
}

double require_double(const Json& j, const char* key) {
    const auto& v = require(j, key);
    if (!v.is_number()) throw ConfigError(where(key) + ": expected a number");
    return v.get<double>();
}

int require_order(const Json& j) {
    if (j.is_object() && j.contains(kEll)) return require_int(j, kEll);
    if (j.is_object() && j.contains("l")) return require_int(j, "l");
    throw ConfigError(where(kEll));
}

Json to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const LaurentSeries& f) {
    Json out = Json::array();
    for (const auto& [j, c] : f.terms()) out.push_back(Json{{"j", j}, {"re", c.real()}, {"im", c.imag()}});
    return out;
}

LaurentSeries laurent_from_json(const Json& j) {
    if (!j.is_array()) throw ConfigError("series must be a list of {j, re, im}");
    LaurentSeries f;
    std::set<LaurentSeries::Exponent> seen;
    for (const auto& term : j) {
        const auto& e = require(term, "j");
        if (!e.is_number_integer()) throw ConfigError("series exponent j must be an integer");
        const auto exp = e.get<LaurentSeries::Exponent>();
        if (!seen.insert(exp).second) throw ConfigError("duplicate exponent " + std::to_string(exp));
        const double re = term.contains("re") ? require_double(term, "re") : 0.0;
        const double im = term.contains("im") ? require_double(term, "im") : 0.0;
        f.set(exp, {re, im});
    }
    return f;
}

Json to_json(const HardyElement& f) {
    Json comps = Json::array();
    for (const auto& [idx, c] : f.components())
        comps.push_back(Json{{"k", idx.k}, {kEll, idx.l}, {"series", to_json(c.series())}});
    return Json{{"d", f.dimension()}, {"L", f.weight()}, {"components", comps}};
}

HardyElement hardy_components_from_json(const Json& components, int d, double L) {
    if (!components.is_array()) throw ConfigError("components must be a list");
    HardyElement f(d, L);
    std::set<SphericalIndex> seen;
    for (const auto& c : components) {
        const SphericalIndex idx{require_int(c, "k"), require_order(c)};
        if (!seen.insert(idx).second)
            throw ConfigError("duplicate component (k=" + std::to_string(idx.k) + ", l=" + std::to_string(idx.l) + ")");
        f.set(idx, laurent_from_json(require(c, "series")));
    }
    return f;
}

HardyElement hardy_from_json(const Json& j) {
    return hardy_components_from_json(require(j, "components"), require_int(j, "d"), require_double(j, "L"));
}

Annulus annulus_from_json(const Json& j) { return Annulus(require_double(j, "a"), require_double(j, "b")); }

Json to_json(const Annulus& ann) { return Json{{"a", ann.a()}, {"b", ann.b()}}; }

RadialMeasure radial_measure_from_json(const Json& j, const Annulus& ann) {
    std::vector<Atom> atoms;
    std::vector<double> density;
    if (j.contains("atoms")) {
        const auto& list = j.at("atoms");
        if (!list.is_array()) throw ConfigError("atoms must be a list of [t, w] pairs");
        for (const auto& a : list) {
            if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number())
                throw ConfigError("atoms must be a list of [t, w] pairs");
            atoms.push_back({a[0].get<double>(), a[1].get<double>()});
        }
    }
    if (j.contains("density")) {
        const auto& list = j.at("density");
        if (!list.is_array()) throw ConfigError("density must be a list of coefficients");
        for (const auto& c : list) {
            if (!c.is_number()) throw ConfigError("density must be a list of coefficients");
            density.push_back(c.get<double>());
        }
    }
    return RadialMeasure(ann.a(), ann.b(), std::move(atoms), std::move(density));
}

Json to_json(const RadialMeasure& m) {
    Json atoms = Json::array();
    for (const auto& a : m.atoms()) atoms.push_back(Json::array({a.location, a.weight}));
    Json out{{"atoms", atoms}};
    if (m.has_density()) out["density"] = m.density();
    return out;
}

PseudoPositiveMeasure measure_from_json(const Json& j, int d, const Annulus& ann) {
    PseudoPositiveMeasure mu{d, ann, {}};
    const auto& comps = require(j, "components");
    if (!comps.is_array()) throw ConfigError("measure components must be a list");
    for (const auto& c : comps) {
        const SphericalIndex idx{require_int(c, "k"), require_order(c)};
        if (!mu.components.emplace(idx, radial_measure_from_json(c, ann)).second)
            throw ConfigError("duplicate measure component (k=" + std::to_string(idx.k) +
                              ", l=" + std::to_string(idx.l) + ")");
    }
    return mu;
}

Json to_json(const PseudoPositiveMeasure& mu) {
    Json comps = Json::array();
    for (const auto& [idx, m] : mu.components) {
        Json c{{"k", idx.k}, {kEll, idx.l}};
        c.update(to_json(m));
        comps.push_back(std::move(c));
    }
    return Json{{"d", mu.d}, {"annulus", to_json(mu.annulus)}, {"measure", Json{{"components", comps}}}};
}

std::map<SphericalIndex, std::vector<double>> rule_residuals(const PseudoPositiveMeasure& mu,
                                                             const GaussJacobiMeasure& gauss) {
    std::map<SphericalIndex, std::vector<double>> out;
    for (const auto& [idx, rule] : gauss.components) {
        const auto basis = build_basis(idx.k, mu.d, 2 * gauss.N);
        out[idx] = moment_residuals(rule, mu.components.at(idx), basis.exponents);
    }
    return out;
}

Json rules_to_json(const GaussJacobiMeasure& gauss,
                   const std::map<SphericalIndex, std::vector<double>>& residuals) {
    Json rules = Json::array();
    for (const auto& [idx, rule] : gauss.components) {
        Json r{{"k", idx.k}, {kEll, idx.l}, {"N", gauss.N}, {"nodes", rule.nodes}, {"weights", rule.weights}};
        const auto it = residuals.find(idx);
        r["residuals"] = it == residuals.end() ? Json::array() : Json(it->second);
        rules.push_back(std::move(r));
    }
    return Json{{"N", gauss.N}, {"rules", rules}};
}

std::string rules_to_csv(const GaussJacobiMeasure& gauss,
                         const std::map<SphericalIndex, std::vector<double>>& residuals) {
    std::string out = std::string(kCsvVersion) + "\n";
    for (const auto& [idx, rule] : gauss.components) {
        double worst = 0.0;
        if (const auto it = residuals.find(idx); it != residuals.end())
            for (double r : it->second) worst = std::max(worst, r);
        out += "# k=" + std::to_string(idx.k) + " l=" + std::to_string(idx.l) + " N=" + std::to_string(gauss.N) +
               " max_moment_residual=" + format_double(worst) + "\n";
    }
    out += "k,l,node,weight\n";
    for (const auto& [idx, rule] : gauss.components)
        for (std::size_t j = 0; j < rule.size(); ++j)
            out += std::to_string(idx.k) + "," + std::to_string(idx.l) + "," + format_double(rule.nodes[j]) + "," +
                   format_double(rule.weights[j]) + "\n";
    return out;
}

Json to_json(const ErrorReport& report) {
    Json comps = Json::array();
    for (const auto& [idx, ce] : report.components)
        comps.push_back(Json{{"k", idx.k},
                             {kEll, idx.l},
                             {"exact", to_json(ce.exact)},
                             {"cubature", to_json(ce.cubature)},
                             {"error", to_json(ce.error)}});
    Json out{{"exact", to_json(report.exact)},
             {"cubature", to_json(report.cubature)},
             {"error", to_json(report.total_error)},
             {"abs_error", std::abs(report.total_error)},
             {"components", comps}};
    if (report.has_bound) {
        Json ck = Json::array();
        for (const auto& [k, c] : report.Ck) ck.push_back(Json{{"k", k}, {"C_k", c}});
        out["Ck"] = ck;
        out["Ck_safety_factor"] = kCkSafetyFactor;
        out["bound"] = report.bound;
        out["bound_unsquared"] = report.bound_unsquared;
        out["tighter_variant"] = report.bound <= report.bound_unsquared ? "squared" : "unsquared";
        out["passed"] = report.passed;
    }
    return out;
}

} // namespace pcub::io
