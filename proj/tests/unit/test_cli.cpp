#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "pcub/io.hpp"

using pcub::io::Json;
namespace cli = pcub::cli;

namespace {

std::string fixture(const char* name) { return std::string(PCUB_FIXTURE_DIR) + "/" + name; }

struct Result {
    int code;
    std::string out, err;
};

Result run(std::string command, const char* config, std::optional<std::string> format = {},
           std::vector<std::string> suites = {}) {
    cli::RunConfig rc;
    rc.command = std::move(command);
    if (config) rc.config_path = fixture(config);
    rc.format = std::move(format);
    rc.suites = std::move(suites);
    std::ostringstream out, err;
    const int code = cli::run(rc, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("rule: Lebesgue example as CSV") {
    const auto r = run("rule", "lebesgue_rule.json", "csv");
    REQUIRE(r.code == cli::kOk);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "# pcub-v1");
    int rows = 0;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#' && line.rfind("k,", 0) != 0) ++rows;
    CHECK(rows == 2);
}

TEST_CASE("rule: JSON carries residuals, atoms are echoed") {
    const auto r = run("rule", "atoms_rule.json");
    REQUIRE(r.code == cli::kOk);
    const auto j = Json::parse(r.out);
    const auto& rule = j["rules"][0];
    CHECK(rule["k"] == 1);
    CHECK(rule["ℓ"] == 2);
    CHECK(rule["nodes"] == Json::parse("[1.1, 1.4, 1.6, 1.9]"));
    CHECK(rule["weights"] == Json::parse("[0.5, 0.25, 1.0, 0.3]"));
    for (const auto& v : rule["residuals"]) CHECK(v.get<double>() <= 1e-12);
}

TEST_CASE("exit codes") {
    CHECK(run("rule", "malformed.json").code == cli::kConfigError);
    CHECK(run("rule", "does_not_exist.json").code == cli::kConfigError);
    CHECK(run("rule", nullptr).code == cli::kConfigError);
    CHECK(run("rule", "lebesgue_rule.json", "xml").code == cli::kConfigError);
    CHECK(run("frobnicate", "lebesgue_rule.json").code == cli::kConfigError);
    const auto deg = run("rule", "degenerate_rule.json");
    CHECK(deg.code == cli::kDomainError);
    CHECK(deg.err.find("support size 1") != std::string::npos);
    CHECK(deg.err.find("k=2, l=4") != std::string::npos);
    CHECK(run("cubature", "cubature_mismatch.json").code == cli::kDomainError);
    CHECK(run("kernel", "kernel_outside.json").code == cli::kDomainError);

    cli::RunConfig rc;
    rc.command = "rule";
    rc.config_path = fixture("lebesgue_rule.json");
    rc.tol = -1.0;
    std::ostringstream out, err;
    CHECK(cli::run(rc, out, err) == cli::kConfigError);
}

TEST_CASE("cubature: exact function passes with a tiny error") {
    const auto r = run("cubature", "cubature_exact.json");
    REQUIRE(r.code == cli::kOk);
    const auto j = Json::parse(r.out);
    const double exact = std::hypot(j["exact"]["re"].get<double>(), j["exact"]["im"].get<double>());
    CHECK(j["abs_error"].get<double>() <= 1e-9 * (1 + exact));
    CHECK(j["passed"] == true);
    CHECK(j["Ck"].size() == 3);
    CHECK(j["components"].size() == 3);
}

TEST_CASE("cubature: zero function and stale constants") {
    const auto z = Json::parse(run("cubature", "cubature_zero.json").out);
    CHECK(z["abs_error"] == 0.0);
    CHECK(z["bound"] == 0.0);
    CHECK(z["passed"] == true);
    const auto s = run("cubature", "cubature_stale_ck.json");
    CHECK(s.code == cli::kOk);
    const auto j = Json::parse(s.out);
    CHECK(j["passed"] == false);
    CHECK(j["Ck_source"] == "config");
    const auto csv = run("cubature", "cubature_stale_ck.json", "csv");
    CHECK(csv.out.rfind("# pcub-v1\nk,l,re_exact", 0) == 0);
}

TEST_CASE("kernel table") {
    const auto r = run("kernel", "kernel.json");
    REQUIRE(r.code == cli::kOk);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "# pcub-v1");
    std::getline(in, line);
    CHECK(line == "k,re_z,im_z,re_tau,im_tau,side,re_K,im_K");
    std::getline(in, line);
    CHECK(line == "0,1,0,2,0,outer,2,0");
    std::getline(in, line);
    CHECK(line == "1,2,0,1,0,inner,0.25,0");
    int rows = 2;
    while (std::getline(in, line)) ++rows;
    // 3 queries + 2 points x 2 degrees x 2 sides x 4 boundary samples
    CHECK(rows == 3 + 32);
    const auto j = Json::parse(run("kernel", "kernel.json", "json").out);
    CHECK(j["rows"].size() == 35);
    // Geometric series 1 / (1 - z / tau) at z = i, tau = 2.
    CHECK(j["rows"][2]["K"]["re"].get<double>() == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(j["rows"][2]["K"]["im"].get<double>() == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("verify: all suites, filtering and injected perturbation") {
    const auto all = run("verify", nullptr);
    CHECK(all.code == cli::kOk);
    const auto j = Json::parse(all.out);
    CHECK(j["rng"] == "std::mt19937_64");
    CHECK(j["suites"].size() == 5);
    for (const auto& s : j["suites"]) CHECK(s["passed"] == true);

    const auto only = Json::parse(run("verify", nullptr, {}, {"kernels"}).out);
    REQUIRE(only["suites"].size() == 1);
    CHECK(only["suites"][0]["name"] == "kernels");

    const auto bad = run("verify", "verify_perturbed.json");
    CHECK(bad.code == cli::kVerifyFailed);
    const auto b = Json::parse(bad.out);
    CHECK(b["suites"].size() == 2);
    for (const auto& s : b["suites"]) CHECK(s["passed"] == (s["name"] != "kernels"));
    CHECK(run("verify", nullptr, {}, {"nope"}).code == cli::kConfigError);
}

TEST_CASE("determinism: identical runs are byte-identical") {
    CHECK(run("verify", nullptr).out == run("verify", nullptr).out);
    CHECK(run("cubature", "cubature_exact.json").out == run("cubature", "cubature_exact.json").out);
}

TEST_CASE("bound experiment") {
    const auto r = run("bound", "bound_experiment.json");
    REQUIRE(r.code == cli::kOk);
    const auto j = Json::parse(r.out);
    const auto& rows = j["rows"];
    CHECK(rows.size() == 4 * 3 * 3);
    for (const auto& row : rows) CHECK(row["ratio"].get<double>() <= 1.0);

    // Decay in N for fixed L and k0.
    std::vector<double> err;
    for (const auto& row : rows)
        if (row["L"] == 2.0 && row["k0"] == 2) err.push_back(row["abs_error"].get<double>());
    REQUIRE(err.size() == 4);
    for (std::size_t i = 1; i < err.size(); ++i) CHECK(err[i] < err[i - 1]);

    // With only k = 0 content the bound is independent of L. With degree >= 1 content
    // the L^{-2k} prefactor shrinks but the weighted norm grows faster, so for a fixed
    // f the bound increases with L.
    auto bound_at = [&](double L, int k0) {
        for (const auto& row : rows)
            if (row["N"] == 2 && row["L"] == L && row["k0"] == k0) return row["bound"].get<double>();
        return -1.0;
    };
    CHECK(bound_at(1.5, 0) == doctest::Approx(bound_at(4.0, 0)));
    CHECK(bound_at(1.5, 2) < bound_at(2.0, 2));
    CHECK(bound_at(2.0, 2) < bound_at(4.0, 2));
}

TEST_CASE("main_entry parses flags") {
    std::ostringstream out, err;
    std::string cfg = fixture("lebesgue_rule.json");
    const char* argv[] = {"pcub", "rule", "--config", cfg.c_str(), "--format", "csv", "--tol", "1e-9"};
    CHECK(cli::main_entry(8, const_cast<char**>(argv), out, err) == cli::kOk);
    CHECK(out.str().rfind("# pcub-v1", 0) == 0);
    std::ostringstream o2, e2;
    const char* bad[] = {"pcub", "rule", "--bogus"};
    CHECK(cli::main_entry(3, const_cast<char**>(bad), o2, e2) == cli::kConfigError);
    std::ostringstream o3, e3;
    const char* none[] = {"pcub"};
    CHECK(cli::main_entry(1, const_cast<char**>(none), o3, e3) == cli::kConfigError);

    const auto path = std::filesystem::temp_directory_path() / "pcub_cli_out.json";
    std::ostringstream o4, e4;
    std::string p = path.string();
    const char* to_file[] = {"pcub", "rule", "--config", cfg.c_str(), "--out", p.c_str()};
    CHECK(cli::main_entry(6, const_cast<char**>(to_file), o4, e4) == cli::kOk);
    CHECK(o4.str().empty());
    CHECK(pcub::io::read_json_file(path)["N"] == 1);
    std::filesystem::remove(path);
}

}
