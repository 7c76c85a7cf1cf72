#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "pcub/errors.hpp"
#include "pcub/io.hpp"
#include "pcub/random.hpp"

using namespace pcub;
using io::Json;

TEST_SUITE("io") {

TEST_CASE("format_double round trips") {
    Rng rng(51);
    for (int i = 0; i < 1000; ++i) {
        const double x = std::ldexp(rng.uniform(-1.0, 1.0), rng.integer(-300, 300));
        CHECK(std::stod(io::format_double(x)) == x);
    }
    CHECK(io::format_double(0.1) == "0.1");
    CHECK(io::format_double(1.0) == "1");
}

TEST_CASE("LaurentSeries and HardyElement round trip through JSON") {
    Rng rng(52);
    const auto f = random_hardy_element(rng, 3, 2.5, 4, 5, -8, 8);
    const auto back = io::hardy_from_json(Json::parse(io::to_json(f).dump()));
    CHECK(back.dimension() == 3);
    CHECK(back.weight() == 2.5);
    REQUIRE(back.components().size() == f.components().size());
    for (const auto& [idx, c] : f.components()) CHECK(back.find(idx)->series() == c.series());
    CHECK(io::to_json(f)["components"][0].contains("ℓ"));
}

TEST_CASE("series parsing") {
    const auto s = io::laurent_from_json(Json::parse(R"([{"j": -2, "re": 1.5}, {"j": 3, "im": -1}])"));
    CHECK(s.coefficient(-2) == Complex(1.5, 0));
    CHECK(s.coefficient(3) == Complex(0, -1));
    CHECK_THROWS_AS(io::laurent_from_json(Json::parse(R"([{"j": 1}, {"j": 1}])")), ConfigError);
    CHECK_THROWS_AS(io::laurent_from_json(Json::parse(R"([{"j": 1.5, "re": 1}])")), ConfigError);
    CHECK_THROWS_AS(io::laurent_from_json(Json::parse(R"({"j": 1})")), ConfigError);
    // Exponents outside R_k are a domain problem, not a syntax problem.
    CHECK_THROWS_AS(io::hardy_from_json(Json::parse(
                        R"({"d": 3, "L": 2, "components": [{"k": 1, "l": 1, "series": [{"j": -1, "re": 1}]}]})")),
                    DomainError);
}

TEST_CASE("measure parsing") {
    const Annulus ann(1.0, 2.0);
    const auto mu = io::measure_from_json(
        Json::parse(R"({"components": [{"k": 0, "ℓ": 1, "atoms": [[1.2, 0.5]], "density": [1, 0, 2]},
                                        {"k": 1, "l": 3, "density": [0.5]}]})"),
        3, ann);
    CHECK(mu.components.size() == 2);
    const auto& m = mu.components.at({0, 1});
    CHECK(m.atoms().size() == 1);
    CHECK(m.density() == std::vector<double>{1, 0, 2});
    const auto again = io::measure_from_json(io::to_json(mu)["measure"], 3, ann);
    CHECK(again.components.at({1, 3}).density() == std::vector<double>{0.5});
    CHECK_THROWS_AS(io::measure_from_json(Json::parse(R"({"components": [{"k": 0, "atoms": [[1.2]]}]})"), 3, ann),
                    ConfigError);
    CHECK_THROWS_AS(io::measure_from_json(Json::parse(R"({"components": [{"k": 0, "l": 1, "atoms": [[1.2]]}]})"), 3,
                                          ann),
                    ConfigError);
    CHECK_THROWS_AS(io::measure_from_json(Json::parse(R"({"components": [{"k": 0, "l": 1}, {"k": 0, "ℓ": 1}]})"), 3,
                                          ann),
                    ConfigError);
}

TEST_CASE("rules serialize to CSV and JSON") {
    GaussJacobiMeasure g;
    g.N = 1;
    g.components[{0, 1}] = QuadratureRule{{1.25, 1.75}, {0.5, 0.5}};
    const std::map<SphericalIndex, std::vector<double>> res{{{0, 1}, {1e-17, 0.0, 2e-16, 0.0}}};
    const auto csv = io::rules_to_csv(g, res);
    CHECK(csv.rfind("# pcub-v1\n", 0) == 0);
    CHECK(csv.find("k,l,node,weight\n0,1,1.25,0.5\n0,1,1.75,0.5\n") != std::string::npos);
    CHECK(csv.find("max_moment_residual=2e-16") != std::string::npos);
    const auto j = io::rules_to_json(g, res);
    CHECK(j["rules"][0]["ℓ"] == 1);
    CHECK(j["rules"][0]["nodes"][1] == 1.75);
    CHECK(j["rules"][0]["residuals"].size() == 4);
}

TEST_CASE("file helpers") {
    CHECK_THROWS_AS(io::read_json_file("/nonexistent/config.json"), ConfigError);
    CHECK_THROWS_AS(io::parse_json("{ nope"), ConfigError);
    const auto path = std::filesystem::temp_directory_path() / "pcub_io_test.json";
    io::write_text(path, R"({"a": 1})");
    CHECK(io::read_json_file(path)["a"] == 1);
    std::filesystem::remove(path);
}

TEST_CASE("accessors") {
    const auto j = Json::parse(R"({"n": 3, "x": 1.5, "s": "text", "l": 2})");
    CHECK(io::require_int(j, "n") == 3);
    CHECK(io::require_double(j, "x") == 1.5);
    CHECK(io::require_order(j) == 2);
    CHECK_THROWS_AS(io::require_int(j, "x"), ConfigError);
    CHECK_THROWS_AS(io::require_double(j, "s"), ConfigError);
    CHECK_THROWS_AS(io::require(j, "missing"), ConfigError);
}

}
