#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "pcub/cubature.hpp"

namespace pcub::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kCsvVersion = "# pcub-v1";

// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

Json read_json_file(const std::filesystem::path& path);
Json parse_json(const std::string& text);
void write_text(const std::filesystem::path& path, const std::string& text);

Json to_json(Complex z);
// [{"j", "re", "im"}, ...]
Json to_json(const LaurentSeries& f);
LaurentSeries laurent_from_json(const Json& j);

// {"d", "L", "components": [{"k", "ℓ", "series"}]}. "l" is accepted for "ℓ" on input.
Json to_json(const HardyElement& f);
HardyElement hardy_from_json(const Json& j);
// Components list only, with d and L supplied by the caller.
HardyElement hardy_components_from_json(const Json& components, int d, double L);

Annulus annulus_from_json(const Json& j);
Json to_json(const Annulus& ann);

// {"atoms": [[t, w], ...], "density": [c0, c1, ...]} on the given annulus.
RadialMeasure radial_measure_from_json(const Json& j, const Annulus& ann);
Json to_json(const RadialMeasure& m);
// {"components": [{"k", "ℓ", "atoms", "density"}]}
PseudoPositiveMeasure measure_from_json(const Json& j, int d, const Annulus& ann);
Json to_json(const PseudoPositiveMeasure& mu);

// Per-component moment residuals of a Gaussian measure against its source measure.
std::map<SphericalIndex, std::vector<double>> rule_residuals(const PseudoPositiveMeasure& mu,
                                                             const GaussJacobiMeasure& gauss);

// {"N", "rules": [{"k", "ℓ", "N", "nodes", "weights", "residuals"}]}
Json rules_to_json(const GaussJacobiMeasure& gauss,
                   const std::map<SphericalIndex, std::vector<double>>& residuals);
// Header line, one comment line per component with its worst residual, then k,l,node,weight rows.
std::string rules_to_csv(const GaussJacobiMeasure& gauss,
                         const std::map<SphericalIndex, std::vector<double>>& residuals);

Json to_json(const ErrorReport& report);

// Accessors that raise ConfigError with the key name on absence or type mismatch.
const Json& require(const Json& j, const char* key);
int require_int(const Json& j, const char* key);
double require_double(const Json& j, const char* key);
// "ℓ" or "l".
int require_order(const Json& j);

} // namespace pcub::io
