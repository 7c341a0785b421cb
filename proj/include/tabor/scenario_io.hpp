#pragma once

#include "tabor/verify.hpp"

#include <string>

// vendored single-header nlohmann/json
#include "json.hpp"

namespace tabor {

/// Malformed or schema-violating scenario input; the CLI maps this to exit 2.
struct ScenarioError : std::runtime_error {
    explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

using Json = nlohmann::ordered_json;

Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);
/// Parses "num", "num/den", or a decimal like "0.25" (exact).
Rational rational_from_string(const std::string& s);

Json vec_to_json(const RatVec& v);
RatVec vec_from_json(const Json& j);

Json generator_set_to_json(const GeneratorSet& g);
GeneratorSet generator_set_from_json(const Json& j);

Json cone_to_json(const ConeSpec& k);
ConeSpec cone_from_json(const Json& j);

Json family_to_json(const SetFamily& f);
SetFamily family_from_json(const Json& j, const Box& domain);

Json scenario_to_json(const Scenario& sc);
Scenario scenario_from_json(const Json& j);
Scenario load_scenario(const std::string& path);

Json report_to_json(const InclusionReport& rep);
std::string report_to_text(const InclusionReport& rep);

}  // namespace tabor
