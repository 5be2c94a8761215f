#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "conductor/covers.hpp"

namespace conductor {

// Malformed or invalid input document.
struct ScenarioError : std::runtime_error {
    explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

struct Scenario {
    std::string id;
    std::string source;  // file path, or "<memory>"
    BaseField base;
    CoverSpec cover;
    bool all_characters = true;
    std::vector<int64_t> character_indices;
    std::optional<nlohmann::json> expected;
};

// Reads a TOML or JSON document (by extension) into a JSON value.
nlohmann::json read_document(const std::string& path);

Scenario scenario_from_json(const nlohmann::json& doc, std::optional<int64_t> precision_override = std::nullopt,
                            const std::string& source = "<memory>");
Scenario load_scenario(const std::string& path, std::optional<int64_t> precision_override = std::nullopt);

// {"exponent": "series", ...} -> Laurent polynomial.
LaurentPoly laurent_from_json(const nlohmann::json& j, const BaseField& b);
Rat rat_from_json(const nlohmann::json& j);

// Polynomial document for zero counting: either explicit coefficients
// ("poly") or a root list ("roots": [{"valuation": "1/2", "coef": "g"}]),
// the latter also giving an oracle count.
struct ZerosDoc {
    std::string id;
    BaseField base;
    Interval interval;
    LaurentPoly poly;
    std::optional<std::vector<Rat>> root_valuations;
};
ZerosDoc zeros_from_json(const nlohmann::json& doc, std::optional<int64_t> precision_override = std::nullopt);
ZerosDoc load_zeros_doc(const std::string& path, std::optional<int64_t> precision_override = std::nullopt);

// prod (xi - c_i pi^{v_i}).
LaurentPoly poly_from_roots(const BaseField& b, const std::vector<std::pair<Rat, GF::Elem>>& roots);

}  // namespace conductor
