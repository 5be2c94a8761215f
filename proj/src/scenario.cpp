#include "conductor/scenario.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include <toml.hpp>

namespace conductor {

using nlohmann::json;

namespace {

json toml_to_json(const toml::node& n) {
    if (auto t = n.as_table()) {
        json j = json::object();
        for (auto&& [k, v] : *t) j[std::string(k.str())] = toml_to_json(v);
        return j;
    }
    if (auto a = n.as_array()) {
        json j = json::array();
        for (auto&& v : *a) j.push_back(toml_to_json(v));
        return j;
    }
    if (auto s = n.as_string()) return s->get();
    if (auto i = n.as_integer()) return i->get();
    if (auto b = n.as_boolean()) return b->get();
    if (n.as_floating_point()) throw ScenarioError("floating-point values are not allowed; write rationals as \"num/den\"");
    throw ScenarioError("unsupported TOML value type");
}

bool ends_with(const std::string& s, const std::string& suf) {
    return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

int64_t int_field(const json& doc, const char* key, std::optional<int64_t> dflt = std::nullopt) {
    if (!doc.contains(key)) {
        if (dflt) return *dflt;
        throw ScenarioError(std::string("missing field '") + key + "'");
    }
    const json& v = doc.at(key);
    if (!v.is_number_integer()) throw ScenarioError(std::string("field '") + key + "' must be an integer");
    return v.get<int64_t>();
}

BaseField base_from_json(const json& doc, std::optional<int64_t> precision_override) {
    int64_t q = int_field(doc, "q");
    int64_t e = int_field(doc, "e", 1);
    int64_t prec = precision_override ? *precision_override : int_field(doc, "precision", 64 * e);
    BaseField b;
    try {
        b = BaseField::make(q, e, prec);
    } catch (const std::exception& ex) {
        throw ScenarioError(ex.what());
    }
    if (doc.contains("p") && int_field(doc, "p") != b.p)
        throw ScenarioError("p = " + std::to_string(int_field(doc, "p")) + " is not the characteristic of F_" +
                            std::to_string(q));
    return b;
}

Interval interval_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ScenarioError("interval must be a two-element array");
    Interval iv{rat_from_json(j[0]), rat_from_json(j[1])};
    if (!(iv.lo < iv.hi)) throw ScenarioError("interval must satisfy r < r'");
    return iv;
}

}  // namespace

json read_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        if (ends_with(path, ".toml")) return toml_to_json(toml::parse(ss.str(), path));
        if (ends_with(path, ".json")) return json::parse(ss.str());
    } catch (const toml::parse_error& e) {
        std::ostringstream os;
        os << path << ": TOML parse error: " << e.description() << " at line " << e.source().begin.line;
        throw ScenarioError(os.str());
    } catch (const json::exception& e) {
        throw ScenarioError(path + ": JSON parse error: " + e.what());
    } catch (const ScenarioError& e) {
        throw ScenarioError(path + ": " + e.what());
    }
    throw ScenarioError(path + ": unknown document type (expected .toml or .json)");
}

Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<int64_t>());
    if (j.is_string()) {
        try {
            return Rat::parse(j.get<std::string>());
        } catch (const std::exception& e) {
            throw ScenarioError("bad rational '" + j.get<std::string>() + "'");
        }
    }
    throw ScenarioError("rational must be an integer or a \"num/den\" string");
}

LaurentPoly laurent_from_json(const json& j, const BaseField& b) {
    if (!j.is_object()) throw ScenarioError("Laurent polynomial must be a table {exponent = \"series\"}");
    LaurentPoly out = LaurentPoly::zero(b.F);
    for (auto& [k, v] : j.items()) {
        int64_t i;
        try {
            size_t used = 0;
            i = std::stoll(k, &used);
            if (used != k.size()) throw std::invalid_argument(k);
        } catch (const std::exception&) {
            throw ScenarioError("bad exponent key '" + k + "'");
        }
        std::string s = v.is_string() ? v.get<std::string>() : v.is_number_integer() ? std::to_string(v.get<int64_t>()) : "";
        if (s.empty()) throw ScenarioError("coefficient of xi^" + k + " must be a series string");
        try {
            out = out + LaurentPoly::monomial(parse_series(s, b.F, b.e, b.precision), i);
        } catch (const std::exception& e) {
            throw ScenarioError("coefficient of xi^" + k + ": " + e.what());
        }
    }
    return out;
}

Scenario scenario_from_json(const json& doc, std::optional<int64_t> precision_override, const std::string& source) {
    try {
        if (!doc.is_object()) throw ScenarioError("scenario must be a table");
        Scenario s;
        s.source = source;
        if (!doc.contains("id") || !doc["id"].is_string()) throw ScenarioError("missing string field 'id'");
        s.id = doc["id"].get<std::string>();
        static const std::regex id_re("[A-Za-z0-9_.-]+");
        if (!std::regex_match(s.id, id_re)) throw ScenarioError("id '" + s.id + "' must match [A-Za-z0-9_.-]+");
        s.base = base_from_json(doc, precision_override);
        if (!doc.contains("cover") || !doc["cover"].is_object()) throw ScenarioError("missing [cover] table");
        const json& cv = doc["cover"];
        if (!cv.contains("kind") || !cv["kind"].is_string()) throw ScenarioError("cover.kind missing");
        std::string kind = cv["kind"].get<std::string>();
        if (!cv.contains("interval")) throw ScenarioError("cover.interval missing");
        Interval iv = interval_from_json(cv["interval"]);
        auto poly = [&](const char* key) {
            if (!cv.contains(key)) throw ScenarioError(std::string("cover.") + key + " missing for kind " + kind);
            return laurent_from_json(cv[key], s.base);
        };
        try {
            if (kind == "kummer") {
                s.cover = CoverSpec::kummer(s.base, int_field(cv, "m"), poly("u"), iv);
            } else if (kind == "artin-schreier") {
                s.cover = CoverSpec::artin_schreier(s.base, poly("g"), iv);
            } else if (kind == "compositum") {
                s.cover = CoverSpec::compositum(s.base, int_field(cv, "m"), poly("u"), poly("g"), iv);
            } else if (kind == "monic") {
                int64_t d = int_field(cv, "degree");
                if (d < 1) throw ScenarioError("cover.degree must be >= 1");
                std::vector<LaurentPoly> P(size_t(d), LaurentPoly::zero(s.base.F));
                if (cv.contains("P")) {
                    if (!cv["P"].is_object()) throw ScenarioError("cover.P must be a table");
                    for (auto& [k, v] : cv["P"].items()) {
                        int64_t j = -1;
                        try {
                            j = std::stoll(k);
                        } catch (const std::exception&) {
                        }
                        if (j < 0 || j >= d) throw ScenarioError("cover.P key '" + k + "' must be in [0, degree)");
                        P[size_t(j)] = laurent_from_json(v, s.base);
                    }
                }
                s.cover = CoverSpec::monic(s.base, P, iv);
            } else {
                throw ScenarioError("unknown cover kind '" + kind + "'");
            }
        } catch (const ScenarioError&) {
            throw;
        } catch (const std::invalid_argument& e) {
            throw ScenarioError(e.what());
        }
        if (doc.contains("characters")) {
            const json& ch = doc["characters"];
            if (ch.is_string() && ch.get<std::string>() == "all") {
                s.all_characters = true;
            } else if (ch.is_array()) {
                s.all_characters = false;
                for (auto& x : ch) {
                    if (!x.is_number_integer()) throw ScenarioError("characters must be \"all\" or a list of indices");
                    int64_t i = x.get<int64_t>();
                    if (i < 0 || i >= s.cover.group.order())
                        throw ScenarioError("character index " + std::to_string(i) + " out of range");
                    s.character_indices.push_back(i);
                }
            } else {
                throw ScenarioError("characters must be \"all\" or a list of indices");
            }
        }
        if (doc.contains("expected")) {
            if (!doc["expected"].is_object()) throw ScenarioError("[expected] must be a table");
            s.expected = doc["expected"];
        }
        return s;
    } catch (const ScenarioError& e) {
        throw ScenarioError(source + ": " + e.what());
    }
}

Scenario load_scenario(const std::string& path, std::optional<int64_t> precision_override) {
    return scenario_from_json(read_document(path), precision_override, path);
}

LaurentPoly poly_from_roots(const BaseField& b, const std::vector<std::pair<Rat, GF::Elem>>& roots) {
    LaurentPoly F = LaurentPoly::constant(FieldElem::integer(b.F, 1));
    for (auto& [v, c] : roots) {
        LaurentPoly lin = LaurentPoly::xi(b.F) - LaurentPoly::constant(FieldElem::monomial(b.F, c, v, b.e));
        F = F * lin;
    }
    return F;
}

ZerosDoc zeros_from_json(const json& doc, std::optional<int64_t> precision_override) {
    if (!doc.is_object()) throw ScenarioError("polynomial document must be a table");
    ZerosDoc z;
    z.id = doc.contains("id") && doc["id"].is_string() ? doc["id"].get<std::string>() : "zeros";
    z.base = base_from_json(doc, precision_override);
    if (!doc.contains("interval")) throw ScenarioError("interval missing");
    z.interval = interval_from_json(doc["interval"]);
    bool has_poly = doc.contains("poly"), has_roots = doc.contains("roots");
    if (has_poly == has_roots) throw ScenarioError("give exactly one of 'poly' or 'roots'");
    if (has_poly) {
        z.poly = laurent_from_json(doc["poly"], z.base);
        if (z.poly.empty()) throw ScenarioError("polynomial must be nonzero");
    } else {
        if (!doc["roots"].is_array()) throw ScenarioError("roots must be an array");
        std::vector<std::pair<Rat, GF::Elem>> roots;
        std::vector<Rat> vals;
        for (auto& r : doc["roots"]) {
            if (!r.is_object() || !r.contains("valuation")) throw ScenarioError("root entries need a valuation");
            Rat v = rat_from_json(r["valuation"]);
            GF::Elem c = z.base.F->one();
            if (r.contains("coef")) {
                FieldElem ce = parse_series(r["coef"].is_string() ? r["coef"].get<std::string>()
                                                                   : std::to_string(r["coef"].get<int64_t>()),
                                            z.base.F, 1, FieldElem::kExact);
                auto cv = ce.valuation();
                if (!cv || *cv != Rat(0) || ce.terms().size() != 1) throw ScenarioError("root coef must be a nonzero F_q constant");
                c = ce.leading_coeff();
            }
            roots.push_back({v, c});
            vals.push_back(v);
        }
        z.poly = poly_from_roots(z.base, roots);
        z.root_valuations = vals;
    }
    return z;
}

ZerosDoc load_zeros_doc(const std::string& path, std::optional<int64_t> precision_override) {
    try {
        return zeros_from_json(read_document(path), precision_override);
    } catch (const ScenarioError& e) {
        std::string w = e.what();
        if (w.rfind(path, 0) == 0) throw;
        throw ScenarioError(path + ": " + w);
    }
}

}  // namespace conductor
