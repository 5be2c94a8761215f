#include "conductor/report.hpp"

#include <sstream>

#include "conductor/kernels.hpp"

namespace conductor {

const char* report_kind_name(ReportKind k) {
    switch (k) {
        case ReportKind::Full: return "full";
        case ReportKind::Swan: return "swan";
        case ReportKind::Discriminant: return "discriminant";
        case ReportKind::Decompose: return "decompose";
    }
    return "?";
}

ojson check_json(const Check& c) {
    ojson j;
    j["name"] = c.name;
    j["status"] = c.status;
    j["lhs"] = c.lhs;
    j["rhs"] = c.rhs;
    j["witnesses"] = c.witnesses;
    if (!c.detail.empty()) j["detail"] = c.detail;
    return j;
}

std::vector<ClassFun> selected_characters(const Scenario& s) {
    if (!s.cover.abelian) return {};
    auto all = characters(s.cover.group);
    if (s.all_characters) return all;
    std::vector<ClassFun> out;
    for (auto i : s.character_indices) out.push_back(all[size_t(i)]);
    return out;
}

static std::vector<int64_t> selected_indices(const Scenario& s) {
    std::vector<int64_t> idx;
    if (!s.cover.abelian) return idx;
    if (!s.all_characters) return s.character_indices;
    for (int64_t i = 0; i < s.cover.group.order(); ++i) idx.push_back(i);
    return idx;
}

static ojson rats(const std::vector<Rat>& v) {
    ojson a = ojson::array();
    for (auto& x : v) a.push_back(x.str());
    return a;
}

static bool etale(const CoverSpec& c) {
    if (c.has_kummer() && count_zeros(c.u, c.interval) != 0) return false;
    if (c.kind == CoverKind::Monic && c.P.size() > 1) {
        auto d = defining_poly_disc(c);
        if (count_zeros(*d, c.interval) != 0) return false;
    }
    return true;
}

static Check expected_check(const Scenario& s, const ojson& r) {
    const nlohmann::json& ex = *s.expected;
    std::vector<std::string> bad;
    auto pl_pairs = [](const ojson& f) {
        std::vector<std::pair<std::string, std::string>> out;
        for (size_t k = 0; k < f["breakpoints"].size(); ++k)
            out.push_back({f["breakpoints"][k].get<std::string>(), f["values"][k].get<std::string>()});
        return out;
    };
    auto want_pairs = [](const nlohmann::json& j) {
        std::vector<std::pair<std::string, std::string>> out;
        for (auto& pr : j) out.push_back({Rat::parse(pr.at(0).get<std::string>()).str(), Rat::parse(pr.at(1).get<std::string>()).str()});
        return out;
    };
    try {
        if (ex.contains("critical_radii")) {
            std::vector<std::string> want;
            for (auto& x : ex["critical_radii"]) want.push_back(rat_from_json(x).str());
            if (want != r["critical_radii"].get<std::vector<std::string>>()) bad.push_back("critical radii differ");
        }
        if (ex.contains("disc") && r.contains("discriminant"))
            if (want_pairs(ex["disc"]) != pl_pairs(r["discriminant"]["fun"])) bad.push_back("discriminant differs");
        if (ex.contains("sw") && r.contains("characters")) {
            for (auto& [k, v] : ex["sw"].items()) {
                bool found = false;
                for (auto& ch : r["characters"])
                    if (std::to_string(ch["index"].get<int64_t>()) == k && ch.contains("sw_fun")) {
                        found = true;
                        if (want_pairs(v) != pl_pairs(ch["sw_fun"])) bad.push_back("sw for character " + k + " differs");
                    }
                if (!found) bad.push_back("character " + k + " not in report");
            }
        }
        if (ex.contains("sigma") && r.contains("decomposition")) {
            std::vector<int64_t> got;
            for (auto& pc : r["decomposition"]) {
                int64_t s = 0;
                for (auto& c : pc["components"]) s += c["sigma"].get<int64_t>();
                got.push_back(s);
            }
            if (got != ex["sigma"].get<std::vector<int64_t>>()) bad.push_back("sigma per piece differs");
        }
    } catch (const std::exception& e) {
        bad.push_back(std::string("malformed expected fragment: ") + e.what());
    }
    return make_check("expected-fragment", bad.empty(), "report", "expected fragment", bad);
}

ojson build_report(const Scenario& s, const ReportOptions& opt) {
    const CoverSpec& c = s.cover;
    Ramify R(c);
    ojson r;
    r["id"] = s.id;
    r["command"] = report_kind_name(opt.kind);
    r["field"] = {{"p", c.base.p}, {"q", c.base.q}, {"e", c.base.e}, {"precision", c.base.precision}};
    ojson cv;
    cv["kind"] = kind_name(c.kind);
    cv["description"] = c.describe();
    cv["degree"] = c.degree();
    cv["group"] = c.abelian ? ojson(c.group.factors()) : ojson(nullptr);
    cv["interval"] = {c.interval.lo.str(), c.interval.hi.str()};
    r["cover"] = cv;
    r["critical_radii"] = rats(R.critical());
    std::vector<Check> checks;
    bool full = opt.kind == ReportKind::Full;

    if (full || opt.kind == ReportKind::Decompose || opt.kind == ReportKind::Discriminant) {
        ojson dec = ojson::array();
        for (auto& pc : R.decomposition()) {
            ojson p;
            p["interval"] = {pc.iv.lo.str(), pc.iv.hi.str()};
            p["delta_f"] = pc.delta_f;
            p["wild"] = pc.wild;
            ojson comps = ojson::array();
            for (auto& x : pc.components) comps.push_back({{"degree", x.degree}, {"sigma", x.sigma}});
            p["components"] = comps;
            dec.push_back(p);
        }
        r["decomposition"] = dec;
    }
    if (full || opt.kind == ReportKind::Discriminant) {
        PLFun d = R.discriminant_fun();
        r["discriminant"] = {{"route", c.abelian ? "pairing" : "lattice"}, {"fun", d.to_json()}};
        if (etale(c))
            checks.push_back(make_check("discriminant-convexity", d.is_convex(), "convex", "convex"));
        checks.push_back(R.discriminant_slope_check());
        checks.push_back(R.route_agreement_check());
    }
    if (full) {
        checks.push_back(R.discvar_check());
        for (auto& ch : R.subgroup_battery()) checks.push_back(ch);
        NearbyCyclesLedger L = R.nearby_cycles();
        r["nearby_cycles"] = {{"sigma", L.sigma},
                              {"sigma_prime", L.sigma_prime},
                              {"delta_f", L.delta_f},
                              {"delta_f_prime", L.delta_f_prime},
                              {"lhs_sum", L.lhs_sum ? ojson(*L.lhs_sum) : ojson("not-computed")},
                              {"rhs", L.rhs},
                              {"disc_slope_difference", L.disc_slope_difference.str()}};
    }
    if ((full || opt.kind == ReportKind::Swan) && c.abelian) {
        auto idx = selected_indices(s);
        auto chars = selected_characters(s);
        ojson arr = ojson::array();
        for (size_t k = 0; k < chars.size(); ++k) {
            ConductorReport cr = R.conductor_battery(chars[k]);
            ojson j;
            j["index"] = idx[k];
            ojson vals = ojson::array();
            for (auto& v : chars[k].values()) vals.push_back(v.str());
            j["values"] = vals;
            if (!cr.sw_fun.breakpoints().empty()) j["sw_fun"] = cr.sw_fun.to_json();
            ojson ph = ojson::array();
            for (auto& p : cr.phi_vals) ph.push_back({{"t", p.t.str()}, {"phi", p.phi.str()}});
            j["phi"] = ph;
            ojson lim = ojson::array();
            for (auto& l : cr.critical_limits)
                lim.push_back({{"t", l.t.str()}, {"left", l.left.str()}, {"right", l.right.str()}, {"direct", "not-computed"}});
            j["critical_limits"] = lim;
            ojson cj = ojson::array();
            for (auto& ch : cr.checks) cj.push_back(check_json(ch));
            j["checks"] = cj;
            j["status"] = cr.all_pass() ? "pass" : "fail";
            arr.push_back(j);
        }
        r["characters"] = arr;
    }
    if (opt.grid > 0 && c.abelian) {
        std::vector<Rat> radii;
        for (int i = 0; i <= opt.grid; ++i) radii.push_back(c.interval.lo + c.interval.length() * Rat(i, opt.grid));
        auto chars = selected_characters(s);
        SweepTable tab = sweep_parallel(R, radii, chars, opt.threads);
        ojson g = ojson::array();
        for (size_t i = 0; i < radii.size(); ++i) {
            ojson row;
            row["t"] = radii[i].str();
            ojson vals = ojson::array();
            for (auto& v : tab[i]) vals.push_back(v ? ojson(v->str()) : ojson("not-computed"));
            row["sw"] = vals;
            g.push_back(row);
        }
        r["grid"] = g;
    }
    if (s.expected) checks.push_back(expected_check(s, r));
    ojson cj = ojson::array();
    for (auto& ch : checks) cj.push_back(check_json(ch));
    r["checks"] = cj;
    r["status"] = failing_checks(r).empty() ? "pass" : "fail";
    return r;
}

std::vector<std::string> failing_checks(const ojson& r) {
    std::vector<std::string> out;
    auto scan = [&](const ojson& arr, const std::string& prefix) {
        for (auto& ch : arr)
            if (ch["status"] == "fail") {
                std::string w = ch["witnesses"].empty() ? std::string() : " (" + ch["witnesses"][0].get<std::string>() + ")";
                out.push_back(prefix + ch["name"].get<std::string>() + w);
            }
    };
    if (r.contains("checks")) scan(r["checks"], "");
    if (r.contains("characters"))
        for (auto& ch : r["characters"]) scan(ch["checks"], "character " + std::to_string(ch["index"].get<int64_t>()) + ": ");
    return out;
}

bool report_passed(const ojson& r) { return r.value("status", "fail") == "pass"; }

std::string dump_report(const ojson& r) { return r.dump(2) + "\n"; }

ojson zeros_report(const ZerosDoc& z) {
    KTheoryResult k = ktheory_check(z.poly, z.interval);
    ojson r;
    r["id"] = z.id;
    r["command"] = "zeros";
    r["poly"] = z.poly.str();
    r["interval"] = {z.interval.lo.str(), z.interval.hi.str()};
    r["beta_outer"] = k.beta_outer;
    r["beta_inner"] = k.beta_inner;
    r["boundary_outer"] = k.boundary_outer;
    r["boundary_inner"] = k.boundary_inner;
    r["lhs"] = k.lhs;
    r["rhs"] = k.rhs;
    r["count_zeros"] = count_zeros(z.poly, z.interval);
    std::vector<Check> checks{make_check("ktheory", k.ok(), std::to_string(k.lhs), std::to_string(k.rhs))};
    if (z.root_valuations) {
        int64_t n = 0;
        for (auto& v : *z.root_valuations) n += z.interval.contains(v);
        r["oracle_count"] = n;
        checks.push_back(make_check("root-oracle", n == k.rhs && n == r["count_zeros"].get<int64_t>(),
                                    std::to_string(n), std::to_string(k.rhs)));
    }
    ojson cj = ojson::array();
    for (auto& ch : checks) cj.push_back(check_json(ch));
    r["checks"] = cj;
    r["status"] = failing_checks(r).empty() ? "pass" : "fail";
    return r;
}

static std::string xml_escape(const std::string& s) {
    std::string o;
    for (char ch : s) {
        switch (ch) {
            case '&': o += "&amp;"; break;
            case '<': o += "&lt;"; break;
            case '>': o += "&gt;"; break;
            case '"': o += "&quot;"; break;
            default: o += ch;
        }
    }
    return o;
}

std::string junit_xml(const std::vector<CorpusOutcome>& outcomes) {
    int failures = 0, errors = 0;
    for (auto& o : outcomes) {
        if (o.status == "error") ++errors;
        else if (o.status != "pass") ++failures;
    }
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<testsuite name=\"conductor-lab corpus\" tests=\"" << outcomes.size() << "\" failures=\"" << failures
       << "\" errors=\"" << errors << "\">\n";
    for (auto& o : outcomes) {
        os << "  <testcase classname=\"corpus\" name=\"" << xml_escape(o.id.empty() ? o.path : o.id) << "\" file=\""
           << xml_escape(o.path) << "\">\n";
        if (o.status == "error")
            os << "    <error message=\"" << xml_escape(o.message) << "\"/>\n";
        else if (o.status != "pass")
            os << "    <failure message=\"" << xml_escape(o.status + ": " + o.message) << "\"/>\n";
        os << "  </testcase>\n";
    }
    os << "</testsuite>\n";
    return os.str();
}

}  // namespace conductor
