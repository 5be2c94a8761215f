#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "conductor/report.hpp"

using namespace conductor;
namespace fs = std::filesystem;

namespace {
const fs::path kCorpus = fs::path(CONDUCTOR_SOURCE_DIR) / "corpus";

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("conductor-test-" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(path / name) << text;
        return (path / name).string();
    }
};

std::vector<fs::path> corpus_files() {
    std::vector<fs::path> out;
    for (auto& e : fs::directory_iterator(kCorpus))
        if (e.path().extension() == ".toml") out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

const char* kGood = R"(id = "t"
q = 3
[cover]
kind = "artin-schreier"
interval = ["1/2", "2"]
[cover.g]
"-1" = "1"
)";

std::string replace(std::string s, const std::string& a, const std::string& b) {
    auto i = s.find(a);
    REQUIRE(i != std::string::npos);
    return s.replace(i, a.size(), b);
}
}  // namespace

TEST_CASE("scenario: minimal document") {
    TempDir d;
    Scenario s = load_scenario(d.write("t.toml", kGood));
    CHECK(s.id == "t");
    CHECK(s.base.q == 3);
    CHECK(s.base.p == 3);
    CHECK(s.base.e == 1);
    CHECK(s.base.precision == 64);
    CHECK(s.cover.kind == CoverKind::ArtinSchreier);
    CHECK(s.cover.interval == Interval{Rat(1, 2), 2});
    CHECK(s.all_characters);
    CHECK_FALSE(s.expected.has_value());
    CHECK(load_scenario(d.write("u.toml", kGood), 10).base.precision == 10);
}

TEST_CASE("scenario: invalid documents are rejected with a reason") {
    TempDir d;
    auto bad = [&](const std::string& text, const std::string& needle, const std::string& ext = ".toml") {
        CAPTURE(text);
        CHECK_THROWS_WITH_AS(load_scenario(d.write("bad" + ext, text)), doctest::Contains(needle.c_str()), ScenarioError);
    };
    bad(replace(kGood, "id = \"t\"\n", ""), "missing string field 'id'");
    bad(replace(kGood, "q = 3", "q = 3.0"), "floating-point");
    bad(replace(kGood, "q = 3", "q = 6"), "prime power");
    bad(replace(kGood, "q = 3", "q = 9\np = 2"), "characteristic");
    bad(replace(kGood, "artin-schreier", "elliptic"), "unknown cover kind");
    bad(replace(kGood, "[\"1/2\", \"2\"]", "[\"2\", \"1/2\"]"), "r < r'");
    bad(replace(kGood, "\"-1\" = \"1\"", "\"-1\" = \"pi^\""), "coefficient of xi^-1");
    bad(replace(kGood, "\"-1\" = \"1\"", "\"x\" = \"1\""), "bad exponent key");
    bad(replace(kGood, "q = 3\n", "q = 3\ncharacters = [0, 5]\n"), "out of range");
    bad(replace(kGood, "id = \"t\"", "id = \"has space\""), "must match");
    bad("not toml = = =", "bad.toml");
    bad("{}", "unknown document type", ".yaml");
    bad("{\"id\": 1}", "missing string field 'id'", ".json");
}

TEST_CASE("scenario: characters selector") {
    TempDir d;
    // TOML requires top-level keys before tables.
    std::string doc = replace(kGood, "q = 3\n", "q = 3\ncharacters = [2, 0]\n");
    Scenario s = load_scenario(d.write("c.toml", doc));
    CHECK_FALSE(s.all_characters);
    CHECK(s.character_indices == std::vector<int64_t>{2, 0});
    auto chars = selected_characters(s);
    REQUIRE(chars.size() == 2);
    CHECK(chars[0] == characters(s.cover.group)[2]);
}

TEST_CASE("scenario: every corpus scenario loads and its report passes") {
    auto files = corpus_files();
    CHECK(files.size() >= 12);
    for (auto& f : files) {
        CAPTURE(f.string());
        Scenario s = load_scenario(f.string());
        ojson r = build_report(s);
        CHECK(report_passed(r));
        CHECK(failing_checks(r).empty());
        CHECK(s.expected.has_value());
    }
}

TEST_CASE("report: deterministic and matches the checked-in goldens") {
    for (auto& f : corpus_files()) {
        CAPTURE(f.string());
        Scenario s = load_scenario(f.string());
        std::string a = dump_report(build_report(s)), b = dump_report(build_report(s));
        CHECK(a == b);
        std::ifstream g(kCorpus / "golden" / (s.id + ".report.json"));
        REQUIRE(g.good());
        std::string golden((std::istreambuf_iterator<char>(g)), std::istreambuf_iterator<char>());
        CHECK(a == golden);
        CHECK(a.find("seconds") == std::string::npos);
    }
}

TEST_CASE("report: JSON mirrors give the same reports as TOML sources") {
    for (auto& f : corpus_files()) {
        fs::path j = kCorpus / "json" / (f.stem().string() + ".json");
        CAPTURE(j.string());
        REQUIRE(fs::exists(j));
        CHECK(dump_report(build_report(load_scenario(f.string()))) == dump_report(build_report(load_scenario(j.string()))));
    }
}

TEST_CASE("report: halving the precision changes only the recorded precision") {
    for (auto& f : corpus_files()) {
        CAPTURE(f.string());
        Scenario full = load_scenario(f.string());
        ojson a = build_report(full), b = build_report(load_scenario(f.string(), full.base.precision / 2));
        CHECK(a["field"]["precision"] != b["field"]["precision"]);
        a["field"].erase("precision");
        b["field"].erase("precision");
        CHECK(a.dump() == b.dump());
    }
}

TEST_CASE("report: a wrong expected fragment fails the report") {
    TempDir d;
    std::string doc = std::string(kGood) + "[expected]\ncritical_radii = [\"1\"]\n";
    ojson r = build_report(load_scenario(d.write("e.toml", doc)));
    CHECK_FALSE(report_passed(r));
    auto f = failing_checks(r);
    REQUIRE(f.size() == 1);
    CHECK(f[0].find("expected-fragment") != std::string::npos);
}

TEST_CASE("report: kinds select sections") {
    Scenario s = load_scenario((kCorpus / "as-p2-two-terms.toml").string());
    ojson sw = build_report(s, {ReportKind::Swan, 0, 1});
    CHECK(sw["command"] == "swan");
    CHECK(sw.contains("characters"));
    ojson grid = build_report(s, {ReportKind::Full, 4, 2});
    CHECK(grid.contains("grid"));
    CHECK(dump_report(grid) == dump_report(build_report(s, {ReportKind::Full, 4, 1})));
}

TEST_CASE("zeros: root documents carry an oracle") {
    TempDir d;
    std::string doc = R"(id = "z"
q = 4
interval = ["1", "2"]
roots = [{valuation = "1/2"}, {valuation = "1"}, {valuation = "1", coef = "g"}, {valuation = "5"}]
)";
    ZerosDoc z = load_zeros_doc(d.write("z.toml", doc));
    ojson r = zeros_report(z);
    CHECK(r["lhs"] == 2);
    CHECK(r["rhs"] == 2);
    CHECK(r["oracle_count"] == 2);
    CHECK(r["status"] == "pass");
    std::string poly = R"(id = "c"
q = 5
interval = ["0", "1"]
[poly]
"0" = "3*pi^2"
)";
    ojson c = zeros_report(load_zeros_doc(d.write("c.toml", poly)));
    CHECK(c["lhs"] == 0);
    CHECK(c["rhs"] == 0);
    CHECK_THROWS_AS(load_zeros_doc(d.write("n.toml", "id = \"n\"\nq = 5\ninterval = [\"0\", \"1\"]\n")), ScenarioError);
}

TEST_CASE("junit: one testcase per outcome, no timing") {
    std::vector<CorpusOutcome> o{{"a.toml", "a", "pass", "", "", 1.5}, {"b.toml", "b", "error", "bad <x>", "", 0}};
    std::string x = junit_xml(o);
    CHECK(x.find("tests=\"2\"") != std::string::npos);
    CHECK(x.find("errors=\"1\"") != std::string::npos);
    CHECK(x.find("bad &lt;x&gt;") != std::string::npos);
    CHECK(x.find("time=") == std::string::npos);
}
