#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include <CLI11.hpp>

#include "conductor/kernels.hpp"
#include "conductor/report.hpp"

namespace fs = std::filesystem;
using namespace conductor;

namespace {

constexpr int kExitCheck = 2;
constexpr int kExitScenario = 3;

struct Opts {
    std::string scenario;
    std::string out;
    bool svg = false;
    int64_t fuzz = 0;
    std::optional<int64_t> precision;
    int grid = 0;
    int threads = 1;
    bool update_golden = false;
    std::string dir;
};

void write_file(const fs::path& p, const std::string& s) {
    fs::create_directories(p.parent_path().empty() ? fs::path(".") : p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << s;
}

std::string read_file(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

uint64_t seed_from_env() {
    const char* s = std::getenv("CONDUCTOR_LAB_SEED");
    if (!s || !*s) return 1;
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        throw ScenarioError(std::string("CONDUCTOR_LAB_SEED must be an unsigned integer, got '") + s + "'");
    }
}

void emit(const Opts& o, const std::string& name, const std::string& text) {
    if (o.out.empty())
        std::cout << text;
    else
        write_file(fs::path(o.out) / name, text);
}

int finish(const ojson& r) {
    if (report_passed(r)) return 0;
    for (auto& f : failing_checks(r)) std::cerr << "check failed: " << f << "\n";
    return kExitCheck;
}

void require_scenario(const Opts& o) {
    if (o.scenario.empty()) throw ScenarioError("--scenario FILE is required");
}

int cmd_report(const Opts& o, ReportKind kind) {
    require_scenario(o);
    auto t0 = std::chrono::steady_clock::now();
    Scenario s = load_scenario(o.scenario, o.precision);
    ReportOptions ro;
    ro.kind = kind;
    ro.grid = o.grid;
    ro.threads = o.threads;
    ojson r = build_report(s, ro);
    emit(o, s.id + "." + report_kind_name(kind) + ".json", dump_report(r));
    if (o.svg) {
        fs::path dir = o.out.empty() ? fs::path(".") : fs::path(o.out);
        if (r.contains("characters"))
            for (auto& ch : r["characters"])
                if (ch.contains("sw_fun")) {
                    int64_t i = ch["index"].get<int64_t>();
                    write_file(dir / (s.id + ".sw.chi" + std::to_string(i) + ".svg"),
                               pl_to_svg(PLFun::from_json(ch["sw_fun"]), s.id + " sw, character " + std::to_string(i), "sw(t)"));
                }
        if (r.contains("discriminant"))
            write_file(dir / (s.id + ".disc.svg"),
                       pl_to_svg(PLFun::from_json(r["discriminant"]["fun"]), s.id + " discriminant", "disc(t)"));
    }
    std::cerr << s.id << ": " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";
    return finish(r);
}

int cmd_zeros(const Opts& o) {
    if (o.fuzz > 0) {
        uint64_t seed = seed_from_env();
        auto t0 = std::chrono::steady_clock::now();
        auto res = ktheory_fuzz_parallel(seed, o.fuzz, o.threads, o.precision.value_or(128));
        ojson r;
        r["command"] = "zeros-fuzz";
        r["seed"] = seed;
        r["cases"] = o.fuzz;
        r["precision"] = o.precision.value_or(128);
        int64_t passed = 0;
        ojson fails = ojson::array();
        for (auto& x : res) {
            if (x.ok) {
                ++passed;
                continue;
            }
            fails.push_back({{"index", x.fc.index}, {"case", fuzz_case_str(x.fc)}, {"lhs", x.lhs}, {"rhs", x.rhs},
                             {"oracle", x.oracle}, {"error", x.error}});
        }
        r["passed"] = passed;
        r["failures"] = fails;
        r["status"] = passed == o.fuzz ? "pass" : "fail";
        emit(o, "zeros-fuzz.json", dump_report(r));
        std::cerr << passed << "/" << o.fuzz << " pass, "
                  << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";
        return passed == o.fuzz ? 0 : kExitCheck;
    }
    require_scenario(o);
    ZerosDoc z = load_zeros_doc(o.scenario, o.precision);
    ojson r = zeros_report(z);
    emit(o, z.id + ".zeros.json", dump_report(r));
    return finish(r);
}

// Report comparison; with a precision override the precision field is ignored.
bool same_report(const std::string& a, const std::string& b, bool ignore_precision) {
    if (!ignore_precision) return a == b;
    try {
        auto ja = ojson::parse(a), jb = ojson::parse(b);
        ja["field"].erase("precision");
        jb["field"].erase("precision");
        return ja == jb;
    } catch (const std::exception&) {
        return false;
    }
}

int cmd_corpus(const Opts& o) {
    std::string dir = !o.dir.empty() ? o.dir : o.scenario;
    if (dir.empty()) throw ScenarioError("corpus needs a directory");
    if (!fs::is_directory(dir)) throw ScenarioError(dir + ": not a directory");
    std::vector<std::string> files;
    for (auto& e : fs::directory_iterator(dir)) {
        auto ext = e.path().extension().string();
        if (e.is_regular_file() && (ext == ".toml" || ext == ".json")) files.push_back(e.path().string());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) std::cerr << "warning: no scenario files in " << dir << "\n";

    ReportOptions ro;
    ro.grid = o.grid;
    auto t0 = std::chrono::steady_clock::now();
    // Precision override: reload each file with it.
    std::vector<CorpusOutcome> res;
    if (o.precision) {
        res.resize(files.size());
        const int64_t n = int64_t(files.size());
#pragma omp parallel for schedule(dynamic) num_threads(o.threads)
        for (int64_t i = 0; i < n; ++i) {
            CorpusOutcome& c = res[size_t(i)];
            c.path = files[size_t(i)];
            auto c0 = std::chrono::steady_clock::now();
            try {
                Scenario s = load_scenario(c.path, o.precision);
                c.id = s.id;
                ojson r = build_report(s, ro);
                c.report = dump_report(r);
                c.status = report_passed(r) ? "pass" : "fail";
                if (c.status != "pass")
                    for (auto& f : failing_checks(r)) c.message += f + "; ";
            } catch (const std::exception& e) {
                c.status = "error";
                c.message = e.what();
            }
            c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - c0).count();
        }
    } else {
        res = corpus_parallel(files, ro, o.threads);
    }

    std::set<std::string> ids;
    fs::path golden = fs::path(dir) / "golden";
    int exit_code = 0;
    for (auto& c : res) {
        if (c.status == "error") {
            std::cerr << "error: " << c.message << "\n";
            exit_code = kExitScenario;
            continue;
        }
        if (!ids.insert(c.id).second) {
            c.status = "error";
            c.message = c.path + ": duplicate scenario id '" + c.id + "'";
            std::cerr << "error: " << c.message << "\n";
            exit_code = kExitScenario;
            continue;
        }
        fs::path gp = golden / (c.id + ".report.json");
        if (o.update_golden) {
            write_file(gp, c.report);
        } else if (!fs::exists(gp)) {
            if (c.status == "pass") {
                c.status = "no-golden";
                c.message = "missing " + gp.string();
            }
        } else if (!same_report(read_file(gp), c.report, o.precision.has_value())) {
            c.status = "regressed";
            c.message += "report differs from " + gp.string();
        }
        if (c.status != "pass") {
            std::cerr << c.status << ": " << c.path << ": " << c.message << "\n";
            if (exit_code == 0) exit_code = kExitCheck;
        }
        std::cerr << c.id << ": " << c.status << " (" << c.seconds << " s)\n";
        if (!o.out.empty() && !c.report.empty()) write_file(fs::path(o.out) / (c.id + ".report.json"), c.report);
    }
    std::string junit = junit_xml(res);
    if (!o.out.empty()) write_file(fs::path(o.out) / "junit.xml", junit);
    int64_t pass = std::count_if(res.begin(), res.end(), [](auto& c) { return c.status == "pass"; });
    std::cout << "corpus " << dir << ": " << pass << "/" << res.size() << " pass\n";
    std::cerr << "total " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"conductor-lab: conductor and discriminant functions of covers of annuli"};
    app.require_subcommand(1);
    Opts o;
    auto common = [&](CLI::App* sc) {
        sc->add_option("--scenario", o.scenario, "Scenario (or polynomial) document, .toml or .json");
        sc->add_option("--out", o.out, "Output directory (default: stdout)");
        sc->add_option("--precision", o.precision, "Override the precision cap (units of 1/e)");
        sc->add_option("--threads", o.threads, "OpenMP threads")->check(CLI::PositiveNumber);
    };
    auto* swan = app.add_subcommand("swan", "Swan conductor functions and the variation checks");
    auto* zeros = app.add_subcommand("zeros", "Zero counting identity on an annulus");
    auto* disc = app.add_subcommand("discriminant", "Discriminant function and its slope identity");
    auto* dec = app.add_subcommand("decompose", "Critical radii and fiber decomposition");
    auto* corpus = app.add_subcommand("corpus", "Run a scenario directory against its golden reports");
    for (auto* sc : {swan, zeros, disc, dec, corpus}) common(sc);
    for (auto* sc : {swan, disc}) sc->add_flag("--svg", o.svg, "Also write SVG plots");
    for (auto* sc : {swan, disc, dec, corpus}) sc->add_option("--grid", o.grid, "Add a pairing table on k+1 grid radii");
    zeros->add_option("--fuzz", o.fuzz, "Randomized self-test with N cases (seed: CONDUCTOR_LAB_SEED)");
    corpus->add_option("dir", o.dir, "Scenario directory");
    corpus->add_flag("--update-golden", o.update_golden, "Rewrite golden reports");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*swan) return cmd_report(o, ReportKind::Swan);
        if (*disc) return cmd_report(o, ReportKind::Discriminant);
        if (*dec) return cmd_report(o, ReportKind::Decompose);
        if (*zeros) return cmd_zeros(o);
        if (*corpus) return cmd_corpus(o);
    } catch (const ModelError& e) {
        std::cerr << e.what() << "\n";
        return kExitCheck;
    } catch (const std::exception& e) {
        std::cerr << "scenario error: " << e.what() << "\n";
        return kExitScenario;
    }
    return 0;
}
