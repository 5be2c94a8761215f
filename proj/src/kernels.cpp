#include "conductor/kernels.hpp"

#include <chrono>
#include <random>

#include <omp.h>

#include "conductor/report.hpp"

namespace conductor {

static std::optional<Rat> sweep_cell(Ramify& R, const Rat& t, const ClassFun& chi) {
    if (R.is_critical(t)) return std::nullopt;
    try {
        return pairing_rational(R.artin_classfun(t), chi);
    } catch (const ModelError&) {
        throw;
    } catch (const std::exception&) {
        return std::nullopt;  // degenerate radius (e.g. a domain endpoint)
    }
}

SweepTable sweep_serial(Ramify& R, const std::vector<Rat>& radii, const std::vector<ClassFun>& chars) {
    SweepTable tab(radii.size(), std::vector<std::optional<Rat>>(chars.size()));
    for (size_t i = 0; i < radii.size(); ++i)
        for (size_t j = 0; j < chars.size(); ++j) tab[i][j] = sweep_cell(R, radii[i], chars[j]);
    return tab;
}

SweepTable sweep_parallel(Ramify& R, const std::vector<Rat>& radii, const std::vector<ClassFun>& chars, int threads) {
    SweepTable tab(radii.size(), std::vector<std::optional<Rat>>(chars.size()));
    std::vector<std::string> errors(radii.size());
    const int64_t n = int64_t(radii.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (int64_t i = 0; i < n; ++i) {
        try {
            for (size_t j = 0; j < chars.size(); ++j) tab[size_t(i)][j] = sweep_cell(R, radii[size_t(i)], chars[j]);
        } catch (const std::exception& e) {
            errors[size_t(i)] = e.what();
        }
    }
    for (auto& e : errors)
        if (!e.empty()) throw ModelError(e);
    return tab;
}

FuzzCase make_fuzz_case(uint64_t seed, int64_t index, int64_t precision) {
    std::seed_seq ss{uint32_t(seed), uint32_t(seed >> 32), uint32_t(index), uint32_t(uint64_t(index) >> 32)};
    std::mt19937_64 rng(ss);
    auto pick = [&](int64_t lo, int64_t hi) { return lo + int64_t(rng() % uint64_t(hi - lo + 1)); };
    static const int64_t qs[] = {2, 3, 4, 5, 7, 9};
    FuzzCase fc;
    fc.precision = precision;
    fc.index = index;
    fc.q = qs[pick(0, 5)];
    int64_t k = pick(1, 6);
    for (int64_t i = 0; i < k; ++i) fc.roots.push_back({Rat(pick(-4, 8), 2), pick(0, fc.q - 2)});
    Rat lo(pick(-12, 16), 4);
    fc.interval = {lo, lo + Rat(pick(1, 12), 4)};
    return fc;
}

FuzzOutcome run_fuzz_case(const FuzzCase& fc) {
    FuzzOutcome o;
    o.fc = fc;
    try {
        BaseField b = BaseField::make(fc.q, 2, fc.precision);
        std::vector<std::pair<Rat, GF::Elem>> roots;
        for (auto& [v, lg] : fc.roots) {
            roots.push_back({v, b.F->gen_pow(lg)});
            o.oracle += fc.interval.contains(v);
        }
        KTheoryResult k = ktheory_check(poly_from_roots(b, roots), fc.interval);
        o.lhs = k.lhs;
        o.rhs = k.rhs;
        o.ok = k.ok() && k.rhs == o.oracle;
    } catch (const std::exception& e) {
        o.error = e.what();
    }
    return o;
}

std::vector<FuzzOutcome> ktheory_fuzz_serial(uint64_t seed, int64_t n, int64_t precision) {
    std::vector<FuzzOutcome> out;
    for (int64_t i = 0; i < n; ++i) out.push_back(run_fuzz_case(make_fuzz_case(seed, i, precision)));
    return out;
}

std::vector<FuzzOutcome> ktheory_fuzz_parallel(uint64_t seed, int64_t n, int threads, int64_t precision) {
    std::vector<FuzzOutcome> out(size_t(std::max<int64_t>(n, 0)));
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (int64_t i = 0; i < n; ++i) out[size_t(i)] = run_fuzz_case(make_fuzz_case(seed, i, precision));
    return out;
}

std::string fuzz_case_str(const FuzzCase& fc) {
    std::string s = "q=" + std::to_string(fc.q) + " roots=[";
    for (size_t i = 0; i < fc.roots.size(); ++i)
        s += (i ? ", " : "") + std::string("g^") + std::to_string(fc.roots[i].second) + "*pi^" + fc.roots[i].first.str();
    return s + "] interval=" + fc.interval.str();
}

CorpusOutcome run_scenario_file(const std::string& path, const ReportOptions& opt) {
    CorpusOutcome o;
    o.path = path;
    auto t0 = std::chrono::steady_clock::now();
    try {
        Scenario s = load_scenario(path);
        o.id = s.id;
        ReportOptions one = opt;
        one.threads = 1;  // scenarios already run in parallel
        ojson r = build_report(s, one);
        o.report = dump_report(r);
        o.status = report_passed(r) ? "pass" : "fail";
        if (o.status != "pass") {
            for (auto& f : failing_checks(r)) o.message += f + "; ";
        }
    } catch (const ScenarioError& e) {
        o.status = "error";
        o.message = e.what();
    } catch (const std::exception& e) {
        o.status = "error";
        o.message = path + ": " + e.what();
    }
    o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return o;
}

std::vector<CorpusOutcome> corpus_serial(const std::vector<std::string>& files, const ReportOptions& opt) {
    std::vector<CorpusOutcome> out;
    for (auto& f : files) out.push_back(run_scenario_file(f, opt));
    return out;
}

std::vector<CorpusOutcome> corpus_parallel(const std::vector<std::string>& files, const ReportOptions& opt, int threads) {
    std::vector<CorpusOutcome> out(files.size());
    const int64_t n = int64_t(files.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (int64_t i = 0; i < n; ++i) out[size_t(i)] = run_scenario_file(files[size_t(i)], opt);
    return out;
}

}  // namespace conductor
