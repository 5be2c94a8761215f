#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conductor/ramify.hpp"

namespace conductor {

struct ReportOptions;
struct CorpusOutcome;

// Each kernel has a serial reference and an OpenMP variant; the parallel
// variant must return exactly what the serial one returns.

// <a(t), chi> over a radius grid; empty where the radius is critical or
// evaluation fails.
using SweepTable = std::vector<std::vector<std::optional<Rat>>>;
SweepTable sweep_serial(Ramify& R, const std::vector<Rat>& radii, const std::vector<ClassFun>& chars);
SweepTable sweep_parallel(Ramify& R, const std::vector<Rat>& radii, const std::vector<ClassFun>& chars, int threads);

// Random products of (xi - c pi^v) checked against the zero-count identity.
struct FuzzCase {
    int64_t index = 0;
    int64_t q = 2;
    std::vector<std::pair<Rat, int64_t>> roots;  // (valuation, discrete log of the coefficient)
    Interval interval;
    int64_t precision = 128;  // cap in units of 1/e, e = 2
};
struct FuzzOutcome {
    FuzzCase fc;
    int64_t lhs = 0, rhs = 0, oracle = 0;
    bool ok = false;
    std::string error;
    friend bool operator==(const FuzzOutcome& a, const FuzzOutcome& b) {
        return a.fc.index == b.fc.index && a.lhs == b.lhs && a.rhs == b.rhs && a.oracle == b.oracle && a.ok == b.ok &&
               a.error == b.error;
    }
};
FuzzCase make_fuzz_case(uint64_t seed, int64_t index, int64_t precision = 128);
FuzzOutcome run_fuzz_case(const FuzzCase& fc);
std::vector<FuzzOutcome> ktheory_fuzz_serial(uint64_t seed, int64_t n, int64_t precision = 128);
std::vector<FuzzOutcome> ktheory_fuzz_parallel(uint64_t seed, int64_t n, int threads, int64_t precision = 128);
std::string fuzz_case_str(const FuzzCase& fc);

// Runs every scenario file and dumps its report (no golden comparison).
CorpusOutcome run_scenario_file(const std::string& path, const ReportOptions& opt);
std::vector<CorpusOutcome> corpus_serial(const std::vector<std::string>& files, const ReportOptions& opt);
std::vector<CorpusOutcome> corpus_parallel(const std::vector<std::string>& files, const ReportOptions& opt, int threads);

}  // namespace conductor
