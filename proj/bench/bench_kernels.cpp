// Serial reference kernels against their OpenMP variants.
#include <benchmark/benchmark.h>

#include <filesystem>

#include "conductor/kernels.hpp"
#include "conductor/report.hpp"

using namespace conductor;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> corpus_files() {
    std::vector<std::string> out;
    for (auto& e : fs::directory_iterator(fs::path(CONDUCTOR_SOURCE_DIR) / "corpus"))
        if (e.path().extension() == ".toml") out.push_back(e.path().string());
    std::sort(out.begin(), out.end());
    return out;
}

struct SweepInput {
    CoverSpec cover;
    std::vector<Rat> radii;
    std::vector<ClassFun> chars;
};

SweepInput sweep_input() {
    Scenario s = load_scenario((fs::path(CONDUCTOR_SOURCE_DIR) / "corpus" / "compositum-p7-m3.toml").string());
    SweepInput in{s.cover, {}, characters(s.cover.group)};
    Interval iv = s.cover.interval;
    for (int k = 0; k <= 200; ++k) in.radii.push_back(iv.lo + iv.length() * Rat(k, 200));
    return in;
}

// Fresh engine per iteration so the per-radius caches start cold.
void BM_SweepSerial(benchmark::State& st) {
    SweepInput in = sweep_input();
    for (auto _ : st) {
        Ramify R(in.cover);
        benchmark::DoNotOptimize(sweep_serial(R, in.radii, in.chars));
    }
}

void BM_SweepParallel(benchmark::State& st) {
    SweepInput in = sweep_input();
    for (auto _ : st) {
        Ramify R(in.cover);
        benchmark::DoNotOptimize(sweep_parallel(R, in.radii, in.chars, int(st.range(0))));
    }
}

void BM_FuzzSerial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(ktheory_fuzz_serial(1, st.range(0)));
}

void BM_FuzzParallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(ktheory_fuzz_parallel(1, st.range(0), int(st.range(1))));
}

void BM_CorpusSerial(benchmark::State& st) {
    auto files = corpus_files();
    for (auto _ : st) benchmark::DoNotOptimize(corpus_serial(files, {}));
}

void BM_CorpusParallel(benchmark::State& st) {
    auto files = corpus_files();
    for (auto _ : st) benchmark::DoNotOptimize(corpus_parallel(files, {}, int(st.range(0))));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FuzzSerial)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FuzzParallel)->Args({1000, 2})->Args({1000, 4})->Args({1000, 8})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CorpusSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CorpusParallel)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
