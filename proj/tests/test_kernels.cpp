#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

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
}  // namespace

TEST_CASE("kernels: radius sweep, parallel equals serial") {
    Scenario s = load_scenario(fs::path(CONDUCTOR_SOURCE_DIR) / "corpus" / "compositum-p7-m3.toml");
    Ramify R(s.cover);
    std::vector<Rat> radii;
    Interval iv = s.cover.interval;
    for (int k = 0; k <= 40; ++k) radii.push_back(iv.lo + iv.length() * Rat(k, 40));
    auto chars = characters(s.cover.group);
    SweepTable a = sweep_serial(R, radii, chars);
    REQUIRE(a.size() == radii.size());
    for (int threads : {1, 2, 4, 7}) CHECK(sweep_parallel(R, radii, chars, threads) == a);
    // A fresh engine (cold caches) gives the same table.
    Ramify R2(s.cover);
    CHECK(sweep_parallel(R2, radii, chars, 4) == a);
}

TEST_CASE("kernels: sweep marks critical radii as empty") {
    Scenario s = load_scenario(fs::path(CONDUCTOR_SOURCE_DIR) / "corpus" / "as-p2-two-terms.toml");
    Ramify R(s.cover);
    auto chars = characters(s.cover.group);
    SweepTable t = sweep_serial(R, {Rat(1, 2), Rat(1), Rat(3, 2)}, chars);
    CHECK(t[0][1] == Rat(1, 2));
    CHECK_FALSE(t[1][1].has_value());
    CHECK(t[2][1] == Rat(5, 2));
}

TEST_CASE("kernels: fuzz cases are reproducible and within range") {
    for (int64_t i = 0; i < 300; ++i) {
        FuzzCase a = make_fuzz_case(9, i), b = make_fuzz_case(9, i);
        CHECK(fuzz_case_str(a) == fuzz_case_str(b));
        CHECK(a.roots.size() >= 1);
        CHECK(a.roots.size() <= 6);
        for (auto& [v, c] : a.roots) {
            CHECK(v >= Rat(-2));
            CHECK(v <= Rat(4));
            CHECK(c >= 0);
            CHECK(c < a.q - 1);
        }
        CHECK(a.interval.lo < a.interval.hi);
    }
    CHECK(fuzz_case_str(make_fuzz_case(1, 0)) != fuzz_case_str(make_fuzz_case(2, 0)));
}

TEST_CASE("kernels: fuzz, parallel equals serial and every case agrees with the oracle") {
    auto a = ktheory_fuzz_serial(1, 200);
    REQUIRE(a.size() == 200);
    for (auto& o : a) {
        CAPTURE(fuzz_case_str(o.fc));
        CHECK(o.ok);
        CHECK(o.error.empty());
    }
    for (int threads : {2, 4, 8}) CHECK(ktheory_fuzz_parallel(1, 200, threads) == a);
}

TEST_CASE("kernels: corpus, parallel equals serial") {
    auto files = corpus_files();
    ReportOptions opt;
    auto a = corpus_serial(files, opt);
    for (int threads : {2, 4}) {
        auto b = corpus_parallel(files, opt, threads);
        REQUIRE(b.size() == a.size());
        for (size_t i = 0; i < a.size(); ++i) {
            CHECK(b[i].id == a[i].id);
            CHECK(b[i].status == a[i].status);
            CHECK(b[i].report == a[i].report);
        }
    }
    for (auto& o : a) CHECK(o.status == "pass");
}
