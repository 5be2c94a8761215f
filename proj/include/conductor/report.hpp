#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "conductor/ramify.hpp"
#include "conductor/scenario.hpp"

namespace conductor {

enum class ReportKind { Full, Swan, Discriminant, Decompose };
const char* report_kind_name(ReportKind k);

struct ReportOptions {
    ReportKind kind = ReportKind::Full;
    int grid = 0;     // extra radius grid of pairings when > 0
    int threads = 1;  // for the grid sweep
};

using ojson = nlohmann::ordered_json;

ojson check_json(const Check& c);
std::vector<ClassFun> selected_characters(const Scenario& s);

// Deterministic report; contains no timing and no thread-dependent data.
ojson build_report(const Scenario& s, const ReportOptions& opt = {});
bool report_passed(const ojson& r);
// Names and witness of the failing checks, for messages.
std::vector<std::string> failing_checks(const ojson& r);
std::string dump_report(const ojson& r);

ojson zeros_report(const ZerosDoc& z);

struct CorpusOutcome {
    std::string path;
    std::string id;
    std::string status;  // "pass" | "fail" | "regressed" | "error" | "no-golden"
    std::string message;
    std::string report;  // dumped report when built
    double seconds = 0;
};
std::string junit_xml(const std::vector<CorpusOutcome>& outcomes);

}  // namespace conductor
