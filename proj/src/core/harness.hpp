#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace skellab {

// One checked instance of a property.
struct CaseRecord {
    std::string suite;
    std::string case_name;
    std::string params;    // serialized JSON object
    std::string observed;
    std::string bound;
    bool ok = false;
};

struct HarnessConfig {
    std::vector<std::string> suites;  // empty = all
    size_t corpus_size = 0;           // 0 = suite default
    uint64_t seed = 1;
    uint64_t step_budget = 100000;
    uint64_t node_budget = 1000000;
};

struct HarnessReport {
    std::vector<CaseRecord> records;
    bool all_ok = true;

    size_t failures() const;
};

std::vector<std::string> harness_suite_names();

// Runs the configured suites (all by default). Property failures are data,
// never exceptions.
HarnessReport harness_run(const HarnessConfig& config = {});

std::string record_to_json(const CaseRecord& r);

} // namespace skellab
