#pragma once

#include <string>
#include <vector>

#include "uhp/common.hpp"

namespace uhp {

struct RunConfig {
    u64 p = 2;
    int precision = 24;
    int depth = 2;
    i64 d = 0;  // 0: derived from q
    i64 e = 0;
    int level = 1;
    int samples = 8;
    u64 seed = 1;
};

void validate_config(const RunConfig& cfg);

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckLine> checks;
    std::string tables_json;  // suite-specific payload, already serialized

    bool pass() const;
    std::string to_json(const RunConfig& cfg) const;  // single JSON line
    std::string to_summary() const;                   // one line per check
};

std::vector<std::string> suite_names();
SuiteReport run_suite(const std::string& name, const RunConfig& cfg);

}  // namespace uhp
