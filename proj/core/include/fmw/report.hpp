#pragma once

#include <string>

#include <json.hpp>

namespace fmw {

/// Machine-readable command report. Canonically serialized (sorted keys);
/// identical invocations produce identical reports modulo timing_ms.
struct Report {
    std::string command;
    nlohmann::json verdict;
    nlohmann::json witness;             // null when absent
    nlohmann::json bounds = nlohmann::json::object();
    double timing_ms = 0;
};

nlohmann::json to_json(const Report& r, bool include_timing = true);
std::string machine_text(const Report& r, bool include_timing = true);
std::string human_text(const Report& r);

} // namespace fmw
