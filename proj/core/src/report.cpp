#include "fmw/report.hpp"

#include <sstream>

namespace fmw {

nlohmann::json to_json(const Report& r, bool include_timing) {
    nlohmann::json j{{"command", r.command},
                     {"verdict", r.verdict},
                     {"witness", r.witness},
                     {"bounds", r.bounds}};
    if (include_timing) j["timing_ms"] = r.timing_ms;
    return j;
}

std::string machine_text(const Report& r, bool include_timing) {
    return to_json(r, include_timing).dump(2) + "\n";
}

std::string human_text(const Report& r) {
    std::ostringstream out;
    out << r.command << ": ";
    if (r.verdict.is_boolean())
        out << (r.verdict.get<bool>() ? "true" : "false");
    else if (r.verdict.is_string())
        out << r.verdict.get<std::string>();
    else
        out << r.verdict.dump();
    out << "\n";
    if (!r.witness.is_null()) out << "witness: " << r.witness.dump(2) << "\n";
    if (!r.bounds.empty()) out << "bounds: " << r.bounds.dump() << "\n";
    return out.str();
}

} // namespace fmw
