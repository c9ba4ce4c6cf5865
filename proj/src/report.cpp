#include "qmix/report.hpp"

#include <cstdio>

#include <json.hpp>

namespace qmix {

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string report_to_json(const CapacityReport& report, std::uint64_t seed) {
    nlohmann::ordered_json j;
    j["channel_id"] = report.channel_id;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : report.params) params[k] = v;
    j["params"] = params;
    if (report.lower) {
        j["lower"] = *report.lower;
    } else {
        j["lower"] = nullptr;
    }
    j["upper"] = report.upper;
    j["exact"] = report.exact;
    nlohmann::ordered_json notes = nlohmann::ordered_json::array();
    for (const auto& [quantity, method] : report.method_notes) {
        notes.push_back({{"quantity", quantity}, {"method", method}});
    }
    j["method_notes"] = notes;
    nlohmann::ordered_json chain = nlohmann::ordered_json::object();
    for (const auto& [k, v] : report.capacity_chain) chain[k] = v;
    j["capacity_chain"] = chain;
    j["metadata"] = {{"seed", seed}};
    return j.dump(2) + "\n";
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::string out = "param1,param2,lower,upper,exact,method\n";
    for (const SweepRow& r : rows) {
        out += r.param1;
        out += ',';
        out += r.param2;
        out += ',';
        if (r.report.lower) out += format_number(*r.report.lower);
        out += ',';
        out += format_number(r.report.upper);
        out += ',';
        out += r.report.exact ? "true" : "false";
        out += ',';
        std::string method;
        for (const auto& [quantity, how] : r.report.method_notes) {
            if (!method.empty()) method += "; ";
            method += quantity + ": " + how;
        }
        // Method strings may contain commas; keep the field quoted.
        out += '"' + method + '"';
        out += '\n';
    }
    return out;
}

}  // namespace qmix
