#include "mcs/report.hpp"

#include "mcs/errors.hpp"

namespace mcs {

nlohmann::ordered_json to_json(const RunReport& report) {
    nlohmann::ordered_json j;
    j["schema"] = kReportSchema;
    j["command"] = report.command;
    j["parameters"] = report.parameters;
    j["outcome"] = report.outcome;
    j["details"] = report.details;
    if (!report.timings_ms.empty()) {
        nlohmann::ordered_json t = nlohmann::ordered_json::object();
        for (const auto& [name, ms] : report.timings_ms) t[name] = ms;
        j["timings_ms"] = t;
    }
    return j;
}

RunReport report_from_json(const nlohmann::ordered_json& j) {
    try {
        if (j.at("schema").get<std::string>() != kReportSchema) {
            throw MalformedInput("unsupported report schema " + j.at("schema").dump(), 0);
        }
        RunReport r;
        r.command = j.at("command").get<std::string>();
        r.parameters = j.at("parameters");
        r.outcome = j.at("outcome").get<std::string>();
        r.details = j.at("details");
        if (j.contains("timings_ms")) {
            for (const auto& [name, ms] : j.at("timings_ms").items()) {
                r.timings_ms[name] = ms.get<double>();
            }
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw MalformedInput(std::string("bad report: ") + e.what(), 0);
    }
}

}  // namespace mcs
