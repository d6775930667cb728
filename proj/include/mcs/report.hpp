#pragma once

#include <map>
#include <string>
#include <utility>

#include <json.hpp>

namespace mcs {

inline constexpr const char* kReportSchema = "mcs-report/1";

/// Machine-readable result of one CLI command.
///
/// JSON layout:
///   { "schema": "mcs-report/1", "command": ..., "parameters": {...},
///     "outcome": ..., "details": {...}, "timings_ms": {...} }
/// timings_ms is omitted when empty. Big integers are decimal strings.
struct RunReport {
    RunReport() = default;
    RunReport(std::string command_, nlohmann::ordered_json parameters_, std::string outcome_)
        : command(std::move(command_)),
          parameters(std::move(parameters_)),
          outcome(std::move(outcome_)) {}

    std::string command;
    nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
    std::string outcome;
    nlohmann::ordered_json details = nlohmann::ordered_json::object();
    std::map<std::string, double> timings_ms;

    friend bool operator==(const RunReport&, const RunReport&) = default;
};

nlohmann::ordered_json to_json(const RunReport& report);
/// Throws MalformedInput on a missing field or a schema mismatch.
RunReport report_from_json(const nlohmann::ordered_json& j);

}  // namespace mcs
