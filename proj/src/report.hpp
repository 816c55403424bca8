// Verb dispatch and report rendering shared by the C API.
#pragma once

#include "nctk/decomposition.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nctk {

struct RunOptions {
    std::string verb;
    std::optional<std::vector<int>> z;  // 0-based
    std::optional<std::string> complex;
    std::optional<int> k;
    std::optional<std::string> mode;
    std::optional<int> shift;
    uint64_t seed = 0;
};

struct RunOutcome {
    nlohmann::json document;
    int exit_code = 0;
};

/// Never throws domain errors; they become error documents with exit code 2.
RunOutcome run_verb(const NCModel& model, const std::string& instance, const RunOptions& options);
nlohmann::json error_document(const Error& e);

std::string render_json(const nlohmann::json& doc);
std::string render_text(const nlohmann::json& doc);

/// Verbs taking an instance file.
const std::vector<std::string>& instance_verbs();

}  // namespace nctk
