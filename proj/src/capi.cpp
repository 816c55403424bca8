#include "nctk.h"

#include "report.hpp"

#include <cstdlib>
#include <cstring>

struct nctk_model {
    nctk::NCModel model;
};

struct nctk_report {
    nctk::RunOutcome outcome;
};

namespace {

thread_local std::string last_message;
thread_local std::optional<nctk::Error> last_error;

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

nctk_status remember(const nctk::Error& e) {
    last_error = e;
    last_message = std::string(nctk::error_name(e.code())) + " (" + e.module() + "): " + e.what();
    return static_cast<nctk_status>(static_cast<int>(e.code()) + 1);
}

void clear() {
    last_error.reset();
    last_message.clear();
}

/// "1,3" -> {0, 2}
std::vector<int> parse_branches(const std::string& s) {
    std::vector<int> out;
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t comma = s.find(',', pos);
        std::string item = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        char* end = nullptr;
        long v = std::strtol(item.c_str(), &end, 10);
        if (item.empty() || *end != '\0' || v < 1 || v > 64)
            throw nctk::Error(nctk::ErrorCode::InvalidArgument, "cli", "--z: bad branch index '" + item + "'");
        out.push_back(static_cast<int>(v - 1));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace

extern "C" {

void nctk_options_init(nctk_options* options) {
    if (!options) return;
    std::memset(options, 0, sizeof(*options));
}

nctk_status nctk_model_parse(const char* text, nctk_model** out) {
    clear();
    if (!out) return remember(nctk::Error(nctk::ErrorCode::InvalidArgument, "nc-model", "null output handle"));
    *out = nullptr;
    if (!text) return remember(nctk::Error(nctk::ErrorCode::InvalidArgument, "nc-model", "null input"));
    try {
        *out = new nctk_model{nctk::parse_model(text)};
        return NCTK_OK;
    } catch (const nctk::Error& e) {
        return remember(e);
    } catch (const std::exception& e) {
        return remember(nctk::Error(nctk::ErrorCode::Internal, "nc-model", e.what()));
    }
}

void nctk_model_free(nctk_model* model) { delete model; }

char* nctk_model_canonical_json(const nctk_model* model) {
    if (!model) return nullptr;
    return copy_string(nctk::canonical_json(model->model));
}

nctk_status nctk_run(const nctk_model* model, const char* instance, const nctk_options* options, nctk_report** out) {
    clear();
    if (!out) return remember(nctk::Error(nctk::ErrorCode::InvalidArgument, "cli", "null output handle"));
    *out = nullptr;
    if (!model || !options || !options->verb)
        return remember(nctk::Error(nctk::ErrorCode::InvalidArgument, "cli", "missing model, options or verb"));
    nctk::RunOptions o;
    o.verb = options->verb;
    o.seed = options->seed;
    if (options->complex) o.complex = options->complex;
    if (options->mode) o.mode = options->mode;
    if (options->has_k) o.k = options->k;
    if (options->has_shift) o.shift = options->shift;
    try {
        if (options->z) o.z = parse_branches(options->z);
        *out = new nctk_report{nctk::run_verb(model->model, instance ? instance : "", o)};
    } catch (const nctk::Error& e) {
        *out = new nctk_report{{nctk::error_document(e), 2}};
        return remember(e);
    } catch (const std::exception& e) {
        nctk::Error err(nctk::ErrorCode::Internal, "cli", e.what());
        *out = new nctk_report{{nctk::error_document(err), 2}};
        return remember(err);
    }
    const auto& doc = (*out)->outcome.document;
    if (doc.contains("error")) {
        const std::string name = doc["error"].get<std::string>();
        for (int i = 0; i <= static_cast<int>(nctk::ErrorCode::Internal); ++i)
            if (name == nctk::error_name(static_cast<nctk::ErrorCode>(i)))
                return remember(nctk::Error(static_cast<nctk::ErrorCode>(i), doc["module"].get<std::string>(),
                                            doc["message"].get<std::string>()));
    }
    return NCTK_OK;
}

nctk_report* nctk_report_from_last_error(void) {
    if (!last_error) return nullptr;
    return new nctk_report{{nctk::error_document(*last_error), 2}};
}

int nctk_report_exit_code(const nctk_report* report) { return report ? report->outcome.exit_code : 2; }

int nctk_report_passed(const nctk_report* report) {
    if (!report) return 0;
    const auto& doc = report->outcome.document;
    return doc.contains("verdict") && doc["verdict"] == "pass" ? 1 : 0;
}

char* nctk_report_render(const nctk_report* report, int format) {
    if (!report) return nullptr;
    return copy_string(format == 1 ? nctk::render_text(report->outcome.document)
                                   : nctk::render_json(report->outcome.document));
}

void nctk_report_free(nctk_report* report) { delete report; }

const char* nctk_status_name(nctk_status status) {
    if (status == NCTK_OK) return "Ok";
    const int code = static_cast<int>(status) - 1;
    if (code < 0 || code > static_cast<int>(nctk::ErrorCode::Internal)) return "Unknown";
    return nctk::error_name(static_cast<nctk::ErrorCode>(code));
}

const char* nctk_last_error(void) { return last_message.c_str(); }

void nctk_string_free(char* s) { std::free(s); }

}  // extern "C"
