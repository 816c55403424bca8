// Command-line front end: one verb per run, JSON or text reports on stdout.
#include "nctk.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Flags {
    std::string verb;
    std::string input;
    std::optional<std::string> z, complex, mode, format;
    std::optional<int> k, shift;
    uint64_t seed = 0;
    unsigned threads = 1;
    bool update = false;
};

std::string error_json(const std::string& error, const std::string& module, const std::string& message) {
    return json{{"error", error}, {"module", module}, {"message", message}}.dump(2) + "\n";
}

std::optional<std::string> read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Rendered {
    std::string text;
    int exit_code = 2;
};

Rendered render_owned(nctk_report* report, int format) {
    Rendered r;
    r.exit_code = nctk_report_exit_code(report);
    char* s = nctk_report_render(report, format);
    r.text = s ? s : "";
    nctk_string_free(s);
    nctk_report_free(report);
    return r;
}

/// Runs one instance verb on file contents; never throws.
Rendered run_instance(const std::string& text, const std::string& instance, const nctk_options& opts, int format) {
    nctk_model* model = nullptr;
    if (nctk_model_parse(text.c_str(), &model) != NCTK_OK) return render_owned(nctk_report_from_last_error(), format);
    nctk_report* report = nullptr;
    nctk_run(model, instance.c_str(), &opts, &report);
    nctk_model_free(model);
    return render_owned(report, format);
}

struct OptionStore {
    std::string verb;
    std::optional<std::string> z, complex, mode;
    std::optional<int> k, shift;
    uint64_t seed = 0;

    /// The returned struct points into this object.
    nctk_options view() const {
        nctk_options opts;
        nctk_options_init(&opts);
        opts.verb = verb.c_str();
        opts.z = z ? z->c_str() : nullptr;
        opts.complex = complex ? complex->c_str() : nullptr;
        opts.mode = mode ? mode->c_str() : nullptr;
        opts.has_k = k.has_value();
        opts.k = k.value_or(0);
        opts.has_shift = shift.has_value();
        opts.shift = shift.value_or(0);
        opts.seed = seed;
        return opts;
    }
};

struct CorpusEntry {
    std::string name, instance, expected;
    OptionStore options;
    int format = 0;
};

std::vector<CorpusEntry> load_manifest(const fs::path& dir) {
    auto text = read_file(dir / "manifest.json");
    if (!text) throw std::runtime_error("cannot read " + (dir / "manifest.json").string());
    json m = json::parse(*text);
    std::vector<CorpusEntry> out;
    for (const auto& e : m.at("entries")) {
        CorpusEntry c;
        c.name = e.at("name").get<std::string>();
        c.instance = e.at("instance").get<std::string>();
        c.expected = e.at("expected").get<std::string>();
        c.options.verb = e.at("verb").get<std::string>();
        const json flags = e.value("flags", json::object());
        if (flags.contains("z")) c.options.z = flags["z"].get<std::string>();
        if (flags.contains("complex")) c.options.complex = flags["complex"].get<std::string>();
        if (flags.contains("mode")) c.options.mode = flags["mode"].get<std::string>();
        if (flags.contains("k")) c.options.k = flags["k"].get<int>();
        if (flags.contains("shift")) c.options.shift = flags["shift"].get<int>();
        if (flags.contains("seed")) c.options.seed = flags["seed"].get<uint64_t>();
        if (flags.contains("format")) c.format = flags["format"].get<std::string>() == "text" ? 1 : 0;
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const CorpusEntry& a, const CorpusEntry& b) {
        return a.instance != b.instance ? a.instance < b.instance : a.name < b.name;
    });
    return out;
}

int run_corpus(const Flags& f) {
    const fs::path dir = f.input;
    std::vector<CorpusEntry> entries;
    try {
        entries = load_manifest(dir);
    } catch (const std::exception& e) {
        std::cout << error_json("ParseError", "cli", e.what());
        return 2;
    }
    std::vector<json> results(entries.size());
    std::vector<char> ok(entries.size(), 0);
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next++; i < entries.size(); i = next++) {
            const CorpusEntry& e = entries[i];
            json r = {{"name", e.name}, {"instance", e.instance}, {"verb", e.options.verb}};
            auto text = read_file(dir / e.instance);
            Rendered out = text ? run_instance(*text, e.instance, e.options.view(), e.format)
                                : Rendered{error_json("ParseError", "cli", "cannot read " + e.instance), 2};
            r["exit_code"] = out.exit_code;
            if (f.update) {
                std::ofstream(dir / e.expected, std::ios::binary) << out.text;
                r["status"] = "updated";
                ok[i] = 1;
            } else {
                auto expected = read_file(dir / e.expected);
                const bool same = expected && *expected == out.text;
                r["status"] = !expected ? "missing" : same ? "match" : "mismatch";
                ok[i] = same;
            }
            results[i] = std::move(r);
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(f.threads, static_cast<unsigned>(entries.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    const bool pass = std::all_of(ok.begin(), ok.end(), [](char b) { return b != 0; });
    json doc = {{"instance", f.input}, {"verb", "corpus"}, {"results", results}, {"verdict", pass ? "pass" : "fail"}};
    if (f.format && *f.format == "text") {
        std::cout << "instance: " << f.input << "\nverb: corpus\nverdict: " << (pass ? "pass" : "fail") << "\n";
        for (const auto& r : results)
            std::cout << "  " << r["status"].get<std::string>() << "  " << r["name"].get<std::string>() << "\n";
    } else {
        std::cout << doc.dump(2) << "\n";
    }
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::string> verbs = {"validate", "imhs",      "cohomology", "filtration", "star",    "relmono",
                                            "decompose", "intersect", "purity",     "link",       "duality", "corpus"};
    Flags f;
    CLI::App app{"Weight and purity computations for local systems near normal crossings"};
    app.add_option("verb", f.verb, "Verb to run")->required()->check(CLI::IsMember(verbs));
    app.add_option("input", f.input, "Instance file (a corpus directory for 'corpus')")->required();
    app.add_option("--z", f.z, "Comma-separated 1-based branch indices");
    app.add_option("--complex", f.complex, "omega, ic or iclog")->check(CLI::IsMember({"omega", "ic", "iclog"}));
    app.add_option("--k", f.k, "Weight index");
    app.add_option("--mode", f.mode, "open, support, closed, compact or link")
        ->check(CLI::IsMember({"open", "support", "closed", "compact", "link"}));
    app.add_option("--shift", f.shift, "Degree shift for purity bounds (default: the model's perverse shift)");
    app.add_option("--format", f.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--seed", f.seed, "Seed for sampled nilpotent-orbit parameters");
    app.add_option("--threads", f.threads, "Worker threads for the corpus verb")->check(CLI::Range(1u, 256u));
    app.add_flag("--update", f.update, "Rewrite the expected corpus reports instead of comparing");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cout << error_json("InvalidArgument", "cli", e.what());
        return 2;
    }
    if (f.verb == "purity" && !f.mode) {
        std::cout << error_json("InvalidArgument", "cli", "purity needs --mode");
        return 2;
    }
    if (f.verb == "corpus") return run_corpus(f);

    const int format = f.format && *f.format == "text" ? 1 : 0;
    auto text = read_file(f.input);
    if (!text) {
        std::cout << error_json("ParseError", "cli", "cannot read " + f.input);
        return 2;
    }
    OptionStore store;
    store.verb = f.verb;
    store.z = f.z;
    store.complex = f.complex;
    store.mode = f.mode;
    store.k = f.k;
    store.shift = f.shift;
    store.seed = f.seed;
    Rendered out = run_instance(*text, f.input, store.view(), format);
    std::cout << out.text;
    return out.exit_code;
}
