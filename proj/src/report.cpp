#include "report.hpp"

#include "json_io.hpp"

#include <algorithm>
#include <sstream>

namespace nctk {

namespace {

using json = nlohmann::json;

constexpr const char* kModule = "cli";

[[noreturn]] void bad_flag(const std::string& msg) { throw Error(ErrorCode::InvalidArgument, kModule, msg); }

json branch_list(const std::vector<int>& z) {
    json out = json::array();
    for (int j : z) out.push_back(j + 1);
    return out;
}

std::vector<int> all_branches(const NCModel& m) {
    std::vector<int> out;
    for (int j = 0; j < m.branches; ++j) out.push_back(j);
    return out;
}

std::vector<int> branches_or_all(const NCModel& m, const RunOptions& o) {
    std::vector<int> z = o.z ? *o.z : all_branches(m);
    for (int j : z)
        if (j < 0 || j >= m.branches) bad_flag("--z: branch " + std::to_string(j + 1) + " out of range");
    return z;
}

json write_checks(const CheckReport& r) {
    json out = json::array();
    for (const auto& c : r.checks) {
        json e = {{"name", c.name}, {"status", c.status}};
        if (!c.code.empty()) e["code"] = c.code;
        if (!c.detail.empty()) e["detail"] = c.detail;
        out.push_back(std::move(e));
    }
    return out;
}

json write_dims(const std::map<int, size_t>& m, const char* key) {
    json out = json::array();
    for (const auto& [k, d] : m) out.push_back({{key, k}, {"dim", d}});
    return out;
}

json write_cohomology(const CohomologyReport& r) {
    json degrees = json::array();
    for (const auto& d : r.degrees) {
        json e = {{"degree", d.degree}, {"dim", d.dim}, {"weights", write_dims(d.weights, "weight")}};
        if (r.has_hodge) e["hodge"] = write_dims(d.hodge, "p");
        degrees.push_back(std::move(e));
    }
    return {{"degrees", degrees}, {"euler_terms", r.euler_terms}, {"euler_cohomology", r.euler_cohomology}};
}

json write_verdict(const PurityVerdict& v) {
    json rows = json::array();
    for (const auto& r : v.rows)
        rows.push_back({{"degree", r.degree},
                        {"perverse_degree", r.perverse_degree},
                        {"weight", r.weight},
                        {"dim", r.dim},
                        {"bound", r.bound},
                        {"status", r.pass ? "pass" : "fail"}});
    return {{"mode", mode_name(v.mode)}, {"shift", v.shift}, {"center", v.center}, {"rows", rows},
            {"status", v.pass ? "pass" : "fail"}};
}

ComplexKind parse_kind(const std::string& s) {
    if (s == "omega") return ComplexKind::Omega;
    if (s == "ic") return ComplexKind::Ic;
    if (s == "iclog") return ComplexKind::IcLog;
    bad_flag("--complex must be omega, ic or iclog");
}

FilteredComplex build_kind(const NCModel& m, ComplexKind kind, const std::vector<int>& z) {
    switch (kind) {
        case ComplexKind::Omega: return build_omega(m);
        case ComplexKind::Ic: return build_ic(m);
        case ComplexKind::IcLog: return build_ic_log(m, z);
    }
    return build_omega(m);
}

/// Weight profiles per degree, as comparable values.
std::map<int, std::map<int, size_t>> profile(const CohomologyReport& r) {
    std::map<int, std::map<int, size_t>> out;
    for (const auto& d : r.degrees)
        for (const auto& [w, dim] : d.weights)
            if (dim) out[d.degree][w] = dim;
    return out;
}

std::map<int, std::map<int, size_t>> reflect(const std::map<int, std::map<int, size_t>>& p, int degree_sum, int weight_sum) {
    std::map<int, std::map<int, size_t>> out;
    for (const auto& [d, ws] : p)
        for (const auto& [w, dim] : ws) out[degree_sum - d][weight_sum - w] = dim;
    return out;
}

bool link_self_dual(const NCModel& m, const CohomologyReport& link) {
    return reflect(profile(link), 2 * m.perverse_shift - 1, 2 * m.base_weight) == profile(link);
}

// ---------------------------------------------------------------- verbs

struct VerbResult {
    json results = json::array();
    bool pass = true;
    bool checker = false;
};

VerbResult verb_validate(const NCModel& m, const RunOptions&) {
    CheckReport r = validate(m);
    return {write_checks(r), r.passed(), true};
}

VerbResult verb_imhs(const NCModel& m, const RunOptions& o) {
    CheckReport r = imhs_check(m, o.seed);
    return {write_checks(r), r.passed(), true};
}

VerbResult verb_cohomology(const NCModel& m, const RunOptions& o) {
    const std::string name = o.complex.value_or("omega");
    const ComplexKind kind = parse_kind(name);
    const std::vector<int> z = branches_or_all(m, o);
    json e = write_cohomology(cohomology(build_kind(m, kind, z)));
    e["complex"] = name;
    if (kind == ComplexKind::IcLog) e["z"] = branch_list(z);
    VerbResult v;
    v.results.push_back(std::move(e));
    return v;
}

VerbResult verb_filtration(const NCModel& m, const RunOptions& o) {
    const std::vector<int> z = o.z ? branches_or_all(m, o) : std::vector<int>{};
    IncreasingFiltration w = iterated_star(m.n_totals(), m.w, z);
    VerbResult v;
    v.results.push_back({{"branches", branch_list(z)}, {"filtration", jio::write(w)}, {"graded", jio::gr_profile(w)}});
    return v;
}

VerbResult verb_star(const NCModel& m, const RunOptions& o) {
    VerbResult v;
    for (int j : branches_or_all(m, o)) {
        const Matrix<Q> n = m.n_total(j);
        IncreasingFiltration s = star(n, m.w), sh = shriek(n, m.w);
        v.results.push_back({{"branch", j + 1},
                             {"star", jio::write(s)},
                             {"star_graded", jio::gr_profile(s)},
                             {"shriek", jio::write(sh)},
                             {"shriek_graded", jio::gr_profile(sh)}});
    }
    return v;
}

VerbResult verb_relmono(const NCModel& m, const RunOptions& o) {
    const std::vector<int> z = branches_or_all(m, o);
    const Matrix<Q> n = sum_of(m.n_totals(), z, m.dim());
    IncreasingFiltration r = relative_monodromy_filtration(n, m.w);
    AxiomCheck a = check_relative_monodromy(n, m.w, r);
    VerbResult v;
    json e = {{"branches", branch_list(z)},
              {"filtration", jio::write(r)},
              {"graded", jio::gr_profile(r)},
              {"axioms", a.ok ? "pass" : "fail"}};
    if (!a.ok) e["detail"] = a.reason;
    v.results.push_back(std::move(e));
    v.pass = a.ok;
    return v;
}

VerbResult verb_decompose(const NCModel& m, const RunOptions& o) {
    std::vector<std::string> kinds = o.complex ? std::vector<std::string>{*o.complex} : std::vector<std::string>{"omega", "ic"};
    const std::vector<int> z = branches_or_all(m, o);
    VerbResult v;
    v.checker = true;
    for (const auto& name : kinds) {
        const ComplexKind kind = parse_kind(name);
        std::vector<int> ks = o.k ? std::vector<int>{*o.k} : decomposition_weights(m, kind, z);
        for (int k : ks) {
            DecompositionReport r = check_graded_decomposition(m, k, kind, z);
            json e = {{"complex", name},
                      {"k", k},
                      {"checks", write_checks(r.checks)},
                      {"complex_dims", write_dims(r.complex_dims, "degree")},
                      {"piece_dims", write_dims(r.piece_dims, "degree")}};
            if (kind == ComplexKind::IcLog) e["z"] = branch_list(z);
            v.pass = v.pass && r.checks.passed();
            v.results.push_back(std::move(e));
        }
    }
    return v;
}

VerbResult verb_intersect(const NCModel& m, const RunOptions& o) {
    const std::vector<int> z = branches_or_all(m, o);
    if (z.empty()) bad_flag("--z must name at least one branch");
    IntersectionMorphism im = intersection_morphism(m, z);
    json degrees = json::array();
    VerbResult v;
    for (int d = im.shriek.lo(); d <= im.shriek.hi(); ++d) {
        IntersectionImage ii = intersection_image(im, m, d);
        degrees.push_back({{"degree", d},
                           {"dim", ii.dim},
                           {"weights", write_dims(ii.weights, "weight")},
                           {"target_weight", ii.target_weight},
                           {"status", ii.pure ? "pass" : "fail"}});
        v.pass = v.pass && ii.pure;
    }
    v.results.push_back({{"z", branch_list(z)}, {"pairing_defined", im.pairing_defined}, {"degrees", degrees}});
    return v;
}

VerbResult verb_purity(const NCModel& m, const RunOptions& o) {
    if (!o.mode) bad_flag("purity needs --mode");
    auto mode = parse_mode(*o.mode);
    if (!mode) bad_flag("--mode must be open, support, closed, compact or link");
    const std::vector<int> z = branches_or_all(m, o);
    if (z.empty()) bad_flag("--z must name at least one branch");
    const int shift = o.shift.value_or(m.perverse_shift);
    const int center = duality_center(m.perverse_shift);
    FilteredComplex c;
    std::string complex;
    switch (*mode) {
        case PurityMode::Open: c = build_ic_log(m, z); complex = "iclog"; break;
        case PurityMode::Support: c = i_shriek(m, z); complex = "i_shriek"; break;
        case PurityMode::Closed: c = i_star(m, z); complex = "i_star"; break;
        case PurityMode::Compact: c = dualize(build_ic_log(m, z), m.base_weight, center); complex = "dual_iclog"; break;
        case PurityMode::Link: c = link_complex(m, z); complex = "link"; break;
    }
    PurityVerdict pv = purity_check(cohomology(c, false), m.base_weight, shift, *mode);
    json e = write_verdict(pv);
    e["complex"] = complex;
    e["z"] = branch_list(z);
    VerbResult v;
    v.checker = true;
    v.pass = pv.pass;
    v.results.push_back(std::move(e));
    return v;
}

VerbResult verb_link(const NCModel& m, const RunOptions& o) {
    const std::vector<int> z = branches_or_all(m, o);
    if (z.empty()) bad_flag("--z must name at least one branch");
    CohomologyReport r = cohomology(link_complex(m, z), false);
    const bool dual = link_self_dual(m, r);
    json e = write_cohomology(r);
    e["z"] = branch_list(z);
    e["self_duality"] = dual ? "pass" : "fail";
    VerbResult v;
    v.pass = dual;
    v.results.push_back(std::move(e));
    return v;
}

VerbResult verb_duality(const NCModel& m, const RunOptions& o) {
    const std::vector<int> z = branches_or_all(m, o);
    const int a = m.base_weight, center = duality_center(m.perverse_shift);
    CheckReport checks;
    std::vector<std::pair<std::string, FilteredComplex>> cs = {{"omega", build_omega(m)}, {"ic", build_ic(m)}};
    if (!z.empty()) cs.emplace_back("iclog", build_ic_log(m, z));
    for (const auto& [name, c] : cs) {
        const auto base = profile(cohomology(c, false));
        const FilteredComplex d = dualize(c, a, center);
        const auto once = profile(cohomology(d, false));
        const auto twice = profile(cohomology(dualize(d, a, center), false));
        checks.add("double_dual[" + name + "]", twice == base, "Internal", "weight profile changed");
        checks.add("reflection[" + name + "]", reflect(base, center, 2 * a) == once, "Internal",
                   "dual profile is not the reflection");
    }
    if (m.s && !z.empty()) {
        const bool ok = link_self_dual(m, cohomology(link_complex(m, z), false));
        checks.add("link_self_duality", ok, "Internal", "link profile is not self-dual");
    } else {
        checks.skip("link_self_duality", m.s ? "no branch selected" : "no pairing S");
    }
    return {write_checks(checks), checks.passed(), true};
}

using Verb = VerbResult (*)(const NCModel&, const RunOptions&);

const std::vector<std::pair<std::string, Verb>>& verbs() {
    static const std::vector<std::pair<std::string, Verb>> table = {
        {"validate", verb_validate}, {"imhs", verb_imhs},       {"cohomology", verb_cohomology},
        {"filtration", verb_filtration}, {"star", verb_star},   {"relmono", verb_relmono},
        {"decompose", verb_decompose}, {"intersect", verb_intersect}, {"purity", verb_purity},
        {"link", verb_link},         {"duality", verb_duality},
    };
    return table;
}

void flatten(const json& j, const std::string& prefix, std::ostringstream& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
        for (size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out << "  " << prefix << " = " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

}  // namespace

const std::vector<std::string>& instance_verbs() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [n, f] : verbs()) v.push_back(n);
        return v;
    }();
    return names;
}

json error_document(const Error& e) {
    return {{"error", error_name(e.code())}, {"module", e.module()}, {"message", e.what()}};
}

RunOutcome run_verb(const NCModel& model, const std::string& instance, const RunOptions& options) {
    auto it = std::find_if(verbs().begin(), verbs().end(), [&](const auto& v) { return v.first == options.verb; });
    try {
        if (it == verbs().end()) bad_flag("unknown verb '" + options.verb + "'");
        if (options.verb != "validate") {
            CheckReport r = validate(model);
            for (const auto& c : r.checks)
                if (c.status == "fail") {
                    ErrorCode code = ErrorCode::InvalidArgument;
                    for (int i = 0; i <= static_cast<int>(ErrorCode::Internal); ++i)
                        if (c.code == error_name(static_cast<ErrorCode>(i))) code = static_cast<ErrorCode>(i);
                    throw Error(code, "nc-model", c.name + ": " + c.detail);
                }
        }
        VerbResult v = it->second(model, options);
        json doc = {{"instance", instance}, {"verb", options.verb}, {"results", v.results},
                    {"verdict", v.pass ? "pass" : "fail"}};
        return {std::move(doc), v.checker && !v.pass ? 1 : 0};
    } catch (const Error& e) {
        return {error_document(e), 2};
    }
}

std::string render_json(const json& doc) { return doc.dump(2) + "\n"; }

std::string render_text(const json& doc) {
    std::ostringstream out;
    if (doc.contains("error")) {
        out << "error: " << doc["error"].get<std::string>() << " (" << doc["module"].get<std::string>() << ")\n"
            << "message: " << doc["message"].get<std::string>() << "\n";
        return out.str();
    }
    out << "instance: " << doc["instance"].get<std::string>() << "\n"
        << "verb: " << doc["verb"].get<std::string>() << "\n"
        << "verdict: " << doc["verdict"].get<std::string>() << "\n";
    const json& results = doc["results"];
    for (size_t i = 0; i < results.size(); ++i) {
        out << "result " << i << "\n";
        std::ostringstream body;
        flatten(results[i], "", body);
        out << body.str();
    }
    return out.str();
}

}  // namespace nctk
