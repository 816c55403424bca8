// Acceptance suite: one line per criterion, nonzero exit if any criterion fails.
// Usage: acceptance [criterion numbers...]   (all when none given)
#include "corpus.hpp"
#include "generators.hpp"
#include "link_oracle.hpp"
#include "nctk/decomposition.hpp"
#include "profiles.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace nctk;
using namespace testing_support;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    int cases = 0;

    void expect(bool ok, const std::string& what) {
        ++cases;
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

std::vector<std::pair<std::string, NCModel>> valid_corpus() {
    std::vector<std::pair<std::string, NCModel>> out;
    for (const auto& name : instance_names()) {
        NCModel m = instance(name);
        if (validate(m).passed()) out.emplace_back(name, std::move(m));
    }
    return out;
}

std::vector<std::vector<int>> nonempty_subsets(int n) {
    std::vector<std::vector<int>> out;
    for (int size = 1; size <= n; ++size)
        for (auto& s : subsets_of_size(n, size)) out.push_back(std::move(s));
    return out;
}

std::string tag(const std::string& what, int t) { return what + " #" + std::to_string(t); }

// ---------------------------------------------------------------- 1

Outcome acyclicity() {
    Outcome o;
    gen::Rng rng(1001);
    for (int t = 0; t < 200; ++t) {
        const NCModel m = gen::random_with_exponents(rng, rng.uniform(1, 4));
        for (size_t c = 0; c < m.components.size(); ++c)
            if (!m.components[c].unipotent())
                o.expect(acyclic(build_omega(component_model(m, c))), tag("nonzero exponent component not acyclic", t));
    }
    return o;
}

// ---------------------------------------------------------------- 2

Outcome monodromy_axioms() {
    Outcome o;
    gen::Rng rng(1002);
    for (int t = 0; t < 60; ++t) {
        const size_t n = static_cast<size_t>(rng.uniform(1, 8));
        const int center = rng.uniform(-2, 2);
        const Matrix<Q> nil = gen::random_nilpotent(rng, n);
        const IncreasingFiltration m = monodromy_filtration(nil, center);
        const int lo = m.lo() - 1, hi = m.hi() + 1;
        o.expect(check_monodromy(nil, center, [&](int k) { return m.at(k); }, lo, hi).ok, tag("axioms fail", t));
        for (int k = lo; k <= hi; ++k) {
            const Subspace<Q>& mk = m.at(k);
            std::vector<Subspace<Q>> alts;
            for (size_t i = 0; i < n; ++i) {
                Vec<Q> e(n, Q(0));
                e[i] = 1;
                Subspace<Q> bigger = sum(mk, Subspace<Q>::span(n, {e}));
                if (bigger != mk) alts.push_back(bigger);
            }
            const auto rows = mk.vectors();
            for (size_t r = 0; r < rows.size(); ++r) {
                std::vector<Vec<Q>> keep;
                for (size_t q = 0; q < rows.size(); ++q)
                    if (q != r) keep.push_back(rows[q]);
                alts.push_back(Subspace<Q>::span(n, keep));
            }
            for (const auto& alt : alts) {
                auto lookup = [&](int i) { return i == k ? alt : m.at(i); };
                o.expect(!check_monodromy(nil, center, lookup, lo, hi).ok, tag("perturbation accepted", t));
            }
        }
    }
    return o;
}

// ---------------------------------------------------------------- 3

/// Gr^{N*W}_k = Im(Gr N) ⊕ Ker(Gr I) exactly, with the image as large as N on Gr^W_{k+1}.
bool dp_splitting(const Matrix<Q>& n, const IncreasingFiltration& w, const IncreasingFiltration& s, int k) {
    const Subspace<Q> top = s.at(k), bottom = s.at(k - 1);
    const Subspace<Q> img = sum(image(n, w.at(k + 1)), bottom);
    const Subspace<Q> ker = sum(intersect(top, w.at(k)), bottom);
    if (!top.contains(img)) return false;
    if (sum(img, ker) != top || intersect(img, ker) != bottom) return false;
    const size_t on_w = sum(image(n, w.at(k + 1)), w.at(k)).dim() - w.at(k).dim();
    return img.dim() - bottom.dim() == on_w;
}

Outcome star_identities() {
    Outcome o;
    gen::Rng rng(1003);
    for (int t = 0; t < 100; ++t) {
        const NCModel m = gen::random_unipotent(rng, rng.uniform(1, 3), 8);
        const auto ns = m.n_totals();
        const auto& w = m.w;
        for (int j = 0; j < m.branches; ++j) {
            const Matrix<Q>& n = ns[j];
            const IncreasingFiltration s = star(n, w);
            o.expect(s == star_alternate(n, w), tag("star expressions differ", t));
            o.expect(relative_monodromy_filtration(n, s) == relative_monodromy_filtration(n, w),
                     tag("M(N, N*W) != M(N, W)", t));
            for (const auto& sub : nonempty_subsets(m.branches)) {
                if (std::find(sub.begin(), sub.end(), j) == sub.end()) continue;
                const Matrix<Q> total = sum_of(ns, sub, m.dim());
                o.expect(relative_monodromy_filtration(total, s) == relative_monodromy_filtration(total, w),
                         tag("M(sum, N*W) != M(sum, W)", t));
            }
            for (int k = w.lo() - 3; k <= w.hi() + 3; ++k) o.expect(dp_splitting(n, w, s, k), tag("DP splitting", t));
            o.expect(dual_filtration(s) == shriek(n.transpose(), dual_filtration(w)), tag("dual of star is not shriek of dual", t));
        }
    }
    return o;
}

// ---------------------------------------------------------------- 4

Outcome order_independence() {
    Outcome o;
    gen::Rng rng(1004);
    for (int t = 0; t < 30; ++t) {
        const NCModel m = gen::random_unipotent(rng, rng.uniform(2, 4), 8);
        const auto ns = m.n_totals();
        for (auto j : nonempty_subsets(m.branches)) {
            if (j.size() > 3) continue;
            const IncreasingFiltration ref = iterated_star(ns, m.w, j);
            while (std::next_permutation(j.begin(), j.end()))
                o.expect(iterated_star(ns, m.w, j) == ref, tag("order dependence", t));
        }
    }
    return o;
}

// ---------------------------------------------------------------- 5, 6

Outcome boundary_equalities() {
    Outcome o;
    for (const auto& [name, m] : valid_corpus()) {
        const NCModel u = unipotent_part(m);
        o.expect(build_ic_log(m, {}) == build_ic(m), name + ": empty set");
        o.expect(build_ic_log(u, all_branches(u)) == build_omega(u), name + ": all branches");
    }
    return o;
}

Outcome pure_anchor() {
    Outcome o;
    for (const auto& [name, m] : valid_corpus()) {
        const NCModel u = unipotent_part(m);
        if (u.dim() == 0 || !u.w_is_pure()) continue;
        o.expect(pure_anchor_holds(build_omega(u), build_ic(u), u.w.hi()), name);
    }
    return o;
}

// ---------------------------------------------------------------- 7

void decomposition_on(Outcome& o, const NCModel& m, const std::string& label) {
    for (ComplexKind kind : {ComplexKind::Omega, ComplexKind::Ic})
        for (int k : decomposition_weights(m, kind)) {
            const DecompositionReport r = check_graded_decomposition(m, k, kind);
            std::string failed;
            for (const auto& c : r.checks.checks)
                if (c.status != "pass") failed = c.name;
            o.expect(r.checks.passed() && r.complex_dims == r.piece_dims,
                     label + " k=" + std::to_string(k) + " " + failed);
        }
}

Outcome decomposition() {
    Outcome o;
    for (const auto& [name, m] : valid_corpus()) decomposition_on(o, m, name);
    gen::Rng rng(1007);
    for (int t = 0; t < 50; ++t) {
        const NCModel m = t % 3 == 2 ? gen::random_with_exponents(rng, rng.uniform(1, 2))
                                     : gen::random_unipotent(rng, rng.uniform(1, 3), 8);
        decomposition_on(o, m, tag("fuzz", t));
    }
    return o;
}

// ---------------------------------------------------------------- 8

/// Every imhs check passes and the polarization check was actually evaluated.
bool polarized_imhs(const NCModel& m) {
    if (!m.f) return false;
    const CheckReport r = imhs_check(m);
    if (!r.passed()) return false;
    for (const auto& c : r.checks)
        if (c.name == "polarization") return c.status == "pass";
    return false;
}

Outcome weight_bounds() {
    Outcome o;
    for (const auto& [name, m] : valid_corpus()) {
        if (!polarized_imhs(m)) continue;
        const int a = m.base_weight, s = m.perverse_shift, center = duality_center(s);
        for (const auto& z : nonempty_subsets(m.branches)) {
            const std::string label = name + " z=" + subset_name(z);
            auto run = [&](const FilteredComplex& c, PurityMode mode) {
                o.expect(purity_check(cohomology(c, false), a, s, mode).pass, label + " " + mode_name(mode));
            };
            run(i_shriek(m, z), PurityMode::Support);
            run(build_ic_log(m, z), PurityMode::Open);
            run(dualize(build_ic_log(m, z), a, center), PurityMode::Compact);
            if (m.s) run(i_star(m, z), PurityMode::Closed);
        }
    }
    return o;
}

// ---------------------------------------------------------------- 9

Profile from_oracle(const std::map<int, std::map<int, int>>& p) {
    Profile out;
    for (const auto& [d, ws] : p)
        for (const auto& [w, n] : ws)
            if (n) out[d][w] = static_cast<size_t>(n);
    return out;
}

oracle::OneBranch as_oracle_input(const NCModel& m) {
    oracle::OneBranch ob;
    ob.dim = static_cast<int>(m.dim());
    ob.n.assign(ob.dim, std::vector<mpq_class>(ob.dim, 0));
    const Matrix<Q> n = m.n_total(0);
    for (int i = 0; i < ob.dim; ++i)
        for (int j = 0; j < ob.dim; ++j) ob.n[i][j] = n(i, j);
    ob.w_pure = m.w.hi();
    ob.a = m.base_weight;
    return ob;
}

Outcome local_purity() {
    Outcome o;
    for (const char* name : {"rank1_trivial", "j2_weight1"}) {
        const NCModel m = instance(name);
        const CohomologyReport link = cohomology(link_complex(m, {0}), false);
        o.expect(purity_check(link, m.base_weight, m.perverse_shift, PurityMode::Link).pass,
                 std::string(name) + ": link inequalities");
        const oracle::OneBranch ob = as_oracle_input(m);
        o.expect(profile(link) == from_oracle(oracle::link_profile(ob)), std::string(name) + ": link vs oracle");
        o.expect(profile(i_shriek(m, {0})) == from_oracle(oracle::shriek_profile(ob)),
                 std::string(name) + ": i_shriek vs oracle");
        o.expect(profile(i_star(m, {0})) == from_oracle(oracle::star_profile(ob)),
                 std::string(name) + ": i_star vs oracle");
    }
    return o;
}

// ---------------------------------------------------------------- 10

Outcome duality_involution() {
    Outcome o;
    for (const auto& [name, m] : valid_corpus()) {
        const int a = m.base_weight, center = duality_center(m.perverse_shift);
        std::vector<std::pair<std::string, FilteredComplex>> cs = {{"omega", build_omega(m)}, {"ic", build_ic(m)}};
        const auto z = all_branches(m);
        if (!z.empty()) cs.emplace_back("iclog", build_ic_log(m, z));
        for (const auto& [kind, c] : cs)
            o.expect(profile(dualize(dualize(c, a, center), a, center)) == profile(c), name + " " + kind);
        if (m.s && !z.empty()) {
            const Profile link = profile(link_complex(m, z));
            o.expect(reflect(link, 2 * m.perverse_shift - 1, 2 * a) == link, name + " link self-duality");
        }
    }
    return o;
}

// ---------------------------------------------------------------- 11

std::string capture(const std::string& cmd) {
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
    pclose(p);
    return out;
}

std::string quoted(const std::string& s) { return "'" + s + "'"; }

Outcome determinism() {
    Outcome o;
    const std::string cli = quoted(NCTK_CLI_PATH), dir = quoted(corpus_dir().string());
    const std::string one = capture(cli + " corpus " + dir + " --threads 1");
    const std::string again = capture(cli + " corpus " + dir + " --threads 1");
    const std::string four = capture(cli + " corpus " + dir + " --threads 4");
    o.expect(!one.empty() && one == again, "corpus output differs between runs");
    o.expect(one == four, "corpus output differs between thread counts");
    o.expect(nlohmann::json::parse(one).at("verdict") == "pass", "corpus replay does not match the expected reports");

    const nlohmann::json manifest = nlohmann::json::parse(read_text(corpus_dir() / "manifest.json"));
    for (const auto& e : manifest.at("entries")) {
        // run from the corpus directory so the reported instance path matches the manifest
        std::string cmd = "cd " + dir + " && " + cli + " " + e.at("verb").get<std::string>() + " " +
                          quoted(e.at("instance").get<std::string>());
        const nlohmann::json flags = e.value("flags", nlohmann::json::object());
        for (const auto& [key, value] : flags.items())
            cmd += " --" + key + " " + (value.is_string() ? value.get<std::string>() : value.dump());
        const std::string first = capture(cmd), second = capture(cmd);
        const std::string expected = read_text(corpus_dir() / e.at("expected").get<std::string>());
        o.expect(first == second, e.at("name").get<std::string>() + ": runs differ");
        o.expect(first == expected, e.at("name").get<std::string>() + ": differs from the corpus report");
    }
    return o;
}

struct Criterion {
    int number;
    const char* name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all = {
        {1, "acyclicity of nonzero-exponent components", acyclicity},
        {2, "monodromy axioms and uniqueness", monodromy_axioms},
        {3, "star identities", star_identities},
        {4, "order independence of iterated stars", order_independence},
        {5, "boundary equalities of the logarithmic complex", boundary_equalities},
        {6, "pure weight anchor", pure_anchor},
        {7, "graded decomposition", decomposition},
        {8, "weight bounds", weight_bounds},
        {9, "local purity of the link", local_purity},
        {10, "duality involution and link self-duality", duality_involution},
        {11, "determinism of CLI output", determinism},
    };
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

    bool all_pass = true;
    for (const auto& c : all) {
        if (!only.empty() && !only.count(c.number)) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        all_pass = all_pass && o.pass;
        std::ostringstream line;
        line << (o.pass ? "PASS" : "FAIL") << "  " << c.number << ". " << c.name << "  (" << o.cases << " checks, ";
        line.precision(1);
        line << std::fixed << secs << "s)";
        if (!o.pass) line << "  first failure: " << o.detail;
        std::cout << line.str() << std::endl;
    }
    return all_pass ? 0 : 1;
}
