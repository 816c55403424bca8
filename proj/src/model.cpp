#include "nctk/model.hpp"

#include "json_io.hpp"

#include <set>

namespace nctk {

using jio::json;
using jio::parse_fail;

namespace {

constexpr const char* kModule = "nc-model";

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
    if (!obj.is_object()) parse_fail(path, "expected an object");
    for (const auto& [k, v] : obj.items())
        if (!allowed.count(k)) parse_fail(path + "/" + k, "unknown key");
}

const json& required(const json& obj, const std::string& key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) parse_fail(path + "/" + key, "missing required key");
    return *it;
}

template <class K>
Subspace<K> restrict_to_indices(const Subspace<K>& s, const std::vector<size_t>& idx) {
    std::vector<Vec<K>> rows;
    for (size_t i : idx) {
        Vec<K> e(s.ambient(), K(0));
        e[i] = K(1);
        rows.push_back(std::move(e));
    }
    Subspace<K> cut = intersect(s, Subspace<K>::span(s.ambient(), rows));
    std::vector<Vec<K>> out;
    for (const auto& v : cut.vectors()) {
        Vec<K> r;
        for (size_t i : idx) r.push_back(v[i]);
        out.push_back(std::move(r));
    }
    return Subspace<K>::span(idx.size(), out);
}

template <class K>
bool splits_over(const Subspace<K>& s, const NCModel& m) {
    Subspace<K> acc(s.ambient());
    for (size_t c = 0; c < m.components.size(); ++c) {
        size_t off = m.offset(c), d = m.components[c].dim;
        acc = sum(acc, embed_block(restrict_to_block(s, off, d), off, s.ambient()));
    }
    return acc == s;
}

}  // namespace

bool AlphaComponent::unipotent() const {
    for (const auto& a : alpha)
        if (!is_zero(a)) return false;
    return true;
}

size_t NCModel::dim() const {
    size_t d = 0;
    for (const auto& c : components) d += c.dim;
    return d;
}

size_t NCModel::offset(size_t component) const {
    size_t d = 0;
    for (size_t c = 0; c < component; ++c) d += components[c].dim;
    return d;
}

Matrix<Q> NCModel::n_total(int j) const {
    std::vector<Matrix<Q>> blocks;
    for (const auto& c : components) blocks.push_back(c.n.at(j));
    return block_diagonal(blocks);
}

std::vector<Matrix<Q>> NCModel::n_totals() const {
    std::vector<Matrix<Q>> out;
    for (int j = 0; j < branches; ++j) out.push_back(n_total(j));
    return out;
}

bool NCModel::fully_unipotent() const {
    for (const auto& c : components)
        if (c.dim > 0 && !c.unipotent()) return false;
    return true;
}

bool NCModel::w_is_pure() const { return w.gr_dims().size() <= 1; }

NCModel parse_model(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        parse_fail("", std::string("invalid JSON: ") + e.what());
    }
    reject_unknown(j, {"branches", "base_weight", "perverse_shift", "components", "W", "F", "S"}, "");
    NCModel m;
    m.branches = jio::read_int(required(j, "branches", ""), "/branches");
    if (m.branches < 0 || m.branches > 16) parse_fail("/branches", "branch count out of range");
    m.base_weight = jio::read_int(required(j, "base_weight", ""), "/base_weight");
    m.perverse_shift = jio::read_int(required(j, "perverse_shift", ""), "/perverse_shift");

    const json& comps = required(j, "components", "");
    if (!comps.is_array()) parse_fail("/components", "expected an array");
    for (size_t c = 0; c < comps.size(); ++c) {
        const std::string path = "/components/" + std::to_string(c);
        reject_unknown(comps[c], {"alpha", "dim", "N"}, path);
        AlphaComponent comp;
        int d = jio::read_int(required(comps[c], "dim", path), path + "/dim");
        if (d < 0 || d > 256) parse_fail(path + "/dim", "dimension out of range");
        comp.dim = static_cast<size_t>(d);
        comp.alpha = jio::read_vec_q(required(comps[c], "alpha", path), m.branches, path + "/alpha");
        const json& ns = required(comps[c], "N", path);
        if (!ns.is_array() || ns.size() != static_cast<size_t>(m.branches))
            parse_fail(path + "/N", "expected one matrix per branch");
        for (int b = 0; b < m.branches; ++b)
            comp.n.push_back(jio::read_matrix_q(ns[b], comp.dim, comp.dim, path + "/N/" + std::to_string(b)));
        m.components.push_back(std::move(comp));
    }
    const size_t dim = m.dim();

    const json& wj = required(j, "W", "");
    if (!wj.is_array()) parse_fail("/W", "expected an array of steps");
    std::vector<Step> steps;
    for (size_t s = 0; s < wj.size(); ++s) {
        const std::string path = "/W/" + std::to_string(s);
        reject_unknown(wj[s], {"weight", "basis"}, path);
        int k = jio::read_int(required(wj[s], "weight", path), path + "/weight");
        const json& basis = required(wj[s], "basis", path);
        if (!basis.is_array()) parse_fail(path + "/basis", "expected a list of vectors");
        std::vector<Vec<Q>> rows;
        for (size_t r = 0; r < basis.size(); ++r)
            rows.push_back(jio::read_vec_q(basis[r], dim, path + "/basis/" + std::to_string(r)));
        steps.emplace_back(k, Subspace<Q>::span(dim, rows));
    }
    try {
        m.w = IncreasingFiltration(Subspace<Q>(dim), Subspace<Q>::full(dim), std::move(steps));
    } catch (const Error& e) {
        parse_fail("/W", e.what());
    }

    if (auto it = j.find("F"); it != j.end()) {
        if (!it->is_array()) parse_fail("/F", "expected an array of steps");
        std::vector<StepQI> fs;
        for (size_t s = 0; s < it->size(); ++s) {
            const std::string path = "/F/" + std::to_string(s);
            reject_unknown((*it)[s], {"p", "basis"}, path);
            int p = jio::read_int(required((*it)[s], "p", path), path + "/p");
            const json& basis = required((*it)[s], "basis", path);
            if (!basis.is_array()) parse_fail(path + "/basis", "expected a list of vectors");
            std::vector<Vec<QI>> rows;
            for (size_t r = 0; r < basis.size(); ++r)
                rows.push_back(jio::read_vec_qi(basis[r], dim, path + "/basis/" + std::to_string(r)));
            fs.emplace_back(p, Subspace<QI>::span(dim, rows));
        }
        try {
            m.f = DecreasingFiltration(Subspace<QI>(dim), Subspace<QI>::full(dim), std::move(fs));
        } catch (const Error& e) {
            parse_fail("/F", e.what());
        }
    }

    if (auto it = j.find("S"); it != j.end()) {
        reject_unknown(*it, {"matrix", "parity"}, "/S");
        Pairing p;
        p.matrix = jio::read_matrix_q(required(*it, "matrix", "/S"), dim, dim, "/S/matrix");
        p.parity = jio::read_int(required(*it, "parity", "/S"), "/S/parity");
        m.s = std::move(p);
    }
    return m;
}

std::string canonical_json(const NCModel& m) {
    json j;
    j["branches"] = m.branches;
    j["base_weight"] = m.base_weight;
    j["perverse_shift"] = m.perverse_shift;
    json comps = json::array();
    for (const auto& c : m.components) {
        json ns = json::array();
        for (const auto& n : c.n) ns.push_back(jio::write(n));
        comps.push_back({{"alpha", jio::write(c.alpha)}, {"dim", c.dim}, {"N", ns}});
    }
    j["components"] = comps;
    j["W"] = jio::write(m.w);
    if (m.f) j["F"] = jio::write(*m.f);
    if (m.s) j["S"] = {{"matrix", jio::write(m.s->matrix)}, {"parity", m.s->parity}};
    return j.dump(2) + "\n";
}

NCModel unipotent_part(const NCModel& m) {
    NCModel out;
    out.branches = m.branches;
    out.base_weight = m.base_weight;
    out.perverse_shift = m.perverse_shift;
    std::vector<size_t> idx;
    for (size_t c = 0; c < m.components.size(); ++c) {
        if (!m.components[c].unipotent()) continue;
        for (size_t i = 0; i < m.components[c].dim; ++i) idx.push_back(m.offset(c) + i);
        out.components.push_back(m.components[c]);
    }
    const size_t d = idx.size();
    std::vector<Step> ws;
    for (const auto& [k, v] : m.w.steps()) ws.emplace_back(k, restrict_to_indices(v, idx));
    out.w = IncreasingFiltration(Subspace<Q>(d), Subspace<Q>::full(d), std::move(ws));
    if (m.f) {
        std::vector<StepQI> fs;
        for (const auto& [p, v] : m.f->steps()) fs.emplace_back(p, restrict_to_indices(v, idx));
        out.f = DecreasingFiltration(Subspace<QI>(d), Subspace<QI>::full(d), std::move(fs));
    }
    if (m.s) {
        Pairing p{Matrix<Q>(d, d), m.s->parity};
        for (size_t a = 0; a < d; ++a)
            for (size_t b = 0; b < d; ++b) p.matrix(a, b) = m.s->matrix(idx[a], idx[b]);
        out.s = std::move(p);
    }
    return out;
}

NCModel direct_sum(const NCModel& a, const NCModel& b) {
    if (a.branches != b.branches || a.base_weight != b.base_weight || a.perverse_shift != b.perverse_shift)
        throw Error(ErrorCode::InvalidArgument, kModule, "summands have different branch counts or weights");
    if (a.f.has_value() != b.f.has_value() || a.s.has_value() != b.s.has_value())
        throw Error(ErrorCode::InvalidArgument, kModule, "summands must both carry F and S or both omit them");
    if (a.s && a.s->parity != b.s->parity)
        throw Error(ErrorCode::InvalidArgument, kModule, "summand pairings have different parity");
    NCModel out = a;
    out.components.insert(out.components.end(), b.components.begin(), b.components.end());
    const size_t da = a.dim(), d = da + b.dim();
    std::set<int> weights;
    for (const auto& st : a.w.steps()) weights.insert(st.first);
    for (const auto& st : b.w.steps()) weights.insert(st.first);
    std::vector<Step> ws;
    for (int k : weights)
        ws.emplace_back(k, sum(embed_block(a.w.at(k), 0, d), embed_block(b.w.at(k), da, d)));
    out.w = IncreasingFiltration(Subspace<Q>(d), Subspace<Q>::full(d), std::move(ws));
    if (a.f) {
        std::set<int> ps;
        for (const auto& st : a.f->steps()) ps.insert(st.first);
        for (const auto& st : b.f->steps()) ps.insert(st.first);
        std::vector<StepQI> fs;
        for (int p : ps) fs.emplace_back(p, sum(embed_block(a.f->at(p), 0, d), embed_block(b.f->at(p), da, d)));
        out.f = DecreasingFiltration(Subspace<QI>(d), Subspace<QI>::full(d), std::move(fs));
    }
    if (a.s) out.s = Pairing{block_diagonal<Q>({a.s->matrix, b.s->matrix}), a.s->parity};
    return out;
}

// ---------------------------------------------------------------- validation

bool CheckReport::passed() const {
    for (const auto& c : checks)
        if (c.status == "fail") return false;
    return true;
}

void CheckReport::add(std::string name, bool ok, std::string code, std::string detail) {
    checks.push_back({std::move(name), ok ? "pass" : "fail", ok ? std::string() : std::move(code),
                      ok ? std::string() : std::move(detail)});
}

void CheckReport::skip(std::string name, std::string detail) {
    checks.push_back({std::move(name), "not-evaluated", {}, std::move(detail)});
}

CheckReport validate(const NCModel& m) {
    CheckReport r;
    const size_t dim = m.dim();

    {
        std::string bad;
        for (size_t c = 0; c < m.components.size() && bad.empty(); ++c)
            for (const auto& a : m.components[c].alpha)
                if (sgn(a) < 0 || a >= 1) bad = "component " + std::to_string(c) + " has alpha " + to_string(a);
        r.add("alpha_range", bad.empty(), "InvalidArgument", bad);
    }
    {
        std::string bad;
        for (size_t c = 0; c < m.components.size() && bad.empty(); ++c)
            for (int j = 0; j < m.branches && bad.empty(); ++j)
                if (!is_nilpotent(m.components[c].n[j]))
                    bad = "N_" + std::to_string(j + 1) + " on component " + std::to_string(c) + " is not nilpotent";
        r.add("nilpotent", bad.empty(), error_name(ErrorCode::NotNilpotent), bad);
    }
    {
        std::string bad;
        for (size_t c = 0; c < m.components.size() && bad.empty(); ++c)
            for (int i = 0; i < m.branches && bad.empty(); ++i)
                for (int j = i + 1; j < m.branches && bad.empty(); ++j) {
                    const auto& a = m.components[c].n[i];
                    const auto& b = m.components[c].n[j];
                    if (a * b != b * a)
                        bad = "N_" + std::to_string(i + 1) + " and N_" + std::to_string(j + 1) +
                              " do not commute on component " + std::to_string(c);
                }
        r.add("commuting", bad.empty(), error_name(ErrorCode::NonCommutingOperators), bad);
    }
    {
        std::string bad;
        for (const auto& [k, v] : m.w.steps())
            if (bad.empty() && !splits_over(v, m)) bad = "W_" + std::to_string(k) + " is not a sum over components";
        r.add("w_splits", bad.empty(), "InvalidArgument", bad);
    }
    {
        std::string bad;
        auto ns = m.n_totals();
        for (int j = 0; j < m.branches && bad.empty(); ++j)
            for (const auto& [k, v] : m.w.steps())
                if (bad.empty() && !v.contains(image(ns[j], v)))
                    bad = "N_" + std::to_string(j + 1) + " does not preserve W_" + std::to_string(k);
        r.add("w_preserved", bad.empty(), error_name(ErrorCode::FiltrationNotPreserved), bad);
    }
    if (m.f) {
        std::string split_bad, trans_bad;
        for (const auto& [p, v] : m.f->steps())
            if (split_bad.empty() && !splits_over(v, m)) split_bad = "F^" + std::to_string(p) + " is not a sum over components";
        r.add("f_splits", split_bad.empty(), "InvalidArgument", split_bad);
        for (int j = 0; j < m.branches && trans_bad.empty(); ++j) {
            Matrix<QI> nj = promote(m.n_total(j));
            for (int p = m.f->lo(); p <= m.f->hi() + 1 && trans_bad.empty(); ++p)
                if (!m.f->at(p - 1).contains(image(nj, m.f->at(p))))
                    trans_bad = "N_" + std::to_string(j + 1) + " F^" + std::to_string(p) + " is not inside F^" +
                                std::to_string(p - 1);
        }
        r.add("f_transversal", trans_bad.empty(), error_name(ErrorCode::FiltrationNotPreserved), trans_bad);
    } else {
        r.skip("f_splits", "no Hodge filtration");
        r.skip("f_transversal", "no Hodge filtration");
    }
    if (m.s) {
        const auto& s = m.s->matrix;
        r.add("s_nondegenerate", rank(s) == dim, error_name(ErrorCode::PairingDegenerate), "pairing matrix is singular");
        Matrix<Q> sign_t = s.transpose().scaled(Q(m.s->parity % 2 == 0 ? 1 : -1));
        r.add("s_parity", s == sign_t, "InvalidArgument",
              "S(x, y) != (-1)^" + std::to_string(m.s->parity) + " S(y, x)");
        std::string iso_bad;
        auto ns = m.n_totals();
        for (int j = 0; j < m.branches && iso_bad.empty(); ++j)
            if (!(ns[j].transpose() * s + s * ns[j]).is_zero_matrix())
                iso_bad = "N_" + std::to_string(j + 1) + " is not an infinitesimal isometry of S";
        r.add("s_isometry", iso_bad.empty(), "InvalidArgument", iso_bad);
        // S may pair the alpha-component only with the (1 - alpha)-component
        std::string comp_bad;
        for (size_t a = 0; a < m.components.size() && comp_bad.empty(); ++a)
            for (size_t b = 0; b < m.components.size() && comp_bad.empty(); ++b) {
                bool dual = true;
                for (int j = 0; j < m.branches; ++j) {
                    Q t = m.components[a].alpha[j] + m.components[b].alpha[j];
                    if (!(is_zero(t) || t == 1)) dual = false;
                }
                if (dual) continue;
                for (size_t x = 0; x < m.components[a].dim && comp_bad.empty(); ++x)
                    for (size_t y = 0; y < m.components[b].dim && comp_bad.empty(); ++y)
                        if (!is_zero(s(m.offset(a) + x, m.offset(b) + y)))
                            comp_bad = "S pairs components " + std::to_string(a) + " and " + std::to_string(b) +
                                       " whose exponents are not dual";
            }
        r.add("s_components", comp_bad.empty(), "InvalidArgument", comp_bad);
    } else {
        for (const char* name : {"s_nondegenerate", "s_parity", "s_isometry", "s_components"})
            r.skip(name, "no pairing");
    }
    return r;
}

}  // namespace nctk
