#include "nctk/filtration.hpp"

#include <algorithm>

namespace nctk {

namespace {

constexpr const char* kModule = "filtrations";

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorCode::InvalidArgument, kModule, msg); }

}  // namespace

// ---------------------------------------------------------------- increasing

IncreasingFiltration::IncreasingFiltration(size_t ambient)
    : bottom_(ambient), top_(Subspace<Q>::full(ambient)) {
    if (ambient > 0) steps_.emplace_back(0, top_);
}

IncreasingFiltration::IncreasingFiltration(Subspace<Q> bottom, Subspace<Q> top, std::vector<Step> steps)
    : bottom_(std::move(bottom)), top_(std::move(top)) {
    bottom_.check_same(top_);
    if (!top_.contains(bottom_)) invalid("filtration bottom is not inside its top");
    std::sort(steps.begin(), steps.end(), [](const Step& a, const Step& b) { return a.first < b.first; });
    const Subspace<Q>* prev = &bottom_;
    for (size_t i = 0; i < steps.size(); ++i) {
        if (i > 0 && steps[i].first == steps[i - 1].first) invalid("repeated filtration weight");
        const auto& v = steps[i].second;
        top_.check_same(v);
        if (!v.contains(*prev)) invalid("filtration steps are not increasing at weight " + std::to_string(steps[i].first));
        if (!top_.contains(v)) invalid("filtration step exceeds the top space");
        if (v == *prev) continue;
        steps_.push_back(steps[i]);
        prev = &steps_.back().second;
    }
    if (*prev != top_) invalid("filtration is not exhaustive");
}

IncreasingFiltration IncreasingFiltration::pure(size_t ambient, int weight) {
    std::vector<Step> s;
    if (ambient > 0) s.emplace_back(weight, Subspace<Q>::full(ambient));
    return IncreasingFiltration(Subspace<Q>(ambient), Subspace<Q>::full(ambient), std::move(s));
}

IncreasingFiltration IncreasingFiltration::from_function(const Subspace<Q>& bottom, const Subspace<Q>& top, int lo,
                                                         int hi, const std::function<Subspace<Q>(int)>& fn) {
    std::vector<Step> s;
    for (int k = lo; k <= hi; ++k) s.emplace_back(k, fn(k));
    return IncreasingFiltration(bottom, top, std::move(s));
}

const Subspace<Q>& IncreasingFiltration::at(int k) const {
    auto it = std::upper_bound(steps_.begin(), steps_.end(), k,
                               [](int x, const Step& s) { return x < s.first; });
    if (it == steps_.begin()) return bottom_;
    return std::prev(it)->second;
}

std::map<int, size_t> IncreasingFiltration::gr_dims() const {
    std::map<int, size_t> out;
    size_t prev = bottom_.dim();
    for (const auto& [w, v] : steps_) {
        out[w] = v.dim() - prev;
        prev = v.dim();
    }
    return out;
}

IncreasingFiltration IncreasingFiltration::on_subquotient(const Subquotient<Q>& sq) const {
    std::vector<Step> s;
    for (const auto& [w, v] : steps_) s.emplace_back(w, sq.to_coords(v));
    return IncreasingFiltration(sq.to_coords(bottom_), sq.to_coords(top_), std::move(s));
}

IncreasingFiltration IncreasingFiltration::shifted(int by) const {
    IncreasingFiltration out = *this;
    for (auto& st : out.steps_) st.first += by;
    return out;
}

bool IncreasingFiltration::operator==(const IncreasingFiltration& o) const {
    return bottom_ == o.bottom_ && top_ == o.top_ && steps_ == o.steps_;
}

// ---------------------------------------------------------------- decreasing

DecreasingFiltration::DecreasingFiltration(Subspace<QI> bottom, Subspace<QI> top, std::vector<StepQI> steps)
    : bottom_(std::move(bottom)), top_(std::move(top)) {
    bottom_.check_same(top_);
    if (!top_.contains(bottom_)) invalid("Hodge filtration bottom is not inside its top");
    std::sort(steps.begin(), steps.end(), [](const StepQI& a, const StepQI& b) { return a.first < b.first; });
    for (size_t i = 1; i < steps.size(); ++i)
        if (steps[i].first == steps[i - 1].first) invalid("repeated Hodge filtration index");
    // walk from the highest index down; a step equal to its successor is redundant
    std::vector<StepQI> kept;
    const Subspace<QI>* next = &bottom_;
    for (size_t i = steps.size(); i-- > 0;) {
        const auto& v = steps[i].second;
        top_.check_same(v);
        if (!v.contains(*next)) invalid("Hodge filtration is not decreasing at p = " + std::to_string(steps[i].first));
        if (!top_.contains(v)) invalid("Hodge filtration step exceeds the top space");
        if (v == *next) continue;
        kept.push_back(steps[i]);
        next = &kept.back().second;
    }
    if (*next != top_) invalid("Hodge filtration is not exhaustive");
    steps_.assign(kept.rbegin(), kept.rend());
}

DecreasingFiltration DecreasingFiltration::from_function(const Subspace<QI>& bottom, const Subspace<QI>& top, int lo,
                                                         int hi, const std::function<Subspace<QI>(int)>& fn) {
    std::vector<StepQI> s;
    for (int p = lo; p <= hi; ++p) s.emplace_back(p, fn(p));
    return DecreasingFiltration(bottom, top, std::move(s));
}

const Subspace<QI>& DecreasingFiltration::at(int p) const {
    auto it = std::lower_bound(steps_.begin(), steps_.end(), p,
                               [](const StepQI& s, int x) { return s.first < x; });
    if (it == steps_.end()) return bottom_;
    return it->second;
}

DecreasingFiltration DecreasingFiltration::on_subquotient(const Subquotient<QI>& sq) const {
    std::vector<StepQI> s;
    for (const auto& [p, v] : steps_) s.emplace_back(p, sq.to_coords(v));
    return DecreasingFiltration(sq.to_coords(bottom_), sq.to_coords(top_), std::move(s));
}

DecreasingFiltration DecreasingFiltration::shifted(int by) const {
    DecreasingFiltration out = *this;
    for (auto& st : out.steps_) st.first += by;
    return out;
}

bool DecreasingFiltration::operator==(const DecreasingFiltration& o) const {
    return bottom_ == o.bottom_ && top_ == o.top_ && steps_ == o.steps_;
}

// ---------------------------------------------------------------- axioms

void require_nilpotent(const Matrix<Q>& n, const char* module) {
    if (n.rows() != n.cols()) throw Error(ErrorCode::DimensionMismatch, module, "operator is not square");
    if (!is_nilpotent(n)) throw Error(ErrorCode::NotNilpotent, module, "operator is not nilpotent");
}

void require_preserves(const Matrix<Q>& n, const IncreasingFiltration& w, const char* module) {
    if (n.cols() != w.ambient()) throw Error(ErrorCode::DimensionMismatch, module, "operator and filtration sizes differ");
    for (const auto& [k, v] : w.steps())
        if (!v.contains(image(n, v)))
            throw Error(ErrorCode::FiltrationNotPreserved, module,
                        "operator does not preserve W_" + std::to_string(k));
}

AxiomCheck check_relative_monodromy(const Matrix<Q>& n, const IncreasingFiltration& w, const WeightLookup& m, int lo,
                                    int hi) {
    auto fail = [](std::string r) { return AxiomCheck{false, std::move(r)}; };
    if (!m(lo - 1).is_zero()) return fail("M_" + std::to_string(lo - 1) + " is nonzero");
    if (!m(hi).is_full()) return fail("M_" + std::to_string(hi) + " is not the whole space");
    for (int i = lo; i <= hi; ++i)
        if (!m(i).contains(m(i - 1))) return fail("M is not increasing at " + std::to_string(i));
    for (int i = lo; i <= hi + 2; ++i)
        if (!m(i - 2).contains(image(n, m(i))))
            return fail("N M_" + std::to_string(i) + " is not inside M_" + std::to_string(i - 2));
    try {
        for (const auto& [j, gdim] : w.gr_dims()) {
            const Subspace<Q>& wj = w.at(j);
            const Subspace<Q>& wj1 = w.at(j - 1);
            auto induced = [&](int i) { return sum(intersect(m(i), wj), wj1); };
            const int top_k = std::max(hi - j, j - lo) + 1;
            Matrix<Q> nk = Matrix<Q>::identity(n.rows());
            for (int k = 1; k <= top_k; ++k) {
                nk = nk * n;
                Subquotient<Q> src(induced(j + k), induced(j + k - 1));
                Subquotient<Q> tgt(induced(j - k), induced(j - k - 1));
                if (src.dim() != tgt.dim() || rank(induced_map(nk, src, tgt)) != src.dim())
                    return fail("N^" + std::to_string(k) + " is not an isomorphism Gr_" + std::to_string(j + k) +
                                " -> Gr_" + std::to_string(j - k) + " on Gr^W_" + std::to_string(j));
            }
        }
    } catch (const Error& e) {
        return fail(e.what());
    }
    return {};
}

AxiomCheck check_relative_monodromy(const Matrix<Q>& n, const IncreasingFiltration& w, const IncreasingFiltration& m) {
    return check_relative_monodromy(
        n, w, [&m](int i) { return m.at(i); }, m.lo(), m.hi());
}

AxiomCheck check_monodromy(const Matrix<Q>& n, int center, const WeightLookup& m, int lo, int hi) {
    return check_relative_monodromy(n, IncreasingFiltration::pure(n.rows(), center), m, lo, hi);
}

// ---------------------------------------------------------------- constructions

IncreasingFiltration relative_monodromy_filtration(const Matrix<Q>& n, const IncreasingFiltration& w) {
    const size_t dim = n.rows();
    require_nilpotent(n, kModule);
    if (w.ambient() != dim) throw Error(ErrorCode::DimensionMismatch, kModule, "operator and filtration sizes differ");
    if (!w.bottom().is_zero() || !w.top().is_full()) invalid("relative monodromy needs a filtration from 0 to the whole space");
    require_preserves(n, w, kModule);
    if (dim == 0) return IncreasingFiltration(0);

    struct Gen { Vec<Q> v; int weight; };
    std::vector<Gen> gens;
    auto span_upto = [&](int i, size_t count) {
        std::vector<Vec<Q>> rows;
        for (size_t g = 0; g < count; ++g)
            if (gens[g].weight <= i) rows.push_back(gens[g].v);
        return Subspace<Q>::span(dim, rows);
    };
    auto nonexistent = [](int j) {
        return Error(ErrorCode::RelativeMonodromyNonexistent, kModule,
                     "no relative monodromy filtration: lift fails on Gr^W_" + std::to_string(j));
    };

    Subspace<Q> prev(dim);
    for (const auto& [j, b] : w.steps()) {
        const size_t before = gens.size();
        Subquotient<Q> g(b, prev);
        auto chains = jordan_chains(induced_map(n, g, g));
        Matrix<Q> prev_t = prev.basis().transpose();
        for (const auto& chain : chains) {
            const int k = static_cast<int>(chain.size()) - 1;
            Matrix<Q> nk1 = n.power(k + 1);
            Vec<Q> v = g.lift(chain.front());
            Vec<Q> y = nk1.apply(v);
            Subspace<Q> target = span_upto(j - k - 2, before);
            if (!target.contains(y)) {
                if (prev.is_zero()) throw nonexistent(j);
                Matrix<Q> qp = target.quotient_projection();
                auto lam = solve(qp * nk1 * prev_t, qp.apply(y));
                if (!lam) throw nonexistent(j);
                Vec<Q> corr = prev_t.apply(*lam);
                for (size_t t = 0; t < dim; ++t) v[t] -= corr[t];
            }
            for (int s = 0; s <= k; ++s) {
                gens.push_back({v, j + k - 2 * s});
                v = n.apply(v);
            }
        }
        prev = b;
    }

    int lo = gens.front().weight, hi = lo;
    for (const auto& g : gens) { lo = std::min(lo, g.weight); hi = std::max(hi, g.weight); }
    IncreasingFiltration m = IncreasingFiltration::from_function(
        Subspace<Q>(dim), Subspace<Q>::full(dim), lo, hi, [&](int i) { return span_upto(i, gens.size()); });
    auto chk = check_relative_monodromy(n, w, m);
    if (!chk.ok)
        throw Error(ErrorCode::RelativeMonodromyNonexistent, kModule, "candidate fails the axioms: " + chk.reason);
    return m;
}

IncreasingFiltration monodromy_filtration(const Matrix<Q>& n, int center) {
    require_nilpotent(n, kModule);
    return relative_monodromy_filtration(n, IncreasingFiltration::pure(n.rows(), center));
}

namespace {

struct StarInputs {
    IncreasingFiltration m;
    int lo, hi;
};

StarInputs star_inputs(const Matrix<Q>& n, const IncreasingFiltration& w) {
    IncreasingFiltration m = relative_monodromy_filtration(n, w);
    int lo = std::min(w.lo(), m.lo()) - 2;
    int hi = std::max(w.hi(), m.hi()) + 2;
    return {std::move(m), lo, hi};
}

IncreasingFiltration star_formula(const Matrix<Q>& n, const IncreasingFiltration& w, const StarInputs& in,
                                  int w_offset) {
    const size_t dim = w.ambient();
    return IncreasingFiltration::from_function(Subspace<Q>(dim), Subspace<Q>::full(dim), in.lo, in.hi, [&](int k) {
        return sum(image(n, w.at(k + 1)), intersect(in.m.at(k), w.at(k + w_offset)));
    });
}

}  // namespace

IncreasingFiltration star(const Matrix<Q>& n, const IncreasingFiltration& w) {
    if (w.ambient() == 0) return w;
    auto in = star_inputs(n, w);
    IncreasingFiltration out = star_formula(n, w, in, 0);
    if (out != star_formula(n, w, in, 1))
        throw Error(ErrorCode::Internal, kModule, "the two expressions for N*W disagree");
    return out;
}

IncreasingFiltration star_alternate(const Matrix<Q>& n, const IncreasingFiltration& w) {
    if (w.ambient() == 0) return w;
    return star_formula(n, w, star_inputs(n, w), 1);
}

IncreasingFiltration shriek(const Matrix<Q>& n, const IncreasingFiltration& w) {
    const size_t dim = w.ambient();
    if (dim == 0) return w;
    auto in = star_inputs(n, w);
    return IncreasingFiltration::from_function(Subspace<Q>(dim), Subspace<Q>::full(dim), in.lo, in.hi, [&](int k) {
        return sum(w.at(k - 1), intersect(in.m.at(k), preimage(n, w.at(k - 1))));
    });
}

IncreasingFiltration dual_filtration(const IncreasingFiltration& w) {
    Subspace<Q> bottom = annihilator(w.top());
    Subspace<Q> top = annihilator(w.bottom());
    return IncreasingFiltration::from_function(bottom, top, -w.hi() - 2, -w.lo() + 1,
                                               [&](int k) { return annihilator(w.at(-k - 1)); });
}

IncreasingFiltration iterated_star(const std::vector<Matrix<Q>>& ns, const IncreasingFiltration& w,
                                   const std::vector<int>& order) {
    IncreasingFiltration out = w;
    for (size_t i = order.size(); i-- > 0;) {
        if (order[i] < 0 || static_cast<size_t>(order[i]) >= ns.size()) invalid("branch index out of range");
        out = star(ns[order[i]], out);
    }
    return out;
}

Matrix<Q> sum_of(const std::vector<Matrix<Q>>& ns, const std::vector<int>& subset, size_t dim) {
    Matrix<Q> s(dim, dim);
    for (int j : subset) s = s + ns.at(j);
    return s;
}

Matrix<Q> product_of(const std::vector<Matrix<Q>>& ns, const std::vector<int>& subset, size_t dim) {
    Matrix<Q> p = Matrix<Q>::identity(dim);
    for (int j : subset) p = p * ns.at(j);
    return p;
}

}  // namespace nctk
