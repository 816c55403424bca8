#include "nctk/complex.hpp"

#include <algorithm>
#include <set>

namespace nctk {

namespace {

constexpr const char* kModule = "complexes";

[[noreturn]] void internal(const std::string& msg) { throw Error(ErrorCode::Internal, kModule, msg); }

Subspace<QI> f_at(const Term& t, int p) {
    if (t.f) return t.f->at(p);
    return promote(t.quot);
}

Subspace<Q> coord_span(size_t dim, const std::vector<size_t>& idx) {
    std::vector<Vec<Q>> rows;
    for (size_t i : idx) {
        Vec<Q> e(dim, Q(0));
        e[i] = 1;
        rows.push_back(std::move(e));
    }
    return Subspace<Q>::span(dim, rows);
}

Subspace<Q> embed_indices(const Subspace<Q>& s, const std::vector<size_t>& idx, size_t dim) {
    std::vector<Vec<Q>> rows;
    for (const auto& v : s.vectors()) {
        Vec<Q> e(dim, Q(0));
        for (size_t t = 0; t < idx.size(); ++t) e[idx[t]] = v[t];
        rows.push_back(std::move(e));
    }
    return Subspace<Q>::span(dim, rows);
}

template <class K>
Subspace<K> direct_sum_at(const Subspace<K>& a, const Subspace<K>& b) {
    const size_t amb = a.ambient() + b.ambient();
    return sum(embed_block(a, 0, amb), embed_block(b, a.ambient(), amb));
}

Matrix<Q> alpha_minus_n(const NCModel& m, int j) {
    Matrix<Q> out = m.n_total(j).scaled(Q(-1));
    for (size_t c = 0; c < m.components.size(); ++c)
        for (size_t i = 0; i < m.components[c].dim; ++i) out(m.offset(c) + i, m.offset(c) + i) += m.components[c].alpha[j];
    return out;
}

struct Koszul {
    int n = 0;
    size_t dim_l = 0;
    std::vector<std::vector<std::vector<int>>> sets;  // sets[k] = subsets of size k
    size_t index_of(const std::vector<int>& k) const {
        const auto& v = sets[k.size()];
        return static_cast<size_t>(std::find(v.begin(), v.end(), k) - v.begin());
    }
    size_t ambient(int k) const { return sets[k].size() * dim_l; }
};

Koszul layout(const NCModel& m) {
    Koszul kz;
    kz.n = m.branches;
    kz.dim_l = m.dim();
    for (int k = 0; k <= m.branches; ++k) kz.sets.push_back(subsets_of_size(m.branches, k));
    return kz;
}

std::vector<Matrix<Q>> koszul_differentials(const NCModel& m, const Koszul& kz) {
    std::vector<Matrix<Q>> ops;
    for (int j = 0; j < m.branches; ++j) ops.push_back(alpha_minus_n(m, j));
    std::vector<Matrix<Q>> d;
    for (int k = 0; k < kz.n; ++k) {
        Matrix<Q> dk(kz.ambient(k + 1), kz.ambient(k));
        for (size_t t = 0; t < kz.sets[k + 1].size(); ++t) {
            const auto& target = kz.sets[k + 1][t];
            for (size_t pos = 0; pos < target.size(); ++pos) {
                const int j = target[pos];
                std::vector<int> source = target;
                source.erase(source.begin() + static_cast<long>(pos));
                const size_t s = kz.index_of(source);
                const Q sign = pos % 2 == 0 ? Q(1) : Q(-1);
                for (size_t r = 0; r < kz.dim_l; ++r)
                    for (size_t c = 0; c < kz.dim_l; ++c)
                        if (!is_zero(ops[j](r, c))) dk(t * kz.dim_l + r, s * kz.dim_l + c) = sign * ops[j](r, c);
            }
        }
        d.push_back(std::move(dk));
    }
    return d;
}

std::vector<SlotLabel> slot_labels(const Koszul& kz, int k) {
    std::vector<SlotLabel> out;
    for (size_t t = 0; t < kz.sets[k].size(); ++t) out.push_back({subset_name(kz.sets[k][t]), t * kz.dim_l, kz.dim_l});
    return out;
}

/// Ω with per-slot subspaces: slot K carries image of the product of (α_j - N_j) over j in K minus `full`.
FilteredComplex koszul_complex(const NCModel& m, const std::vector<int>* log_branches) {
    Koszul kz = layout(m);
    const size_t dl = kz.dim_l;
    std::vector<Matrix<Q>> ops;
    for (int j = 0; j < m.branches; ++j) ops.push_back(alpha_minus_n(m, j));

    // weight data: W^K on the unipotent block, constant W elsewhere
    std::vector<size_t> uni_idx, rest_idx;
    for (size_t c = 0; c < m.components.size(); ++c)
        for (size_t i = 0; i < m.components[c].dim; ++i)
            (m.components[c].unipotent() ? uni_idx : rest_idx).push_back(m.offset(c) + i);
    NCModel u = unipotent_part(m);
    const auto uns = u.n_totals();
    const Subspace<Q> rest_span = coord_span(dl, rest_idx);
    std::vector<std::vector<IncreasingFiltration>> wk(kz.n + 1);
    for (int k = 0; k <= kz.n; ++k)
        for (const auto& set : kz.sets[k]) wk[k].push_back(iterated_star(uns, u.w, set));
    auto slot_w = [&](int k, size_t t, int r) {
        return sum(embed_indices(wk[k][t].at(r - k), uni_idx, dl), intersect(m.w.at(r), rest_span));
    };

    std::vector<Term> terms;
    for (int k = 0; k <= kz.n; ++k) {
        Term t;
        t.ambient = kz.ambient(k);
        t.quot = Subspace<Q>(t.ambient);
        t.slots = slot_labels(kz, k);
        std::vector<Subspace<Q>> slot_space;
        for (const auto& set : kz.sets[k]) {
            Matrix<Q> p = Matrix<Q>::identity(dl);
            for (int j : set) {
                bool log = log_branches && std::find(log_branches->begin(), log_branches->end(), j) != log_branches->end();
                if (!log) p = p * ops[j];
            }
            slot_space.push_back(image(p));
        }
        Subspace<Q> sub(t.ambient);
        for (size_t s = 0; s < slot_space.size(); ++s) sub = sum(sub, embed_block(slot_space[s], s * dl, t.ambient));
        t.sub = sub;

        int lo = m.w.lo(), hi = m.w.hi();
        for (size_t s = 0; s < kz.sets[k].size(); ++s)
            if (wk[k][s].has_jumps()) {
                lo = std::min(lo, wk[k][s].lo() + k);
                hi = std::max(hi, wk[k][s].hi() + k);
            }
        t.w = IncreasingFiltration::from_function(t.quot, t.sub, lo - 1, hi, [&](int r) {
            Subspace<Q> v(t.ambient);
            for (size_t s = 0; s < kz.sets[k].size(); ++s)
                v = sum(v, embed_block(intersect(slot_w(k, s, r), slot_space[s]), s * dl, t.ambient));
            return v;
        });
        if (m.f) {
            const Subspace<QI> sub_c = promote(t.sub);
            t.f = DecreasingFiltration::from_function(Subspace<QI>(t.ambient), sub_c, m.f->lo(), m.f->hi() + k + 1,
                                                      [&](int p) {
                                                          Subspace<QI> v(t.ambient);
                                                          for (size_t s = 0; s < kz.sets[k].size(); ++s)
                                                              v = sum(v, embed_block(m.f->at(p - k), s * dl, t.ambient));
                                                          return intersect(v, sub_c);
                                                      });
        }
        terms.push_back(std::move(t));
    }
    FilteredComplex c(0, std::move(terms), koszul_differentials(m, kz), 0);
    c.verify();
    return c;
}

}  // namespace

// ---------------------------------------------------------------- terms and complexes

Term Term::zero(size_t ambient) {
    Term t;
    t.ambient = ambient;
    t.sub = Subspace<Q>(ambient);
    t.quot = Subspace<Q>(ambient);
    t.w = IncreasingFiltration(t.quot, t.sub, {});
    return t;
}

bool Term::operator==(const Term& o) const {
    return ambient == o.ambient && sub == o.sub && quot == o.quot && w == o.w && f == o.f && slots == o.slots;
}

FilteredComplex::FilteredComplex(int lo, std::vector<Term> terms, std::vector<Matrix<Q>> d, int weight_offset)
    : lo_(lo), terms_(std::move(terms)), d_(std::move(d)), offset_(weight_offset), zero_(Term::zero()) {
    const size_t want = terms_.empty() ? 0 : terms_.size() - 1;
    if (d_.size() != want) internal("differential count does not match the degree range");
    for (size_t i = 0; i < d_.size(); ++i)
        if (d_[i].cols() != terms_[i].ambient || d_[i].rows() != terms_[i + 1].ambient)
            internal("differential shape does not match the terms");
}

bool FilteredComplex::has_f() const {
    for (const auto& t : terms_)
        if (!t.f) return false;
    return true;
}

const Term& FilteredComplex::term(int k) const {
    if (k < lo_ || k > hi()) return zero_;
    return terms_[static_cast<size_t>(k - lo_)];
}

Matrix<Q> FilteredComplex::d(int k) const {
    if (k >= lo_ && k < hi()) return d_[static_cast<size_t>(k - lo_)];
    return Matrix<Q>(term(k + 1).ambient, term(k).ambient);
}

void FilteredComplex::verify() const {
    for (int k = lo_; k <= hi(); ++k) {
        const Term& t = term(k);
        const Term& u = term(k + 1);
        const Matrix<Q> dk = d(k);
        if (!t.sub.contains(t.quot)) internal("quot is not inside sub in degree " + std::to_string(k));
        if (!u.sub.contains(image(dk, t.sub))) internal("d does not preserve sub in degree " + std::to_string(k));
        if (!u.quot.contains(image(dk, t.quot))) internal("d does not preserve quot in degree " + std::to_string(k));
        if (!term(k + 2).quot.contains(image(d(k + 1) * dk, t.sub)))
            internal("d∘d is not zero in degree " + std::to_string(k));
        for (const auto& [r, v] : t.w.steps())
            if (!u.w.at(r).contains(image(dk, v)))
                internal("W_" + std::to_string(r) + " is not a subcomplex in degree " + std::to_string(k));
        if (t.f && k < hi()) {
            const Matrix<QI> dc = promote(dk);
            for (const auto& [p, v] : t.f->steps())
                if (!f_at(u, p).contains(image(dc, v)))
                    internal("F^" + std::to_string(p) + " is not a subcomplex in degree " + std::to_string(k));
        }
    }
}

long FilteredComplex::euler_terms() const {
    long e = 0;
    for (int k = lo_; k <= hi(); ++k) e += (k % 2 == 0 ? 1 : -1) * static_cast<long>(term(k).dim());
    return e;
}

bool FilteredComplex::operator==(const FilteredComplex& o) const {
    return lo_ == o.lo_ && offset_ == o.offset_ && terms_ == o.terms_ && d_ == o.d_;
}

std::pair<int, int> FilteredComplex::weight_range() const {
    bool any = false;
    int lo = 0, hi = 0;
    for (const auto& t : terms_) {
        if (!t.w.has_jumps()) continue;
        lo = any ? std::min(lo, t.w.lo()) : t.w.lo();
        hi = any ? std::max(hi, t.w.hi()) : t.w.hi();
        any = true;
    }
    return {lo, hi};
}

Matrix<Q> ComplexMap::at(int k, size_t src_ambient, size_t tgt_ambient) const {
    const long i = k - lo;
    if (i >= 0 && static_cast<size_t>(i) < m.size() && m[i].cols() == src_ambient && m[i].rows() == tgt_ambient)
        return m[i];
    return Matrix<Q>(tgt_ambient, src_ambient);
}

ComplexMap compose(const ComplexMap& g, const ComplexMap& f, const FilteredComplex& a, const FilteredComplex& b,
                   const FilteredComplex& c) {
    ComplexMap out;
    out.lo = std::min({a.lo(), b.lo(), c.lo()});
    const int hi = std::max({a.hi(), b.hi(), c.hi()});
    for (int k = out.lo; k <= hi; ++k) {
        const size_t sa = a.term(k).ambient, sb = b.term(k).ambient, sc = c.term(k).ambient;
        out.m.push_back(g.at(k, sb, sc) * f.at(k, sa, sb));
    }
    return out;
}

bool is_chain_map(const ComplexMap& f, const FilteredComplex& src, const FilteredComplex& tgt) {
    const int lo = std::min(src.lo(), tgt.lo()), hi = std::max(src.hi(), tgt.hi());
    for (int k = lo; k <= hi; ++k) {
        const Term& s = src.term(k);
        const Term& t = tgt.term(k);
        Matrix<Q> fk = f.at(k, s.ambient, t.ambient);
        if (!t.sub.contains(image(fk, s.sub)) || !t.quot.contains(image(fk, s.quot))) return false;
        Matrix<Q> fk1 = f.at(k + 1, src.term(k + 1).ambient, tgt.term(k + 1).ambient);
        Matrix<Q> defect = fk1 * src.d(k) - tgt.d(k) * fk;
        if (!tgt.term(k + 1).quot.contains(image(defect, s.sub))) return false;
    }
    return true;
}

// ---------------------------------------------------------------- builders

std::vector<std::vector<int>> subsets_of_size(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> cur(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

std::string subset_name(const std::vector<int>& k) {
    std::string s = "{";
    for (size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i] + 1);
    return s + "}";
}

FilteredComplex build_omega(const NCModel& model) {
    std::vector<int> all;
    for (int j = 0; j < model.branches; ++j) all.push_back(j);
    return koszul_complex(model, &all);
}

FilteredComplex build_ic(const NCModel& model) { return koszul_complex(model, nullptr); }

FilteredComplex build_ic_log(const NCModel& model, const std::vector<int>& z) {
    for (int j : z)
        if (j < 0 || j >= model.branches)
            throw Error(ErrorCode::InvalidArgument, kModule, "branch index " + std::to_string(j + 1) + " out of range");
    return koszul_complex(model, &z);
}

ComplexMap inclusion_map(const FilteredComplex& sub, const FilteredComplex& super) {
    ComplexMap f;
    f.lo = sub.lo();
    for (int k = sub.lo(); k <= sub.hi(); ++k) {
        if (sub.term(k).ambient != super.term(k).ambient) internal("inclusion between different ambients");
        f.m.push_back(Matrix<Q>::identity(sub.term(k).ambient));
    }
    return f;
}

FilteredComplex cone(const ComplexMap& f, const FilteredComplex& a, const FilteredComplex& b) {
    if (!is_chain_map(f, a, b)) throw Error(ErrorCode::InvalidArgument, kModule, "cone: the map is not a chain map");
    const int delta = a.weight_offset() - b.weight_offset();
    for (int k = a.lo(); k <= a.hi(); ++k) {
        const Term& s = a.term(k);
        const Term& t = b.term(k);
        Matrix<Q> fk = f.at(k, s.ambient, t.ambient);
        for (const auto& [r, v] : s.w.steps())
            if (!t.w.at(r + delta).contains(image(fk, v)))
                throw Error(ErrorCode::FiltrationNotPreserved, kModule,
                            "cone: the map does not respect W in degree " + std::to_string(k));
    }
    const bool with_f = a.has_f() && b.has_f();
    const int lo = std::min(a.lo() - 1, b.lo());
    const int hi = std::max(a.hi() - 1, b.hi());
    std::vector<Term> terms;
    std::vector<Matrix<Q>> ds;
    for (int k = lo; k <= hi; ++k) {
        const Term& s = a.term(k + 1);
        const Term& t = b.term(k);
        Term c;
        c.ambient = s.ambient + t.ambient;
        c.sub = direct_sum_at(s.sub, t.sub);
        c.quot = direct_sum_at(s.quot, t.quot);
        int wlo = std::min(s.w.lo() + 1 + delta, t.w.lo()) - 1;
        int whi = std::max(s.w.hi() + 1 + delta, t.w.hi());
        c.w = IncreasingFiltration::from_function(c.quot, c.sub, wlo, whi, [&](int r) {
            return direct_sum_at(s.w.at(r - 1 - delta), t.w.at(r));
        });
        if (with_f) {
            int plo = std::min(s.f ? s.f->lo() : 0, t.f ? t.f->lo() : 0);
            int phi = std::max(s.f ? s.f->hi() : 0, t.f ? t.f->hi() : 0) + 1;
            c.f = DecreasingFiltration::from_function(promote(c.quot), promote(c.sub), plo, phi,
                                                      [&](int p) { return direct_sum_at(f_at(s, p), f_at(t, p)); });
        }
        for (auto l : s.slots) c.slots.push_back({"src" + l.name, l.offset, l.dim});
        for (auto l : t.slots) c.slots.push_back({"tgt" + l.name, s.ambient + l.offset, l.dim});
        terms.push_back(std::move(c));
    }
    for (int k = lo; k < hi; ++k) {
        const size_t sa = a.term(k + 1).ambient, ta = b.term(k).ambient;
        const size_t sa2 = a.term(k + 2).ambient, ta2 = b.term(k + 1).ambient;
        Matrix<Q> dk(sa2 + ta2, sa + ta);
        Matrix<Q> da = a.d(k + 1), db = b.d(k), fk = f.at(k + 1, sa, ta2);
        for (size_t i = 0; i < sa2; ++i)
            for (size_t j = 0; j < sa; ++j) dk(i, j) = -da(i, j);
        for (size_t i = 0; i < ta2; ++i) {
            for (size_t j = 0; j < sa; ++j) dk(sa2 + i, j) = fk(i, j);
            for (size_t j = 0; j < ta; ++j) dk(sa2 + i, sa + j) = db(i, j);
        }
        ds.push_back(std::move(dk));
    }
    FilteredComplex out(lo, std::move(terms), std::move(ds), b.weight_offset());
    out.verify();
    return out;
}

FilteredComplex shift(const FilteredComplex& c, int s) {
    std::vector<Term> terms;
    std::vector<Matrix<Q>> ds;
    const Q sign = s % 2 == 0 ? Q(1) : Q(-1);
    for (int k = c.lo(); k <= c.hi(); ++k) {
        Term t = c.term(k);
        t.w = t.w.shifted(s);
        terms.push_back(std::move(t));
        if (k < c.hi()) ds.push_back(c.d(k).scaled(sign));
    }
    return FilteredComplex(c.lo() - s, std::move(terms), std::move(ds), c.weight_offset());
}

FilteredComplex quotient(const FilteredComplex& super, const FilteredComplex& sub) {
    std::vector<Term> terms;
    std::vector<Matrix<Q>> ds;
    for (int k = super.lo(); k <= super.hi(); ++k) {
        const Term& big = super.term(k);
        const Term& small = sub.term(k);
        if (small.ambient != big.ambient && small.ambient != 0) internal("quotient between different ambients");
        Term t = big;
        t.quot = small.ambient ? sum(big.quot, small.sub) : big.quot;
        std::vector<Step> ws;
        for (const auto& [r, v] : big.w.steps()) ws.emplace_back(r, sum(v, t.quot));
        t.w = IncreasingFiltration(t.quot, t.sub, std::move(ws));
        if (big.f) {
            const Subspace<QI> qc = promote(t.quot);
            std::vector<StepQI> fs;
            for (const auto& [p, v] : big.f->steps()) fs.emplace_back(p, sum(v, qc));
            t.f = DecreasingFiltration(qc, promote(t.sub), std::move(fs));
        }
        terms.push_back(std::move(t));
        if (k < super.hi()) ds.push_back(super.d(k));
    }
    FilteredComplex out(super.lo(), std::move(terms), std::move(ds), super.weight_offset());
    out.verify();
    return out;
}

FilteredComplex graded_piece(const FilteredComplex& c, int r) {
    std::vector<Term> terms;
    std::vector<Matrix<Q>> ds;
    for (int k = c.lo(); k <= c.hi(); ++k) {
        const Term& big = c.term(k);
        Term t = big;
        t.sub = big.w.at(r);
        t.quot = big.w.at(r - 1);
        t.w = IncreasingFiltration(t.quot, t.sub, {{r, t.sub}});
        if (big.f) {
            const Subspace<QI> sc = promote(t.sub), qc = promote(t.quot);
            std::vector<StepQI> fs;
            for (const auto& [p, v] : big.f->steps()) fs.emplace_back(p, sum(intersect(v, sc), qc));
            t.f = DecreasingFiltration(qc, sc, std::move(fs));
        }
        terms.push_back(std::move(t));
        if (k < c.hi()) ds.push_back(c.d(k));
    }
    return FilteredComplex(c.lo(), std::move(terms), std::move(ds), c.weight_offset());
}

int duality_center(int perverse_shift) { return 2 * perverse_shift; }

FilteredComplex dualize(const FilteredComplex& c, int a, int center) {
    std::vector<Term> terms;
    std::vector<Matrix<Q>> ds;
    const int lo = center - c.hi(), hi = center - c.lo();
    for (int k = lo; k <= hi; ++k) {
        const Term& src = c.term(center - k);
        Term t;
        t.ambient = src.ambient;
        t.sub = annihilator(src.quot);
        t.quot = annihilator(src.sub);
        t.w = dual_filtration(src.w);
        t.slots = src.slots;
        if (src.f) {
            const auto& f = *src.f;
            t.f = DecreasingFiltration::from_function(promote(t.quot), promote(t.sub), a - f.hi() - 1, a - f.lo() + 2,
                                                      [&](int p) { return annihilator(f.at(1 - p + a)); });
        }
        terms.push_back(std::move(t));
        if (k < hi) {
            const Q sign = k % 2 == 0 ? Q(1) : Q(-1);
            ds.push_back(c.d(center - k - 1).transpose().scaled(sign));
        }
    }
    FilteredComplex out(lo, std::move(terms), std::move(ds), 2 * a - c.weight_offset() - center);
    out.verify();
    return out;
}

FilteredComplex i_shriek(const NCModel& model, const std::vector<int>& z) {
    FilteredComplex ic = build_ic(model);
    FilteredComplex icl = build_ic_log(model, z);
    return shift(cone(inclusion_map(ic, icl), ic, icl), -1);
}

FilteredComplex i_star(const NCModel& model, const std::vector<int>& z) {
    if (!model.s) throw Error(ErrorCode::InvalidArgument, kModule, "i_star needs a pairing S");
    if (rank(model.s->matrix) != model.dim())
        throw Error(ErrorCode::PairingDegenerate, kModule, "pairing S is degenerate");
    return dualize(i_shriek(model, z), model.base_weight, duality_center(model.perverse_shift));
}

// ---------------------------------------------------------------- cohomology

Subspace<Q> cycles(const FilteredComplex& c, int k) {
    return intersect(c.term(k).sub, preimage(c.d(k), c.term(k + 1).quot));
}

Subspace<Q> boundaries(const FilteredComplex& c, int k) {
    return sum(image(c.d(k - 1), c.term(k - 1).sub), c.term(k).quot);
}

size_t CohomologyReport::dim(int degree) const {
    for (const auto& d : degrees)
        if (d.degree == degree) return d.dim;
    return 0;
}

std::map<int, size_t> CohomologyReport::weights(int degree) const {
    for (const auto& d : degrees)
        if (d.degree == degree) return d.weights;
    return {};
}

CohomologyReport cohomology(const FilteredComplex& c, bool with_hodge) {
    CohomologyReport rep;
    rep.has_hodge = with_hodge && c.has_f() && !c.empty();
    rep.euler_terms = c.euler_terms();
    for (int k = c.lo(); k <= c.hi(); ++k) {
        const Term& t = c.term(k);
        DegreeCohomology dc;
        dc.degree = k;
        const Subspace<Q> b = boundaries(c, k);
        const Subspace<Q> closed = preimage(c.d(k), c.term(k + 1).quot);
        const Subspace<Q> z = intersect(t.sub, closed);
        dc.dim = z.dim() - b.dim();
        rep.euler_cohomology += (k % 2 == 0 ? 1 : -1) * static_cast<long>(dc.dim);
        if (dc.dim > 0) {
            size_t prev = 0;
            for (int r = t.w.lo(); r <= t.w.hi(); ++r) {
                size_t img = sum(intersect(t.w.at(r), closed), b).dim() - b.dim();
                if (img > prev) dc.weights[r + c.weight_offset() + k] = img - prev;
                prev = img;
            }
            if (rep.has_hodge) {
                const Subspace<QI> bc = promote(b), closed_c = promote(closed);
                size_t below = 0;
                for (int p = t.f->hi(); p >= t.f->lo(); --p) {
                    size_t img = sum(intersect(t.f->at(p), closed_c), bc).dim() - bc.dim();
                    if (img > below) dc.hodge[p] = img - below;
                    below = img;
                }
            }
        }
        rep.degrees.push_back(std::move(dc));
    }
    return rep;
}

}  // namespace nctk
