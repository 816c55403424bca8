#include "nctk/decomposition.hpp"

#include <algorithm>
#include <set>

namespace nctk {

namespace {

constexpr const char* kModule = "decomposition-purity";

/// Iterated stars of the unipotent part, cached by branch set.
struct StarCache {
    NCModel u;
    std::vector<Matrix<Q>> ns;
    std::map<std::vector<int>, IncreasingFiltration> w;

    explicit StarCache(const NCModel& model) : u(unipotent_part(model)), ns(u.n_totals()) {}
    const IncreasingFiltration& at(const std::vector<int>& j) {
        auto it = w.find(j);
        if (it == w.end()) it = w.emplace(j, iterated_star(ns, u.w, j)).first;
        return it->second;
    }
};

std::vector<int> without(const std::vector<int>& s, int x) {
    std::vector<int> out;
    for (int v : s)
        if (v != x) out.push_back(v);
    return out;
}

std::vector<int> minus(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    for (int v : a)
        if (std::find(b.begin(), b.end(), v) == b.end()) out.push_back(v);
    return out;
}

std::vector<std::vector<int>> subsets_of(const std::vector<int>& j) {
    std::vector<std::vector<int>> out;
    for (size_t mask = 0; mask < (size_t{1} << j.size()); ++mask) {
        std::vector<int> s;
        for (size_t i = 0; i < j.size(); ++i)
            if (mask & (size_t{1} << i)) s.push_back(j[i]);
        out.push_back(std::move(s));
    }
    return out;
}

PrimitivePart primitive_in(StarCache& cache, const std::vector<int>& j, int k, const Subspace<Q>& inside) {
    const IncreasingFiltration& wj = cache.at(j);
    const Subspace<Q> quot = intersect(wj.at(k - 1), inside);
    const Subspace<Q> top = intersect(wj.at(k), inside);
    Subspace<Q> sub = top;
    for (int drop : j) {
        const IncreasingFiltration& wk = cache.at(without(j, drop));
        sub = intersect(sub, sum(quot, intersect(top, wk.at(k))));
    }
    PrimitivePart p;
    p.j = j;
    p.k = k;
    p.space = Subquotient<Q>(sub, quot);
    const size_t dim = cache.u.dim();
    for (int b = 0; b < cache.u.branches; ++b) {
        if (std::find(j.begin(), j.end(), b) != j.end()) continue;
        p.residual.emplace(b, induced_map(cache.ns[b], p.space, p.space));
    }
    if (!j.empty() && p.space.dim() > 0) {
        try {
            IncreasingFiltration m = relative_monodromy_filtration(sum_of(cache.ns, j, dim), cache.u.w);
            if (!sum(m.at(k), quot).contains(sub) || !quot.contains(intersect(sub, m.at(k - 1)))) {
                p.pure = false;
                p.purity_detail = "part is not concentrated in one graded piece of the relative monodromy filtration";
            }
        } catch (const Error& e) {
            p.pure = false;
            p.purity_detail = e.what();
        }
    }
    return p;
}

/// Slot space of branch set j in the chosen complex, on the unipotent part.
Subspace<Q> slot_space(const StarCache& cache, ComplexKind which, const std::vector<int>& j, const std::vector<int>& z) {
    const size_t dim = cache.u.dim();
    switch (which) {
        case ComplexKind::Omega: return Subspace<Q>::full(dim);
        case ComplexKind::Ic: return image(product_of(cache.ns, j, dim));
        case ComplexKind::IcLog: return image(product_of(cache.ns, minus(j, z), dim));
    }
    return Subspace<Q>::full(dim);
}

/// Cohomology dims of the Koszul complex with slot T = image of the product over T.
std::map<int, size_t> residual_ic_dims(const PrimitivePart& p) {
    std::vector<int> br;
    for (const auto& [b, m] : p.residual) br.push_back(b);
    const size_t dim = p.space.dim();
    const int r = static_cast<int>(br.size());
    std::vector<Matrix<Q>> ops;
    for (int b : br) ops.push_back(p.residual.at(b));
    std::vector<std::vector<std::vector<int>>> sets;
    for (int t = 0; t <= r; ++t) sets.push_back(subsets_of_size(r, t));
    std::vector<Subspace<Q>> subs;
    for (int t = 0; t <= r; ++t) {
        const size_t amb = sets[t].size() * dim;
        Subspace<Q> s(amb);
        for (size_t i = 0; i < sets[t].size(); ++i)
            s = sum(s, embed_block(image(product_of(ops, sets[t][i], dim)), i * dim, amb));
        subs.push_back(std::move(s));
    }
    std::vector<size_t> ranks;
    for (int t = 0; t < r; ++t) {
        Matrix<Q> d(sets[t + 1].size() * dim, sets[t].size() * dim);
        for (size_t ti = 0; ti < sets[t + 1].size(); ++ti) {
            const auto& target = sets[t + 1][ti];
            for (size_t pos = 0; pos < target.size(); ++pos) {
                std::vector<int> source = target;
                source.erase(source.begin() + static_cast<long>(pos));
                const size_t si = static_cast<size_t>(std::find(sets[t].begin(), sets[t].end(), source) - sets[t].begin());
                const Q sign = pos % 2 == 0 ? Q(-1) : Q(1);
                const Matrix<Q>& op = ops[target[pos]];
                for (size_t a = 0; a < dim; ++a)
                    for (size_t b = 0; b < dim; ++b) d(ti * dim + a, si * dim + b) = sign * op(a, b);
            }
        }
        ranks.push_back(image(d, subs[t]).dim());
    }
    std::map<int, size_t> out;
    for (int t = 0; t <= r; ++t) {
        size_t h = subs[t].dim();
        if (t < r) h -= ranks[t];
        if (t > 0) h -= ranks[t - 1];
        out[t + static_cast<int>(p.j.size())] = h;
    }
    return out;
}

FilteredComplex complex_of(const NCModel& model, ComplexKind which, const std::vector<int>& z) {
    switch (which) {
        case ComplexKind::Omega: return build_omega(model);
        case ComplexKind::Ic: return build_ic(model);
        case ComplexKind::IcLog: return build_ic_log(model, z);
    }
    return build_omega(model);
}

std::string kind_name(ComplexKind which) {
    switch (which) {
        case ComplexKind::Omega: return "omega";
        case ComplexKind::Ic: return "ic";
        case ComplexKind::IcLog: return "iclog";
    }
    return "omega";
}

void check_dp(StarCache& cache, int k, CheckReport& report) {
    for (int b = 0; b < cache.u.branches; ++b) {
        const std::string name = "dp_splitting[" + std::to_string(b + 1) + "]";
        const IncreasingFiltration& w = cache.u.w;
        const IncreasingFiltration& s = cache.at({b});
        const Matrix<Q>& n = cache.ns[b];
        const Subspace<Q> lower = s.at(k - 1);
        const Subspace<Q> im = sum(image(n, w.at(k + 1)), lower);
        const Subspace<Q> ker = sum(intersect(s.at(k), w.at(k)), lower);
        const bool direct = intersect(im, ker) == lower && sum(im, ker) == s.at(k);
        const size_t gr_rank = rank(induced_map(n, w.at(k + 1), w.at(k), w.at(k + 1), w.at(k)));
        const bool same_rank = im.dim() - lower.dim() == gr_rank;
        report.add(name, direct && same_rank, direct && same_rank ? "" : "Internal",
                   direct ? (same_rank ? "" : "image of N has the wrong dimension") : "not an internal direct sum");
    }
}

}  // namespace

PrimitivePart primitive_part(const NCModel& model, const std::vector<int>& j, int k,
                             const std::optional<Subspace<Q>>& inside) {
    for (int b : j)
        if (b < 0 || b >= model.branches)
            throw Error(ErrorCode::InvalidArgument, kModule, "branch index " + std::to_string(b + 1) + " out of range");
    StarCache cache(model);
    std::vector<int> sorted = j;
    std::sort(sorted.begin(), sorted.end());
    return primitive_in(cache, sorted, k, inside ? *inside : Subspace<Q>::full(cache.u.dim()));
}

DecompositionReport check_graded_decomposition(const NCModel& model, int k, ComplexKind which,
                                               const std::vector<int>& z) {
    DecompositionReport rep;
    rep.k = k;
    StarCache cache(model);
    const int n = model.branches;
    const std::string kind = kind_name(which);

    // layer 1: term-level splitting, slot by slot
    check_dp(cache, k - 1, rep.checks);
    std::map<std::vector<int>, PrimitivePart> parts;
    auto part = [&](const std::vector<int>& kset) -> const PrimitivePart& {
        auto it = parts.find(kset);
        if (it == parts.end())
            it = parts.emplace(kset, primitive_in(cache, kset, k - static_cast<int>(kset.size()),
                                                  slot_space(cache, which, kset, z)))
                     .first;
        return it->second;
    };
    for (int deg = 0; deg <= n; ++deg) {
        for (const auto& jset : subsets_of_size(n, deg)) {
            const std::string name = "term_splitting" + subset_name(jset);
            try {
                const Subspace<Q> v = slot_space(cache, which, jset, z);
                const IncreasingFiltration& wj = cache.at(jset);
                const Subspace<Q> top = intersect(wj.at(k - deg), v);
                const Subspace<Q> bottom = intersect(wj.at(k - deg - 1), v);
                Subspace<Q> total = bottom;
                size_t pieces = 0;
                bool inside = true;
                for (const auto& kset : subsets_of(jset)) {
                    const PrimitivePart& p = part(kset);
                    const Matrix<Q> nm = product_of(cache.ns, minus(jset, kset), cache.u.dim());
                    if (!bottom.contains(image(nm, p.space.quot()))) inside = false;
                    const Subspace<Q> img = image(nm, p.space.sub());
                    if (!top.contains(img)) inside = false;
                    total = sum(total, img);
                    pieces += sum(img, bottom).dim() - bottom.dim();
                }
                const bool ok = inside && total.dim() - bottom.dim() == pieces && pieces == top.dim() - bottom.dim();
                rep.checks.add(name, ok, ok ? "" : "Internal",
                               ok ? "" : "pieces do not split the graded slot exactly");
            } catch (const Error& e) {
                rep.checks.add(name, false, error_name(e.code()), e.what());
            }
        }
    }

    // layers 2 and 3: assemble the pieces and compare cohomology dimensions
    bool assembled = true;
    for (int deg = 0; deg <= n; ++deg)
        for (const auto& kset : subsets_of_size(n, deg)) {
            try {
                for (const auto& [d, h] : residual_ic_dims(part(kset))) rep.piece_dims[d] += h;
            } catch (const Error& e) {
                assembled = false;
                rep.checks.add("piece" + subset_name(kset), false, error_name(e.code()), e.what());
            }
        }
    if (assembled) rep.checks.add("pieces_assembled", true);
    const CohomologyReport h = cohomology(graded_piece(complex_of(model, which, z), k), false);
    for (const auto& d : h.degrees) rep.complex_dims[d.degree] = d.dim;
    std::set<int> degrees;
    for (const auto& [d, v] : rep.complex_dims) degrees.insert(d);
    for (const auto& [d, v] : rep.piece_dims) degrees.insert(d);
    bool equal = true;
    std::string detail;
    for (int d : degrees) {
        const size_t a = rep.complex_dims.count(d) ? rep.complex_dims[d] : 0;
        const size_t b = rep.piece_dims.count(d) ? rep.piece_dims[d] : 0;
        if (a != b) {
            equal = false;
            detail = "degree " + std::to_string(d) + ": " + std::to_string(a) + " vs " + std::to_string(b);
            break;
        }
    }
    rep.checks.add("cohomology_dims[" + kind + "]", equal && assembled, equal && assembled ? "" : "Internal", detail);
    return rep;
}

std::vector<int> decomposition_weights(const NCModel& model, ComplexKind which, const std::vector<int>& z) {
    const FilteredComplex c = complex_of(model, which, z);
    std::set<int> ks;
    for (int d = c.lo(); d <= c.hi(); ++d)
        for (const auto& [r, dim] : c.term(d).w.gr_dims())
            if (dim > 0) ks.insert(r);
    return {ks.begin(), ks.end()};
}

IntersectionImage intersection_image(const NCModel& model, const std::vector<int>& z, int degree) {
    return intersection_image(intersection_morphism(model, z), model, degree);
}

IntersectionImage intersection_image(const IntersectionMorphism& im, const NCModel& model, int degree) {
    IntersectionImage out;
    out.degree = degree;
    out.target_weight = model.base_weight + degree - model.perverse_shift;
    const Term& src = im.shriek.term(degree);
    const Term& tgt = im.star.term(degree);
    const Matrix<Q> f = im.raw.at(degree, src.ambient, tgt.ambient);
    const Subspace<Q> b = boundaries(im.star, degree);
    const Subspace<Q> img = sum(image(f, cycles(im.shriek, degree)), b);
    out.dim = img.dim() - b.dim();
    const Subquotient<Q> classes(img, b);
    for (size_t i = 0; i < classes.dim(); ++i) out.representatives.push_back(classes.basis_lift(i));
    if (out.dim == 0) return out;
    const Subspace<Q> zt = cycles(im.star, degree);
    const int lo = tgt.w.lo() - 1, hi = tgt.w.hi();
    size_t prev = 0;
    for (int r = lo; r <= hi; ++r) {
        const size_t cur = intersect(img, sum(intersect(zt, tgt.w.at(r)), b)).dim() - b.dim();
        if (cur > prev) out.weights[r + im.star.weight_offset() + degree] = cur - prev;
        prev = cur;
    }
    if (prev < out.dim) out.weights[hi + 1 + im.star.weight_offset() + degree] += out.dim - prev;
    for (const auto& [w, d] : out.weights)
        if (w != out.target_weight) out.pure = false;
    return out;
}

PurityVerdict purity_check(const CohomologyReport& report, int a, int shift, PurityMode mode) {
    PurityVerdict v;
    v.shift = shift;
    v.center = a;
    v.mode = mode;
    for (const auto& d : report.degrees)
        for (const auto& [w, dim] : d.weights) {
            if (dim == 0) continue;
            PurityRow row;
            row.degree = d.degree;
            row.perverse_degree = d.degree - shift;
            row.weight = w;
            row.dim = dim;
            row.bound = a + row.perverse_degree;
            switch (mode) {
                case PurityMode::Open:
                case PurityMode::Support: row.pass = w >= row.bound; break;
                case PurityMode::Closed:
                case PurityMode::Compact: row.pass = w <= row.bound; break;
                case PurityMode::Link: row.pass = row.perverse_degree <= -1 ? w <= row.bound : w > row.bound; break;
            }
            v.pass = v.pass && row.pass;
            v.rows.push_back(row);
        }
    return v;
}

std::string mode_name(PurityMode mode) {
    switch (mode) {
        case PurityMode::Open: return "open";
        case PurityMode::Support: return "support";
        case PurityMode::Closed: return "closed";
        case PurityMode::Compact: return "compact";
        case PurityMode::Link: return "link";
    }
    return "open";
}

std::optional<PurityMode> parse_mode(const std::string& s) {
    for (PurityMode m : {PurityMode::Open, PurityMode::Support, PurityMode::Closed, PurityMode::Compact, PurityMode::Link})
        if (mode_name(m) == s) return m;
    return std::nullopt;
}

}  // namespace nctk
