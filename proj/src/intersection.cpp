#include "nctk/intersection.hpp"

#include <algorithm>

namespace nctk {

namespace {

constexpr const char* kModule = "complexes";

[[noreturn]] void internal(const std::string& msg) { throw Error(ErrorCode::Internal, kModule, msg); }

int inversions(const std::vector<int>& a, const std::vector<int>& b) {
    int count = 0;
    for (int x : a)
        for (int y : b)
            if (x > y) ++count;
    return count;
}

std::vector<int> complement(const std::vector<int>& k, int n) {
    std::vector<int> out;
    for (int j = 0; j < n; ++j)
        if (std::find(k.begin(), k.end(), j) == k.end()) out.push_back(j);
    return out;
}

size_t index_in(const std::vector<std::vector<int>>& sets, const std::vector<int>& k) {
    return static_cast<size_t>(std::find(sets.begin(), sets.end(), k) - sets.begin());
}

/// <x e_K, y e_K'> = sign(K, K') S(x, y) for complementary K, K'; degree j against n - j.
Matrix<Q> exterior_pairing(const NCModel& m, int j) {
    const int n = m.branches;
    const size_t dl = m.dim();
    auto left = subsets_of_size(n, j), right = subsets_of_size(n, n - j);
    Matrix<Q> p(left.size() * dl, right.size() * dl);
    for (size_t a = 0; a < left.size(); ++a) {
        auto comp = complement(left[a], n);
        size_t b = index_in(right, comp);
        Q sign = inversions(left[a], comp) % 2 == 0 ? Q(1) : Q(-1);
        for (size_t r = 0; r < dl; ++r)
            for (size_t c = 0; c < dl; ++c) p(a * dl + r, b * dl + c) = sign * m.s->matrix(r, c);
    }
    return p;
}

/// Contraction with sum_i N_i^{-1} ι_i on a vector of IC(k); result in Ω(k-1).
Vec<Q> homotopy(const NCModel& m, int k, const Vec<Q>& x) {
    const int n = m.branches;
    const size_t dl = m.dim();
    const auto ns = m.n_totals();
    auto sets = subsets_of_size(n, k), lower = subsets_of_size(n, k - 1);
    Vec<Q> out(lower.size() * dl, Q(0));
    for (size_t s = 0; s < sets.size(); ++s) {
        Vec<Q> xk(x.begin() + static_cast<long>(s * dl), x.begin() + static_cast<long>((s + 1) * dl));
        if (std::all_of(xk.begin(), xk.end(), [](const Q& v) { return is_zero(v); })) continue;
        for (size_t pos = 0; pos < sets[s].size(); ++pos) {
            const int i = sets[s][pos];
            std::vector<int> rest = sets[s];
            rest.erase(rest.begin() + static_cast<long>(pos));
            Subspace<Q> slot = image(product_of(ns, rest, dl));
            Vec<Q> y(dl, Q(0));
            if (slot.dim() > 0) {
                Matrix<Q> bt = slot.basis().transpose();
                auto lam = solve(ns[i] * bt, xk);
                if (!lam) internal("IC slot vector is not in the image of N_" + std::to_string(i + 1));
                y = bt.apply(*lam);
            } else if (!std::all_of(xk.begin(), xk.end(), [](const Q& v) { return is_zero(v); })) {
                internal("IC slot vector outside the expected image");
            }
            const size_t t = index_in(lower, rest);
            const Q sign = pos % 2 == 0 ? Q(1) : Q(-1);
            for (size_t r = 0; r < dl; ++r) out[t * dl + r] += sign * y[r];
        }
    }
    return out;
}

/// Matrix agreeing with `value` on the canonical basis of sub and vanishing on the free coordinates.
Matrix<Q> extend_from_basis(const Subspace<Q>& sub, const std::vector<Vec<Q>>& values, size_t tgt) {
    Matrix<Q> m(tgt, sub.ambient());
    for (size_t i = 0; i < sub.dim(); ++i)
        for (size_t r = 0; r < tgt; ++r) m(r, sub.pivots()[i]) = values[i][r];
    return m;
}

Vec<Q> select_pivots(const Subspace<Q>& sub, const Vec<Q>& v) {
    Vec<Q> out;
    for (size_t p : sub.pivots()) out.push_back(v[p]);
    return out;
}

ComplexMap pairing_map(const NCModel& u, const FilteredComplex& ic, const FilteredComplex& star, int center) {
    const int n = u.branches;
    ComplexMap g;
    g.lo = ic.lo();
    for (int k = ic.lo(); k <= ic.hi(); ++k) {
        const Term& src = ic.term(k);
        const size_t tgt = star.term(k).ambient;
        const size_t a_amb = ic.term(center - k).ambient;  // IC(center - k) part of the i_shriek term
        std::vector<Vec<Q>> cols;
        for (const auto& s : src.sub.vectors()) {
            Vec<Q> col(tgt, Q(0));
            if (k >= 1 && center - k <= n) {
                Vec<Q> hs = homotopy(u, k, s);
                Vec<Q> psi = exterior_pairing(u, k - 1).transpose().apply(hs);
                Q scale = Q((k - 1) % 2 == 0 ? 1 : -1) / Q(n);
                for (size_t r = 0; r < psi.size() && r < a_amb; ++r) col[r] = scale * psi[r];
            }
            if (n - k >= 0 && center - k - 1 == n - k) {
                Vec<Q> direct = exterior_pairing(u, k).transpose().apply(s);
                for (size_t r = 0; r < direct.size(); ++r) col[a_amb + r] += direct[r];
            }
            cols.push_back(std::move(col));
        }
        g.m.push_back(extend_from_basis(src.sub, cols, tgt));
    }
    return g;
}

ComplexMap zero_map(const FilteredComplex& a, const FilteredComplex& b) {
    ComplexMap z;
    z.lo = a.lo();
    for (int k = a.lo(); k <= a.hi(); ++k) z.m.emplace_back(b.term(k).ambient, a.term(k).ambient);
    return z;
}

/// Filtered chain map inducing the same map on cohomology as `raw`, by one exact linear solve.
ComplexMap filtered_lift(const ComplexMap& raw, const FilteredComplex& a, const FilteredComplex& b) {
    const int lo = a.lo(), hi = a.hi();
    const int delta = a.weight_offset() - b.weight_offset();
    std::vector<size_t> base, rows_t, cols_s;
    size_t nvars = 0;
    for (int k = lo; k <= hi; ++k) {
        base.push_back(nvars);
        rows_t.push_back(b.term(k).ambient);
        cols_s.push_back(a.term(k).sub.dim());
        nvars += rows_t.back() * cols_s.back();
    }
    auto var = [&](int k, size_t t, size_t j) { return base[k - lo] + t * cols_s[k - lo] + j; };
    std::vector<Vec<Q>> eqs;
    Vec<Q> rhs;
    auto add_eq = [&](Vec<Q> row, Q value) {
        eqs.push_back(std::move(row));
        rhs.push_back(std::move(value));
    };
    for (int k = lo; k <= hi; ++k) {
        const Term& s = a.term(k);
        const Term& t = b.term(k);
        const auto basis = s.sub.vectors();
        // lands in sub of the target
        Matrix<Q> qsub = t.sub.quotient_projection();
        for (size_t i = 0; i < basis.size(); ++i)
            for (size_t r = 0; r < qsub.rows(); ++r) {
                Vec<Q> row(nvars, Q(0));
                for (size_t c = 0; c < t.ambient; ++c) row[var(k, c, i)] = qsub(r, c);
                add_eq(std::move(row), Q(0));
            }
        // chain condition modulo quot of the target
        if (k < hi) {
            Matrix<Q> qq = b.term(k + 1).quot.quotient_projection();
            Matrix<Q> qd = qq * b.d(k);
            const Subspace<Q>& next_sub = a.term(k + 1).sub;
            for (size_t i = 0; i < basis.size(); ++i) {
                Vec<Q> w = select_pivots(next_sub, a.d(k).apply(basis[i]));
                for (size_t r = 0; r < qq.rows(); ++r) {
                    Vec<Q> row(nvars, Q(0));
                    for (size_t c = 0; c < b.term(k + 1).ambient; ++c)
                        for (size_t j = 0; j < w.size(); ++j)
                            if (!is_zero(w[j])) row[var(k + 1, c, j)] += qq(r, c) * w[j];
                    for (size_t c = 0; c < t.ambient; ++c) row[var(k, c, i)] -= qd(r, c);
                    add_eq(std::move(row), Q(0));
                }
            }
        }
        // W_r maps into W_{r + delta}
        for (const auto& [r, v] : s.w.steps()) {
            Matrix<Q> qw = t.w.at(r + delta).quotient_projection();
            for (const auto& x : v.vectors()) {
                Vec<Q> u = select_pivots(s.sub, x);
                for (size_t q = 0; q < qw.rows(); ++q) {
                    Vec<Q> row(nvars, Q(0));
                    for (size_t c = 0; c < t.ambient; ++c)
                        for (size_t j = 0; j < u.size(); ++j)
                            if (!is_zero(u[j])) row[var(k, c, j)] += qw(q, c) * u[j];
                    add_eq(std::move(row), Q(0));
                }
            }
        }
        // same map on cohomology
        Matrix<Q> qb = boundaries(b, k).quotient_projection();
        Matrix<Q> rk = raw.at(k, s.ambient, t.ambient);
        for (const auto& z : cycles(a, k).vectors()) {
            Vec<Q> u = select_pivots(s.sub, z);
            Vec<Q> target = qb.apply(rk.apply(z));
            for (size_t q = 0; q < qb.rows(); ++q) {
                Vec<Q> row(nvars, Q(0));
                for (size_t c = 0; c < t.ambient; ++c)
                    for (size_t j = 0; j < u.size(); ++j)
                        if (!is_zero(u[j])) row[var(k, c, j)] += qb(q, c) * u[j];
                add_eq(std::move(row), target[q]);
            }
        }
    }
    Vec<Q> x(nvars, Q(0));
    if (nvars > 0 && !eqs.empty()) {
        auto sol = solve(Matrix<Q>::from_rows(eqs, nvars), rhs);
        if (!sol) internal("no filtered chain map induces the intersection morphism");
        x = *sol;
    }
    ComplexMap out;
    out.lo = lo;
    for (int k = lo; k <= hi; ++k) {
        const Term& s = a.term(k);
        std::vector<Vec<Q>> values;
        for (size_t i = 0; i < cols_s[k - lo]; ++i) {
            Vec<Q> v(rows_t[k - lo]);
            for (size_t c = 0; c < rows_t[k - lo]; ++c) v[c] = x[var(k, c, i)];
            values.push_back(std::move(v));
        }
        out.m.push_back(extend_from_basis(s.sub, values, rows_t[k - lo]));
    }
    return out;
}

}  // namespace

IntersectionMorphism intersection_morphism(const NCModel& model, const std::vector<int>& z) {
    if (!model.s) throw Error(ErrorCode::InvalidArgument, kModule, "the intersection morphism needs a pairing S");
    if (rank(model.s->matrix) != model.dim())
        throw Error(ErrorCode::PairingDegenerate, kModule, "pairing S is degenerate");
    const NCModel u = unipotent_part(model);
    IntersectionMorphism out;
    out.shriek = i_shriek(u, z);
    out.star = i_star(u, z);
    const int center = duality_center(u.perverse_shift);
    out.pairing_defined = u.branches > 0 && center == u.branches + 1;
    if (!out.pairing_defined) {
        out.raw = zero_map(out.shriek, out.star);
        out.filtered = out.raw;
        return out;
    }
    FilteredComplex ic = build_ic(u);
    ComplexMap g = pairing_map(u, ic, out.star, center);
    if (!is_chain_map(g, ic, out.star)) internal("the pairing map IC -> i_star is not a chain map");
    ComplexMap p;
    p.lo = out.shriek.lo();
    for (int k = out.shriek.lo(); k <= out.shriek.hi(); ++k) {
        const size_t ia = ic.term(k).ambient;
        Matrix<Q> pk(ia, out.shriek.term(k).ambient);
        for (size_t i = 0; i < ia; ++i) pk(i, i) = 1;
        p.m.push_back(std::move(pk));
    }
    if (!is_chain_map(p, out.shriek, ic)) internal("the projection i_shriek -> IC is not a chain map");
    out.raw = compose(g, p, out.shriek, ic, out.star);
    out.filtered = filtered_lift(out.raw, out.shriek, out.star);
    return out;
}

FilteredComplex link_complex(const NCModel& model, const std::vector<int>& z) {
    IntersectionMorphism im = intersection_morphism(model, z);
    return cone(im.filtered, im.shriek, im.star);
}

}  // namespace nctk
