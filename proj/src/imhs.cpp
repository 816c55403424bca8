// Nilpotent-orbit, infinitesimal mixed Hodge structure and polarization checks.
#include "nctk/model.hpp"

#include <algorithm>
#include <random>

namespace nctk {

namespace {

constexpr const char* kModule = "nc-model";

/// F^p ⊕ conj F^{w-p+1} = whole space for every p.
bool is_hodge_structure(const DecreasingFiltration& f, int w, std::string& why) {
    const size_t g = f.ambient();
    if (g == 0) return true;
    const int lo = std::min(f.lo(), w + 1 - f.hi()) - 1;
    const int hi = std::max(f.hi(), w + 1 - f.lo()) + 1;
    for (int p = lo; p <= hi; ++p) {
        const auto& a = f.at(p);
        Subspace<QI> b = conj(f.at(w - p + 1));
        if (a.dim() + b.dim() != g || !sum(a, b).is_full()) {
            why = "F^" + std::to_string(p) + " and conj F^" + std::to_string(w - p + 1) +
                  " are not complementary in weight " + std::to_string(w);
            return false;
        }
    }
    return true;
}

Subspace<QI> promote_sub(const Subspace<Q>& s) { return promote(s); }

/// Deligne splitting piece I^{p,q} of the mixed Hodge structure (M, F).
Subspace<QI> deligne_piece(const IncreasingFiltration& m, const DecreasingFiltration& f, int p, int q) {
    const int w = p + q;
    const Subspace<QI> mw = promote_sub(m.at(w));
    Subspace<QI> tail = intersect(conj(f.at(q)), mw);
    for (int j = 2; w - j >= m.lo() - 1; ++j)
        tail = sum(tail, intersect(conj(f.at(q - j + 1)), promote_sub(m.at(w - j))));
    return intersect(intersect(f.at(p), mw), tail);
}

QI i_power(int e) {
    switch (((e % 4) + 4) % 4) {
        case 0: return QI(1);
        case 1: return QI(Q(0), Q(1));
        case 2: return QI(-1);
        default: return QI(Q(0), Q(-1));
    }
}

QI determinant(Matrix<QI> a) {
    const size_t n = a.rows();
    QI det(1);
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && is_zero(a(p, c))) ++p;
        if (p == n) return QI(0);
        if (p != c) {
            for (size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        for (size_t i = c + 1; i < n; ++i) {
            if (is_zero(a(i, c))) continue;
            QI f = a(i, c) / a(c, c);
            for (size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    return det;
}

bool positive_definite_hermitian(const Matrix<QI>& h) {
    for (size_t i = 0; i < h.rows(); ++i)
        for (size_t j = 0; j < h.cols(); ++j)
            if (h(i, j) != conj(h(j, i))) return false;
    for (size_t k = 1; k <= h.rows(); ++k) {
        Matrix<QI> minor(k, k);
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) minor(i, j) = h(i, j);
        QI d = determinant(minor);
        if (!is_real(d) || sgn(d.re) <= 0) return false;
    }
    return true;
}

Vec<QI> conj_vec(Vec<QI> v) {
    for (auto& x : v) x = conj(x);
    return v;
}

QI bilinear(const Matrix<QI>& s, const Vec<QI>& x, const Vec<QI>& y) {
    QI acc(0);
    Vec<QI> sy = s.apply(y);
    for (size_t i = 0; i < x.size(); ++i) acc += x[i] * sy[i];
    return acc;
}

std::string branch_set_name(const std::vector<int>& j) {
    std::string s = "{";
    for (size_t i = 0; i < j.size(); ++i) s += (i ? "," : "") + std::to_string(j[i] + 1);
    return s + "}";
}

}  // namespace

std::vector<std::vector<Q>> sample_t_vectors(int branches, uint64_t seed) {
    std::vector<std::vector<Q>> out;
    out.emplace_back(branches, Q(1));
    std::mt19937_64 rng(seed);
    for (int s = 0; s < 3; ++s) {
        std::vector<Q> t;
        for (int j = 0; j < branches; ++j) {
            unsigned long num = static_cast<unsigned long>(rng() % 9 + 1);
            unsigned long den = static_cast<unsigned long>(rng() % 7 + 1);
            Q x(num, den);
            x.canonicalize();
            t.push_back(x);
        }
        out.push_back(std::move(t));
    }
    return out;
}

CheckReport imhs_check(const NCModel& m, uint64_t seed) {
    if (!m.f) throw Error(ErrorCode::MissingHodgeFiltration, kModule, "the IMHS check needs a Hodge filtration F");
    CheckReport r;
    const size_t dim = m.dim();
    const auto ns = m.n_totals();
    const DecreasingFiltration& f = *m.f;
    const auto ts = sample_t_vectors(m.branches, seed);

    // (1) every Gr^W_i carries a nilpotent orbit of weight i
    {
        std::string trans_bad, tind_bad, hodge_bad, err;
        for (const auto& [i, gdim] : m.w.gr_dims()) {
            Subquotient<Q> gq(m.w.at(i), m.w.at(i - 1));
            Subquotient<QI> gc(promote(m.w.at(i)), promote(m.w.at(i - 1)));
            std::vector<Matrix<Q>> ng;
            for (const auto& n : ns) ng.push_back(induced_map(n, gq, gq));
            DecreasingFiltration fg = f.on_subquotient(gc);
            for (size_t j = 0; j < ng.size() && trans_bad.empty(); ++j) {
                Matrix<QI> nc = promote(ng[j]);
                for (int p = fg.lo(); p <= fg.hi() + 1; ++p)
                    if (!fg.at(p - 1).contains(image(nc, fg.at(p)))) {
                        trans_bad = "N_" + std::to_string(j + 1) + " breaks transversality on Gr^W_" + std::to_string(i);
                        break;
                    }
            }
            try {
                std::vector<IncreasingFiltration> ms;
                for (const auto& t : ts) {
                    Matrix<Q> nt(gq.dim(), gq.dim());
                    for (size_t j = 0; j < ng.size(); ++j) nt = nt + ng[j].scaled(t[j]);
                    ms.push_back(monodromy_filtration(nt, i));
                }
                for (size_t s = 1; s < ms.size() && tind_bad.empty(); ++s)
                    if (ms[s] != ms[0])
                        tind_bad = "monodromy filtration on Gr^W_" + std::to_string(i) + " depends on t (sample " +
                                   std::to_string(s) + ")";
                const auto& mo = ms[0];
                for (const auto& [w, d] : mo.gr_dims()) {
                    if (!hodge_bad.empty()) break;
                    Subquotient<QI> gm(promote(mo.at(w)), promote(mo.at(w - 1)));
                    std::string why;
                    if (!is_hodge_structure(fg.on_subquotient(gm), w, why))
                        hodge_bad = "Gr^W_" + std::to_string(i) + ": " + why;
                }
            } catch (const Error& e) {
                if (err.empty()) err = std::string(error_name(e.code())) + ": " + e.what();
            }
        }
        r.add("orbit_transversal", trans_bad.empty(), "FiltrationNotPreserved", trans_bad);
        r.add("orbit_t_independent", tind_bad.empty() && err.empty(), "InvalidArgument",
              tind_bad.empty() ? err : tind_bad);
        r.add("orbit_hodge", hodge_bad.empty() && err.empty(), "InvalidArgument", hodge_bad.empty() ? err : hodge_bad);
    }

    // (2) relative monodromy filtrations for every nonempty J
    std::optional<IncreasingFiltration> m_all;
    {
        std::string bad;
        std::string code = "RelativeMonodromyNonexistent";
        for (unsigned mask = 1; mask < (1u << m.branches); ++mask) {
            std::vector<int> j;
            for (int b = 0; b < m.branches; ++b)
                if (mask & (1u << b)) j.push_back(b);
            try {
                IncreasingFiltration mj = relative_monodromy_filtration(sum_of(ns, j, dim), m.w);
                for (int b : j)
                    for (int k = mj.lo(); k <= mj.hi() + 2 && bad.empty(); ++k)
                        if (!mj.at(k - 2).contains(image(ns[b], mj.at(k))))
                            bad = "N_" + std::to_string(b + 1) + " does not shift M(" + branch_set_name(j) + ") by -2";
                if (mask == (1u << m.branches) - 1) m_all = mj;
            } catch (const Error& e) {
                if (bad.empty()) {
                    bad = "M(" + branch_set_name(j) + "): " + e.what();
                    code = error_name(e.code());
                }
            }
        }
        if (m.branches == 0) m_all = m.w;
        r.add("imhs_relative_monodromy", bad.empty(), code, bad);
    }

    // (3) (M(I), F) is a mixed Hodge structure and every N_j has type (-1,-1)
    if (m_all) {
        std::string hodge_bad;
        for (const auto& [w, d] : m_all->gr_dims()) {
            Subquotient<QI> gm(promote(m_all->at(w)), promote(m_all->at(w - 1)));
            std::string why;
            if (!is_hodge_structure(f.on_subquotient(gm), w, why)) {
                hodge_bad = why;
                break;
            }
        }
        r.add("imhs_mixed_hodge", hodge_bad.empty(), "InvalidArgument", hodge_bad);

        std::string type_bad;
        if (hodge_bad.empty() && dim > 0) {
            std::map<std::pair<int, int>, Subspace<QI>> pieces;
            Subspace<QI> total(dim);
            size_t dims = 0;
            for (int p = f.lo(); p <= f.hi(); ++p)
                for (int q = f.lo(); q <= f.hi(); ++q) {
                    auto piece = deligne_piece(*m_all, f, p, q);
                    dims += piece.dim();
                    total = sum(total, piece);
                    pieces.emplace(std::make_pair(p, q), std::move(piece));
                }
            if (dims != dim || !total.is_full()) type_bad = "Deligne splitting does not span the space";
            for (size_t j = 0; j < ns.size() && type_bad.empty(); ++j) {
                Matrix<QI> nc = promote(ns[j]);
                for (const auto& [pq, piece] : pieces) {
                    if (piece.is_zero()) continue;
                    auto [p, q] = pq;
                    if (!deligne_piece(*m_all, f, p - 1, q - 1).contains(image(nc, piece))) {
                        type_bad = "N_" + std::to_string(j + 1) + " maps I^{" + std::to_string(p) + "," +
                                   std::to_string(q) + "} outside I^{" + std::to_string(p - 1) + "," +
                                   std::to_string(q - 1) + "}";
                        break;
                    }
                }
            }
        } else if (!hodge_bad.empty()) {
            type_bad = "no mixed Hodge structure to split";
        }
        r.add("imhs_type_minus1", type_bad.empty(), "InvalidArgument", type_bad);
    } else {
        r.add("imhs_mixed_hodge", false, "RelativeMonodromyNonexistent", "M(I) does not exist");
        r.add("imhs_type_minus1", false, "RelativeMonodromyNonexistent", "M(I) does not exist");
    }

    // (4) polarization of primitive parts, pure W with a pairing only
    if (!m.s) {
        r.skip("polarization", "no pairing");
    } else if (!m.w_is_pure()) {
        r.skip("polarization", "weight filtration is not pure");
    } else if (dim == 0) {
        r.add("polarization", true);
    } else {
        const int w0 = m.w.lo();
        const Matrix<Q> n = sum_of(ns, [&] {
            std::vector<int> all;
            for (int b = 0; b < m.branches; ++b) all.push_back(b);
            return all;
        }(), dim);
        const Matrix<QI> sc = promote(m.s->matrix);
        std::string bad;
        try {
            IncreasingFiltration mo = monodromy_filtration(n, w0);
            for (int k = 0; w0 + k <= mo.hi() && bad.empty(); ++k) {
                Subquotient<Q> hi_q(mo.at(w0 + k), mo.at(w0 + k - 1));
                if (hi_q.dim() == 0) continue;
                Subquotient<Q> lo_q(mo.at(w0 - k - 2), mo.at(w0 - k - 3));
                Subspace<QI> prim = promote(kernel(induced_map(n.power(k + 1), hi_q, lo_q)));
                Subquotient<QI> hc(promote(mo.at(w0 + k)), promote(mo.at(w0 + k - 1)));
                DecreasingFiltration fg = f.on_subquotient(hc);
                Matrix<QI> nk = promote(n.power(k));
                size_t covered = 0;
                for (int p = f.lo(); p <= f.hi() && bad.empty(); ++p) {
                    const int q = w0 + k - p;
                    Subspace<QI> piece = intersect(prim, intersect(fg.at(p), conj(fg.at(q))));
                    covered += piece.dim();
                    if (piece.is_zero()) continue;
                    std::vector<Vec<QI>> lifts;
                    for (const auto& row : piece.vectors()) lifts.push_back(hc.lift(row));
                    Matrix<QI> h(lifts.size(), lifts.size());
                    const QI phase = i_power(p - q);
                    for (size_t a = 0; a < lifts.size(); ++a)
                        for (size_t b = 0; b < lifts.size(); ++b)
                            h(a, b) = phase * bilinear(sc, lifts[a], nk.apply(conj_vec(lifts[b])));
                    if (!positive_definite_hermitian(h))
                        bad = "form is not positive definite on P^{" + std::to_string(p) + "," + std::to_string(q) +
                              "} of weight " + std::to_string(w0 + k);
                }
                if (bad.empty() && covered != prim.dim())
                    bad = "primitive part of weight " + std::to_string(w0 + k) + " has no Hodge decomposition";
            }
        } catch (const Error& e) {
            bad = std::string(error_name(e.code())) + ": " + e.what();
        }
        r.add("polarization", bad.empty(), "InvalidArgument", bad);
    }
    return r;
}

}  // namespace nctk
