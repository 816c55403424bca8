// Dense exact matrices, canonical subspaces and subquotients.
#pragma once

#include "nctk/error.hpp"
#include "nctk/scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace nctk {

template <class K>
using Vec = std::vector<K>;

template <class K>
class Matrix {
public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols) : r_(rows), c_(cols), a_(rows * cols, K(0)) {}

    static Matrix identity(size_t n) {
        Matrix m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = K(1);
        return m;
    }

    /// Rows must all have length `cols`; ragged input is a DimensionMismatch.
    static Matrix from_rows(const std::vector<Vec<K>>& rows, size_t cols) {
        Matrix m(rows.size(), cols);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols)
                throw Error(ErrorCode::DimensionMismatch, "exact-linalg", "ragged row list");
            for (size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    K& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
    const K& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

    Vec<K> row(size_t i) const { return Vec<K>(a_.begin() + i * c_, a_.begin() + (i + 1) * c_); }
    Vec<K> col(size_t j) const {
        Vec<K> v(r_);
        for (size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    std::vector<Vec<K>> row_list() const {
        std::vector<Vec<K>> out;
        out.reserve(r_);
        for (size_t i = 0; i < r_; ++i) out.push_back(row(i));
        return out;
    }

    Matrix transpose() const {
        Matrix t(c_, r_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix operator*(const Matrix& o) const {
        if (c_ != o.r_) throw Error(ErrorCode::DimensionMismatch, "exact-linalg", "non-conformable product");
        Matrix p(r_, o.c_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t k = 0; k < c_; ++k) {
                const K& x = (*this)(i, k);
                if (is_zero(x)) continue;
                for (size_t j = 0; j < o.c_; ++j) p(i, j) += x * o(k, j);
            }
        return p;
    }
    Matrix operator+(const Matrix& o) const {
        check_same(o);
        Matrix s = *this;
        for (size_t k = 0; k < a_.size(); ++k) s.a_[k] += o.a_[k];
        return s;
    }
    Matrix operator-(const Matrix& o) const {
        check_same(o);
        Matrix s = *this;
        for (size_t k = 0; k < a_.size(); ++k) s.a_[k] -= o.a_[k];
        return s;
    }
    Matrix scaled(const K& x) const {
        Matrix s = *this;
        for (auto& v : s.a_) v *= x;
        return s;
    }

    Vec<K> apply(const Vec<K>& v) const {
        if (v.size() != c_) throw Error(ErrorCode::DimensionMismatch, "exact-linalg", "vector length mismatch");
        Vec<K> out(r_, K(0));
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j)
                if (!is_zero(v[j])) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    Matrix power(int e) const {
        Matrix p = identity(r_);
        for (int k = 0; k < e; ++k) p = p * (*this);
        return p;
    }

    bool is_zero_matrix() const {
        for (const auto& v : a_)
            if (!is_zero(v)) return false;
        return true;
    }
    bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

private:
    void check_same(const Matrix& o) const {
        if (r_ != o.r_ || c_ != o.c_)
            throw Error(ErrorCode::DimensionMismatch, "exact-linalg", "shape mismatch");
    }
    size_t r_ = 0, c_ = 0;
    std::vector<K> a_;
};

inline Matrix<QI> promote(const Matrix<Q>& m) {
    Matrix<QI> out(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) out(i, j) = QI(m(i, j));
    return out;
}

inline Vec<QI> promote(const Vec<Q>& v) {
    Vec<QI> out;
    out.reserve(v.size());
    for (const auto& x : v) out.emplace_back(x);
    return out;
}

template <class K>
Matrix<K> block_diagonal(const std::vector<Matrix<K>>& blocks) {
    size_t r = 0, c = 0;
    for (const auto& b : blocks) { r += b.rows(); c += b.cols(); }
    Matrix<K> m(r, c);
    size_t ro = 0, co = 0;
    for (const auto& b : blocks) {
        for (size_t i = 0; i < b.rows(); ++i)
            for (size_t j = 0; j < b.cols(); ++j) m(ro + i, co + j) = b(i, j);
        ro += b.rows();
        co += b.cols();
    }
    return m;
}

template <class K>
struct Echelon {
    Matrix<K> rows;               // nonzero rows of the reduced row-echelon form
    std::vector<size_t> pivots;   // pivot column of each row
};

/// Gauss-Jordan elimination to the reduced row-echelon form.
template <class K>
Echelon<K> rref(Matrix<K> m) {
    size_t r = 0;
    std::vector<size_t> piv;
    for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        size_t p = r;
        while (p < m.rows() && is_zero(m(p, c))) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        K inv = K(1) / m(r, c);
        for (size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == r || is_zero(m(i, c))) continue;
            K f = m(i, c);
            for (size_t j = c; j < m.cols(); ++j)
                if (!is_zero(m(r, j))) m(i, j) -= f * m(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    Matrix<K> out(r, m.cols());
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
    return {std::move(out), std::move(piv)};
}

template <class K>
size_t rank(const Matrix<K>& m) { return rref(m).pivots.size(); }

/// Null space basis (column vectors v with m v = 0), from the echelon form.
template <class K>
std::vector<Vec<K>> null_space(const Matrix<K>& m) {
    auto e = rref(m);
    std::vector<bool> is_piv(m.cols(), false);
    for (auto p : e.pivots) is_piv[p] = true;
    std::vector<Vec<K>> out;
    for (size_t f = 0; f < m.cols(); ++f) {
        if (is_piv[f]) continue;
        Vec<K> v(m.cols(), K(0));
        v[f] = K(1);
        for (size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.rows(i, f);
        out.push_back(std::move(v));
    }
    return out;
}

/// Some x with a x = b, or nullopt. Free variables are set to zero.
template <class K>
std::optional<Vec<K>> solve(const Matrix<K>& a, const Vec<K>& b) {
    Matrix<K> aug(a.rows(), a.cols() + 1);
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    auto e = rref(aug);
    Vec<K> x(a.cols(), K(0));
    for (size_t i = 0; i < e.pivots.size(); ++i) {
        if (e.pivots[i] == a.cols()) return std::nullopt;
        x[e.pivots[i]] = e.rows(i, a.cols());
    }
    return x;
}

/** @brief Subspace of K^n stored by its reduced row-echelon basis. */
template <class K>
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(size_t ambient) : n_(ambient), basis_(0, ambient) {}

    static Subspace span(size_t ambient, const std::vector<Vec<K>>& vectors) {
        for (const auto& v : vectors)
            if (v.size() != ambient)
                throw Error(ErrorCode::DimensionMismatch, "exact-linalg", "vector outside the ambient space");
        return from_matrix(Matrix<K>::from_rows(vectors, ambient));
    }
    static Subspace from_matrix(const Matrix<K>& rows) {
        Subspace s(rows.cols());
        auto e = rref(rows);
        s.basis_ = std::move(e.rows);
        s.piv_ = std::move(e.pivots);
        return s;
    }
    static Subspace full(size_t ambient) { return from_matrix(Matrix<K>::identity(ambient)); }

    size_t ambient() const { return n_; }
    size_t dim() const { return basis_.rows(); }
    bool is_zero() const { return dim() == 0; }
    bool is_full() const { return dim() == n_; }
    const Matrix<K>& basis() const { return basis_; }
    const std::vector<size_t>& pivots() const { return piv_; }
    std::vector<Vec<K>> vectors() const { return basis_.row_list(); }

    /// v minus the unique combination of basis rows clearing the pivot entries.
    Vec<K> reduce(Vec<K> v) const {
        check_vec(v);
        for (size_t i = 0; i < piv_.size(); ++i) {
            K f = v[piv_[i]];
            if (nctk::is_zero(f)) continue;
            for (size_t j = 0; j < n_; ++j)
                if (!nctk::is_zero(basis_(i, j))) v[j] -= f * basis_(i, j);
        }
        return v;
    }
    bool contains(const Vec<K>& v) const {
        for (const auto& x : reduce(v))
            if (!nctk::is_zero(x)) return false;
        return true;
    }
    bool contains(const Subspace& o) const {
        check_same(o);
        for (size_t i = 0; i < o.dim(); ++i)
            if (!contains(o.basis_.row(i))) return false;
        return true;
    }

    /// Columns that are not pivots; they index coordinates on K^n / this.
    std::vector<size_t> free_columns() const {
        std::vector<bool> is_piv(n_, false);
        for (auto p : piv_) is_piv[p] = true;
        std::vector<size_t> out;
        for (size_t j = 0; j < n_; ++j)
            if (!is_piv[j]) out.push_back(j);
        return out;
    }
    /// Matrix of the projection K^n -> K^n / this in free-column coordinates.
    Matrix<K> quotient_projection() const {
        auto fc = free_columns();
        Matrix<K> q(fc.size(), n_);
        for (size_t t = 0; t < fc.size(); ++t) {
            q(t, fc[t]) = K(1);
            for (size_t i = 0; i < piv_.size(); ++i) q(t, piv_[i]) = -basis_(i, fc[t]);
        }
        return q;
    }

    bool operator==(const Subspace& o) const { return n_ == o.n_ && basis_ == o.basis_; }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

    void check_same(const Subspace& o) const {
        if (n_ != o.n_) throw Error(ErrorCode::DimensionMismatch, "exact-linalg", "ambient dimension mismatch");
    }

private:
    void check_vec(const Vec<K>& v) const {
        if (v.size() != n_) throw Error(ErrorCode::DimensionMismatch, "exact-linalg", "vector outside the ambient space");
    }
    size_t n_ = 0;
    Matrix<K> basis_;
    std::vector<size_t> piv_;
};

inline Subspace<QI> promote(const Subspace<Q>& s) { return Subspace<QI>::from_matrix(promote(s.basis())); }

template <class K>
Subspace<K> conj(const Subspace<K>& s) {
    Matrix<K> m = s.basis();
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) m(i, j) = conj(m(i, j));
    return Subspace<K>::from_matrix(m);
}

template <class K>
Subspace<K> sum(const Subspace<K>& a, const Subspace<K>& b) {
    a.check_same(b);
    if (b.is_zero()) return a;
    if (a.is_zero()) return b;
    Matrix<K> m(a.dim() + b.dim(), a.ambient());
    for (size_t i = 0; i < a.dim(); ++i)
        for (size_t j = 0; j < a.ambient(); ++j) m(i, j) = a.basis()(i, j);
    for (size_t i = 0; i < b.dim(); ++i)
        for (size_t j = 0; j < a.ambient(); ++j) m(a.dim() + i, j) = b.basis()(i, j);
    return Subspace<K>::from_matrix(m);
}

/// Image f(a) where f acts on column vectors.
template <class K>
Subspace<K> image(const Matrix<K>& f, const Subspace<K>& a) {
    if (f.cols() != a.ambient()) throw Error(ErrorCode::DimensionMismatch, "exact-linalg", "map source mismatch");
    return Subspace<K>::from_matrix(a.basis() * f.transpose());
}

template <class K>
Subspace<K> image(const Matrix<K>& f) { return image(f, Subspace<K>::full(f.cols())); }

template <class K>
Subspace<K> kernel(const Matrix<K>& f) { return Subspace<K>::span(f.cols(), null_space(f)); }

/// { v : f v in b }.
template <class K>
Subspace<K> preimage(const Matrix<K>& f, const Subspace<K>& b) {
    if (f.rows() != b.ambient()) throw Error(ErrorCode::DimensionMismatch, "exact-linalg", "map target mismatch");
    return kernel(b.quotient_projection() * f);
}

template <class K>
Subspace<K> intersect(const Subspace<K>& a, const Subspace<K>& b) {
    a.check_same(b);
    if (a.is_zero() || b.is_full()) return a;
    if (b.is_zero() || a.is_full()) return b;
    // coefficient vectors lambda with lambda^T A in b
    Matrix<K> c = b.quotient_projection() * a.basis().transpose();
    auto lambdas = null_space(c);
    if (lambdas.empty()) return Subspace<K>(a.ambient());
    Matrix<K> l = Matrix<K>::from_rows(lambdas, a.dim());
    return Subspace<K>::from_matrix(l * a.basis());
}

/// Annihilator under the coordinate pairing sum x_i y_i.
template <class K>
Subspace<K> annihilator(const Subspace<K>& a) { return kernel(a.basis()); }

/** @brief Subquotient sub/quot with canonical basis and coordinate maps. */
template <class K>
class Subquotient {
public:
    Subquotient() = default;
    Subquotient(Subspace<K> sub, Subspace<K> quot) : sub_(std::move(sub)), quot_(std::move(quot)) {
        if (!sub_.contains(quot_))
            throw Error(ErrorCode::IllDefinedInducedMap, "exact-linalg", "quotient is not contained in the subspace");
        qproj_ = quot_.quotient_projection();
        qcols_ = quot_.free_columns();
        Matrix<K> y = sub_.basis() * qproj_.transpose();
        auto e = rref(y);
        basis_ = std::move(e.rows);
        bpiv_ = std::move(e.pivots);
    }

    const Subspace<K>& sub() const { return sub_; }
    const Subspace<K>& quot() const { return quot_; }
    size_t dim() const { return basis_.rows(); }
    size_t ambient() const { return sub_.ambient(); }

    /// Coordinates of x (an element of sub) in the canonical basis.
    Vec<K> coords(const Vec<K>& x) const {
        Vec<K> y = qproj_.apply(x);
        Vec<K> c(dim(), K(0));
        for (size_t i = 0; i < dim(); ++i) c[i] = y[bpiv_[i]];
        return c;
    }
    bool contains(const Vec<K>& x) const {
        Vec<K> y = qproj_.apply(x);
        Vec<K> r = y;
        for (size_t i = 0; i < dim(); ++i) {
            K f = y[bpiv_[i]];
            if (is_zero(f)) continue;
            for (size_t j = 0; j < r.size(); ++j) r[j] -= f * basis_(i, j);
        }
        for (const auto& v : r)
            if (!is_zero(v)) return false;
        return true;
    }
    /// Representative in sub of the class with coordinates c.
    Vec<K> lift(const Vec<K>& c) const {
        Vec<K> x(ambient(), K(0));
        for (size_t i = 0; i < dim(); ++i) {
            if (is_zero(c[i])) continue;
            for (size_t t = 0; t < qcols_.size(); ++t) x[qcols_[t]] += c[i] * basis_(i, t);
        }
        return x;
    }
    Vec<K> basis_lift(size_t i) const {
        Vec<K> e(dim(), K(0));
        e[i] = K(1);
        return lift(e);
    }
    /// Subspace of coordinates spanned by the classes of (x intersect sub) + quot.
    Subspace<K> to_coords(const Subspace<K>& x) const {
        Subspace<K> s = intersect(x, sub_);
        std::vector<Vec<K>> rows;
        for (size_t i = 0; i < s.dim(); ++i) rows.push_back(coords(s.basis().row(i)));
        return Subspace<K>::span(dim(), rows);
    }
    /// Preimage of a coordinate subspace: lift + quot.
    Subspace<K> from_coords(const Subspace<K>& c) const {
        std::vector<Vec<K>> rows = quot_.vectors();
        for (size_t i = 0; i < c.dim(); ++i) rows.push_back(lift(c.basis().row(i)));
        return Subspace<K>::span(ambient(), rows);
    }

private:
    Subspace<K> sub_, quot_;
    Matrix<K> qproj_;
    std::vector<size_t> qcols_;
    Matrix<K> basis_;               // rows in free-column coordinates of K^n / quot
    std::vector<size_t> bpiv_;
};

/// Matrix of the map induced by f from src to tgt in canonical bases.
template <class K>
Matrix<K> induced_map(const Matrix<K>& f, const Subquotient<K>& src, const Subquotient<K>& tgt) {
    if (f.cols() != src.ambient() || f.rows() != tgt.ambient())
        throw Error(ErrorCode::DimensionMismatch, "exact-linalg", "map shape does not match the subquotients");
    if (!tgt.sub().contains(image(f, src.sub())))
        throw Error(ErrorCode::IllDefinedInducedMap, "exact-linalg", "f(source subspace) is not inside the target subspace");
    if (!tgt.quot().contains(image(f, src.quot())))
        throw Error(ErrorCode::IllDefinedInducedMap, "exact-linalg", "f(source quotient) is not inside the target quotient");
    Matrix<K> m(tgt.dim(), src.dim());
    for (size_t i = 0; i < src.dim(); ++i) {
        Vec<K> c = tgt.coords(f.apply(src.basis_lift(i)));
        for (size_t r = 0; r < tgt.dim(); ++r) m(r, i) = c[r];
    }
    return m;
}

template <class K>
Matrix<K> induced_map(const Matrix<K>& f, const Subspace<K>& src_sub, const Subspace<K>& src_quot,
                      const Subspace<K>& tgt_sub, const Subspace<K>& tgt_quot) {
    return induced_map(f, Subquotient<K>(src_sub, src_quot), Subquotient<K>(tgt_sub, tgt_quot));
}

template <class K>
bool is_nilpotent(const Matrix<K>& a) {
    if (a.rows() != a.cols()) return false;
    return a.power(static_cast<int>(a.rows())).is_zero_matrix();
}

/// Jordan chains of a nilpotent matrix: each chain is [t, A t, ..., A^{len-1} t].
template <class K>
std::vector<std::vector<Vec<K>>> jordan_chains(const Matrix<K>& a) {
    const size_t n = a.rows();
    std::vector<Subspace<K>> ker{Subspace<K>(n)};
    Matrix<K> p = Matrix<K>::identity(n);
    while (!ker.back().is_full()) {
        p = p * a;
        ker.push_back(kernel(p));
        if (ker.size() > n + 1)
            throw Error(ErrorCode::NotNilpotent, "exact-linalg", "operator is not nilpotent");
    }
    const size_t top = ker.size() - 1;
    std::vector<std::vector<Vec<K>>> chains;
    std::vector<Vec<K>> level;  // chain vectors at the current height
    for (size_t j = top; j >= 1; --j) {
        std::vector<Vec<K>> pushed;
        for (const auto& v : level) pushed.push_back(a.apply(v));
        Subspace<K> span_now = sum(ker[j - 1], Subspace<K>::span(n, pushed));
        std::vector<Vec<K>> tops;
        for (const auto& cand : ker[j].vectors()) {
            if (span_now.contains(cand)) continue;
            tops.push_back(cand);
            span_now = sum(span_now, Subspace<K>::span(n, {cand}));
        }
        for (const auto& t : tops) {
            std::vector<Vec<K>> chain{t};
            for (size_t s = 1; s < j; ++s) chain.push_back(a.apply(chain.back()));
            chains.push_back(std::move(chain));
        }
        level = std::move(pushed);
        for (auto& t : tops) level.push_back(std::move(t));
    }
    return chains;
}

}  // namespace nctk
