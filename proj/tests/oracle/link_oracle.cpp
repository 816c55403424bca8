#include "link_oracle.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <stdexcept>

namespace oracle {

namespace {

using Vecs = std::vector<std::vector<mpq_class>>;  // list of vectors

Mat zeros(int r, int c) { return Mat(r, std::vector<mpq_class>(c, 0)); }

// Row reduction in place; returns pivot columns.
std::vector<int> reduce(Mat& a) {
    std::vector<int> piv;
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        mpq_class inv = 1 / a[r][c];
        for (auto& x : a[r]) x *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            mpq_class f = a[i][c];
            for (int j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

int rank_of(const Vecs& vs) {
    Mat a = vs;
    return static_cast<int>(reduce(a).size());
}

// Null space of a (rows x cols) as a list of cols-vectors.
Vecs kernel(const Mat& a, int cols) {
    Mat m = a;
    std::vector<int> piv = reduce(m);
    Vecs out;
    for (int f = 0; f < cols; ++f) {
        if (std::find(piv.begin(), piv.end(), f) != piv.end()) continue;
        std::vector<mpq_class> v(cols, 0);
        v[f] = 1;
        for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m[i][f];
        out.push_back(v);
    }
    return out;
}

std::vector<mpq_class> apply(const Mat& a, const std::vector<mpq_class>& v) {
    std::vector<mpq_class> out(a.size(), 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
    return out;
}

Vecs image(const Mat& a, const Vecs& vs) {
    Vecs out;
    for (const auto& v : vs) out.push_back(apply(a, v));
    return out;
}

Vecs intersect(const Vecs& u, const Vecs& v, int n) {
    if (u.empty() || v.empty()) return {};
    const int cu = static_cast<int>(u.size()), cv = static_cast<int>(v.size());
    Mat m = zeros(n, cu + cv);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < cu; ++j) m[i][j] = u[j][i];
        for (int j = 0; j < cv; ++j) m[i][cu + j] = -v[j][i];
    }
    Vecs out;
    for (const auto& x : kernel(m, cu + cv)) {
        std::vector<mpq_class> w(n, 0);
        for (int j = 0; j < cu; ++j)
            for (int i = 0; i < n; ++i) w[i] += x[j] * u[j][i];
        out.push_back(w);
    }
    return out;
}

Vecs annihilator(const Vecs& vs, int n) { return vs.empty() ? kernel(zeros(0, n), n) : kernel(vs, n); }

Vecs join(Vecs a, const Vecs& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

Vecs full(int n) {
    Vecs out;
    for (int i = 0; i < n; ++i) {
        std::vector<mpq_class> e(n, 0);
        e[i] = 1;
        out.push_back(e);
    }
    return out;
}

Mat mul(const Mat& a, const Mat& b) {
    const size_t k = b.size(), c = k ? b[0].size() : 0;
    Mat out = zeros(static_cast<int>(a.size()), static_cast<int>(c));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t t = 0; t < k; ++t)
            for (size_t j = 0; j < c; ++j) out[i][j] += a[i][t] * b[t][j];
    return out;
}

Mat power(const Mat& a, int p, int n) {
    Mat out = zeros(n, n);
    for (int i = 0; i < n; ++i) out[i][i] = 1;
    for (int i = 0; i < p; ++i) out = mul(out, a);
    return out;
}

Mat transpose(const Mat& a, int rows, int cols) {
    Mat out = zeros(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) out[j][i] = a[i][j];
    return out;
}

// Coordinates of v in the independent columns `basis`.
std::vector<mpq_class> coords(const Vecs& basis, const std::vector<mpq_class>& v) {
    const int n = static_cast<int>(v.size()), r = static_cast<int>(basis.size());
    Mat m = zeros(n, r + 1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < r; ++j) m[i][j] = basis[j][i];
        m[i][r] = v[i];
    }
    std::vector<int> piv = reduce(m);
    if (!piv.empty() && piv.back() == r) throw std::logic_error("oracle: vector not in span");
    std::vector<mpq_class> c(r, 0);
    for (size_t i = 0; i < piv.size(); ++i) c[piv[i]] = m[i][r];
    return c;
}

using Filt = std::function<Vecs(int)>;

struct Cx {
    int lo = 0;
    std::vector<int> dims;
    std::vector<Mat> d;   // d[j]: term lo+j -> term lo+j+1, as (dim next) x (dim this)
    std::vector<Filt> w;
    int offset = 0;

    int hi() const { return lo + static_cast<int>(dims.size()) - 1; }
    int dim(int k) const { return k < lo || k > hi() ? 0 : dims[k - lo]; }
    Mat dm(int k) const {
        if (k < lo || k >= hi()) return zeros(dim(k + 1), dim(k));
        return d[k - lo];
    }
    Vecs wt(int k, int r) const { return k < lo || k > hi() ? Vecs{} : w[k - lo](r); }
};

constexpr int kProbe = 40;

std::map<int, std::map<int, int>> profile(const Cx& c) {
    std::map<int, std::map<int, int>> out;
    for (int k = c.lo; k <= c.hi(); ++k) {
        const int n = c.dim(k);
        Vecs z = kernel(c.dm(k), n);
        Vecs b = image(c.dm(k - 1), full(c.dim(k - 1)));
        const int rb = rank_of(b);
        int prev = 0;
        for (int r = -kProbe; r <= kProbe; ++r) {
            const int cur = rank_of(join(intersect(z, c.wt(k, r), n), b)) - rb;
            if (cur > prev) out[k][r + c.offset + k] = cur - prev;
            prev = cur;
        }
        if (prev != rank_of(join(z, b)) - rb)
            throw std::logic_error("oracle: weight filtration not exhaustive");
    }
    return out;
}

Vecs direct(const Vecs& a, int na, const Vecs& b, int nb) {
    Vecs out;
    for (const auto& v : a) {
        std::vector<mpq_class> e(na + nb, 0);
        std::copy(v.begin(), v.end(), e.begin());
        out.push_back(e);
    }
    for (const auto& v : b) {
        std::vector<mpq_class> e(na + nb, 0);
        std::copy(v.begin(), v.end(), e.begin() + na);
        out.push_back(e);
    }
    return out;
}

// Mapping cone of f: a -> b with the mixed-cone weight convention.
Cx cone(const Cx& a, const Cx& b, const std::function<Mat(int)>& f) {
    Cx c;
    c.lo = std::min(a.lo - 1, b.lo);
    const int hi = std::max(a.hi() - 1, b.hi());
    const int delta = a.offset - b.offset;
    c.offset = b.offset;
    for (int k = c.lo; k <= hi; ++k) {
        const int na = a.dim(k + 1), nb = b.dim(k);
        c.dims.push_back(na + nb);
        c.w.push_back([=, &a, &b](int r) { return direct(a.wt(k + 1, r - 1 - delta), na, b.wt(k, r), nb); });
    }
    for (int k = c.lo; k < hi; ++k) {
        const int na = a.dim(k + 1), nb = b.dim(k), na2 = a.dim(k + 2), nb2 = b.dim(k + 1);
        Mat m = zeros(na2 + nb2, na + nb);
        Mat da = a.dm(k + 1), db = b.dm(k), fk = f(k + 1);
        for (int i = 0; i < na2; ++i)
            for (int j = 0; j < na; ++j) m[i][j] = -da[i][j];
        for (int i = 0; i < nb2; ++i) {
            for (int j = 0; j < na; ++j) m[na2 + i][j] = fk[i][j];
            for (int j = 0; j < nb; ++j) m[na2 + i][na + j] = db[i][j];
        }
        c.d.push_back(m);
    }
    return c;
}

struct Built {
    Cx shriek, star;
    // keep the ends alive for the closures
    std::shared_ptr<Cx> ic, omega, pre;
};

Built build(const OneBranch& m) {
    const int n = m.dim;
    Vecs nl;
    for (const auto& v : image(m.n, full(n)))
        if (rank_of(join(nl, {v})) > static_cast<int>(nl.size())) nl.push_back(v);
    const int r = static_cast<int>(nl.size());

    auto w = [=](int k) { return k >= m.w_pure ? full(n) : Vecs{}; };
    // monodromy filtration of N centered at the weight of W
    auto mono = [=](int k) {
        const int s = k - m.w_pure;
        Vecs out;
        for (int j = std::max(0, -s); j <= n; ++j) {
            const int e = s + 2 * j + 1;
            if (e < 0) continue;
            out = join(out, image(power(m.n, j, n), kernel(power(m.n, e, n), n)));
        }
        return out;
    };
    auto star_w = [=](int k) { return join(image(m.n, w(k + 1)), intersect(mono(k), w(k), n)); };

    Mat minus_n = zeros(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) minus_n[i][j] = -m.n[i][j];

    auto omega = std::make_shared<Cx>();
    omega->lo = 0;
    omega->dims = {n, n};
    omega->d = {minus_n};
    omega->w = {w, [=](int k) { return star_w(k - 1); }};

    auto ic = std::make_shared<Cx>();
    ic->lo = 0;
    ic->dims = {n, r};
    Mat dic = zeros(r, n);
    for (int j = 0; j < n; ++j) {
        std::vector<mpq_class> col(n);
        for (int i = 0; i < n; ++i) col[i] = minus_n[i][j];
        auto c = coords(nl, col);
        for (int i = 0; i < r; ++i) dic[i][j] = c[i];
    }
    ic->d = {dic};
    ic->w = {w, [=](int k) {
                 Vecs out;
                 for (const auto& v : intersect(star_w(k - 1), nl, n)) out.push_back(coords(nl, v));
                 return out;
             }};

    Mat inc1 = zeros(n, r);
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < n; ++i) inc1[i][j] = nl[j][i];
    Mat id = zeros(n, n);
    for (int i = 0; i < n; ++i) id[i][i] = 1;
    auto inclusion = [=](int k) { return k == 0 ? id : k == 1 ? inc1 : zeros(0, 0); };

    auto pre = std::make_shared<Cx>(cone(*ic, *omega, [&](int k) {
        Mat f = inclusion(k);
        return f.empty() ? zeros(omega->dim(k), ic->dim(k)) : f;
    }));

    Built b;
    b.ic = ic;
    b.omega = omega;
    b.pre = pre;
    // shift by -1: term j = pre(j - 1), d negated, W_k = W_{k+1}
    Cx& s = b.shriek;
    s.lo = pre->lo + 1;
    s.dims = pre->dims;
    for (const auto& dm : pre->d) {
        Mat neg = dm;
        for (auto& row : neg)
            for (auto& x : row) x = -x;
        s.d.push_back(neg);
    }
    for (size_t j = 0; j < pre->w.size(); ++j) {
        Filt f = pre->w[j];
        s.w.push_back([f](int k) { return f(k + 1); });
    }
    s.offset = pre->offset;

    // dual about the center 2 with weights reflected about a
    const int center = 2;
    Cx& t = b.star;
    t.lo = center - s.hi();
    const int thi = center - s.lo;
    for (int k = t.lo; k <= thi; ++k) {
        const int src = center - k, dim = s.dim(src);
        t.dims.push_back(dim);
        Cx sc = s;
        t.w.push_back([sc, src, dim](int q) { return annihilator(sc.wt(src, -q - 1), dim); });
        if (k < thi) {
            Mat dt = transpose(s.dm(center - k - 1), s.dim(center - k), s.dim(center - k - 1));
            if (k % 2 != 0)
                for (auto& row : dt)
                    for (auto& x : row) x = -x;
            t.d.push_back(dt);
        }
    }
    t.offset = 2 * m.a - s.offset - center;
    return b;
}

}  // namespace

std::map<int, std::map<int, int>> shriek_profile(const OneBranch& m) { return profile(build(m).shriek); }
std::map<int, std::map<int, int>> star_profile(const OneBranch& m) { return profile(build(m).star); }

std::map<int, std::map<int, int>> link_profile(const OneBranch& m) {
    Built b = build(m);
    const Cx& s = b.shriek;
    const Cx& t = b.star;
    Cx link = cone(s, t, [&](int k) { return zeros(t.dim(k), s.dim(k)); });
    return profile(link);
}

}  // namespace oracle
