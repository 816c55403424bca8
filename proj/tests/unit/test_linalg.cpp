#include "generators.hpp"

#include <doctest.h>

using namespace nctk;

namespace {

Vec<Q> v(std::initializer_list<int> xs) {
    Vec<Q> out;
    for (int x : xs) out.emplace_back(x);
    return out;
}

Subspace<Q> random_subspace(gen::Rng& rng, size_t n, size_t gens) {
    std::vector<Vec<Q>> rows;
    for (size_t i = 0; i < gens; ++i) {
        Vec<Q> r(n);
        for (auto& x : r) x = rng.uniform(-2, 2);
        rows.push_back(r);
    }
    return Subspace<Q>::span(n, rows);
}

}  // namespace

TEST_CASE("rationals parse into lowest terms") {
    CHECK(parse_rational("6/4") == Q(3, 2));
    CHECK(to_string(parse_rational("-10/5")) == "-2");
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("x"), Error);
}

TEST_CASE("gaussian rationals parse in every accepted form") {
    CHECK(parse_gaussian("i") == QI{Q(0), Q(1)});
    CHECK(parse_gaussian("-i") == QI{Q(0), Q(-1)});
    CHECK(parse_gaussian("1/2-3*i") == QI{Q(1, 2), Q(-3)});
    CHECK(to_string(parse_gaussian("2+1*i")) == "2+1*i");
    CHECK(conj(conj(parse_gaussian("2-5/3*i"))) == parse_gaussian("2-5/3*i"));
    CHECK(conj(QI{Q(7), Q(0)}) == QI{Q(7), Q(0)});
}

TEST_CASE("canonical form does not depend on the generating set") {
    gen::Rng rng(11);
    for (int t = 0; t < 40; ++t) {
        const size_t n = static_cast<size_t>(rng.uniform(1, 6));
        Subspace<Q> s = random_subspace(rng, n, static_cast<size_t>(rng.uniform(0, 4)));
        Matrix<Q> p = gen::random_basis_change(rng, s.dim());
        Subspace<Q> again = Subspace<Q>::from_matrix(p * s.basis());
        CHECK(again == s);
        CHECK(again.basis() == s.basis());
    }
}

TEST_CASE("modular law for sum and intersection") {
    gen::Rng rng(12);
    for (int t = 0; t < 60; ++t) {
        const size_t n = static_cast<size_t>(rng.uniform(1, 7));
        Subspace<Q> a = random_subspace(rng, n, static_cast<size_t>(rng.uniform(0, 4)));
        Subspace<Q> b = random_subspace(rng, n, static_cast<size_t>(rng.uniform(0, 4)));
        CHECK(sum(a, b).dim() + intersect(a, b).dim() == a.dim() + b.dim());
        CHECK(sum(a, b).contains(a));
        CHECK(a.contains(intersect(a, b)));
    }
}

TEST_CASE("preimage adjunction") {
    gen::Rng rng(13);
    for (int t = 0; t < 40; ++t) {
        const size_t n = static_cast<size_t>(rng.uniform(1, 6));
        Matrix<Q> f(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) f(i, j) = rng.uniform(-1, 1);
        Subspace<Q> b = random_subspace(rng, n, static_cast<size_t>(rng.uniform(0, 3)));
        Subspace<Q> pre = preimage(f, b);
        CHECK(b.contains(image(f, pre)));
        CHECK(pre.contains(kernel(f)));
    }
}

TEST_CASE("annihilator is an involution") {
    gen::Rng rng(14);
    for (int t = 0; t < 30; ++t) {
        const size_t n = static_cast<size_t>(rng.uniform(1, 6));
        Subspace<Q> a = random_subspace(rng, n, static_cast<size_t>(rng.uniform(0, 4)));
        CHECK(annihilator(a).dim() == n - a.dim());
        CHECK(annihilator(annihilator(a)) == a);
    }
}

TEST_CASE("conjugation fixes rational subspaces and is an involution") {
    Subspace<QI> s = Subspace<QI>::span(2, {{QI{Q(0), Q(1)}, QI{Q(1), Q(0)}}});
    CHECK(conj(conj(s)) == s);
    CHECK(!(conj(s) == s));
    Subspace<QI> r = promote(Subspace<Q>::span(2, {v({1, 2})}));
    CHECK(conj(r) == r);
}

TEST_CASE("induced maps on subquotients") {
    Matrix<Q> n(2, 2);
    n(0, 1) = 1;
    Subspace<Q> all = Subspace<Q>::full(2), line = Subspace<Q>::span(2, {v({1, 0})});
    Matrix<Q> ind = induced_map(n, all, line, all, Subspace<Q>(2));
    CHECK(ind.rows() == 2);
    CHECK(ind.cols() == 1);
    // the induced map on L/NL -> L must be well defined: N(NL) = 0 is in the zero quotient
    CHECK(rank(ind) == 1);
    CHECK_THROWS_AS(induced_map(Matrix<Q>::identity(2), all, line, all, Subspace<Q>(2)), Error);
    try {
        induced_map(Matrix<Q>::identity(2), all, line, all, Subspace<Q>(2));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IllDefinedInducedMap);
    }
}

TEST_CASE("solve and null space") {
    Matrix<Q> a = Matrix<Q>::from_rows({v({1, 2}), v({2, 4})}, 2);
    CHECK(null_space(a).size() == 1);
    CHECK(solve(a, v({1, 2})).has_value());
    CHECK(!solve(a, v({1, 3})).has_value());
}

TEST_CASE("ragged input is a dimension mismatch") {
    try {
        Matrix<Q>::from_rows({v({1, 2}), v({1})}, 2);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DimensionMismatch);
    }
}

TEST_CASE("jordan chains cover the space") {
    gen::Rng rng(15);
    for (int t = 0; t < 20; ++t) {
        const size_t n = static_cast<size_t>(rng.uniform(1, 7));
        Matrix<Q> nil = gen::random_nilpotent(rng, n);
        CHECK(is_nilpotent(nil));
        std::vector<Vec<Q>> all;
        for (const auto& chain : jordan_chains(nil))
            for (const auto& x : chain) all.push_back(x);
        CHECK(all.size() == n);
        CHECK(Subspace<Q>::span(n, all).dim() == n);
    }
}
