#include "corpus.hpp"
#include "generators.hpp"
#include "profiles.hpp"

#include <doctest.h>

using namespace nctk;
using namespace testing_support;

namespace {

std::vector<NCModel> valid_corpus() {
    std::vector<NCModel> out;
    for (const auto& name : instance_names()) {
        NCModel m = instance(name);
        if (validate(m).passed()) out.push_back(std::move(m));
    }
    return out;
}

std::vector<NCModel> fuzz(uint64_t seed, int count) {
    gen::Rng rng(seed);
    std::vector<NCModel> out;
    for (int t = 0; t < count; ++t)
        out.push_back(t % 2 ? gen::random_with_exponents(rng, rng.uniform(1, 2))
                            : gen::random_unipotent(rng, rng.uniform(1, 3), 6));
    return out;
}

std::vector<int> dims(const CohomologyReport& r) {
    std::vector<int> out;
    for (const auto& d : r.degrees) out.push_back(static_cast<int>(d.dim));
    return out;
}

}  // namespace

TEST_CASE("builders produce verified complexes") {
    auto models = valid_corpus();
    for (auto& m : fuzz(41, 16)) models.push_back(std::move(m));
    for (const auto& m : models) {
        const auto z = all_branches(m);
        for (const FilteredComplex& c : {build_omega(m), build_ic(m), build_ic_log(m, z), build_ic_log(m, {})}) {
            CHECK_NOTHROW(c.verify());
            const CohomologyReport r = cohomology(c, false);
            CHECK(r.euler_terms == r.euler_cohomology);
            for (const auto& d : r.degrees) {
                size_t total = 0;
                for (const auto& [w, n] : d.weights) total += n;
                CHECK(total == d.dim);
            }
        }
    }
}

TEST_CASE("boundary cases of the logarithmic complex") {
    auto models = valid_corpus();
    for (auto& m : fuzz(42, 10)) models.push_back(std::move(m));
    for (const auto& m : models) {
        CHECK(build_ic_log(m, {}) == build_ic(m));
        const NCModel u = unipotent_part(m);
        CHECK(build_ic_log(u, all_branches(u)) == build_omega(u));
    }
}

TEST_CASE("pure weight anchor") {
    gen::Rng rng(43);
    std::vector<NCModel> models = {instance("j2_pure0"), instance("j2_weight1"), instance("tate_product")};
    for (int t = 0; t < 10; ++t) {
        NCModel m = gen::random_block(rng, rng.uniform(1, 3), static_cast<gen::BlockKind>(rng.uniform(0, 4)),
                                      rng.uniform(-1, 2));
        models.push_back(m);
    }
    for (const auto& m : models) {
        REQUIRE(m.w_is_pure());
        CHECK(pure_anchor_holds(build_omega(m), build_ic(m), m.w.hi()));
    }
}

TEST_CASE("components with a nonzero exponent are acyclic") {
    gen::Rng rng(44);
    for (int t = 0; t < 20; ++t) {
        NCModel m = gen::random_with_exponents(rng, rng.uniform(1, 3));
        for (size_t c = 0; c < m.components.size(); ++c)
            if (!m.components[c].unipotent()) CHECK(acyclic(build_omega(component_model(m, c))));
    }
}

TEST_CASE("cohomology of small models") {
    const NCModel rank1 = instance("rank1_trivial"), j2 = instance("j2_pure0");
    CHECK(dims(cohomology(build_omega(rank1))) == std::vector<int>{1, 1});
    CHECK(dims(cohomology(build_ic(rank1))) == std::vector<int>{1, 0});
    CHECK(dims(cohomology(build_omega(j2))) == std::vector<int>{1, 1});
    CHECK(dims(cohomology(build_ic(j2))) == std::vector<int>{1, 0});
    CHECK(profile(build_omega(j2)) == Profile{{0, {{0, 1}}}, {1, {{3, 1}}}});

    const CohomologyReport ic2 = cohomology(build_ic(instance("two_branch_j2_zero")));
    CHECK(ic2.dim(0) == 1);
    CHECK(ic2.dim(1) == 0);
    CHECK(ic2.dim(2) == 0);

    const CohomologyReport shriek = cohomology(i_shriek(j2, {0}), false);
    for (const auto& d : shriek.degrees) CHECK(d.dim == (d.degree == 2 ? 1u : 0u));
    const CohomologyReport shriek1 = cohomology(i_shriek(rank1, {0}), false);
    for (const auto& d : shriek1.degrees) CHECK(d.dim == (d.degree == 2 ? 1u : 0u));

    const NCModel jw = instance("j2_weight1");
    const CohomologyReport star = cohomology(i_star(jw, {0}), false);
    for (const auto& d : star.degrees) CHECK(d.dim == (d.degree == 0 ? 1u : 0u));
    const CohomologyReport star1 = cohomology(i_star(rank1, {0}), false);
    for (const auto& d : star1.degrees) CHECK(d.dim == (d.degree == 0 ? 1u : 0u));
}

TEST_CASE("the zero model has zero cohomology") {
    const NCModel m = instance("empty");
    CHECK(acyclic(build_omega(m)));
    CHECK(acyclic(build_ic(m)));
}

TEST_CASE("logarithmic complex on every branch keeps the full space in each slot") {
    const NCModel m = instance("two_branch_j2_zero");
    const FilteredComplex c = build_ic_log(m, {0, 1});
    CHECK(c.term(0).dim() == 2);
    CHECK(c.term(1).dim() == 4);
    CHECK(c.term(2).dim() == 2);
}

TEST_CASE("cones") {
    for (const auto& m : valid_corpus()) {
        const FilteredComplex ic = build_ic(m), log = build_ic_log(m, all_branches(m));
        CHECK(acyclic(cone(inclusion_map(ic, ic), ic, ic)));
        CHECK(cone_sequence_exact(inclusion_map(ic, log), ic, log));
        const FilteredComplex c = cone(inclusion_map(ic, log), ic, log);
        CHECK(c.euler_terms() == log.euler_terms() - ic.euler_terms());

        ComplexMap zero = inclusion_map(ic, ic);
        for (auto& x : zero.m) x = Matrix<Q>(x.rows(), x.cols());
        const auto ca = cohomology(ic, false), cz = cohomology(cone(zero, ic, ic), false);
        for (int k = ic.lo() - 1; k <= ic.hi(); ++k) CHECK(cz.dim(k) == ca.dim(k + 1) + ca.dim(k));
    }
}

TEST_CASE("duality reflects profiles and is an involution") {
    for (const auto& m : valid_corpus()) {
        if (!m.s) continue;
        const int a = m.base_weight, center = duality_center(m.perverse_shift);
        for (const FilteredComplex& c : {build_omega(m), build_ic(m)}) {
            const FilteredComplex d = dualize(c, a, center);
            CHECK(profile(d) == reflect(profile(c), center, 2 * a));
            CHECK(profile(dualize(d, a, center)) == profile(c));
        }
    }
}

TEST_CASE("dual of the intersection complex on the weight-one Jordan block") {
    const NCModel m = instance("j2_weight1");
    const int a = m.base_weight, center = duality_center(m.perverse_shift);
    const FilteredComplex ic = build_ic(m);
    CHECK(profile(dualize(ic, a, center)) == reflect(profile(ic), center, 2 * a));
    CHECK(acyclic(dualize(cone(inclusion_map(ic, ic), ic, ic), a, center)));
}

TEST_CASE("profiles do not change when the operators are rescaled") {
    gen::Rng rng(45);
    for (auto m : fuzz(46, 12)) {
        const Profile omega = profile(build_omega(m)), ic = profile(build_ic(m));
        const Q c = rng.coin() ? rng.small_positive() : -rng.small_positive();
        for (auto& comp : m.components)
            for (auto& n : comp.n) n = n.scaled(c);
        CHECK(profile(build_omega(m)) == omega);
        CHECK(profile(build_ic(m)) == ic);
    }
}

TEST_CASE("on one branch the closed-support complex has the stalk cohomology of IC") {
    for (const auto& m : valid_corpus()) {
        if (!m.s || m.branches != 1) continue;
        const CohomologyReport star = cohomology(i_star(m, {0}), false), ic = cohomology(build_ic(m), false);
        for (int k = -2; k <= 3; ++k) CHECK(star.dim(k) == ic.dim(k));
    }
}
