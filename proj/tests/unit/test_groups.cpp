#include "obstrukt/error.hpp"
#include "obstrukt/groups.hpp"

#include "../support/oracles.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>

using namespace obstrukt;

namespace {

ErrorKind kind_of(const auto& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Internal;
}

FiniteGroup S3() { return standard_group(GroupKind::symmetric(3)); }
FiniteGroup Q8() { return standard_group(GroupKind::dicyclic(2)); }

Elem perm_index(const FiniteGroup& s3, int a, int b) {
    // transposition (a b) in lexicographic order of permutations of {0,1,2}
    static const std::vector<std::vector<int>> perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                                        {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    std::vector<int> p = {0, 1, 2};
    std::swap(p[a], p[b]);
    (void)s3;
    return static_cast<Elem>(std::find(perms.begin(), perms.end(), p) - perms.begin());
}

} // namespace

TEST_CASE("cayley table construction") {
    auto triv = FiniteGroup::from_cayley_table({{0}});
    CHECK(triv.order() == 1);
    auto z2 = FiniteGroup::from_cayley_table({{0, 1}, {1, 0}});
    CHECK(z2.order() == 2);
    CHECK(z2.inv(1) == 1);

    // a loop of order 5: identity and inverses exist but the product is not associative
    std::vector<std::vector<int>> loop = {
        {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
    CHECK(kind_of([&] { FiniteGroup::from_cayley_table(loop); }) == ErrorKind::NotAssociative);
    CHECK(kind_of([&] { FiniteGroup::from_cayley_table({{1, 0}, {0, 0}}); }) != ErrorKind::Internal);
    CHECK(kind_of([&] { FiniteGroup::from_cayley_table({{0, 1}, {1, 1}}); }) == ErrorKind::NotInvertible);
    CHECK(kind_of([&] { FiniteGroup::from_cayley_table({{1, 1}, {1, 1}}); }) == ErrorKind::NoIdentity);
    CHECK(kind_of([&] { FiniteGroup::from_cayley_table({{0, 2}, {1, 0}}); }) == ErrorKind::InvalidInput);
}

TEST_CASE("standard groups") {
    CHECK(standard_group(GroupKind::unipotent(3)).order() == 8);
    CHECK(standard_group(GroupKind::alternating(5)).order() == 60);
    CHECK(standard_group(GroupKind::dihedral(4)).order() == 8);
    CHECK(Q8().order() == 8);
    CHECK_FALSE(Q8().is_abelian());
    CHECK(oracle::count_elements_with_order_dividing(Q8(), 2) == 2);

    int det1 = 0;
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b)
            for (int c = 0; c < 5; ++c)
                for (int d = 0; d < 5; ++d)
                    det1 += ((a * d - b * c) % 5 + 5) % 5 == 1;
    auto sl = standard_group(GroupKind::sl2(5));
    CHECK(sl.order() == det1);
    CHECK(sl.order() == 120);
    CHECK(sl.identity() != 0);

    CHECK(kind_of([] { standard_group(GroupKind::sl2(23)); }) == ErrorKind::UnsupportedParameter);
    CHECK(kind_of([] { standard_group(GroupKind::sl2(4)); }) == ErrorKind::UnsupportedParameter);
    auto prod = standard_group(GroupKind::direct_product(GroupKind::cyclic(2), GroupKind::cyclic(3)));
    CHECK(prod.order() == 6);
    CHECK(prod.is_abelian());
}

TEST_CASE("homomorphisms from generator images") {
    auto z4 = cyclic_group(4), z2 = cyclic_group(2);
    auto red = hom(z4, z2, {{1, 1}});
    auto k = kernel(red);
    CHECK(k.members() == std::vector<Elem>{0, 2});
    CHECK(kind_of([&] { hom(z2, z4, {{1, 1}}); }) == ErrorKind::NotAHomomorphism);
    CHECK(kind_of([&] { hom(z4, z2, {{2, 0}}); }) == ErrorKind::GeneratorsDontGenerate);

    auto a5 = standard_group(GroupKind::alternating(5));
    auto trivial = FiniteGroup();
    auto homs = enumerate_homs(a5, trivial);
    CHECK(homs.size() == 1);
    CHECK(image(GroupHom::trivial(a5, z2)).members() == std::vector<Elem>{0});
}

TEST_CASE("kernel of SL(2,5) onto PSL(2,5)") {
    auto sl = standard_group(GroupKind::sl2(5));
    auto z = oracle::center(sl);
    REQUIRE(z.size() == 2);
    Subgroup centre(sl, std::vector<Elem>(z.begin(), z.end()));
    auto q = quotient(sl, centre);
    CHECK(q.group.order() == 60);
    auto k = kernel(q.projection);
    CHECK(std::set<Elem>(k.members().begin(), k.members().end()) == z);
}

TEST_CASE("quotients") {
    auto s3 = S3();
    auto a3 = generated_subgroup(s3, std::vector<Elem>{3});
    CHECK(a3.order() == 3);
    auto q = quotient(s3, a3);
    CHECK(q.group.order() == 2);
    CHECK(q.projection.is_surjective());
    CHECK(kernel(q.projection).members() == a3.members());

    auto whole = Subgroup(s3, {0, 1, 2, 3, 4, 5});
    CHECK(quotient(s3, whole).group.order() == 1);

    auto q8 = Q8();
    auto z = oracle::center(q8);
    auto qq = quotient(q8, Subgroup(q8, std::vector<Elem>(z.begin(), z.end())));
    CHECK(qq.group.order() == 4);
    CHECK(qq.group.exponent() == 2);

    auto t = generated_subgroup(s3, std::vector<Elem>{perm_index(s3, 0, 1)});
    CHECK(kind_of([&] { quotient(s3, t); }) == ErrorKind::NotNormal);
}

TEST_CASE("fiber products") {
    auto z4 = cyclic_group(4), z2 = cyclic_group(2);
    auto phi = hom(z4, z2, {{1, 1}});
    auto id2 = GroupHom::identity(z2);
    auto fp = fiber_product(phi, id2);
    CHECK(fp.group.order() == 4);
    CHECK(fp.group.exponent() == 4);

    auto s3 = S3();
    auto idfp = fiber_product(GroupHom::identity(s3), GroupHom::identity(s3));
    CHECK(idfp.group.order() == 6);
    CHECK(idfp.to_second.is_injective());

    auto triv = GroupHom::trivial(s3, z2);
    auto fp2 = fiber_product(phi, triv);
    CHECK(fp2.group.order() == 6 * 2);
    for (auto [a, b] : fp2.pairs)
        CHECK(phi(a) == 0);

    CHECK(kind_of([&] { fiber_product(GroupHom::trivial(z4, z2), id2); }) == ErrorKind::PhiNotSurjective);
    CHECK(kind_of([&] { fiber_product(phi, GroupHom::identity(z4)); }) == ErrorKind::CodomainMismatch);

    // order law on every pair of small groups and every psi
    std::vector<FiniteGroup> small = {z2, z4, cyclic_group(3), s3, Q8(), standard_group(GroupKind::dihedral(4))};
    for (const auto& g1 : small)
        for (const auto& g2 : small) {
            for (const auto& phi_tab : oracle::all_homs(g1, g2)) {
                GroupHom ph(g1, g2, phi_tab);
                if (!ph.is_surjective())
                    continue;
                int ker = kernel(ph).order();
                for (const auto& base : {z2, z4})
                    for (const auto& psi_tab : oracle::all_homs(base, g2)) {
                        auto f = fiber_product(ph, GroupHom(base, g2, psi_tab));
                        CHECK(f.group.order() == base.order() * ker);
                    }
            }
        }
}

TEST_CASE("commutator subgroups") {
    auto z4 = cyclic_group(4);
    CHECK(commutator_subgroup(z4, Subgroup(z4, {0, 1, 2, 3})).order() == 1);
    auto q8 = Q8();
    std::vector<Elem> all8 = {0, 1, 2, 3, 4, 5, 6, 7};
    auto cq = commutator_subgroup(q8, Subgroup(q8, all8));
    auto oq = oracle::commutators_closure(q8, all8);
    CHECK(std::set<Elem>(cq.members().begin(), cq.members().end()) == oq);
    CHECK(cq.order() == 2);
    auto s3 = S3();
    auto cs = commutator_subgroup(s3, Subgroup(s3, {0, 1, 2, 3, 4, 5}));
    CHECK(cs.members() == std::vector<Elem>{0, 3, 4});
}

TEST_CASE("homomorphism enumeration") {
    auto z2 = cyclic_group(2), z4 = cyclic_group(4);
    auto v4 = direct_product(z2, z2);
    auto d4 = standard_group(GroupKind::dihedral(4));
    CHECK(enumerate_homs(z2, z2).size() == 2);
    CHECK(enumerate_homs(v4, z2).size() == 4);
    CHECK(enumerate_homs(z4, d4).size() ==
          static_cast<size_t>(oracle::count_elements_with_order_dividing(d4, 4)));
    CHECK(enumerate_homs(z4, d4).size() == 8);

    std::vector<FiniteGroup> small = {z2, z4, v4, cyclic_group(3), S3(), Q8(), d4};
    for (const auto& g : small)
        for (const auto& h : small) {
            auto fast = enumerate_homs(g, h);
            auto slow = oracle::all_homs(g, h);
            REQUIRE(fast.size() == slow.size());
            std::vector<std::vector<Elem>> tabs;
            for (const auto& f : fast)
                tabs.push_back(f.table());
            std::sort(tabs.begin(), tabs.end());
            std::sort(slow.begin(), slow.end());
            CHECK(tabs == slow);
        }

    // constrained search equals the filtered unconstrained list
    for (const auto& g : small)
        for (const auto& h : small)
            for (const auto& k : {z2, v4, S3()}) {
                for (const auto& phi_tab : oracle::all_homs(h, k)) {
                    GroupHom phi(h, k, phi_tab);
                    auto psis = enumerate_homs(g, k);
                    for (const auto& psi : psis) {
                        auto constrained = enumerate_homs(g, h, LiftConstraint{phi, psi});
                        std::vector<GroupHom> filtered;
                        for (auto& x : enumerate_homs(g, h))
                            if (compose(phi, x) == psi)
                                filtered.push_back(x);
                        CHECK(constrained == filtered);
                    }
                }
            }

    auto a5 = standard_group(GroupKind::alternating(5));
    HomSearchOptions tiny;
    tiny.node_cap = 10;
    CHECK(kind_of([&] { enumerate_homs(a5, a5, std::nullopt, tiny); }) == ErrorKind::SearchBudgetExceeded);
}

TEST_CASE("conjugacy of homomorphisms") {
    auto z2 = cyclic_group(2), s3 = S3();
    auto h1 = hom(z2, s3, {{1, perm_index(s3, 0, 1)}});
    auto h2 = hom(z2, s3, {{1, perm_index(s3, 1, 2)}});
    auto a3 = Subgroup(s3, {0, 3, 4});
    auto k = are_conjugate(h1, h1, a3);
    REQUIRE(k);
    CHECK(*k == s3.identity());
    auto c = are_conjugate(h1, h2, a3);
    REQUIRE(c);
    CHECK(s3.conj(*c, h1(1)) == h2(1));
    CHECK(conjugacy_key(h1, a3) == conjugacy_key(h2, a3));

    auto z4 = cyclic_group(4);
    auto f1 = hom(z2, z4, {{1, 0}}), f2 = hom(z2, z4, {{1, 2}});
    CHECK_FALSE(are_conjugate(f1, f2, Subgroup(z4, {0, 1, 2, 3})));

    // equivalence relation on random triples
    auto d4 = standard_group(GroupKind::dihedral(4));
    auto homs = enumerate_homs(direct_product(z2, z2), d4);
    Subgroup by(d4, {0, 1, 2, 3, 4, 5, 6, 7});
    std::mt19937 rng(7);
    std::uniform_int_distribution<size_t> pick(0, homs.size() - 1);
    for (int trial = 0; trial < 200; ++trial) {
        const auto &a = homs[pick(rng)], &b = homs[pick(rng)], &c2 = homs[pick(rng)];
        CHECK(are_conjugate(a, a, by).has_value());
        CHECK(are_conjugate(a, b, by).has_value() == are_conjugate(b, a, by).has_value());
        if (are_conjugate(a, b, by) && are_conjugate(b, c2, by))
            CHECK(are_conjugate(a, c2, by).has_value());
        CHECK((conjugacy_key(a, by) == conjugacy_key(b, by)) == are_conjugate(a, b, by).has_value());
    }
}
