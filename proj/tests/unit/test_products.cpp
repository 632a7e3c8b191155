#include "obstrukt/error.hpp"
#include "obstrukt/products.hpp"

#include "../support/cochain_oracles.hpp"
#include "../support/modules.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace obstrukt;
using namespace fixtures;

namespace {

Cochain random_cochain(const GModule& m, int n, std::mt19937& rng) {
    std::vector<Int> data(Cochain(m, n).coordinate_count());
    for (auto& v : data)
        v = static_cast<Int>(rng() % 1000);
    return Cochain::from_data(m, n, data);
}

// 1-cochain with trivial Z/m coefficients as a table over the group
using Table = std::vector<Int>;

Cochain to_cochain(const GModule& m, const Table& f) {
    return Cochain::from_function(m, 1, [&](std::span<const Elem> t) { return AbElem{f[t[0]]}; });
}

std::vector<Table> all_tables(const FiniteGroup& g, Int m) {
    std::vector<Table> out{Table(g.order(), 0)};
    for (Elem x = 0; x < g.order(); ++x) {
        if (x == g.identity())
            continue;
        std::vector<Table> next;
        for (const auto& t : out)
            for (Int v = 0; v < m; ++v) {
                auto u = t;
                u[x] = v;
                next.push_back(u);
            }
        out = next;
    }
    return out;
}

std::vector<Table> characters(const FiniteGroup& g, Int m) {
    std::vector<Table> out;
    for (const auto& t : all_tables(g, m)) {
        bool hom = true;
        for (Elem x = 0; x < g.order() && hom; ++x)
            for (Elem y = 0; y < g.order() && hom; ++y)
                hom = (t[x] + t[y]) % m == t[g.mul(x, y)];
        if (hom)
            out.push_back(t);
    }
    return out;
}

// Encoded 2-cochain sum_k a_k(g) b_k(h) of pairs of 1-cochain tables.
std::vector<Int> cup_sum(const oracle::BruteComplex& bc, Int m, const std::vector<std::pair<Table, Table>>& terms) {
    return bc.encode(2, [&](const std::vector<Elem>& t) {
        Int v = 0;
        for (const auto& [a, b] : terms)
            v += a[t[0]] * b[t[1]];
        return AbElem{v % m};
    });
}

std::vector<Int> encode1(const oracle::BruteComplex& bc, const Table& f) {
    return bc.encode(1, [&](const std::vector<Elem>& t) { return AbElem{f[t[0]]}; });
}

struct BruteMassey {
    bool defined = false;
    bool contains_zero = false;
};

// Order-3 Massey product by enumerating every a_13, a_24.
BruteMassey brute_massey3(const FiniteGroup& g, Int m, const Table& a1, const Table& a2, const Table& a3) {
    oracle::BruteComplex bc(GModule::trivial(g, FinAbGroup({m})));
    BruteMassey r;
    auto lhs13 = cup_sum(bc, m, {{a1, a2}}), lhs24 = cup_sum(bc, m, {{a2, a3}});
    std::vector<Table> sols13, sols24;
    for (const auto& t : all_tables(g, m)) {
        auto dt = bc.d(1, encode1(bc, t));
        if (dt == lhs13)
            sols13.push_back(t);
        if (dt == lhs24)
            sols24.push_back(t);
    }
    for (const auto& a13 : sols13)
        for (const auto& a24 : sols24) {
            r.defined = true;
            if (bc.is_coboundary(2, cup_sum(bc, m, {{a1, a24}, {a13, a3}})))
                r.contains_zero = true;
        }
    return r;
}

struct PairingCase {
    std::string name;
    CoeffPairing pr;
};

std::vector<PairingCase> pairing_cases() {
    auto swap = GModule::from_generator_action(cyclic_group(2), FinAbGroup({2, 2}),
                                               {{1, IntMatrix::from_rows({{0, 1}, {1, 0}})}});
    auto s3sign = sign_module(s3(), s3_sign(), 3);
    return {
        {"mult Z2 over S3", CoeffPairing::multiplication(GModule::trivial(s3(), FinAbGroup({2})))},
        {"mult Z4 over Z4", CoeffPairing::multiplication(GModule::trivial(cyclic_group(4), FinAbGroup({4})))},
        {"mult Z2 over V4", CoeffPairing::multiplication(GModule::trivial(klein(), FinAbGroup({2})))},
        {"ev sign Z3 over S3", CoeffPairing::evaluation(s3sign, GModule::trivial(s3(), FinAbGroup({3})))},
        {"ev swap over Z2", CoeffPairing::evaluation(swap, GModule::trivial(cyclic_group(2), FinAbGroup({2})))},
        {"ev Z2xZ4 into Z4 over Z2",
         CoeffPairing::evaluation(GModule::trivial(cyclic_group(2), FinAbGroup({2, 4})),
                                  GModule::trivial(cyclic_group(2), FinAbGroup({4})))},
    };
}

} // namespace

TEST_CASE("coefficient pairings") {
    auto z4 = GModule::trivial(cyclic_group(4), FinAbGroup({4}));
    auto mult = CoeffPairing::multiplication(z4);
    for (Int x = 0; x < 4; ++x)
        for (Int y = 0; y < 4; ++y)
            CHECK(mult({x}, {y}) == AbElem{(x * y) % 4});

    auto m = GModule::trivial(klein(), FinAbGroup({2, 4}));
    auto a = GModule::trivial(klein(), FinAbGroup({4}));
    auto ev = CoeffPairing::evaluation(m, a);
    auto hm = hom_module(m, a);
    for (const auto& f : hm.hom.group().elements())
        for (const auto& x : m.coeff().elements())
            CHECK(ev(x, f) == hm.hom.to_map(f)(x));
    auto sw = ev.swapped();
    for (const auto& f : hm.hom.group().elements())
        for (const auto& x : m.coeff().elements())
            CHECK(sw(f, x) == ev(x, f));

    auto sign = sign_module(cyclic_group(2), {0, 1}, 3);
    CHECK_THROWS_AS(CoeffPairing::multiplication(sign), Error);
    auto z2 = GModule::trivial(cyclic_group(2), FinAbGroup({2}));
    auto z3 = GModule::trivial(cyclic_group(2), FinAbGroup({3}));
    CHECK_THROWS_AS(CoeffPairing(z2, z3, z3, {AbMap::identity(FinAbGroup({3}))}), Error);
    CHECK_THROWS_AS(CoeffPairing::multiplication(GModule::trivial(cyclic_group(2), FinAbGroup({2, 2}))), Error);
}

TEST_CASE("cup product examples") {
    auto z2 = cyclic_group(2);
    auto m = GModule::trivial(z2, FinAbGroup({2}));
    auto pr = CoeffPairing::multiplication(m);
    Table xt{0, 1};
    auto x = to_cochain(m, xt);
    CHECK(cup(x, Cochain(m, 1), pr).is_zero());
    CHECK(cup(Cochain(m, 2), x, pr).is_zero());

    oracle::BruteComplex bc(m);
    auto xx = cup(x, x, pr);
    CHECK_FALSE(bc.is_coboundary(2, cup_sum(bc, 2, {{xt, xt}})));
    CHECK_FALSE(cohomology(m, 2).class_of(xx).is_zero());

    auto v4 = klein();
    auto mv = GModule::trivial(v4, FinAbGroup({2}));
    auto prv = CoeffPairing::multiplication(mv);
    // projections onto the two factors; element index = 2*first + second
    Table xv{0, 0, 1, 1}, yv{0, 1, 0, 1};
    auto xc = to_cochain(mv, xv), yc = to_cochain(mv, yv);
    oracle::BruteComplex bcv(mv);
    CHECK_FALSE(bcv.is_coboundary(2, cup_sum(bcv, 2, {{xv, yv}})));
    CHECK(bcv.is_coboundary(2, cup_sum(bcv, 2, {{xv, yv}, {yv, xv}})));
    auto h2 = cohomology(mv, 2);
    CHECK_FALSE(h2.class_of(cup(xc, yc, prv)).is_zero());
    CHECK(h2.class_of(cup(xc, yc, prv) + cup(yc, xc, prv)).is_zero());

    CHECK_THROWS_AS(cup(x, xc, prv), Error);
}

TEST_CASE("cup agrees with the pointwise formula") {
    std::mt19937 rng(5);
    for (const auto& g : {cyclic_group(4), klein(), s3()})
        for (Int mod : {2, 3, 4}) {
            auto m = GModule::trivial(g, FinAbGroup({mod}));
            auto pr = CoeffPairing::multiplication(m);
            for (int trial = 0; trial < 10; ++trial) {
                Table a(g.order(), 0), b(g.order(), 0);
                for (Elem x = 0; x < g.order(); ++x)
                    if (x != g.identity()) {
                        a[x] = static_cast<Int>(rng() % mod);
                        b[x] = static_cast<Int>(rng() % mod);
                    }
                auto c = cup(to_cochain(m, a), to_cochain(m, b), pr);
                for (Elem x = 0; x < g.order(); ++x)
                    for (Elem y = 0; y < g.order(); ++y) {
                        if (x == g.identity() || y == g.identity())
                            continue;
                        std::vector<Elem> t{x, y};
                        CHECK(c.value(t) == AbElem{(a[x] * b[y]) % mod});
                    }
            }
        }
}

TEST_CASE("Leibniz rule") {
    std::mt19937 rng(11);
    for (const auto& pc : pairing_cases())
        for (int p = 0; p <= 2; ++p)
            for (int q = 0; q <= 2; ++q)
                for (int trial = 0; trial < 5; ++trial) {
                    INFO(pc.name << " p=" << p << " q=" << q);
                    auto c = random_cochain(pc.pr.left(), p, rng);
                    auto d = random_cochain(pc.pr.right(), q, rng);
                    auto lhs = differential(cup(c, d, pc.pr));
                    auto rhs = cup(differential(c), d, pc.pr) + cup(c, differential(d), pc.pr).scaled(p % 2 ? -1 : 1);
                    CHECK(lhs == rhs);
                }
}

TEST_CASE("cup on classes") {
    std::mt19937 rng(13);
    for (const auto& pc : pairing_cases()) {
        const int max_total = pc.pr.left().group().order() <= 4 ? 3 : 2;
        for (int p = 0; p <= 2; ++p)
            for (int q = 0; p + q <= max_total; ++q) {
                INFO(pc.name << " p=" << p << " q=" << q);
                auto hp = cohomology(pc.pr.left(), p);
                auto hq = cohomology(pc.pr.right(), q);
                auto target = cohomology(pc.pr.target(), p + q);
                auto swapped = pc.pr.swapped();
                for (const auto& a : hp.all_classes())
                    for (const auto& b : hq.all_classes()) {
                        auto ab = cup_classes(a, b, pc.pr, target);
                        auto ba = cup_classes(b, a, swapped, target);
                        CHECK(ab.element() == ((p * q) % 2 ? target.group().neg(ba.element()) : ba.element()));
                        if (p > 0) {
                            auto shifted = a.representative() + differential(random_cochain(pc.pr.left(), p - 1, rng));
                            CHECK(target.project(cup(shifted, b.representative(), pc.pr)) == ab.element());
                        }
                        if (a.is_zero() || b.is_zero())
                            CHECK(ab.is_zero());
                    }
            }
    }
}

TEST_CASE("Massey defining systems") {
    auto z2 = cyclic_group(2), z4 = cyclic_group(4);
    auto m2 = GModule::trivial(z2, FinAbGroup({2}));
    auto x = to_cochain(m2, {0, 1});
    auto ds2 = massey_defining_system({x, x});
    REQUIRE(ds2);
    CHECK(ds2->is_valid());
    auto h2 = cohomology(m2, 2);
    CHECK(classes_equal(massey_product(*ds2), h2.class_of(cup(x, x, CoeffPairing::multiplication(m2)))));
    CHECK_FALSE(massey_defining_system({x, x, x}));
    CHECK(brute_massey3(z2, 2, {0, 1}, {0, 1}, {0, 1}).defined == false);

    auto m4 = GModule::trivial(z4, FinAbGroup({2}));
    auto x4 = to_cochain(m4, {0, 1, 0, 1});
    auto ds3 = massey_defining_system({x4, x4, x4});
    REQUIRE(ds3);
    CHECK(ds3->is_valid());
    CHECK(brute_massey3(z4, 2, {0, 1, 0, 1}, {0, 1, 0, 1}, {0, 1, 0, 1}).defined);

    auto zero = Cochain(m4, 1);
    auto dz = massey_defining_system({zero, zero, zero});
    REQUIRE(dz);
    CHECK(dz->is_valid());

    CHECK_THROWS_AS(massey_defining_system({x}), Error);
    auto not_cocycle = to_cochain(GModule::trivial(z4, FinAbGroup({2})), {0, 1, 0, 0});
    CHECK_THROWS_AS(massey_defining_system({not_cocycle, x4}), Error);
    auto sign = sign_module(z2, {0, 1}, 3);
    CHECK_THROWS_AS(massey_defining_system({Cochain(sign, 1), Cochain(sign, 1)}), Error);
}

TEST_CASE("Massey contains zero examples") {
    auto v4 = klein();
    auto mv = GModule::trivial(v4, FinAbGroup({2}));
    auto xv = to_cochain(mv, {0, 0, 1, 1}), yv = to_cochain(mv, {0, 1, 0, 1});
    auto r = massey_contains_zero({xv, yv});
    CHECK(r.status == MasseyStatus::No);

    auto m4 = GModule::trivial(cyclic_group(4), FinAbGroup({2}));
    auto x4 = to_cochain(m4, {0, 1, 0, 1});
    auto r2 = massey_contains_zero({x4, x4});
    CHECK(r2.status == MasseyStatus::Yes);
    auto r3 = massey_contains_zero({x4, x4, x4});
    REQUIRE(r3.status == MasseyStatus::Yes);
    REQUIRE(r3.witness);
    CHECK(r3.witness->is_valid());
    CHECK(massey_product(*r3.witness).is_zero());

    auto m2 = GModule::trivial(cyclic_group(2), FinAbGroup({2}));
    auto x = to_cochain(m2, {0, 1});
    CHECK(massey_contains_zero({x, x, x}).status == MasseyStatus::No);

    auto m8 = GModule::trivial(cyclic_group(8), FinAbGroup({2}));
    auto x8 = to_cochain(m8, {0, 1, 0, 1, 0, 1, 0, 1});
    CHECK(massey_contains_zero({x8, x8, x8, x8}, MasseyBudget{1}).status == MasseyStatus::BudgetExceeded);
}

TEST_CASE("Massey products agree with exhaustive search") {
    struct Base {
        FiniteGroup g;
        Int m;
    };
    std::vector<Base> bases = {{cyclic_group(2), 2}, {cyclic_group(4), 2}, {klein(), 2},
                               {cyclic_group(3), 3}, {cyclic_group(4), 4}};
    for (const auto& [g, m] : bases) {
        auto mod = GModule::trivial(g, FinAbGroup({m}));
        auto h2 = cohomology(mod, 2);
        auto pr = CoeffPairing::multiplication(mod);
        auto chars = characters(g, m);
        for (const auto& a : chars)
            for (const auto& b : chars) {
                auto ca = to_cochain(mod, a), cb = to_cochain(mod, b);
                auto r2 = massey_contains_zero({ca, cb});
                CHECK((r2.status == MasseyStatus::Yes) == h2.class_of(cup(ca, cb, pr)).is_zero());
                for (const auto& c : chars) {
                    INFO(g.label() << " mod " << m);
                    auto expected = brute_massey3(g, m, a, b, c);
                    auto cc = to_cochain(mod, c);
                    CHECK(massey_defining_system({ca, cb, cc}).has_value() == expected.defined);
                    auto r = massey_contains_zero({ca, cb, cc});
                    CHECK((r.status == MasseyStatus::Yes) == expected.contains_zero);
                    if (r.witness)
                        CHECK(r.witness->is_valid());
                }
            }
    }
}
