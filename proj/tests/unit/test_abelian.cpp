#include "obstrukt/abelian.hpp"
#include "obstrukt/error.hpp"

#include <catch_amalgamated.hpp>
#include <gmpxx.h>

#include <functional>
#include <numeric>
#include <random>
#include <set>

using namespace obstrukt;

namespace {

using BigMat = std::vector<std::vector<mpz_class>>;

BigMat big(const IntMatrix& m) {
    BigMat b(m.rows(), std::vector<mpz_class>(m.cols()));
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j)
            b[i][j] = mpz_class(static_cast<long>(m(i, j)));
    return b;
}

BigMat mul(const BigMat& a, const BigMat& b, size_t inner, size_t cols) {
    BigMat r(a.size(), std::vector<mpz_class>(cols, 0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < inner; ++k)
            for (size_t j = 0; j < cols; ++j)
                r[i][j] += a[i][k] * b[k][j];
    return r;
}

void check_snf(const IntMatrix& m) {
    auto s = snf(m);
    auto prod = mul(mul(big(s.U), big(m), m.rows(), m.cols()), big(s.V), m.cols(), m.cols());
    CHECK(prod == big(s.D));
    CHECK(std::abs(determinant(s.U)) == 1);
    CHECK(std::abs(determinant(s.V)) == 1);
    Int prev = 1;
    bool zero_seen = false;
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) {
            if (i != j) {
                CHECK(s.D(i, j) == 0);
                continue;
            }
            Int d = s.D(i, i);
            CHECK(d >= 0);
            if (d == 0) {
                zero_seen = true;
                continue;
            }
            CHECK_FALSE(zero_seen);
            CHECK(d % prev == 0);
            prev = d;
        }
}

// All matrices of an additive map, by brute force over entries.
std::set<std::vector<Int>> all_maps(const FinAbGroup& m, const FinAbGroup& a) {
    std::set<std::vector<Int>> out;
    size_t cells = m.rank() * a.rank();
    std::vector<Int> entries(cells, 0);
    std::function<void(size_t)> rec = [&](size_t c) {
        if (c == cells) {
            for (size_t j = 0; j < m.rank(); ++j)
                for (size_t i = 0; i < a.rank(); ++i)
                    if ((entries[i * m.rank() + j] * m.factors()[j]) % a.factors()[i] != 0)
                        return;
            out.insert(entries);
            return;
        }
        for (Int v = 0; v < a.factors()[c / m.rank()]; ++v) {
            entries[c] = v;
            rec(c + 1);
        }
    };
    rec(0);
    return out;
}

std::vector<Int> flat(const IntMatrix& m) {
    std::vector<Int> v;
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j)
            v.push_back(m(i, j));
    return v;
}

FinAbGroup random_group(std::mt19937& rng) {
    static const std::vector<std::vector<Int>> shapes = {{},     {2},       {3},       {4},    {6},
                                                         {2, 2}, {2, 4},    {3, 6},    {2, 6}, {12},
                                                         {8},    {2, 2, 2}, {2, 2, 4}, {9},    {3, 3}};
    return FinAbGroup(shapes[rng() % shapes.size()]);
}

AbMap random_map(std::mt19937& rng, const FinAbGroup& s, const FinAbGroup& t) {
    IntMatrix m(t.rank(), s.rank());
    for (size_t i = 0; i < t.rank(); ++i)
        for (size_t j = 0; j < s.rank(); ++j) {
            Int ti = t.factors()[i];
            Int step = ti / std::gcd(ti, s.factors()[j]);
            m(i, j) = step * static_cast<Int>(rng() % 17);
        }
    return AbMap(s, t, m);
}

} // namespace

TEST_CASE("smith normal form examples") {
    auto s = snf(IntMatrix::identity(3));
    CHECK(s.D == IntMatrix::identity(3));
    auto d = snf(IntMatrix::from_rows({{2, 0}, {0, 3}}));
    CHECK(d.D == IntMatrix::from_rows({{1, 0}, {0, 6}}));
    CHECK(snf(IntMatrix(2, 3)).D.is_zero());
    check_snf(IntMatrix::from_rows({{2, 0}, {0, 3}}));
    check_snf(IntMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
}

TEST_CASE("smith normal form on random and large matrices") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
        IntMatrix m(r, c);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < c; ++j)
                m(i, j) = static_cast<Int>(rng() % 41) - 20;
        check_snf(m);
    }
    // entries near 2^40 force the arbitrary-precision path
    for (int trial = 0; trial < 20; ++trial) {
        IntMatrix m(4, 4);
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = 0; j < 4; ++j)
                m(i, j) = static_cast<Int>(rng() % 2000) * 1'000'000'007LL - 999'000'000'000LL;
        try {
            check_snf(m);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::BudgetExceeded);
        }
    }
}

TEST_CASE("kernel image cokernel examples") {
    FinAbGroup z4({4}), z2({2}), z6({6});
    auto zero = AbMap::zero(z4, z2);
    CHECK(kernel(zero).group == z4);
    CHECK(image(zero).group.is_trivial());

    AbMap red(z4, z2, IntMatrix::from_rows({{1}}));
    CHECK(kernel(red).group == z2);
    CHECK(cokernel(red).group.is_trivial());

    AbMap twice(z6, z6, IntMatrix::from_rows({{2}}));
    std::set<Int> brute;
    for (Int x = 0; x < 6; ++x)
        if (2 * x % 6 == 0)
            brute.insert(x);
    CHECK(brute == std::set<Int>{0, 3});
    auto k = kernel(twice);
    CHECK(k.group == z2);
    CHECK(k.map(k.group.basis(0)) == AbElem{3});
    CHECK(image(twice).group == FinAbGroup({3}));
    CHECK(cokernel(twice).group == z2);

    CHECK_THROWS_AS(AbMap(z2, z4, IntMatrix::from_rows({{1}})), Error);
}

TEST_CASE("exactness on random maps") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        auto s = random_group(rng), t = random_group(rng);
        auto f = random_map(rng, s, t);
        auto k = kernel(f), im = image(f), ck = cokernel(f);
        // brute-force kernel and image
        std::set<Int> bk, bi;
        for (const auto& x : s.elements()) {
            auto y = f(x);
            bi.insert(t.index(y));
            if (t.is_zero(y))
                bk.insert(s.index(x));
        }
        CHECK(k.group.order() == static_cast<Int>(bk.size()));
        CHECK(im.group.order() == static_cast<Int>(bi.size()));
        CHECK(k.group.order() * im.group.order() == s.order());
        CHECK(ck.group.order() * im.group.order() == t.order());
        std::set<Int> kin, iin;
        for (const auto& x : k.group.elements()) {
            CHECK(f(k.map(x)) == t.zero());
            kin.insert(s.index(k.map(x)));
        }
        for (const auto& x : im.group.elements())
            iin.insert(t.index(im.map(x)));
        CHECK(kin == bk);
        CHECK(iin == bi);
        // image equals the kernel of the cokernel projection
        std::set<Int> kc;
        for (const auto& y : t.elements())
            if (ck.group.is_zero(ck.map(y)))
                kc.insert(t.index(y));
        CHECK(kc == bi);
        // preimage agrees with membership in the image
        for (const auto& y : t.elements()) {
            auto x = preimage(f, y);
            CHECK(x.has_value() == (bi.count(t.index(y)) == 1));
            if (x)
                CHECK(f(*x) == y);
        }
    }
}

TEST_CASE("hom groups") {
    FinAbGroup z2({2}), z3({3}), z4({4}), v({2, 2});
    CHECK(hom_group(z2, z3).group().is_trivial());
    CHECK(hom_group(z4, z2).group().order() == 2);
    CHECK(hom_group(v, z4).group().order() == 4);
    for (const auto& [m, a] : std::vector<std::pair<FinAbGroup, FinAbGroup>>{
             {v, z4}, {z4, v}, {FinAbGroup({2, 4}), FinAbGroup({2, 4})}, {FinAbGroup({6}), FinAbGroup({2, 6})},
             {FinAbGroup({3, 3}), FinAbGroup({9})}, {FinAbGroup(), z2}}) {
        auto hg = hom_group(m, a);
        auto brute = all_maps(m, a);
        CHECK(hg.group().order() == static_cast<Int>(brute.size()));
        std::set<std::vector<Int>> seen;
        for (const auto& h : hg.group().elements()) {
            auto f = hg.to_map(h);
            seen.insert(flat(f.matrix()));
            CHECK(hg.from_map(f) == h);
        }
        CHECK(seen == brute);
        // the indexer is additive
        auto els = hg.group().elements();
        for (size_t i = 0; i < els.size() && i < 8; ++i)
            for (size_t j = 0; j < els.size() && j < 8; ++j) {
                auto sum = hg.to_map(hg.group().add(els[i], els[j]));
                for (const auto& x : m.elements())
                    CHECK(sum(x) == a.add(hg.to_map(els[i])(x), hg.to_map(els[j])(x)));
            }
    }
}

TEST_CASE("duals") {
    for (Int n : {2, 3, 5, 12})
        CHECK(dual(FinAbGroup({n})).group() == FinAbGroup({n}));
    for (const auto& m : {FinAbGroup({2, 4}), FinAbGroup({2, 2, 6}), FinAbGroup({3}), FinAbGroup()}) {
        auto d = dual(m);
        CHECK(d.group() == m);
        CHECK(dual(d.group()).group() == m);
        for (const auto& x : m.elements())
            CHECK(d.evaluate(x, d.group().zero()) == 0);
        // radicals on both sides are zero
        for (const auto& x : m.elements()) {
            bool all_zero = true;
            for (const auto& phi : d.group().elements())
                all_zero &= d.evaluate(x, phi) == 0;
            CHECK(all_zero == m.is_zero(x));
        }
        for (const auto& phi : d.group().elements()) {
            bool all_zero = true;
            for (const auto& x : m.elements())
                all_zero &= d.evaluate(x, phi) == 0;
            CHECK(all_zero == d.group().is_zero(phi));
        }
    }
}

TEST_CASE("abelian structure of subgroups") {
    auto g = direct_product(cyclic_group(4), cyclic_group(6));
    auto s = abelian_structure(Subgroup(g, [&] {
        std::vector<Elem> all(g.order());
        std::iota(all.begin(), all.end(), 0);
        return all;
    }()));
    CHECK(s.group == FinAbGroup({2, 12}));
    CHECK(s.embedding.is_injective());

    auto q8 = standard_group(GroupKind::dicyclic(2));
    auto cyc = generated_subgroup(q8, std::vector<Elem>{1});
    auto c = abelian_structure(cyc);
    CHECK(c.group == FinAbGroup({4}));
    CHECK_THROWS_AS(abelian_structure(Subgroup(q8, {0, 1, 2, 3, 4, 5, 6, 7})), Error);

    auto add = additive_group(FinAbGroup({2, 4}));
    CHECK(add.order() == 8);
    CHECK(add.exponent() == 4);
}

TEST_CASE("modular linear algebra helpers") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        Int e = std::vector<Int>{2, 3, 4, 6, 8, 12, 9}[rng() % 7];
        size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        IntMatrix a(r, c);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < c; ++j)
                a(i, j) = static_cast<Int>(rng() % e);
        auto s = linalg::snf_mod(a, e);
        // U a V == diag and U Uinv == I mod e
        auto prod = s.U * a * s.V;
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < c; ++j)
                CHECK(linalg::mod(prod(i, j), e) == (i == j ? s.diag[i] : 0));
        auto id = s.U * s.Uinv;
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j)
                CHECK(linalg::mod(id(i, j), e) == (i == j ? 1 : 0));
        // solvability matches brute force over all x
        std::set<std::vector<Int>> reach;
        std::vector<Int> x(c, 0);
        std::function<void(size_t)> rec = [&](size_t k) {
            if (k == c) {
                auto y = a * x;
                for (auto& v : y)
                    v = linalg::mod(v, e);
                reach.insert(y);
                return;
            }
            for (Int v = 0; v < e; ++v) {
                x[k] = v;
                rec(k + 1);
            }
        };
        rec(0);
        std::vector<Int> y(r, 0);
        std::function<void(size_t)> ry = [&](size_t k) {
            if (k == r) {
                auto sol = linalg::solve(s, y);
                CHECK(sol.has_value() == (reach.count(y) == 1));
                if (sol) {
                    auto back = a * *sol;
                    for (size_t i = 0; i < r; ++i)
                        CHECK(linalg::mod(back[i], e) == y[i]);
                }
                return;
            }
            for (Int v = 0; v < e; ++v) {
                y[k] = v;
                ry(k + 1);
            }
        };
        ry(0);
    }
}
