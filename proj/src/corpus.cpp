#include "obstrukt/corpus.hpp"

#include "obstrukt/error.hpp"

#include <functional>

namespace obstrukt {

namespace {

FiniteGroup cyc(int n) { return cyclic_group(n); }
FiniteGroup prod(const FiniteGroup& a, const FiniteGroup& b) { return direct_product(a, b); }

std::vector<int> table_of(const FiniteGroup& g, int (*f)(Elem)) {
    std::vector<int> out(g.order());
    for (Elem x = 0; x < g.order(); ++x)
        out[x] = f(x);
    return out;
}

GModule action_by(const FiniteGroup& g, const FinAbGroup& m, const std::function<IntMatrix(Elem)>& rho) {
    std::vector<IntMatrix> action;
    for (Elem x = 0; x < g.order(); ++x)
        action.push_back(rho(x));
    return GModule::from_action_table(g, m, std::move(action));
}

Extension split(const GModule& m) { return extension_from_cocycle(m, Cochain(m, 2)); }

// Carry cocycle of Z/(n k) over Z/n with kernel Z/k, trivial action.
Extension carry(int n, Int k) {
    auto m = GModule::trivial(cyc(n), FinAbGroup({k}));
    return extension_from_cocycle(m, Cochain::from_function(m, 2, [n](std::span<const Elem> t) {
                                      return AbElem{t[0] + t[1] >= n ? 1 : 0};
                                  }));
}

IntMatrix power_mod(const IntMatrix& r, Int k, Int mod) {
    IntMatrix out = IntMatrix::identity(r.rows());
    for (Int i = 0; i < k; ++i) {
        out = out * r;
        for (size_t a = 0; a < out.rows(); ++a)
            for (size_t b = 0; b < out.cols(); ++b)
                out(a, b) = linalg::mod(out(a, b), mod);
    }
    return out;
}

} // namespace

GModule sign_twisted(const FiniteGroup& g, Int n, const std::vector<int>& chi) {
    return action_by(g, FinAbGroup({n}), [&](Elem x) { return IntMatrix::from_rows({{chi[x] ? n - 1 : 1}}); });
}

std::vector<ExtensionInstance> extension_corpus() {
    std::vector<ExtensionInstance> out;
    auto add = [&](std::string name, Extension e, GModule a) {
        out.push_back(ExtensionInstance{std::move(name), std::move(e), std::move(a)});
    };
    auto triv = [](const FiniteGroup& g, std::vector<Int> f) { return GModule::trivial(g, FinAbGroup(std::move(f))); };

    const auto z2 = cyc(2), z3 = cyc(3), z4 = cyc(4);
    const auto v4 = prod(z2, z2);
    const auto z3sq = prod(z3, z3);
    const auto s3 = standard_group(GroupKind::symmetric(3));
    const std::vector<int> s3_sign = {0, 1, 1, 0, 0, 1};
    const auto odd2 = table_of(z2, [](Elem x) { return int(x); });
    const auto odd4 = table_of(z4, [](Elem x) { return int(x % 2); });
    const auto first_v4 = table_of(v4, [](Elem x) { return int(x / 2); });

    // split, trivial action on the kernel
    add("Z2 x Z2, A = Z2", split(triv(z2, {2})), triv(z2, {2}));
    add("Z2 x Z2, A = Z4", split(triv(z2, {2})), triv(z2, {4}));
    add("Z2 x Z2, A = Z4 negated", split(triv(z2, {2})), sign_twisted(z2, 4, odd2));
    add("Z2 x V4, A = Z2", split(triv(v4, {2})), triv(v4, {2}));
    add("V4 x Z2, A = Z2", split(triv(z2, {2, 2})), triv(z2, {2}));
    add("Z3 x Z3, A = Z3", split(triv(z3, {3})), triv(z3, {3}));
    add("Z3 x (Z3)^2, A = Z3", split(triv(z3sq, {3})), triv(z3sq, {3}));
    add("Z4 x Z2, A = Z2", split(triv(z2, {4})), triv(z2, {2}));
    add("Z2 x Z4, A = Z2", split(triv(z4, {2})), triv(z4, {2}));
    add("Z4 x Z4, A = Z4", split(triv(z4, {4})), triv(z4, {4}));
    add("Z2 x S3, A = Z2", split(triv(s3, {2})), triv(s3, {2}));
    add("Z3 x Z2, A = Z3", split(triv(z2, {3})), triv(z2, {3}));

    // split, nontrivial action on the kernel
    add("S3 = Z3 : Z2, A = Z3", split(sign_twisted(z2, 3, odd2)), triv(z2, {3}));
    add("S3 = Z3 : Z2, A = Z3 twisted", split(sign_twisted(z2, 3, odd2)), sign_twisted(z2, 3, odd2));
    add("D4 = V4 : Z2, A = Z2",
        split(action_by(z2, FinAbGroup({2, 2}),
                        [](Elem x) { return x ? IntMatrix::from_rows({{0, 1}, {1, 0}}) : IntMatrix::identity(2); })),
        triv(z2, {2}));
    add("D4 = Z4 : Z2, A = Z4 twisted", split(sign_twisted(z2, 4, odd2)), sign_twisted(z2, 4, odd2));
    add("A4 = V4 : Z3, A = Z2",
        split(action_by(z3, FinAbGroup({2, 2}),
                        [](Elem x) { return power_mod(IntMatrix::from_rows({{0, 1}, {1, 1}}), x, 2); })),
        triv(z3, {2}));
    add("Dic3 = Z3 : Z4, A = Z3 twisted", split(sign_twisted(z4, 3, odd4)), sign_twisted(z4, 3, odd4));
    add("D6 = Z3 : V4, A = Z3", split(sign_twisted(v4, 3, first_v4)), triv(v4, {3}));
    add("F20 = Z5 : Z4, A = Z5",
        split(action_by(z4, FinAbGroup({5}), [](Elem x) { return power_mod(IntMatrix::from_rows({{2}}), x, 5); })),
        triv(z4, {5}));
    add("Z3 : S3, A = Z3 twisted", split(sign_twisted(s3, 3, s3_sign)), sign_twisted(s3, 3, s3_sign));

    // nonsplit
    add("Z4 over Z2, A = Z2", carry(2, 2), triv(z2, {2}));
    add("Z9 over Z3, A = Z3", carry(3, 3), triv(z3, {3}));
    add("Z8 over Z4, A = Z2", carry(4, 2), triv(z4, {2}));
    const auto q8 = standard_group(GroupKind::dicyclic(2));
    {
        auto center = generated_subgroup(q8, std::vector<Elem>{2});
        auto q = quotient(q8, center);
        add("Q8 over V4, A = Z2", extension_from_surjection(q.projection), triv(q.group, {2}));
        auto cyc4 = generated_subgroup(q8, std::vector<Elem>{1});
        auto q2 = quotient(q8, cyc4);
        add("Q8 over Z2 with kernel Z4, A = Z2", extension_from_surjection(q2.projection), triv(q2.group, {2}));
    }
    return out;
}

namespace {

Subgroup whole(const FiniteGroup& g) {
    std::vector<Elem> all(g.order());
    for (Elem x = 0; x < g.order(); ++x)
        all[x] = x;
    return Subgroup(g, std::move(all));
}

Subgroup center_of(const FiniteGroup& g) {
    std::vector<Elem> z;
    for (Elem x = 0; x < g.order(); ++x) {
        bool central = true;
        for (Elem s : g.generators())
            central = central && g.mul(x, s) == g.mul(s, x);
        if (central)
            z.push_back(x);
    }
    return Subgroup(g, std::move(z));
}

Subgroup gen(const FiniteGroup& g, std::vector<Elem> gens) { return generated_subgroup(g, gens); }

// Evenly spread choice of at most k items, always keeping the first.
template <class T> std::vector<T> spread(std::vector<T> v, size_t k) {
    if (v.size() <= k)
        return v;
    std::vector<T> out;
    for (size_t i = 0; i < k; ++i)
        out.push_back(v[i * v.size() / k]);
    return out;
}

} // namespace

std::vector<EmbeddingInstance> embedding_corpus(size_t max_psi) {
    const auto z2 = cyc(2), z4 = cyc(4), z8 = cyc(8);
    const auto v4 = prod(z2, z2);
    const auto q8 = standard_group(GroupKind::dicyclic(2));
    const auto d4 = standard_group(GroupKind::dihedral(4));
    const auto dic3 = standard_group(GroupKind::dicyclic(3));
    const auto s3 = standard_group(GroupKind::symmetric(3));
    const auto s4 = standard_group(GroupKind::symmetric(4));
    const auto a4 = standard_group(GroupKind::alternating(4));
    const auto sl23 = standard_group(GroupKind::sl2(3));
    const auto f20 = split(action_by(z4, FinAbGroup({5}), [](Elem x) {
                               return power_mod(IntMatrix::from_rows({{2}}), x, 5);
                           })).total();
    const auto f20_kernel = gen(f20, {1}); // (1, 0) generates Z/5

    struct Surj {
        std::string name;
        FiniteGroup g1;
        Subgroup kernel;
    };
    std::vector<Surj> surjections = {
        {"Z4 -> Z2", z4, gen(z4, {2})},
        {"Z8 -> Z4", z8, gen(z8, {4})},
        {"Z8 -> Z2", z8, gen(z8, {2})},
        {"Z9 -> Z3", cyc(9), gen(cyc(9), {3})},
        {"Z6 -> Z3", cyc(6), gen(cyc(6), {3})},
        {"Z6 -> Z2", cyc(6), gen(cyc(6), {2})},
        {"Z16 -> Z8", cyc(16), gen(cyc(16), {8})},
        {"V4 -> Z2", v4, gen(v4, {2})},
        {"Z2xZ4 -> Z4", prod(z2, z4), gen(prod(z2, z4), {4})},
        {"Q8 -> V4", q8, center_of(q8)},
        {"Q8 -> Z2", q8, gen(q8, {1})},
        {"D4 -> V4", d4, center_of(d4)},
        {"D4 -> Z2 (rotations)", d4, gen(d4, {1})},
        {"D4 -> Z2 (Klein)", d4, gen(d4, {2, 4})},
        {"S3 -> Z2", s3, commutator_subgroup(s3, whole(s3))},
        {"A4 -> Z3", a4, commutator_subgroup(a4, whole(a4))},
        {"S4 -> S3", s4, commutator_subgroup(s4, commutator_subgroup(s4, whole(s4)))},
        {"Dic3 -> Z4", dic3, gen(dic3, {2})},
        {"Dic3 -> Z2", dic3, gen(dic3, {1})},
        {"SL(2,3) -> A4", sl23, center_of(sl23)},
        {"F20 -> Z4", f20, f20_kernel},
        {"S4 -> Z2 (kernel A4)", s4, commutator_subgroup(s4, whole(s4))},
        {"SL(2,3) -> Z3 (kernel Q8)", sl23, commutator_subgroup(sl23, whole(sl23))},
    };

    std::vector<std::pair<std::string, FiniteGroup>> bases = {
        {"Z2", z2},
        {"Z3", cyc(3)},
        {"Z4", z4},
        {"V4", v4},
        {"Z6", cyc(6)},
        {"Z8", z8},
        {"D4", d4},
        {"Q8", q8},
        {"Z2xZ4", prod(z2, z4)},
        {"(Z2)^3", prod(v4, z2)},
        {"S3", s3},
        {"Dic3", dic3},
        {"A4", a4},
        {"Z4xZ4", prod(z4, z4)},
        {"D8", standard_group(GroupKind::dihedral(8))},
        {"Z2xD4", prod(z2, d4)},
    };

    std::vector<EmbeddingInstance> out;
    for (const auto& s : surjections) {
        auto q = quotient(s.g1, s.kernel);
        auto arrow = s.name.find("-> ") + 3;
        auto g2 = q.group.relabeled(s.name.substr(arrow, s.name.find(' ', arrow) - arrow));
        GroupHom phi(s.g1, g2, q.projection.table());
        for (const auto& [bname, base] : bases) {
            auto psis = spread(enumerate_homs(base, g2), max_psi);
            for (size_t k = 0; k < psis.size(); ++k)
                out.push_back(EmbeddingInstance{s.name + " over " + bname + " #" + std::to_string(k),
                                                EmbeddingProblem(phi, psis[k])});
        }
    }
    return out;
}

std::vector<DwyerInstance> dwyer_corpus(bool extended) {
    const auto z2 = cyc(2);
    std::vector<std::pair<std::string, FiniteGroup>> bases = {
        {"Z2", z2},
        {"Z4", cyc(4)},
        {"(Z2)^2", prod(z2, z2)},
        {"Z8", cyc(8)},
        {"D4", standard_group(GroupKind::dihedral(4))},
    };
    if (extended) {
        bases.emplace_back("Q8", standard_group(GroupKind::dicyclic(2)));
        bases.emplace_back("Z2xZ4", prod(z2, cyc(4)));
    }
    std::vector<DwyerInstance> out;
    for (const auto& [name, base] : bases) {
        auto chars = enumerate_homs(base, z2);
        for (int n = 2; n <= 3; ++n) {
            std::vector<size_t> idx(n, 0);
            while (true) {
                std::vector<GroupHom> tuple;
                std::string label = name + " (";
                for (int i = 0; i < n; ++i) {
                    tuple.push_back(chars[idx[i]]);
                    label += (i ? "," : "") + std::to_string(idx[i]);
                }
                out.push_back(DwyerInstance{label + ")", base, std::move(tuple)});
                int i = n - 1;
                while (i >= 0 && ++idx[i] == chars.size())
                    idx[i--] = 0;
                if (i < 0)
                    break;
            }
        }
    }
    return out;
}

} // namespace obstrukt
