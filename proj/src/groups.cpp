#include "obstrukt/groups.hpp"

#include "obstrukt/error.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace obstrukt {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::NoIdentity: return "NoIdentity";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::UnsupportedParameter: return "UnsupportedParameter";
    case ErrorKind::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorKind::GeneratorsDontGenerate: return "GeneratorsDontGenerate";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::CodomainMismatch: return "CodomainMismatch";
    case ErrorKind::PhiNotSurjective: return "PhiNotSurjective";
    case ErrorKind::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::GroupMismatch: return "GroupMismatch";
    case ErrorKind::NotACocycle: return "NotACocycle";
    case ErrorKind::NotEquivariant: return "NotEquivariant";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::ExtensionMismatch: return "ExtensionMismatch";
    case ErrorKind::NotInKernel: return "NotInKernel";
    case ErrorKind::KernelNotAbelian: return "KernelNotAbelian";
    case ErrorKind::ProblemMismatch: return "ProblemMismatch";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

namespace {

std::vector<Elem> closure(int order, Elem identity, std::span<const Elem> gens,
                          const auto& mul) {
    std::vector<bool> seen(order, false);
    std::vector<Elem> out{identity};
    seen[identity] = true;
    for (size_t i = 0; i < out.size(); ++i)
        for (Elem s : gens) {
            Elem y = mul(out[i], s);
            if (!seen[y]) {
                seen[y] = true;
                out.push_back(y);
            }
        }
    return out;
}

} // namespace

// ---------------------------------------------------------------- FiniteGroup

FiniteGroup::FiniteGroup() : d_(std::make_shared<Data>()) {
    auto d = std::make_shared<Data>();
    d_ = finish(d);
}

std::shared_ptr<FiniteGroup::Data> FiniteGroup::finish(std::shared_ptr<Data> d) {
    const int n = d->order;
    auto mul = [&](Elem a, Elem b) { return static_cast<Elem>(d->table[size_t(a) * n + b]); };

    // Generators: for small groups pick the element that enlarges the current
    // subgroup the most (ties to the smallest index); otherwise first missing index.
    std::vector<Elem> gens;
    std::vector<Elem> current{d->identity};
    std::vector<bool> in(n, false);
    in[d->identity] = true;
    while (static_cast<int>(current.size()) < n) {
        Elem best = -1;
        if (n <= 256) {
            size_t best_size = 0;
            for (Elem x = 0; x < n; ++x) {
                if (in[x])
                    continue;
                auto trial = gens;
                trial.push_back(x);
                size_t sz = closure(n, d->identity, trial, mul).size();
                if (sz > best_size) {
                    best_size = sz;
                    best = x;
                }
            }
        } else {
            for (Elem x = 0; x < n; ++x)
                if (!in[x]) {
                    best = x;
                    break;
                }
        }
        gens.push_back(best);
        current = closure(n, d->identity, gens, mul);
        std::fill(in.begin(), in.end(), false);
        for (Elem x : current)
            in[x] = true;
    }
    // drop redundant generators
    for (size_t i = gens.size(); i-- > 0;) {
        auto trial = gens;
        trial.erase(trial.begin() + static_cast<long>(i));
        if (static_cast<int>(closure(n, d->identity, trial, mul).size()) == n)
            gens = trial;
    }
    d->generators = gens;
    return d;
}

FiniteGroup FiniteGroup::from_flat_table(int order, std::vector<uint16_t> table, std::string label) {
    if (order < 1 || order > kMaxOrder)
        fail(ErrorKind::UnsupportedParameter, "group order " + std::to_string(order) + " out of range");
    auto d = std::make_shared<Data>();
    d->order = order;
    d->table = std::move(table);
    d->label = std::move(label);
    auto at = [&](int a, int b) { return static_cast<int>(d->table[size_t(a) * order + b]); };
    d->identity = -1;
    for (int e = 0; e < order && d->identity < 0; ++e) {
        bool ok = true;
        for (int x = 0; x < order && ok; ++x)
            ok = at(e, x) == x && at(x, e) == x;
        if (ok)
            d->identity = e;
    }
    if (d->identity < 0)
        fail(ErrorKind::NoIdentity, "no two-sided identity in table of order " + std::to_string(order));
    d->inverse.assign(order, -1);
    for (int x = 0; x < order; ++x) {
        for (int y = 0; y < order; ++y)
            if (at(x, y) == d->identity && at(y, x) == d->identity) {
                d->inverse[x] = y;
                break;
            }
        if (d->inverse[x] < 0)
            fail(ErrorKind::NotInvertible, "element " + std::to_string(x) + " has no inverse");
    }
    return FiniteGroup(finish(d));
}

FiniteGroup FiniteGroup::from_cayley_table(const std::vector<std::vector<int>>& table, std::string label) {
    const int n = static_cast<int>(table.size());
    if (n < 1 || n > kMaxOrder)
        fail(ErrorKind::InvalidInput, "table must have between 1 and 10000 rows");
    std::vector<uint16_t> flat(size_t(n) * n);
    for (int a = 0; a < n; ++a) {
        if (static_cast<int>(table[a].size()) != n)
            fail(ErrorKind::InvalidInput, "row " + std::to_string(a) + " has wrong length");
        for (int b = 0; b < n; ++b) {
            int v = table[a][b];
            if (v < 0 || v >= n)
                fail(ErrorKind::InvalidInput, "entry (" + std::to_string(a) + "," + std::to_string(b) +
                                                  ") out of range");
            flat[size_t(a) * n + b] = static_cast<uint16_t>(v);
        }
    }
    auto at = [&](int a, int b) { return static_cast<int>(flat[size_t(a) * n + b]); };
    auto check = [&](int a, int b, int c) {
        if (at(at(a, b), c) != at(a, at(b, c))) {
            std::ostringstream os;
            os << "(" << a << "*" << b << ")*" << c << " != " << a << "*(" << b << "*" << c << ")";
            fail(ErrorKind::NotAssociative, os.str());
        }
    };
    if (n <= 256) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    check(a, b, c);
    } else {
        std::mt19937_64 rng(0x5eed);
        std::uniform_int_distribution<int> pick(0, n - 1);
        for (int t = 0; t < 200000; ++t)
            check(pick(rng), pick(rng), pick(rng));
    }
    return from_flat_table(n, std::move(flat), label.empty() ? "G" + std::to_string(n) : std::move(label));
}

Elem FiniteGroup::pow(Elem a, int64_t k) const {
    if (k < 0) {
        a = inv(a);
        k = -k;
    }
    Elem r = identity();
    Elem b = a;
    while (k) {
        if (k & 1)
            r = mul(r, b);
        b = mul(b, b);
        k >>= 1;
    }
    return r;
}

int FiniteGroup::element_order(Elem a) const {
    int k = 1;
    Elem x = a;
    while (x != identity()) {
        x = mul(x, a);
        ++k;
    }
    return k;
}

bool FiniteGroup::is_abelian() const {
    for (Elem a : generators())
        for (Elem b : generators())
            if (mul(a, b) != mul(b, a))
                return false;
    return true;
}

int FiniteGroup::exponent() const {
    int e = 1;
    for (Elem x = 0; x < order(); ++x)
        e = std::lcm(e, element_order(x));
    return e;
}

std::vector<std::vector<int>> FiniteGroup::cayley_table() const {
    std::vector<std::vector<int>> t(order(), std::vector<int>(order()));
    for (int a = 0; a < order(); ++a)
        for (int b = 0; b < order(); ++b)
            t[a][b] = mul(a, b);
    return t;
}

bool FiniteGroup::same_as(const FiniteGroup& other) const {
    return d_ == other.d_ || (d_->order == other.d_->order && d_->table == other.d_->table);
}

FiniteGroup FiniteGroup::relabeled(std::string label) const {
    auto d = std::make_shared<Data>(*d_);
    d->label = std::move(label);
    return FiniteGroup(std::move(d));
}

// ---------------------------------------------------------------- GroupHom

GroupHom::GroupHom(FiniteGroup domain, FiniteGroup codomain, std::vector<Elem> image)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), image_(std::move(image)) {
    ensure(static_cast<int>(image_.size()) == domain_.order(), "hom table size");
}

bool GroupHom::is_injective() const {
    std::vector<bool> hit(codomain_.order(), false);
    for (Elem y : image_) {
        if (hit[y])
            return false;
        hit[y] = true;
    }
    return true;
}

bool GroupHom::is_surjective() const {
    std::vector<bool> hit(codomain_.order(), false);
    int count = 0;
    for (Elem y : image_)
        if (!hit[y]) {
            hit[y] = true;
            ++count;
        }
    return count == codomain_.order();
}

GroupHom GroupHom::identity(const FiniteGroup& g) {
    std::vector<Elem> t(g.order());
    std::iota(t.begin(), t.end(), 0);
    return GroupHom(g, g, std::move(t));
}

GroupHom GroupHom::trivial(const FiniteGroup& domain, const FiniteGroup& codomain) {
    return GroupHom(domain, codomain, std::vector<Elem>(domain.order(), codomain.identity()));
}

GroupHom compose(const GroupHom& after, const GroupHom& before) {
    if (!before.codomain().same_as(after.domain()))
        fail(ErrorKind::CodomainMismatch, "cannot compose: codomain/domain differ");
    std::vector<Elem> t(before.domain().order());
    for (Elem x = 0; x < before.domain().order(); ++x)
        t[x] = after(before(x));
    return GroupHom(before.domain(), after.codomain(), std::move(t));
}

void check_homomorphism(const GroupHom& h) {
    const auto& g = h.domain();
    const auto& k = h.codomain();
    for (Elem a = 0; a < g.order(); ++a)
        for (Elem b = 0; b < g.order(); ++b)
            if (h(g.mul(a, b)) != k.mul(h(a), h(b)))
                fail(ErrorKind::NotAHomomorphism,
                     "h(" + std::to_string(a) + "*" + std::to_string(b) + ") != h(a)h(b)");
}

// ---------------------------------------------------------------- Subgroup

Subgroup::Subgroup(FiniteGroup parent, std::vector<Elem> members)
    : parent_(std::move(parent)), members_(std::move(members)), mask_(parent_.order(), false) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    for (Elem x : members_)
        mask_[x] = true;
    ensure(mask_[parent_.identity()], "subgroup must contain the identity");
    for (Elem a : members_) {
        ensure(mask_[parent_.inv(a)], "subgroup not closed under inverse");
        for (Elem b : members_)
            ensure(mask_[parent_.mul(a, b)], "subgroup not closed under multiplication");
    }
}

bool Subgroup::is_normal() const {
    for (Elem g : parent_.generators())
        for (Elem n : members_)
            if (!mask_[parent_.conj(g, n)])
                return false;
    return true;
}

bool Subgroup::is_abelian() const {
    for (Elem a : members_)
        for (Elem b : members_)
            if (parent_.mul(a, b) != parent_.mul(b, a))
                return false;
    return true;
}

std::pair<FiniteGroup, GroupHom> Subgroup::as_group(std::string label) const {
    const int n = order();
    std::vector<int> pos(parent_.order(), -1);
    for (int k = 0; k < n; ++k)
        pos[members_[k]] = k;
    std::vector<uint16_t> flat(size_t(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            flat[size_t(a) * n + b] = static_cast<uint16_t>(pos[parent_.mul(members_[a], members_[b])]);
    auto sub = FiniteGroup::from_flat_table(n, std::move(flat),
                                            label.empty() ? "sub(" + parent_.label() + ")" : std::move(label));
    return {sub, GroupHom(sub, parent_, members_)};
}

Subgroup generated_subgroup(const FiniteGroup& g, std::span<const Elem> gens) {
    auto mul = [&](Elem a, Elem b) { return g.mul(a, b); };
    return Subgroup(g, closure(g.order(), g.identity(), gens, mul));
}

GroupHom hom(const FiniteGroup& domain, const FiniteGroup& codomain,
             const std::vector<std::pair<Elem, Elem>>& generator_images) {
    std::vector<Elem> gens, imgs;
    for (auto [x, y] : generator_images) {
        if (x < 0 || x >= domain.order() || y < 0 || y >= codomain.order())
            fail(ErrorKind::InvalidInput, "generator image pair out of range");
        gens.push_back(x);
        imgs.push_back(y);
    }
    std::vector<Elem> map(domain.order(), -1);
    std::vector<Elem> order{domain.identity()};
    map[domain.identity()] = codomain.identity();
    for (size_t i = 0; i < order.size(); ++i) {
        Elem x = order[i];
        for (size_t j = 0; j < gens.size(); ++j) {
            Elem y = domain.mul(x, gens[j]);
            Elem v = codomain.mul(map[x], imgs[j]);
            if (map[y] < 0) {
                map[y] = v;
                order.push_back(y);
            } else if (map[y] != v) {
                fail(ErrorKind::NotAHomomorphism, "element " + std::to_string(x) + " times generator " +
                                                      std::to_string(gens[j]) + " maps inconsistently");
            }
        }
    }
    if (static_cast<int>(order.size()) != domain.order())
        fail(ErrorKind::GeneratorsDontGenerate, "given elements generate a subgroup of order " +
                                                    std::to_string(order.size()) + " < " +
                                                    std::to_string(domain.order()));
    return GroupHom(domain, codomain, std::move(map));
}

Subgroup kernel(const GroupHom& h) {
    std::vector<Elem> m;
    for (Elem x = 0; x < h.domain().order(); ++x)
        if (h(x) == h.codomain().identity())
            m.push_back(x);
    return Subgroup(h.domain(), std::move(m));
}

Subgroup image(const GroupHom& h) { return Subgroup(h.codomain(), h.table()); }

Quotient quotient(const FiniteGroup& g, const Subgroup& n) {
    if (!n.parent().same_as(g))
        fail(ErrorKind::GroupMismatch, "subgroup of a different group");
    if (!n.is_normal())
        fail(ErrorKind::NotNormal, "subgroup is not normal in " + g.label());
    std::vector<Elem> coset(g.order(), -1);
    std::vector<Elem> reps;
    for (Elem x = 0; x < g.order(); ++x) {
        if (coset[x] >= 0)
            continue;
        Elem c = static_cast<Elem>(reps.size());
        reps.push_back(x);
        for (Elem k : n.members())
            coset[g.mul(x, k)] = c;
    }
    const int q = static_cast<int>(reps.size());
    std::vector<uint16_t> flat(size_t(q) * q);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            flat[size_t(a) * q + b] = static_cast<uint16_t>(coset[g.mul(reps[a], reps[b])]);
    auto qg = FiniteGroup::from_flat_table(q, std::move(flat), g.label() + "/N");
    return {qg, GroupHom(g, qg, coset), reps};
}

FiberProduct::FiberProduct()
    : to_first(GroupHom::identity(FiniteGroup())), to_second(GroupHom::identity(FiniteGroup())) {}

Elem FiberProduct::index_of(Elem first, Elem second) const {
    return lookup_[size_t(first) * second_order_ + second];
}

FiberProduct fiber_product(const GroupHom& phi, const GroupHom& psi) {
    if (!phi.codomain().same_as(psi.codomain()))
        fail(ErrorKind::CodomainMismatch, "phi and psi have different codomains");
    if (!phi.is_surjective())
        fail(ErrorKind::PhiNotSurjective, "phi is not surjective");
    const auto& g1 = phi.domain();
    const auto& b = psi.domain();
    FiberProduct fp;
    fp.second_order_ = b.order();
    fp.lookup_.assign(size_t(g1.order()) * b.order(), -1);
    for (Elem x = 0; x < g1.order(); ++x)
        for (Elem y = 0; y < b.order(); ++y)
            if (phi(x) == psi(y)) {
                fp.lookup_[size_t(x) * b.order() + y] = static_cast<int32_t>(fp.pairs.size());
                fp.pairs.emplace_back(x, y);
            }
    const int n = static_cast<int>(fp.pairs.size());
    if (n > FiniteGroup::kMaxOrder)
        fail(ErrorKind::UnsupportedParameter, "fiber product too large");
    std::vector<uint16_t> flat(size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto [a1, b1] = fp.pairs[i];
            auto [a2, b2] = fp.pairs[j];
            flat[size_t(i) * n + j] = static_cast<uint16_t>(fp.index_of(g1.mul(a1, a2), b.mul(b1, b2)));
        }
    fp.group = FiniteGroup::from_flat_table(n, std::move(flat), g1.label() + "x_" + b.label());
    std::vector<Elem> first(n), second(n);
    for (int i = 0; i < n; ++i) {
        first[i] = fp.pairs[i].first;
        second[i] = fp.pairs[i].second;
    }
    fp.to_first = GroupHom(fp.group, g1, std::move(first));
    fp.to_second = GroupHom(fp.group, b, std::move(second));
    return fp;
}

Subgroup commutator_subgroup(const FiniteGroup& g, const Subgroup& h) {
    std::vector<bool> seen(g.order(), false);
    std::vector<Elem> comms;
    for (Elem a : h.members())
        for (Elem b : h.members()) {
            Elem c = g.commutator(a, b);
            if (!seen[c]) {
                seen[c] = true;
                comms.push_back(c);
            }
        }
    return generated_subgroup(g, comms);
}

// ---------------------------------------------------------------- hom search

namespace {

struct PrefixTree {
    std::vector<Elem> order;        // BFS order of <s_0..s_j>
    std::vector<Elem> parent;       // parent element (index aligned with order)
    std::vector<int> via;           // generator used
    std::vector<std::pair<Elem, int>> edges; // all (x, generator) to verify
};

PrefixTree build_prefix(const FiniteGroup& g, const std::vector<Elem>& gens, size_t upto) {
    PrefixTree t;
    std::vector<bool> seen(g.order(), false);
    t.order.push_back(g.identity());
    t.parent.push_back(-1);
    t.via.push_back(-1);
    seen[g.identity()] = true;
    for (size_t i = 0; i < t.order.size(); ++i)
        for (size_t j = 0; j <= upto; ++j) {
            Elem y = g.mul(t.order[i], gens[j]);
            if (!seen[y]) {
                seen[y] = true;
                t.order.push_back(y);
                t.parent.push_back(t.order[i]);
                t.via.push_back(static_cast<int>(j));
            } else {
                t.edges.emplace_back(t.order[i], static_cast<int>(j));
            }
        }
    return t;
}

} // namespace

std::vector<GroupHom> enumerate_homs(const FiniteGroup& g, const FiniteGroup& h,
                                     const std::optional<LiftConstraint>& constraint,
                                     const HomSearchOptions& opts) {
    if (constraint) {
        if (!constraint->phi.domain().same_as(h) || !constraint->psi.domain().same_as(g) ||
            !constraint->phi.codomain().same_as(constraint->psi.codomain()))
            fail(ErrorKind::CodomainMismatch, "lift constraint does not match the groups");
    }
    const auto& gens = g.generators();
    std::vector<GroupHom> out;
    if (gens.empty()) {
        out.push_back(GroupHom::trivial(g, h));
        return out;
    }
    const size_t k = gens.size();
    std::vector<std::vector<Elem>> cand(k);
    for (size_t i = 0; i < k; ++i) {
        int oi = g.element_order(gens[i]);
        for (Elem y = 0; y < h.order(); ++y) {
            if (oi % h.element_order(y) != 0)
                continue;
            if (constraint && constraint->phi(y) != constraint->psi(gens[i]))
                continue;
            cand[i].push_back(y);
        }
    }
    std::vector<PrefixTree> trees;
    for (size_t j = 0; j < k; ++j)
        trees.push_back(build_prefix(g, gens, j));

    std::vector<Elem> images(k), map(g.order(), -1);
    size_t nodes = 0;
    auto consistent = [&](size_t j) {
        const auto& t = trees[j];
        map[g.identity()] = h.identity();
        for (size_t i = 1; i < t.order.size(); ++i)
            map[t.order[i]] = h.mul(map[t.parent[i]], images[t.via[i]]);
        for (auto [x, s] : t.edges)
            if (map[g.mul(x, gens[s])] != h.mul(map[x], images[s]))
                return false;
        return true;
    };
    auto dfs = [&](auto&& self, size_t j) -> void {
        for (Elem y : cand[j]) {
            if (++nodes > opts.node_cap)
                fail(ErrorKind::SearchBudgetExceeded,
                     "homomorphism search exceeded " + std::to_string(opts.node_cap) + " nodes");
            images[j] = y;
            if (!consistent(j))
                continue;
            if (j + 1 == k)
                out.emplace_back(g, h, map);
            else
                self(self, j + 1);
        }
    };
    dfs(dfs, 0);
    return out;
}

std::optional<Elem> are_conjugate(const GroupHom& h1, const GroupHom& h2, const Subgroup& by) {
    const auto& c = h1.codomain();
    for (Elem k : by.members()) {
        bool ok = true;
        for (Elem s : h1.domain().generators())
            if (c.conj(k, h1(s)) != h2(s)) {
                ok = false;
                break;
            }
        if (ok)
            return k;
    }
    return std::nullopt;
}

std::vector<Elem> conjugacy_key(const GroupHom& h, const Subgroup& by) {
    const auto& c = h.codomain();
    const auto& gens = h.domain().generators();
    std::vector<Elem> best, cur(gens.size());
    for (Elem k : by.members()) {
        for (size_t i = 0; i < gens.size(); ++i)
            cur[i] = c.conj(k, h(gens[i]));
        if (best.empty() || cur < best)
            best = cur;
    }
    return best;
}

// ---------------------------------------------------------------- standard groups

GroupKind GroupKind::direct_product(GroupKind a, GroupKind b) {
    GroupKind k{Tag::DirectProduct, 0, std::make_shared<GroupKind>(std::move(a)),
                std::make_shared<GroupKind>(std::move(b))};
    return k;
}

namespace {

template <class T, class Mul>
FiniteGroup from_elements(const std::vector<T>& elems, Mul mul, std::string label) {
    std::map<T, int> index;
    for (size_t i = 0; i < elems.size(); ++i)
        index.emplace(elems[i], static_cast<int>(i));
    const int n = static_cast<int>(elems.size());
    if (n > FiniteGroup::kMaxOrder)
        fail(ErrorKind::UnsupportedParameter, label + " has order above 10000");
    std::vector<uint16_t> flat(size_t(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            flat[size_t(a) * n + b] = static_cast<uint16_t>(index.at(mul(elems[a], elems[b])));
    return FiniteGroup::from_flat_table(n, std::move(flat), std::move(label));
}

using Perm = std::vector<int>;

std::vector<Perm> permutations(int n, bool even_only) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<Perm> out;
    do {
        if (even_only) {
            int inv = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    inv += p[i] > p[j];
            if (inv % 2)
                continue;
        }
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

Perm compose_perm(const Perm& a, const Perm& b) {
    Perm c(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        c[i] = a[b[i]];
    return c;
}

} // namespace

FiniteGroup cyclic_group(int n) {
    if (n < 1 || n > FiniteGroup::kMaxOrder)
        fail(ErrorKind::UnsupportedParameter, "cyclic order " + std::to_string(n));
    std::vector<uint16_t> flat(size_t(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            flat[size_t(a) * n + b] = static_cast<uint16_t>((a + b) % n);
    return FiniteGroup::from_flat_table(n, std::move(flat), "Z/" + std::to_string(n));
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    const int n = a.order() * b.order();
    if (n > FiniteGroup::kMaxOrder)
        fail(ErrorKind::UnsupportedParameter, "direct product has order above 10000");
    std::vector<uint16_t> flat(size_t(n) * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            flat[size_t(x) * n + y] = static_cast<uint16_t>(
                a.mul(x / b.order(), y / b.order()) * b.order() + b.mul(x % b.order(), y % b.order()));
    return FiniteGroup::from_flat_table(n, std::move(flat), a.label() + "x" + b.label());
}

int unipotent_entry(int n, uint32_t mask, int i, int j) {
    if (i == j)
        return 1;
    if (i > j)
        return 0;
    int k = 0;
    for (int r = 0; r < n; ++r)
        for (int c = r + 1; c < n; ++c, ++k)
            if (r == i && c == j)
                return (mask >> k) & 1u;
    return 0;
}

FiniteGroup standard_group(const GroupKind& kind) {
    using Tag = GroupKind::Tag;
    const int n = kind.param;
    switch (kind.tag) {
    case Tag::Cyclic:
        return cyclic_group(n);
    case Tag::Symmetric:
    case Tag::Alternating: {
        bool alt = kind.tag == Tag::Alternating;
        if (n < 1 || n > 7)
            fail(ErrorKind::UnsupportedParameter, "permutation degree must be 1..7");
        auto perms = permutations(n, alt);
        return from_elements(perms, compose_perm, (alt ? "A" : "S") + std::to_string(n));
    }
    case Tag::Dihedral: {
        if (n < 1 || 2 * n > FiniteGroup::kMaxOrder)
            fail(ErrorKind::UnsupportedParameter, "dihedral parameter out of range");
        std::vector<uint16_t> flat(size_t(4) * n * n);
        const int m = 2 * n;
        for (int x = 0; x < m; ++x)
            for (int y = 0; y < m; ++y) {
                int i = x % n, a = x / n, k = y % n, b = y / n;
                int r = ((a ? i - k : i + k) % n + n) % n;
                flat[size_t(x) * m + y] = static_cast<uint16_t>(((a + b) % 2) * n + r);
            }
        return FiniteGroup::from_flat_table(m, std::move(flat), "D" + std::to_string(n));
    }
    case Tag::Dicyclic: {
        if (n < 1 || 4 * n > FiniteGroup::kMaxOrder)
            fail(ErrorKind::UnsupportedParameter, "dicyclic parameter out of range");
        const int half = 2 * n, m = 4 * n;
        std::vector<uint16_t> flat(size_t(m) * m);
        for (int x = 0; x < m; ++x)
            for (int y = 0; y < m; ++y) {
                int i = x % half, a = x / half, k = y % half, b = y / half;
                int e = a ? i - k : i + k;
                int j = a + b;
                if (j == 2) {
                    e += n;
                    j = 0;
                }
                flat[size_t(x) * m + y] = static_cast<uint16_t>(j * half + ((e % half) + half) % half);
            }
        return FiniteGroup::from_flat_table(m, std::move(flat), n == 2 ? "Q8" : "Dic" + std::to_string(n));
    }
    case Tag::Unipotent: {
        if (n < 1 || n > 5)
            fail(ErrorKind::UnsupportedParameter, "unipotent size must be 1..5");
        const int bits = n * (n - 1) / 2;
        const int m = 1 << bits;
        auto entry = [&](uint32_t mask, int i, int j) { return unipotent_entry(n, mask, i, j); };
        std::vector<uint16_t> flat(size_t(m) * m);
        for (int x = 0; x < m; ++x)
            for (int y = 0; y < m; ++y) {
                uint32_t out = 0;
                int k = 0;
                for (int r = 0; r < n; ++r)
                    for (int c = r + 1; c < n; ++c, ++k) {
                        int s = 0;
                        for (int t = r; t <= c; ++t)
                            s ^= entry(x, r, t) & entry(y, t, c);
                        out |= uint32_t(s) << k;
                    }
                flat[size_t(x) * m + y] = static_cast<uint16_t>(out);
            }
        return FiniteGroup::from_flat_table(m, std::move(flat), "U" + std::to_string(n) + "(F2)");
    }
    case Tag::SL2: {
        const int p = n;
        bool prime = p >= 2;
        for (int d = 2; d * d <= p && prime; ++d)
            prime = p % d != 0;
        if (!prime || static_cast<long>(p) * (p * p - 1) > FiniteGroup::kMaxOrder)
            fail(ErrorKind::UnsupportedParameter, "sl2 needs a prime p with p(p^2-1) <= 10000");
        std::vector<std::array<int, 4>> elems;
        for (int a = 0; a < p; ++a)
            for (int b = 0; b < p; ++b)
                for (int c = 0; c < p; ++c)
                    for (int d = 0; d < p; ++d)
                        if (((a * d - b * c) % p + p) % p == 1)
                            elems.push_back({a, b, c, d});
        auto mul = [p](const std::array<int, 4>& x, const std::array<int, 4>& y) {
            return std::array<int, 4>{(x[0] * y[0] + x[1] * y[2]) % p, (x[0] * y[1] + x[1] * y[3]) % p,
                                      (x[2] * y[0] + x[3] * y[2]) % p, (x[2] * y[1] + x[3] * y[3]) % p};
        };
        return from_elements(elems, mul, "SL(2," + std::to_string(p) + ")");
    }
    case Tag::DirectProduct:
        if (!kind.left || !kind.right)
            fail(ErrorKind::InvalidInput, "direct product needs two operands");
        return direct_product(standard_group(*kind.left), standard_group(*kind.right));
    }
    fail(ErrorKind::UnsupportedParameter, "unknown group kind");
}

} // namespace obstrukt
