#include "obstrukt/products.hpp"

#include "obstrukt/error.hpp"

#include <functional>

namespace obstrukt {

CoeffPairing::CoeffPairing(GModule left, GModule right, GModule target, std::vector<AbMap> table)
    : left_(std::move(left)), right_(std::move(right)), target_(std::move(target)), table_(std::move(table)) {
    const auto& g = left_.group();
    if (!g.same_as(right_.group()) || !g.same_as(target_.group()))
        fail(ErrorKind::GroupMismatch, "pairing modules live over different groups");
    const auto& lf = left_.coeff().factors();
    if (table_.size() != lf.size())
        fail(ErrorKind::TypeMismatch, "pairing table needs one map per left basis element");
    for (size_t i = 0; i < table_.size(); ++i) {
        if (!(table_[i].source() == right_.coeff()) || !(table_[i].target() == target_.coeff()))
            fail(ErrorKind::TypeMismatch, "pairing table map has the wrong source or target");
        for (size_t r = 0; r < right_.coeff().rank(); ++r)
            if (!target_.coeff().is_zero(target_.coeff().scale(lf[i], table_[i](right_.coeff().basis(r)))))
                fail(ErrorKind::TypeMismatch, "pairing is not bilinear on the left factor " + std::to_string(i));
    }
    if (left_.is_trivial() && right_.is_trivial() && target_.is_trivial())
        return;
    for (Elem s : g.generators())
        for (size_t i = 0; i < lf.size(); ++i)
            for (size_t r = 0; r < right_.coeff().rank(); ++r) {
                auto l = left_.coeff().basis(i);
                auto x = right_.coeff().basis(r);
                if (target_.act(s, (*this)(l, x)) != (*this)(left_.act(s, l), right_.act(s, x)))
                    fail(ErrorKind::NotEquivariant, "pairing does not commute with generator " + std::to_string(s));
            }
}

CoeffPairing CoeffPairing::multiplication(const GModule& m) {
    if (m.coeff().rank() > 1)
        fail(ErrorKind::TypeMismatch, "multiplication pairing needs cyclic coefficients");
    std::vector<AbMap> table;
    if (m.coeff().rank() == 1)
        table.push_back(AbMap::identity(m.coeff()));
    return CoeffPairing(m, m, m, std::move(table));
}

CoeffPairing CoeffPairing::evaluation(const GModule& m, const GModule& a) {
    auto hm = hom_module(m, a);
    const auto& hg = hm.hom;
    const size_t hr = hg.group().rank(), ar = a.coeff().rank();
    std::vector<IntMatrix> cols(m.coeff().rank(), IntMatrix(ar, hr));
    for (size_t k = 0; k < hr; ++k) {
        auto f = hg.to_map(hg.group().basis(k));
        for (size_t i = 0; i < m.coeff().rank(); ++i)
            for (size_t j = 0; j < ar; ++j)
                cols[i](j, k) = f.matrix()(j, i);
    }
    std::vector<AbMap> table;
    for (auto& c : cols)
        table.emplace_back(hg.group(), a.coeff(), std::move(c));
    return CoeffPairing(m, hm.module, a, std::move(table));
}

AbElem CoeffPairing::operator()(const AbElem& l, const AbElem& r) const {
    AbElem acc = target_.coeff().zero();
    for (size_t i = 0; i < table_.size(); ++i) {
        if (l[i] == 0)
            continue;
        auto v = table_[i].matrix() * r;
        for (size_t j = 0; j < acc.size(); ++j)
            acc[j] += l[i] * v[j];
    }
    return target_.coeff().reduce(std::move(acc));
}

CoeffPairing CoeffPairing::swapped() const {
    const size_t lr = left_.coeff().rank(), tr = target_.coeff().rank();
    std::vector<AbMap> table;
    for (size_t j = 0; j < right_.coeff().rank(); ++j) {
        IntMatrix m(tr, lr);
        for (size_t i = 0; i < lr; ++i)
            for (size_t t = 0; t < tr; ++t)
                m(t, i) = table_[i].matrix()(t, j);
        table.emplace_back(left_.coeff(), target_.coeff(), std::move(m));
    }
    return CoeffPairing(right_, left_, target_, std::move(table));
}

Cochain cup(const Cochain& c, const Cochain& d, const CoeffPairing& pr) {
    if (!c.module().same_as(pr.left()) || !d.module().same_as(pr.right()))
        fail(ErrorKind::TypeMismatch, "cochain coefficients do not match the pairing");
    const int p = c.degree(), q = d.degree();
    const auto& g = pr.target().group();
    Cochain out(pr.target(), p + q);
    std::vector<Elem> t(static_cast<size_t>(p + q));
    std::span<const Elem> front(t.data(), static_cast<size_t>(p)), back(t.data() + p, static_cast<size_t>(q));
    for (size_t idx = 0; idx < out.tuple_count(); ++idx) {
        out.indexer().tuple(idx, t);
        auto cv = c.value(front);
        if (c.module().coeff().is_zero(cv))
            continue;
        Elem h = g.identity();
        for (int k = 0; k < p; ++k)
            h = g.mul(h, t[k]);
        out.set_at(idx, pr(cv, pr.right().act(h, d.value(back))));
    }
    return out;
}

CohomologyClass cup_classes(const CohomologyClass& a, const CohomologyClass& b, const CoeffPairing& pr,
                            const std::optional<CohomologyGroup>& target) {
    if (!a.parent().module().same_as(pr.left()) || !b.parent().module().same_as(pr.right()))
        fail(ErrorKind::TypeMismatch, "class coefficients do not match the pairing");
    const int n = a.parent().degree() + b.parent().degree();
    auto h = target ? *target : cohomology(pr.target(), n);
    if (h.degree() != n || !h.module().same_as(pr.target()))
        fail(ErrorKind::TypeMismatch, "target cohomology group does not match the cup product");
    return h.class_of(cup(a.representative(), b.representative(), pr));
}

DefiningSystem::DefiningSystem(GModule module, int n)
    : module_(std::move(module)), n_(n), entries_(static_cast<size_t>((n + 1) * (n + 1))) {
    if (n < 2)
        fail(ErrorKind::InvalidInput, "Massey products need at least two classes");
}

size_t DefiningSystem::slot(int i, int j) const {
    if (i < 1 || j <= i || j > n_ + 1 || (i == 1 && j == n_ + 1))
        fail(ErrorKind::InvalidInput, "no defining-system entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
    return static_cast<size_t>((i - 1) * (n_ + 1) + (j - 1));
}

const Cochain& DefiningSystem::at(int i, int j) const {
    const auto& e = entries_[slot(i, j)];
    if (!e)
        fail(ErrorKind::InvalidInput, "defining-system entry (" + std::to_string(i) + "," + std::to_string(j) + ") unset");
    return *e;
}

void DefiningSystem::set(int i, int j, Cochain c) {
    if (c.degree() != 1 || !c.module().same_as(module_))
        fail(ErrorKind::TypeMismatch, "defining-system entries are 1-cochains in the common module");
    entries_[slot(i, j)] = std::move(c);
}

Cochain DefiningSystem::product_sum(int i, int j) const {
    auto pr = CoeffPairing::multiplication(module_);
    Cochain sum(module_, 2);
    for (int k = i + 1; k < j; ++k)
        sum = sum + cup(at(i, k), at(k, j), pr);
    return sum;
}

bool DefiningSystem::is_valid() const {
    for (int len = 1; len <= n_; ++len)
        for (int i = 1; i + len <= n_ + 1; ++i) {
            int j = i + len;
            if (i == 1 && j == n_ + 1)
                continue;
            if (!has(i, j) || !(differential(at(i, j)) == product_sum(i, j)))
                return false;
        }
    return true;
}

namespace {

struct Search {
    GModule module;
    int n;
    std::vector<std::pair<int, int>> positions;
    CohomologyGroup h2;
    std::vector<Cochain> cocycles; // Z^1 = H^1 representatives, since the action is trivial
    size_t max_nodes;
    size_t nodes = 0;

    // Depth-first over positions; returns true once `leaf` accepts.
    bool run(DefiningSystem& ds, size_t pos, const std::function<bool(const DefiningSystem&)>& leaf) {
        if (pos == positions.size())
            return leaf(ds);
        auto [i, j] = positions[pos];
        auto particular = h2.coboundary_preimage(ds.product_sum(i, j));
        if (!particular)
            return false;
        for (const auto& z : cocycles) {
            if (++nodes > max_nodes)
                fail(ErrorKind::BudgetExceeded, "Massey search exceeded " + std::to_string(max_nodes) + " nodes");
            ds.set(i, j, *particular + z);
            if (run(ds, pos + 1, leaf))
                return true;
        }
        return false;
    }
};

Search make_search(const std::vector<Cochain>& a, const MasseyBudget& budget, DefiningSystem& ds) {
    const auto& m = a.front().module();
    if (!m.is_trivial() || m.coeff().rank() != 1)
        fail(ErrorKind::InvalidInput, "Massey products need Z/m coefficients with trivial action");
    for (size_t k = 0; k < a.size(); ++k) {
        if (a[k].degree() != 1 || !a[k].module().same_as(m))
            fail(ErrorKind::TypeMismatch, "Massey inputs must be 1-cochains in a common module");
        if (!differential(a[k]).is_zero())
            fail(ErrorKind::NotACocycle, "Massey input " + std::to_string(k + 1) + " is not a cocycle");
        ds.set(static_cast<int>(k) + 1, static_cast<int>(k) + 2, a[k]);
    }
    const int n = static_cast<int>(a.size());
    std::vector<std::pair<int, int>> positions;
    for (int len = 2; len < n; ++len)
        for (int i = 1; i + len <= n + 1; ++i)
            positions.emplace_back(i, i + len);
    std::vector<Cochain> cocycles;
    for (const auto& cls : cohomology(m, 1).all_classes())
        cocycles.push_back(cls.representative());
    return Search{m, n, std::move(positions), cohomology(m, 2), std::move(cocycles), budget.max_nodes};
}

void check_count(const std::vector<Cochain>& a) {
    if (a.size() < 2)
        fail(ErrorKind::InvalidInput, "Massey products need at least two classes");
}

} // namespace

std::optional<DefiningSystem> massey_defining_system(const std::vector<Cochain>& a, const MasseyBudget& budget) {
    check_count(a);
    DefiningSystem ds(a.front().module(), static_cast<int>(a.size()));
    auto search = make_search(a, budget, ds);
    std::optional<DefiningSystem> found;
    search.run(ds, 0, [&](const DefiningSystem& d) {
        found = d;
        return true;
    });
    return found;
}

CohomologyClass massey_product(const DefiningSystem& ds, const std::optional<CohomologyGroup>& target) {
    auto h = target ? *target : cohomology(ds.module(), 2);
    if (h.degree() != 2 || !h.module().same_as(ds.module()))
        fail(ErrorKind::TypeMismatch, "target cohomology group does not match the defining system");
    auto pr = CoeffPairing::multiplication(ds.module());
    const int n = ds.n();
    Cochain sum(ds.module(), 2);
    for (int k = 2; k <= n; ++k)
        sum = sum + cup(ds.at(1, k), ds.at(k, n + 1), pr);
    return h.class_of(sum);
}

MasseyResult massey_contains_zero(const std::vector<Cochain>& a, const MasseyBudget& budget) {
    check_count(a);
    DefiningSystem ds(a.front().module(), static_cast<int>(a.size()));
    auto search = make_search(a, budget, ds);
    MasseyResult result{MasseyStatus::No, std::nullopt, 0};
    try {
        search.run(ds, 0, [&](const DefiningSystem& d) {
            if (!massey_product(d, search.h2).is_zero())
                return false;
            result.status = MasseyStatus::Yes;
            result.witness = d;
            return true;
        });
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::BudgetExceeded)
            throw;
        result.status = MasseyStatus::BudgetExceeded;
    }
    result.nodes = search.nodes;
    return result;
}

} // namespace obstrukt
