#include "obstrukt/gmodule.hpp"

#include "obstrukt/error.hpp"

#include <string>

namespace obstrukt {

namespace {

IntMatrix reduce_rows(IntMatrix m, const FinAbGroup& a) {
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j)
            m(i, j) = linalg::mod(m(i, j), a.factors()[i]);
    return m;
}

IntMatrix mul_reduced(const IntMatrix& x, const IntMatrix& y, const FinAbGroup& a) {
    return reduce_rows(x * y, a);
}

} // namespace

GModule::GModule() : d_(std::make_shared<Data>(Data{FiniteGroup(), FinAbGroup(), {IntMatrix()}, true})) {}

GModule GModule::build(FiniteGroup g, FinAbGroup coeff, std::vector<IntMatrix> action) {
    auto d = std::make_shared<Data>();
    const IntMatrix id = IntMatrix::identity(coeff.rank());
    d->trivial = true;
    for (auto& m : action) {
        m = reduce_rows(std::move(m), coeff);
        d->trivial = d->trivial && m == id;
    }
    d->group = std::move(g);
    d->coeff = std::move(coeff);
    d->action = std::move(action);
    return GModule(std::move(d));
}

GModule GModule::trivial(FiniteGroup g, FinAbGroup coeff) {
    std::vector<IntMatrix> action(g.order(), IntMatrix::identity(coeff.rank()));
    return build(std::move(g), std::move(coeff), std::move(action));
}

GModule GModule::from_generator_action(FiniteGroup g, FinAbGroup coeff,
                                       const std::vector<std::pair<Elem, IntMatrix>>& generator_action) {
    const size_t r = coeff.rank();
    std::vector<Elem> gens;
    std::vector<IntMatrix> mats;
    for (const auto& [x, m] : generator_action) {
        if (x < 0 || x >= g.order())
            fail(ErrorKind::InvalidInput, "action generator " + std::to_string(x) + " is not a group element");
        if (m.rows() != r || m.cols() != r)
            fail(ErrorKind::InvalidInput, "action matrix for generator " + std::to_string(x) + " has wrong shape");
        AbMap(coeff, coeff, m); // well-definedness
        gens.push_back(x);
        mats.push_back(reduce_rows(m, coeff));
    }
    std::vector<IntMatrix> action(g.order());
    std::vector<bool> seen(g.order(), false);
    std::vector<std::string> word(g.order());
    std::vector<Elem> queue{g.identity()};
    action[g.identity()] = IntMatrix::identity(r);
    seen[g.identity()] = true;
    word[g.identity()] = "e";
    for (size_t i = 0; i < queue.size(); ++i) {
        Elem x = queue[i];
        for (size_t k = 0; k < gens.size(); ++k) {
            Elem y = g.mul(x, gens[k]);
            IntMatrix m = mul_reduced(action[x], mats[k], coeff);
            std::string w = (x == g.identity() ? "" : word[x] + "*") + "g" + std::to_string(gens[k]);
            if (!seen[y]) {
                seen[y] = true;
                action[y] = std::move(m);
                word[y] = w;
                queue.push_back(y);
            } else if (!(action[y] == m)) {
                fail(ErrorKind::InvalidInput, "action does not extend to a homomorphism: the word " + w +
                                                  " evaluates to element " + std::to_string(y) +
                                                  " already reached as " + word[y] + " with a different matrix");
            }
        }
    }
    if (queue.size() != static_cast<size_t>(g.order()))
        fail(ErrorKind::GeneratorsDontGenerate, "action generators do not generate the group");
    return build(std::move(g), std::move(coeff), std::move(action));
}

GModule GModule::from_action_table(FiniteGroup g, FinAbGroup coeff, std::vector<IntMatrix> action) {
    if (action.size() != static_cast<size_t>(g.order()))
        fail(ErrorKind::InvalidInput, "action table needs one matrix per group element");
    for (size_t x = 0; x < action.size(); ++x) {
        if (action[x].rows() != coeff.rank() || action[x].cols() != coeff.rank())
            fail(ErrorKind::InvalidInput, "action matrix for element " + std::to_string(x) + " has wrong shape");
        AbMap(coeff, coeff, action[x]);
        action[x] = reduce_rows(std::move(action[x]), coeff);
    }
    if (!(action[g.identity()] == IntMatrix::identity(coeff.rank())))
        fail(ErrorKind::InvalidInput, "identity does not act trivially");
    // multiplicativity on (x, generator) pairs implies it everywhere
    for (Elem x = 0; x < g.order(); ++x)
        for (Elem s : g.generators())
            if (!(action[g.mul(x, s)] == mul_reduced(action[x], action[s], coeff)))
                fail(ErrorKind::InvalidInput, "action is not multiplicative at (" + std::to_string(x) + ", " +
                                                  std::to_string(s) + ")");
    return build(std::move(g), std::move(coeff), std::move(action));
}

AbElem GModule::act(Elem g, const AbElem& m) const {
    if (d_->trivial)
        return coeff().reduce(m);
    return action_map(g)(m);
}

bool GModule::same_as(const GModule& other) const {
    return d_ == other.d_ ||
           (group().same_as(other.group()) && coeff() == other.coeff() && d_->action == other.d_->action);
}

GModule restrict_module(const GModule& m, const GroupHom& f) {
    if (!f.codomain().same_as(m.group()))
        fail(ErrorKind::CodomainMismatch, "restriction map does not land in the module's group");
    if (m.is_trivial())
        return GModule::trivial(f.domain(), m.coeff());
    std::vector<IntMatrix> action(f.domain().order());
    for (Elem h = 0; h < f.domain().order(); ++h)
        action[h] = m.action(f(h));
    return GModule::from_action_table(f.domain(), m.coeff(), std::move(action));
}

SubobjectResult invariants(const GModule& m) {
    const auto& a = m.coeff();
    const size_t r = a.rank();
    const auto& gens = m.group().generators();
    IntMatrix stacked(gens.size() * r, r);
    std::vector<Int> row_moduli;
    for (size_t k = 0; k < gens.size(); ++k) {
        const auto& act = m.action(gens[k]);
        for (size_t i = 0; i < r; ++i) {
            for (size_t j = 0; j < r; ++j)
                stacked(k * r + i, j) = act(i, j) - (i == j ? 1 : 0);
            row_moduli.push_back(a.factors()[i]);
        }
    }
    auto gens_k = linalg::kernel_generators(stacked, row_moduli, a.exponent());
    if (gens.empty()) {
        gens_k.clear();
        for (size_t j = 0; j < r; ++j)
            gens_k.push_back(a.basis(j));
    }
    for (auto& g : gens_k)
        g = a.reduce(g);
    linalg::SubgroupSpan span(a.factors(), gens_k);
    return {span.group(), AbMap(span.group(), a, span.inclusion())};
}

HomModule hom_module(const GModule& m, const GModule& a) {
    if (!m.group().same_as(a.group()))
        fail(ErrorKind::GroupMismatch, "Hom module needs both modules over the same group");
    HomGroup hg(m.coeff(), a.coeff());
    const auto& h = hg.group();
    if (m.is_trivial() && a.is_trivial())
        return {GModule::trivial(m.group(), h), hg};
    const auto& g = m.group();
    std::vector<IntMatrix> action(g.order());
    for (Elem x = 0; x < g.order(); ++x) {
        IntMatrix act(h.rank(), h.rank());
        const IntMatrix& inv_m = m.action(g.inv(x));
        for (size_t c = 0; c < h.rank(); ++c) {
            IntMatrix f = a.action(x) * hg.to_map(h.basis(c)).matrix() * inv_m;
            AbElem img = hg.from_matrix(f);
            for (size_t r = 0; r < h.rank(); ++r)
                act(r, c) = img[r];
        }
        action[x] = std::move(act);
    }
    return {GModule::from_action_table(g, h, std::move(action)), hg};
}

void check_equivariant(const GModule& source, const GModule& target, const AbMap& t) {
    if (!source.group().same_as(target.group()))
        fail(ErrorKind::GroupMismatch, "modules over different groups");
    if (!(t.source() == source.coeff()) || !(t.target() == target.coeff()))
        fail(ErrorKind::TypeMismatch, "coefficient map does not match the modules");
    for (Elem g : source.group().generators())
        for (size_t j = 0; j < source.coeff().rank(); ++j) {
            AbElem e = source.coeff().basis(j);
            if (t(source.act(g, e)) != target.act(g, t(e)))
                fail(ErrorKind::NotEquivariant,
                     "coefficient map does not commute with the action of element " + std::to_string(g));
        }
}

} // namespace obstrukt
