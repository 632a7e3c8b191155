#include "obstrukt/embedding.hpp"

#include "obstrukt/error.hpp"

#include <algorithm>
#include <map>

namespace obstrukt {

namespace {

GroupHom canonical_lift(const GroupHom& h, const Subgroup& by) {
    auto key = conjugacy_key(h, by);
    const auto& gens = h.domain().generators();
    std::vector<std::pair<Elem, Elem>> images;
    for (size_t i = 0; i < gens.size(); ++i)
        images.emplace_back(gens[i], key[i]);
    return hom(h.domain(), h.codomain(), images);
}

bool same_hom(const GroupHom& a, const GroupHom& b) {
    return a.domain().same_as(b.domain()) && a.codomain().same_as(b.codomain()) && a == b;
}

SectionClass section_from(const EmbeddingProblem& e, const FiberProduct& fp, const Extension& gamma,
                          const SolutionClass& s) {
    std::vector<Elem> img(e.base().order());
    for (Elem g = 0; g < e.base().order(); ++g)
        img[g] = fp.index_of(s.representative(g), g);
    return SectionClass{gamma, GroupHom(e.base(), gamma.total(), std::move(img))};
}

FiniteGroup elementary_two_group(int n) {
    FiniteGroup g = cyclic_group(2);
    for (int i = 1; i < n; ++i)
        g = direct_product(g, cyclic_group(2));
    return g;
}

} // namespace

EmbeddingProblem::EmbeddingProblem(GroupHom phi, GroupHom psi)
    : phi_(std::move(phi)), psi_(std::move(psi)), kernel_(obstrukt::kernel(phi_)) {
    if (!psi_.codomain().same_as(phi_.codomain()))
        fail(ErrorKind::CodomainMismatch, "phi and psi have different codomains");
    if (!phi_.is_surjective())
        fail(ErrorKind::PhiNotSurjective, "phi is not surjective");
}

bool EmbeddingProblem::same_as(const EmbeddingProblem& o) const {
    return same_hom(phi_, o.phi_) && same_hom(psi_, o.psi_);
}

SolutionClass solution_class(const EmbeddingProblem& e, const GroupHom& h) {
    if (!h.domain().same_as(e.base()) || !h.codomain().same_as(e.g1()) || !(compose(e.phi(), h) == e.psi()))
        fail(ErrorKind::ProblemMismatch, "homomorphism is not a lift of psi");
    return SolutionClass{e, canonical_lift(h, e.kernel())};
}

std::vector<SolutionClass> solve(const EmbeddingProblem& e, const HomSearchOptions& opts) {
    auto lifts = enumerate_homs(e.base(), e.g1(), LiftConstraint{e.phi(), e.psi()}, opts);
    std::map<std::vector<Elem>, GroupHom> classes;
    for (const auto& h : lifts) {
        auto key = conjugacy_key(h, e.kernel());
        if (!classes.count(key))
            classes.emplace(key, canonical_lift(h, e.kernel()));
    }
    std::vector<SolutionClass> out;
    for (auto& [key, h] : classes)
        out.push_back(SolutionClass{e, h});
    return out;
}

ProblemMap problem_map(EmbeddingProblem source, EmbeddingProblem target, GroupHom g1map, GroupHom g2map) {
    if (!source.base().same_as(target.base()))
        fail(ErrorKind::ProblemMismatch, "problem maps need a common base");
    if (!g1map.domain().same_as(source.g1()) || !g1map.codomain().same_as(target.g1()) ||
        !g2map.domain().same_as(source.g2()) || !g2map.codomain().same_as(target.g2()))
        fail(ErrorKind::ProblemMismatch, "problem map components have the wrong groups");
    if (!(compose(target.phi(), g1map) == compose(g2map, source.phi())))
        fail(ErrorKind::ProblemMismatch, "the phi square does not commute");
    if (!(target.psi() == compose(g2map, source.psi())))
        fail(ErrorKind::ProblemMismatch, "the psi square does not commute");
    return ProblemMap{std::move(source), std::move(target), std::move(g1map), std::move(g2map)};
}

ProblemMap compose(const ProblemMap& after, const ProblemMap& before) {
    if (!before.target.same_as(after.source))
        fail(ErrorKind::ProblemMismatch, "problem maps do not compose");
    return ProblemMap{before.source, after.target, compose(after.g1map, before.g1map),
                      compose(after.g2map, before.g2map)};
}

ProblemMap identity_map(const EmbeddingProblem& e) {
    return ProblemMap{e, e, GroupHom::identity(e.g1()), GroupHom::identity(e.g2())};
}

SolutionClass map_solutions(const ProblemMap& g, const SolutionClass& s) {
    if (!s.problem.same_as(g.source))
        fail(ErrorKind::ProblemMismatch, "solution does not belong to the map's source");
    return solution_class(g.target, compose(g.g1map, s.representative));
}

FiberProduct gamma_group(const EmbeddingProblem& e) { return fiber_product(e.phi(), e.psi()); }

Extension gamma_of(const EmbeddingProblem& e) {
    if (!e.kernel().is_abelian())
        fail(ErrorKind::KernelNotAbelian, "the kernel of phi is not abelian");
    auto st = abelian_structure(e.kernel());
    auto fp = gamma_group(e);
    const auto& kg = st.embedding.domain();
    std::vector<Elem> inj(kg.order());
    for (Elem k = 0; k < kg.order(); ++k)
        inj[k] = fp.index_of(st.embedding(k), e.base().identity());
    return Extension::from_maps(st.group, GroupHom(kg, fp.group, std::move(inj)), fp.to_second);
}

CohomologyClass obstruction_class(const EmbeddingProblem& e) { return class_of_extension(gamma_of(e)); }

SectionClass section_of(const Extension& gamma, const SolutionClass& s) {
    auto fp = gamma_group(s.problem);
    if (!fp.group.same_as(gamma.total()))
        fail(ErrorKind::ExtensionMismatch, "extension is not Gamma of the solution's problem");
    return section_from(s.problem, fp, gamma, s);
}

SolutionClass solution_of(const EmbeddingProblem& e, const SectionClass& s) {
    auto fp = gamma_group(e);
    if (!fp.group.same_as(s.extension.total()))
        fail(ErrorKind::ExtensionMismatch, "section does not belong to Gamma of the problem");
    return solution_class(e, compose(fp.to_first, s.representative));
}

std::vector<std::pair<SolutionClass, SectionClass>> solutions_as_sections(const EmbeddingProblem& e,
                                                                         const Extension& gamma) {
    auto fp = gamma_group(e);
    if (!fp.group.same_as(gamma.total()))
        fail(ErrorKind::ExtensionMismatch, "extension is not Gamma of the problem");
    std::vector<std::pair<SolutionClass, SectionClass>> out;
    for (auto& s : solve(e)) {
        auto sec = section_from(e, fp, gamma, s);
        out.emplace_back(std::move(s), std::move(sec));
    }
    return out;
}

std::pair<EmbeddingProblem, ProblemMap> abelianized_problem(const EmbeddingProblem& e) {
    auto c = commutator_subgroup(e.g1(), e.kernel());
    auto q = quotient(e.g1(), c);
    std::vector<Elem> img(q.group.order());
    for (Elem x = 0; x < q.group.order(); ++x)
        img[x] = e.phi()(q.representative[x]);
    EmbeddingProblem ab(GroupHom(q.group, e.g2(), std::move(img)), e.psi());
    auto map = problem_map(e, ab, q.projection, GroupHom::identity(e.g2()));
    return {std::move(ab), std::move(map)};
}

std::vector<std::pair<SolutionClass, CohomologyClass>> alpha_bijection(const EmbeddingProblem& e,
                                                                       const SolutionClass& base_solution) {
    if (!base_solution.problem.same_as(e))
        fail(ErrorKind::ProblemMismatch, "base solution belongs to another problem");
    auto sols = solve(e);
    if (sols.empty())
        fail(ErrorKind::NoSolution, "the problem has no solutions");
    auto gamma = gamma_of(e);
    auto fp = gamma_group(e);
    auto h1 = cohomology(gamma.module(), 1);
    auto s0 = section_from(e, fp, gamma, base_solution);
    std::vector<std::pair<SolutionClass, CohomologyClass>> out;
    for (auto& s : sols) {
        auto d = section_difference(section_from(e, fp, gamma, s), s0, h1);
        out.emplace_back(std::move(s), std::move(d));
    }
    return out;
}

EmbeddingProblem dwyer_problem(const FiniteGroup& base, const std::vector<GroupHom>& characters) {
    const int n = static_cast<int>(characters.size());
    if (n < 1)
        fail(ErrorKind::InvalidInput, "Dwyer problems need at least one character");
    for (const auto& a : characters)
        if (!a.domain().same_as(base) || a.codomain().order() != 2)
            fail(ErrorKind::InvalidInput, "characters must be homomorphisms from the base to Z/2");
    auto u = standard_group(GroupKind::unipotent(n + 1));
    auto g2 = elementary_two_group(n);
    std::vector<Elem> phi(u.order()), psi(base.order());
    for (Elem x = 0; x < u.order(); ++x) {
        int v = 0;
        for (int i = 0; i < n; ++i)
            v |= unipotent_entry(n + 1, static_cast<uint32_t>(x), i, i + 1) << (n - 1 - i);
        phi[x] = v;
    }
    for (Elem b = 0; b < base.order(); ++b) {
        int v = 0;
        for (int i = 0; i < n; ++i)
            v |= (characters[i](b) != characters[i].codomain().identity()) << (n - 1 - i);
        psi[b] = v;
    }
    return EmbeddingProblem(GroupHom(u, g2, std::move(phi)), GroupHom(base, g2, std::move(psi)));
}

Cochain character_cochain(const GroupHom& chi) {
    auto m = GModule::trivial(chi.domain(), FinAbGroup({2}));
    return Cochain::from_function(m, 1, [&](std::span<const Elem> t) {
        return AbElem{chi(t[0]) != chi.codomain().identity() ? 1 : 0};
    });
}

DwyerReport dwyer_check(const FiniteGroup& base, const std::vector<GroupHom>& characters,
                        const MasseyBudget& massey_budget, const HomSearchOptions& search) {
    if (characters.size() < 2)
        fail(ErrorKind::InvalidInput, "Massey products need at least two characters");
    DwyerReport r;
    std::vector<Cochain> a;
    for (const auto& chi : characters)
        a.push_back(character_cochain(chi));
    auto m = massey_contains_zero(a, massey_budget);
    r.massey = m.status == MasseyStatus::Yes ? Side::Yes : m.status == MasseyStatus::No ? Side::No : Side::BudgetExceeded;
    try {
        r.solvable = solve(dwyer_problem(base, characters), search).empty() ? Side::No : Side::Yes;
    } catch (const Error& err) {
        if (err.kind() != ErrorKind::SearchBudgetExceeded)
            throw;
        r.solvable = Side::BudgetExceeded;
    }
    r.agree = r.massey != Side::BudgetExceeded && r.massey == r.solvable;
    return r;
}

std::optional<PairingWitness> pairing_1041_witness(const FiniteGroup& ker, const FinAbGroup& coeff, int source_order,
                                                   size_t max_pairs) {
    auto source = cyclic_group(source_order);
    auto homs = enumerate_homs(source, ker);
    auto h2 = cohomology(GModule::trivial(ker, coeff), 2);
    if (static_cast<double>(homs.size()) * static_cast<double>(h2.group().order()) > static_cast<double>(max_pairs))
        fail(ErrorKind::BudgetExceeded, "pairing search exceeds " + std::to_string(max_pairs) + " pairs");
    auto target = cohomology(GModule::trivial(source, coeff), 2);
    auto classes = h2.all_classes();
    for (const auto& a : homs)
        for (const auto& c : classes)
            if (!pullback(a, c, target).is_zero())
                return PairingWitness{a, c};
    return std::nullopt;
}

std::vector<std::vector<int>> alternating_elements(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i)
        p[i] = i;
    std::vector<std::vector<int>> out;
    do {
        int inversions = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                inversions += p[i] > p[j];
        if (inversions % 2 == 0)
            out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

IcosahedralReport icosahedral_example() {
    IcosahedralReport r;
    auto a5 = standard_group(GroupKind::alternating(5));
    auto h2 = cohomology(GModule::trivial(a5, FinAbGroup({2})), 2);
    r.h2_order = h2.group().order();

    auto sl = standard_group(GroupKind::sl2(5));
    std::vector<Elem> center;
    for (Elem z = 0; z < sl.order(); ++z) {
        bool central = true;
        for (Elem g : sl.generators())
            central = central && sl.mul(z, g) == sl.mul(g, z);
        if (central)
            center.push_back(z);
    }
    ensure(center.size() == 2, "SL(2,5) should have center of order 2");
    auto q = quotient(sl, Subgroup(sl, center));
    std::optional<GroupHom> iso;
    for (const auto& h : enumerate_homs(q.group, a5))
        if (h.is_injective()) {
            iso = h;
            break;
        }
    ensure(iso.has_value(), "SL(2,5)/center should be isomorphic to A5");
    const Elem minus_one = center[0] == sl.identity() ? center[1] : center[0];
    auto ext = Extension::from_maps(FinAbGroup({2}),
                                    GroupHom(additive_group(FinAbGroup({2})), sl, {sl.identity(), minus_one}),
                                    compose(*iso, q.projection));
    auto cls = class_of_extension(ext, h2);
    r.sl25_class_nonzero = !cls.is_zero();

    const auto perms = alternating_elements(5);
    r.involution = {1, 0, 3, 2, 4};
    const Elem inv = static_cast<Elem>(std::find(perms.begin(), perms.end(), r.involution) - perms.begin());
    auto f = hom(cyclic_group(2), a5, {{1, inv}});
    auto pe = pullback_extension(ext, f);
    r.pullback_order = pe.total().order();
    r.pullback_exponent = pe.total().exponent();
    r.pullback_class_nonzero = !class_of_extension(pe).is_zero();

    if (auto w = pairing_1041_witness(a5, FinAbGroup({2}))) {
        r.witness_found = true;
        r.witness_involution = perms[w->a(1)];
        r.witness_matches_sl25 = classes_equal(w->c, cls);
    }
    return r;
}

} // namespace obstrukt
