#include "obstrukt/extensions.hpp"

#include "obstrukt/error.hpp"

#include <algorithm>
#include <map>

namespace obstrukt {

namespace {

constexpr int kExhaustiveHomCheck = 2048;

Subgroup kernel_subgroup(const Extension& e) {
    std::vector<Elem> members;
    for (Elem k = 0; k < e.inj().domain().order(); ++k)
        members.push_back(e.inj()(k));
    return Subgroup(e.total(), std::move(members));
}

} // namespace

Extension Extension::from_maps(FinAbGroup m, GroupHom inj, GroupHom proj) {
    const auto& omega = proj.domain();
    const auto& pi = proj.codomain();
    if (inj.domain().order() != m.order())
        fail(ErrorKind::InvalidInput, "injection domain does not have the order of the kernel group");
    if (!inj.codomain().same_as(omega))
        fail(ErrorKind::InvalidInput, "injection does not land in the projection's domain");
    if (omega.order() <= kExhaustiveHomCheck) {
        check_homomorphism(inj);
        check_homomorphism(proj);
    }
    if (!inj.is_injective())
        fail(ErrorKind::InvalidInput, "kernel map is not injective");
    if (!proj.is_surjective())
        fail(ErrorKind::InvalidInput, "projection is not surjective");

    std::vector<int32_t> kidx(omega.order(), -1);
    for (Elem k = 0; k < m.order(); ++k)
        kidx[inj(k)] = k;
    for (Elem w = 0; w < omega.order(); ++w)
        if ((proj(w) == pi.identity()) != (kidx[w] >= 0))
            fail(ErrorKind::InvalidInput, "image of the kernel map is not the kernel of the projection");

    std::vector<Elem> section(pi.order(), -1);
    for (Elem w = 0; w < omega.order(); ++w)
        if (section[proj(w)] < 0)
            section[proj(w)] = w;
    section[pi.identity()] = omega.identity();

    const size_t r = m.rank();
    auto conj_matrix = [&](Elem w) {
        IntMatrix a(r, r);
        for (size_t i = 0; i < r; ++i) {
            Elem x = omega.conj(w, inj(static_cast<Elem>(m.index(m.basis(i)))));
            auto v = m.element(kidx[x]);
            for (size_t j = 0; j < r; ++j)
                a(j, i) = v[j];
        }
        return a;
    };
    std::vector<IntMatrix> action(pi.order());
    for (Elem p = 0; p < pi.order(); ++p)
        action[p] = conj_matrix(section[p]);
    for (Elem w = 0; w < omega.order(); ++w)
        if (!(conj_matrix(w) == action[proj(w)]))
            fail(ErrorKind::InvalidInput, "conjugation action on the kernel depends on the chosen preimage");
    auto module = GModule::from_action_table(pi, std::move(m), std::move(action));
    return Extension(std::move(inj), std::move(proj), std::move(module), std::move(section), std::move(kidx));
}

Extension Extension::with_set_section(std::vector<Elem> section) const {
    if (section.size() != static_cast<size_t>(base().order()))
        fail(ErrorKind::InvalidInput, "set section has the wrong length");
    for (Elem p = 0; p < base().order(); ++p)
        if (section[p] < 0 || section[p] >= total().order() || proj_(section[p]) != p)
            fail(ErrorKind::InvalidInput, "set section is not a right inverse of the projection");
    if (section[base().identity()] != total().identity())
        fail(ErrorKind::InvalidInput, "set section must send the identity to the identity");
    Extension out = *this;
    out.section_ = std::move(section);
    return out;
}

AbElem Extension::kernel_element(Elem w) const {
    if (kernel_index_[w] < 0)
        fail(ErrorKind::InvalidInput, "element " + std::to_string(w) + " is not in the kernel");
    return kernel_group().element(kernel_index_[w]);
}

bool Extension::same_as(const Extension& o) const {
    return total().same_as(o.total()) && base().same_as(o.base()) && inj_ == o.inj_ && proj_ == o.proj_;
}

Extension extension_from_surjection(const GroupHom& proj) {
    auto k = kernel(proj);
    if (!k.is_abelian())
        fail(ErrorKind::KernelNotAbelian, "kernel of the projection is not abelian");
    auto st = abelian_structure(k);
    return Extension::from_maps(st.group, st.embedding, proj);
}

Extension extension_from_cocycle(const GModule& module, const Cochain& f) {
    if (f.degree() != 2 || !f.module().same_as(module))
        fail(ErrorKind::TypeMismatch, "extension data must be a 2-cochain in the given module");
    if (!differential(f).is_zero())
        fail(ErrorKind::NotACocycle, "extension data is not a 2-cocycle");
    const auto& pi = module.group();
    const auto& m = module.coeff();
    const int64_t mo = m.order(), po = pi.order();
    if (mo * po > FiniteGroup::kMaxOrder)
        fail(ErrorKind::UnsupportedParameter, "extension would have order " + std::to_string(mo * po));
    const int n = static_cast<int>(mo * po);
    const auto elems = m.elements();
    std::vector<int32_t> add(static_cast<size_t>(mo * mo)), act(static_cast<size_t>(po * mo)),
        fval(static_cast<size_t>(po * po));
    for (int64_t a = 0; a < mo; ++a)
        for (int64_t b = 0; b < mo; ++b)
            add[a * mo + b] = static_cast<int32_t>(m.index(m.add(elems[a], elems[b])));
    for (Elem p = 0; p < po; ++p)
        for (int64_t a = 0; a < mo; ++a)
            act[p * mo + a] = static_cast<int32_t>(m.index(module.act(p, elems[a])));
    std::vector<Elem> t(2);
    for (Elem p = 0; p < po; ++p)
        for (Elem q = 0; q < po; ++q) {
            t = {p, q};
            fval[p * po + q] = static_cast<int32_t>(m.index(f.value(t)));
        }
    std::vector<uint16_t> table(static_cast<size_t>(n) * n);
    for (Elem p1 = 0; p1 < po; ++p1)
        for (int64_t m1 = 0; m1 < mo; ++m1)
            for (Elem p2 = 0; p2 < po; ++p2) {
                const Elem p = pi.mul(p1, p2);
                const int32_t twist = fval[p1 * po + p2];
                for (int64_t m2 = 0; m2 < mo; ++m2) {
                    int32_t v = add[add[m1 * mo + act[p1 * mo + m2]] * mo + twist];
                    table[static_cast<size_t>(p1 * mo + m1) * n + p2 * mo + m2] = static_cast<uint16_t>(p * mo + v);
                }
            }
    auto omega = FiniteGroup::from_flat_table(n, std::move(table), m.to_string() + "." + pi.label());
    std::vector<Elem> inj_img(static_cast<size_t>(mo)), proj_img(static_cast<size_t>(n));
    for (int64_t k = 0; k < mo; ++k)
        inj_img[k] = static_cast<Elem>(pi.identity() * mo + k);
    for (int w = 0; w < n; ++w)
        proj_img[w] = static_cast<Elem>(w / mo);
    return Extension::from_maps(m, GroupHom(additive_group(m), omega, std::move(inj_img)),
                                GroupHom(omega, pi, std::move(proj_img)));
}

Cochain extension_cocycle(const Extension& e) {
    const auto& w = e.total();
    const auto& pi = e.base();
    return Cochain::from_function(e.module(), 2, [&](std::span<const Elem> t) {
        Elem x = w.mul(w.mul(e.set_section(t[0]), e.set_section(t[1])), w.inv(e.set_section(pi.mul(t[0], t[1]))));
        return e.kernel_element(x);
    });
}

CohomologyClass class_of_extension(const Extension& e, const std::optional<CohomologyGroup>& target) {
    auto h = target ? *target : cohomology(e.module(), 2);
    if (h.degree() != 2 || !h.module().same_as(e.module()))
        fail(ErrorKind::TypeMismatch, "target cohomology group does not match the extension");
    return h.class_of(extension_cocycle(e));
}

bool same_section_class(const SectionClass& a, const SectionClass& b) {
    if (!a.extension.same_as(b.extension))
        fail(ErrorKind::ExtensionMismatch, "sections of different extensions");
    return are_conjugate(a.representative, b.representative, kernel_subgroup(a.extension)).has_value();
}

std::vector<SectionClass> sections(const Extension& e) {
    auto homs = enumerate_homs(e.base(), e.total(), LiftConstraint{e.proj(), GroupHom::identity(e.base())});
    auto m = kernel_subgroup(e);
    std::map<std::vector<Elem>, size_t> seen;
    std::vector<std::pair<std::vector<Elem>, GroupHom>> reps;
    for (auto& h : homs) {
        auto key = conjugacy_key(h, m);
        if (seen.emplace(key, reps.size()).second)
            reps.emplace_back(std::move(key), std::move(h));
    }
    std::sort(reps.begin(), reps.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<SectionClass> out;
    for (auto& [key, h] : reps)
        out.push_back(SectionClass{e, std::move(h)});
    return out;
}

CohomologyClass section_difference(const SectionClass& s1, const SectionClass& s2,
                                   const std::optional<CohomologyGroup>& target) {
    if (!s1.extension.same_as(s2.extension))
        fail(ErrorKind::ExtensionMismatch, "sections of different extensions");
    const auto& e = s1.extension;
    auto h = target ? *target : cohomology(e.module(), 1);
    if (h.degree() != 1 || !h.module().same_as(e.module()))
        fail(ErrorKind::TypeMismatch, "target cohomology group does not match the extension");
    const auto& w = e.total();
    auto z = Cochain::from_function(e.module(), 1, [&](std::span<const Elem> t) {
        return e.kernel_element(w.mul(s1.representative(t[0]), w.inv(s2.representative(t[0]))));
    });
    return h.class_of(z);
}

RestrictedKernel restricted_kernel(const Extension& e, const GModule& a) {
    if (!a.group().same_as(e.base()))
        fail(ErrorKind::GroupMismatch, "coefficient module is not over the extension's base");
    auto inflated = restrict_module(a, e.proj());
    auto h2 = cohomology(inflated, 2);
    auto hm = cohomology(restrict_module(inflated, e.inj()), 2);
    const auto& hg = h2.group();
    IntMatrix res(hm.group().rank(), hg.rank());
    for (size_t k = 0; k < hg.rank(); ++k) {
        auto v = pullback(e.inj(), h2.element(hg.basis(k)), hm).element();
        for (size_t j = 0; j < v.size(); ++j)
            res(j, k) = v[j];
    }
    auto ker = kernel(AbMap(hg, hm.group(), std::move(res)));
    return RestrictedKernel{std::move(inflated), std::move(h2), std::move(ker)};
}

std::vector<CohomologyClass> h2_restricted_kernel(const Extension& e, const GModule& a, size_t max_classes) {
    auto rk = restricted_kernel(e, a);
    if (rk.kernel.group.order() > static_cast<Int>(max_classes))
        fail(ErrorKind::BudgetExceeded, "restricted kernel has " + std::to_string(rk.kernel.group.order()) + " classes");
    std::vector<CohomologyClass> out;
    for (const auto& x : rk.kernel.group.elements())
        out.push_back(rk.h2.element(rk.kernel.map(x)));
    return out;
}

CohomologyClass edge_delta(const Extension& e, const GModule& a, const CohomologyClass& c) {
    if (!a.group().same_as(e.base()))
        fail(ErrorKind::GroupMismatch, "coefficient module is not over the extension's base");
    auto inflated = restrict_module(a, e.proj());
    if (c.parent().degree() != 2 || !c.parent().module().same_as(inflated))
        fail(ErrorKind::TypeMismatch, "class is not in H^2 of the total group with inflated coefficients");
    const auto f = c.representative();

    // normalize f to vanish on M x M
    auto on_m = restrict_module(inflated, e.inj());
    auto bm = cohomology(on_m, 2).coboundary_preimage(pullback_cochain(e.inj(), f, on_m));
    if (!bm)
        fail(ErrorKind::NotInKernel, "class does not restrict to zero on the kernel");
    Cochain b(inflated, 1);
    const auto& mg = e.inj().domain();
    for (Elem k = 0; k < mg.order(); ++k)
        if (k != mg.identity()) {
            std::vector<Elem> t{k};
            b.set(std::vector<Elem>{e.inj()(k)}, bm->value(t));
        }
    const Cochain fp = f - differential(b);

    const auto& omega = e.total();
    const auto& mgrp = e.kernel_group();
    const auto& ag = a.coeff();
    auto hm = hom_module(e.module(), a);
    auto value = [&](Elem x, Elem y) {
        std::vector<Elem> t{x, y};
        return fp.value(t);
    };
    auto functional = [&](Elem p, const AbElem& m) {
        const Elem t = e.set_section(p);
        const Elem x = e.embed(m);
        return ag.sub(value(t, x), value(omega.conj(t, x), t));
    };
    auto delta = Cochain::from_function(hm.module, 1, [&](std::span<const Elem> tp) {
        const Elem p = tp[0];
        IntMatrix mat(ag.rank(), mgrp.rank());
        for (size_t i = 0; i < mgrp.rank(); ++i) {
            auto v = functional(p, mgrp.basis(i));
            for (size_t j = 0; j < v.size(); ++j)
                mat(j, i) = v[j];
        }
        AbMap map(mgrp, ag, std::move(mat));
        for (const auto& m : mgrp.elements())
            ensure(map(m) == functional(p, m), "edge map value is not additive on the kernel");
        return hm.hom.from_map(map);
    });
    auto h1 = cohomology(hm.module, 1);
    ensure(h1.is_cocycle(delta), "edge map produced a non-cocycle");
    return h1.class_of(delta);
}

Cor65Report verify_cor65(const Extension& e, const GModule& a, const CohomologyClass& c, const SectionClass& s1,
                         const SectionClass& s2) {
    if (!s1.extension.same_as(e) || !s2.extension.same_as(e))
        fail(ErrorKind::ExtensionMismatch, "sections do not belong to the extension");
    auto ha = cohomology(a, 2);
    auto p1 = pullback(s1.representative, c, ha);
    auto p2 = pullback(s2.representative, c, ha);
    CohomologyClass lhs(ha, ha.group().sub(p1.element(), p2.element()));
    auto diff = section_difference(s1, s2);
    auto delta = edge_delta(e, a, c);
    auto rhs = cup_classes(diff, delta, CoeffPairing::evaluation(e.module(), a), ha);
    Cor65Report r{lhs, rhs};
    r.equal_plus = lhs.element() == rhs.element();
    r.equal_minus = lhs.element() == ha.group().neg(rhs.element());
    r.holds = kCor65Sign > 0 ? r.equal_plus : r.equal_minus;
    return r;
}

Cor65Summary verify_cor65_all(const Extension& e, const GModule& a) {
    Cor65Summary out;
    auto secs = sections(e);
    auto classes = h2_restricted_kernel(e, a);
    out.sections = secs.size();
    out.classes = classes.size();
    if (secs.empty() || classes.empty())
        return out;
    auto ha = cohomology(a, 2);
    auto h1 = cohomology(e.module(), 1);
    auto pr = CoeffPairing::evaluation(e.module(), a);
    std::vector<std::vector<CohomologyClass>> diff(secs.size());
    for (const auto& s1 : secs)
        for (const auto& s2 : secs)
            diff[&s1 - secs.data()].push_back(section_difference(s1, s2, h1));
    for (const auto& c : classes) {
        auto delta = edge_delta(e, a, c);
        std::vector<AbElem> pulled;
        for (const auto& s : secs)
            pulled.push_back(pullback(s.representative, c, ha).element());
        for (size_t i = 0; i < secs.size(); ++i)
            for (size_t j = 0; j < secs.size(); ++j) {
                AbElem lhs = ha.group().sub(pulled[i], pulled[j]);
                AbElem rhs = cup_classes(diff[i][j], delta, pr, ha).element();
                bool plus = lhs == rhs;
                bool minus = lhs == ha.group().neg(rhs);
                ++out.checks;
                out.plus += plus;
                out.minus += minus;
                out.holds += kCor65Sign > 0 ? plus : minus;
            }
    }
    return out;
}

Extension pullback_extension(const Extension& e, const GroupHom& f) {
    if (!f.codomain().same_as(e.base()))
        fail(ErrorKind::CodomainMismatch, "pullback map does not land in the extension's base");
    auto fp = fiber_product(e.proj(), f);
    const auto& mg = e.inj().domain();
    std::vector<Elem> inj(mg.order());
    for (Elem k = 0; k < mg.order(); ++k)
        inj[k] = fp.index_of(e.inj()(k), f.domain().identity());
    return Extension::from_maps(e.kernel_group(), GroupHom(mg, fp.group, std::move(inj)), fp.to_second);
}

} // namespace obstrukt
