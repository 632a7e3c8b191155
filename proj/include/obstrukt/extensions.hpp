#pragma once

#include "obstrukt/products.hpp"

#include <optional>
#include <vector>

namespace obstrukt {

/// 1 -> M -> Omega -> Pi -> 1 with M abelian, carrying the conjugation action of Pi on M.
class Extension {
  public:
    /// inj : additive_group(m) -> Omega, proj : Omega -> Pi.
    /// Throws InvalidInput unless the sequence is exact.
    static Extension from_maps(FinAbGroup m, GroupHom inj, GroupHom proj);

    const FiniteGroup& total() const { return proj_.domain(); }
    const FiniteGroup& base() const { return proj_.codomain(); }
    const FinAbGroup& kernel_group() const { return module_.coeff(); }
    const GroupHom& inj() const { return inj_; }
    const GroupHom& proj() const { return proj_; }
    /// M with pi . m = t(pi) m t(pi)^-1.
    const GModule& module() const { return module_; }

    /// Minimal-index preimage of each element of Pi; the identity maps to the identity.
    const std::vector<Elem>& set_section() const { return section_; }
    Elem set_section(Elem pi) const { return section_[pi]; }
    /// Same extension with another set-theoretic section (validated; identity to identity).
    Extension with_set_section(std::vector<Elem> section) const;

    bool in_kernel(Elem w) const { return kernel_index_[w] >= 0; }
    /// inj^-1 of a kernel element. Throws InvalidInput outside the kernel.
    AbElem kernel_element(Elem w) const;
    Elem embed(const AbElem& m) const { return inj_(static_cast<Elem>(kernel_group().index(m))); }

    /// Same groups and maps.
    bool same_as(const Extension& o) const;

  private:
    Extension(GroupHom inj, GroupHom proj, GModule module, std::vector<Elem> section, std::vector<int32_t> kidx)
        : inj_(std::move(inj)), proj_(std::move(proj)), module_(std::move(module)), section_(std::move(section)),
          kernel_index_(std::move(kidx)) {}

    GroupHom inj_, proj_;
    GModule module_;
    std::vector<Elem> section_;
    std::vector<int32_t> kernel_index_;
};

/// Extension of proj's image by its kernel. Throws KernelNotAbelian.
Extension extension_from_surjection(const GroupHom& proj);

/// Omega = M x Pi, element (m, pi) at index pi * |M| + index(m), with
/// (m1, p1)(m2, p2) = (m1 + p1.m2 + f(p1, p2), p1 p2). Throws NotACocycle.
Extension extension_from_cocycle(const GModule& module, const Cochain& f);

/// (p1, p2) -> inj^-1(t(p1) t(p2) t(p1 p2)^-1) for the extension's set section t.
Cochain extension_cocycle(const Extension& e);

CohomologyClass class_of_extension(const Extension& e, const std::optional<CohomologyGroup>& target = std::nullopt);

/// Homomorphic section, compared up to conjugation by M.
struct SectionClass {
    Extension extension;
    GroupHom representative;
};

bool same_section_class(const SectionClass& a, const SectionClass& b);

/// All homomorphic sections, one per M-conjugacy class, ordered by canonical key.
std::vector<SectionClass> sections(const Extension& e);

/// Class of g -> inj^-1(s1(g) s2(g)^-1) in H^1(Pi, M). Throws ExtensionMismatch.
CohomologyClass section_difference(const SectionClass& s1, const SectionClass& s2,
                                   const std::optional<CohomologyGroup>& target = std::nullopt);

/// H^2(Omega, A) for A pulled back along proj, and the kernel of restriction to M.
struct RestrictedKernel {
    GModule inflated;          ///< A as an Omega-module
    CohomologyGroup h2;        ///< H^2(Omega, A)
    SubobjectResult kernel;    ///< inclusion into h2.group()
};

RestrictedKernel restricted_kernel(const Extension& e, const GModule& a);

/// Every class of H^2(Omega, A) restricting to zero on M. Throws BudgetExceeded
/// beyond `max_classes`.
std::vector<CohomologyClass> h2_restricted_kernel(const Extension& e, const GModule& a, size_t max_classes = 1 << 16);

/// Edge map H^2(Omega, A)_0 -> H^1(Pi, Hom(M, A)). Throws NotInKernel.
CohomologyClass edge_delta(const Extension& e, const GModule& a, const CohomologyClass& c);

/// Global sign in s1*(c) - s2*(c) = sign * [s1 - s2] u delta(c) for the cocycle
/// formulas used here, fixed once on the Z/3 x (Z/3)^2 instance (characteristic-2
/// instances cannot see it).
inline constexpr int kCor65Sign = -1;

struct Cor65Report {
    CohomologyClass lhs;          ///< s1*(c) - s2*(c)
    CohomologyClass rhs;          ///< [s1 - s2] u delta(c), unsigned
    bool equal_plus = false;      ///< lhs == rhs
    bool equal_minus = false;     ///< lhs == -rhs
    bool holds = false;           ///< under kCor65Sign
};

Cor65Report verify_cor65(const Extension& e, const GModule& a, const CohomologyClass& c, const SectionClass& s1,
                         const SectionClass& s2);

/// Counts over every class of H^2(Omega, A)_0 and every ordered pair of section classes.
struct Cor65Summary {
    size_t sections = 0;
    size_t classes = 0;
    size_t checks = 0;
    size_t plus = 0;  ///< checks with lhs == rhs
    size_t minus = 0; ///< checks with lhs == -rhs
    size_t holds = 0; ///< checks passing under kCor65Sign
};

Cor65Summary verify_cor65_all(const Extension& e, const GModule& a);

/// Extension over Pi' with total group the fiber product of proj and f.
Extension pullback_extension(const Extension& e, const GroupHom& f);

} // namespace obstrukt
