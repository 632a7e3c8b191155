#pragma once

#include "obstrukt/cochain.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace obstrukt {

struct CohomologyOptions {
    /// Cap on the number of coordinates of C^n and C^{n-1}.
    size_t max_coordinates = 2'000'000;
    /// Cap on the rows of d^n streamed during verification.
    size_t max_rows = 50'000'000;
    int max_degree = 3;
};

class CohomologyClass;

/// H^n(G, M) = Z^n / B^n with a fixed basis of representative cocycles.
class CohomologyGroup {
  public:
    const GModule& module() const;
    int degree() const;
    const FinAbGroup& group() const;

    /// Representative cocycle of a group element.
    Cochain lift(const AbElem& h) const;
    /// Class of a cocycle. Throws NotACocycle.
    AbElem project(const Cochain& z) const;
    bool is_cocycle(const Cochain& z) const;
    /// Some b with db = z if z is a coboundary; nothing if its class is nonzero.
    /// Throws NotACocycle.
    std::optional<Cochain> coboundary_preimage(const Cochain& z) const;

    CohomologyClass class_of(const Cochain& z) const;
    CohomologyClass element(const AbElem& h) const;
    CohomologyClass zero() const;
    std::vector<CohomologyClass> all_classes() const;

    /// Same computed object (classes from it compare by element).
    bool same_as(const CohomologyGroup& o) const { return impl_ == o.impl_; }

    struct Impl;

  private:
    explicit CohomologyGroup(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    friend CohomologyGroup cohomology(const GModule&, int, const CohomologyOptions&);
    std::shared_ptr<const Impl> impl_;
};

class CohomologyClass {
  public:
    CohomologyClass(CohomologyGroup parent, AbElem element);
    const CohomologyGroup& parent() const { return parent_; }
    const AbElem& element() const { return element_; }
    bool is_zero() const { return parent_.group().is_zero(element_); }
    Cochain representative() const { return parent_.lift(element_); }

  private:
    CohomologyGroup parent_;
    AbElem element_;
};

/// Equal iff the representatives differ by a coboundary.
bool classes_equal(const CohomologyClass& a, const CohomologyClass& b);

/// Throws BudgetExceeded beyond the options' caps.
CohomologyGroup cohomology(const GModule& m, int degree, const CohomologyOptions& opts = {});

/// Pullback along f : H -> G, in `target` (computed if absent) over the restricted module.
CohomologyClass pullback(const GroupHom& f, const CohomologyClass& c,
                         const std::optional<CohomologyGroup>& target = std::nullopt);

/// Valuewise image under an equivariant coefficient map. Throws NotEquivariant.
CohomologyClass pushforward(const AbMap& t, const GModule& target_module, const CohomologyClass& c,
                            const std::optional<CohomologyGroup>& target = std::nullopt);

} // namespace obstrukt
