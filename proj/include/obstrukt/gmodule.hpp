#pragma once

#include "obstrukt/abelian.hpp"
#include "obstrukt/groups.hpp"

#include <memory>
#include <vector>

namespace obstrukt {

/// Finite abelian group with a left action of a finite group by automorphisms.
class GModule {
  public:
    GModule();

    static GModule trivial(FiniteGroup g, FinAbGroup coeff);

    /// Action given on a generating set, completed by composition.
    /// Throws InvalidInput naming the word on which completion is inconsistent,
    /// GeneratorsDontGenerate if the listed elements do not generate.
    static GModule from_generator_action(FiniteGroup g, FinAbGroup coeff,
                                         const std::vector<std::pair<Elem, IntMatrix>>& generator_action);

    /// Full action table (one matrix per element), validated.
    static GModule from_action_table(FiniteGroup g, FinAbGroup coeff, std::vector<IntMatrix> action);

    const FiniteGroup& group() const { return d_->group; }
    const FinAbGroup& coeff() const { return d_->coeff; }
    const IntMatrix& action(Elem g) const { return d_->action[g]; }
    AbMap action_map(Elem g) const { return AbMap(coeff(), coeff(), action(g)); }
    AbElem act(Elem g, const AbElem& m) const;
    bool is_trivial() const { return d_->trivial; }

    /// Same group table, coefficients and action.
    bool same_as(const GModule& other) const;

  private:
    struct Data {
        FiniteGroup group;
        FinAbGroup coeff;
        std::vector<IntMatrix> action;
        bool trivial = true;
    };
    explicit GModule(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    static GModule build(FiniteGroup g, FinAbGroup coeff, std::vector<IntMatrix> action);

    std::shared_ptr<const Data> d_;
};

/// H-module with h acting as f(h). Throws CodomainMismatch.
GModule restrict_module(const GModule& m, const GroupHom& f);

/// {m : g m = m for all g} with its inclusion.
SubobjectResult invariants(const GModule& m);

struct HomModule {
    GModule module;
    HomGroup hom;
};

/// Hom(M, A) with (g f)(m) = g f(g^-1 m). Throws GroupMismatch.
HomModule hom_module(const GModule& m, const GModule& a);

/// Checks that t commutes with the actions. Throws NotEquivariant.
void check_equivariant(const GModule& source, const GModule& target, const AbMap& t);

} // namespace obstrukt
