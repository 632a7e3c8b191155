#pragma once

#include "obstrukt/extensions.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace obstrukt {

/// phi : G1 -> G2 surjective and psi : base -> G2.
class EmbeddingProblem {
  public:
    /// Throws PhiNotSurjective or CodomainMismatch.
    EmbeddingProblem(GroupHom phi, GroupHom psi);

    const FiniteGroup& base() const { return psi_.domain(); }
    const FiniteGroup& g1() const { return phi_.domain(); }
    const FiniteGroup& g2() const { return phi_.codomain(); }
    const GroupHom& phi() const { return phi_; }
    const GroupHom& psi() const { return psi_; }
    const Subgroup& kernel() const { return kernel_; }

    bool same_as(const EmbeddingProblem& o) const;

  private:
    GroupHom phi_, psi_;
    Subgroup kernel_;
};

/// A lift h with phi o h = psi, up to conjugation by Ker(phi). The
/// representative is canonical: the smallest image tuple on the base generators.
struct SolutionClass {
    EmbeddingProblem problem;
    GroupHom representative;
};

/// Canonical class of a lift. Throws ProblemMismatch if h is not a lift.
SolutionClass solution_class(const EmbeddingProblem& e, const GroupHom& h);

/// All solution classes in canonical order. Throws SearchBudgetExceeded.
std::vector<SolutionClass> solve(const EmbeddingProblem& e, const HomSearchOptions& opts = {});

/// Morphism of problems over the same base: g1map : G1 -> G1', g2map : G2 -> G2'
/// with phi' o g1map = g2map o phi and psi' = g2map o psi.
struct ProblemMap {
    EmbeddingProblem source, target;
    GroupHom g1map, g2map;
};

/// Validates both squares. Throws ProblemMismatch.
ProblemMap problem_map(EmbeddingProblem source, EmbeddingProblem target, GroupHom g1map, GroupHom g2map);
ProblemMap compose(const ProblemMap& after, const ProblemMap& before);
ProblemMap identity_map(const EmbeddingProblem& e);

/// Class of g1map o h. Throws ProblemMismatch.
SolutionClass map_solutions(const ProblemMap& g, const SolutionClass& s);

/// Fiber product of phi and psi: the total group of Gamma(E).
FiberProduct gamma_group(const EmbeddingProblem& e);

/// 1 -> Ker(phi) -> Gamma(E) -> base -> 1 with a -> (a, 1) and the second projection.
/// Throws KernelNotAbelian.
Extension gamma_of(const EmbeddingProblem& e);

/// Class of Gamma(E) in H^2(base, Ker). Throws KernelNotAbelian.
CohomologyClass obstruction_class(const EmbeddingProblem& e);

/// h -> (g -> (h(g), g)), paired with its section class.
std::vector<std::pair<SolutionClass, SectionClass>> solutions_as_sections(const EmbeddingProblem& e,
                                                                         const Extension& gamma);
SectionClass section_of(const Extension& gamma, const SolutionClass& s);
/// Inverse of section_of: the first coordinate of a section.
SolutionClass solution_of(const EmbeddingProblem& e, const SectionClass& s);

/// G1 replaced by G1/[Ker, Ker], with the map (quotient, identity).
std::pair<EmbeddingProblem, ProblemMap> abelianized_problem(const EmbeddingProblem& e);

/// Every solution h' paired with [s(h') - s(base_solution)] in H^1(base, Ker).
/// Throws NoSolution when the problem has no solutions, ProblemMismatch for a foreign base solution.
std::vector<std::pair<SolutionClass, CohomologyClass>> alpha_bijection(const EmbeddingProblem& e,
                                                                       const SolutionClass& base_solution);

/// Problem for characters a_1..a_n : base -> Z/2: G1 = unipotent (n+1) x (n+1) over F2,
/// G2 = (Z/2)^n (first factor most significant), phi = superdiagonal, psi = (a_1, .., a_n).
EmbeddingProblem dwyer_problem(const FiniteGroup& base, const std::vector<GroupHom>& characters);

/// Character as a 1-cocycle with trivial Z/2 coefficients.
Cochain character_cochain(const GroupHom& chi);

enum class Side { Yes, No, BudgetExceeded };

struct DwyerReport {
    Side massey = Side::BudgetExceeded;   ///< the Massey product contains zero
    Side solvable = Side::BudgetExceeded; ///< the Dwyer problem has a solution
    bool agree = false;                   ///< both decided and equal
};

/// Computes both sides independently.
DwyerReport dwyer_check(const FiniteGroup& base, const std::vector<GroupHom>& characters,
                        const MasseyBudget& massey_budget = {}, const HomSearchOptions& search = {});

struct PairingWitness {
    GroupHom a;        ///< Z/source_order -> ker
    CohomologyClass c; ///< in H^2(ker, coeff), with a^*(c) != 0
};

/// First (a, c) in Hom(Z/n, ker) x H^2(ker, coeff) with nonzero pullback, trivial
/// action on coeff. Throws BudgetExceeded beyond `max_pairs`.
std::optional<PairingWitness> pairing_1041_witness(const FiniteGroup& ker, const FinAbGroup& coeff,
                                                   int source_order = 2, size_t max_pairs = 1 << 20);

/// Binary icosahedral data: SL(2,5) over A5 and its pullback along an involution.
struct IcosahedralReport {
    Int h2_order = 0;                  ///< |H^2(A5, Z/2)|
    bool sl25_class_nonzero = false;   ///< class of SL(2,5) -> A5
    std::vector<int> involution;       ///< the involution used, as a permutation of 0..4
    int pullback_order = 0;            ///< order of the pulled-back total group
    int pullback_exponent = 0;
    bool pullback_class_nonzero = false;
    bool witness_found = false;
    std::vector<int> witness_involution;
    bool witness_matches_sl25 = false; ///< the witness class is the SL(2,5) class
};

/// Uses the involution (0 1)(2 3), the 0-based form of (1 2)(3 4).
IcosahedralReport icosahedral_example();

/// Even permutations of 0..n-1 in lexicographic order, matching standard_group(alternating(n)).
std::vector<std::vector<int>> alternating_elements(int n);

} // namespace obstrukt
