#pragma once

#include "obstrukt/cohomology.hpp"

#include <optional>
#include <vector>

namespace obstrukt {

/// Equivariant bilinear map left x right -> target, given by one map
/// right -> target per basis element of left.
class CoeffPairing {
  public:
    /// Validates bilinearity and equivariance. Throws TypeMismatch / NotEquivariant.
    CoeffPairing(GModule left, GModule right, GModule target, std::vector<AbMap> table);

    /// Product on Z/n coefficients: <x, y> = xy.
    static CoeffPairing multiplication(const GModule& m);
    /// ev : M x Hom(M, A) -> A.
    static CoeffPairing evaluation(const GModule& m, const GModule& a);

    const GModule& left() const { return left_; }
    const GModule& right() const { return right_; }
    const GModule& target() const { return target_; }
    const std::vector<AbMap>& table() const { return table_; }

    AbElem operator()(const AbElem& l, const AbElem& r) const;
    /// <r, l> as a pairing right x left -> target.
    CoeffPairing swapped() const;

  private:
    GModule left_, right_, target_;
    std::vector<AbMap> table_;
};

/// (c u d)(g1..g_{p+q}) = <c(g1..gp), (g1...gp) d(g_{p+1}..g_{p+q})>. Throws TypeMismatch.
Cochain cup(const Cochain& c, const Cochain& d, const CoeffPairing& pr);

/// Class of the cup of representatives, in `target` (computed if absent).
CohomologyClass cup_classes(const CohomologyClass& a, const CohomologyClass& b, const CoeffPairing& pr,
                            const std::optional<CohomologyGroup>& target = std::nullopt);

/// Family a_ij, 1 <= i < j <= n+1, (i, j) != (1, n+1), with d a_ij = sum_k a_ik u a_kj.
class DefiningSystem {
  public:
    DefiningSystem(GModule module, int n);

    const GModule& module() const { return module_; }
    int n() const { return n_; }
    const Cochain& at(int i, int j) const;
    void set(int i, int j, Cochain c);
    bool has(int i, int j) const { return entries_[slot(i, j)].has_value(); }

    /// sum_{k=i+1}^{j-1} a_ik u a_kj
    Cochain product_sum(int i, int j) const;
    /// Checks every defining equation.
    bool is_valid() const;

  private:
    size_t slot(int i, int j) const;

    GModule module_;
    int n_;
    std::vector<std::optional<Cochain>> entries_;
};

struct MasseyBudget {
    /// Cap on the partial defining systems visited.
    size_t max_nodes = 1'000'000;
};

/// A defining system extending the given 1-cocycles, or nothing when none
/// exists. Coefficients must be Z/m with trivial action.
/// Throws BudgetExceeded before the search space is exhausted.
std::optional<DefiningSystem> massey_defining_system(const std::vector<Cochain>& a, const MasseyBudget& budget = {});

/// Class of sum_{k=2}^{n} a_1k u a_k,n+1 in H^2.
CohomologyClass massey_product(const DefiningSystem& ds,
                               const std::optional<CohomologyGroup>& target = std::nullopt);

enum class MasseyStatus { Yes, No, BudgetExceeded };

struct MasseyResult {
    MasseyStatus status;
    std::optional<DefiningSystem> witness; ///< with vanishing product when status is Yes
    size_t nodes = 0;
};

/// Whether some defining system has vanishing product; the first one in search order is the witness.
MasseyResult massey_contains_zero(const std::vector<Cochain>& a, const MasseyBudget& budget = {});

} // namespace obstrukt
