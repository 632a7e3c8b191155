#pragma once

#include "obstrukt/groups.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace obstrukt {

using Int = int64_t;
using AbElem = std::vector<Int>;

/// Dense row-major integer matrix.
class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(size_t rows, size_t cols, Int fill = 0) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    static IntMatrix identity(size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows, size_t cols_if_empty = 0);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Int& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
    Int operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }
    std::vector<std::vector<Int>> to_rows() const;

    IntMatrix operator*(const IntMatrix& o) const;
    AbElem operator*(const AbElem& v) const;
    IntMatrix transposed() const;
    bool is_zero() const;

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<Int> data_;
};

/// U * m * V = D with D diagonal, d1 | d2 | ..., nonnegative; U, V unimodular.
struct SnfResult {
    IntMatrix U, D, V;
};

/// Smith normal form over Z. Pivots by minimal absolute value; 64-bit
/// arithmetic is overflow-checked and the computation restarts with
/// arbitrary-precision integers when needed. Throws BudgetExceeded if even
/// the final matrices do not fit in 64 bits.
SnfResult snf(const IntMatrix& m);

/// Determinant via fraction-free elimination (exact, small matrices).
Int determinant(const IntMatrix& m);

/// Finite abelian group ⊕ Z/d_i in invariant-factor form (d_i >= 2, d_i | d_{i+1}).
/// Elements are integer vectors reduced into [0, d_i).
class FinAbGroup {
  public:
    FinAbGroup() = default;
    explicit FinAbGroup(std::vector<Int> factors);
    static FinAbGroup cyclic(Int n);

    const std::vector<Int>& factors() const { return factors_; }
    size_t rank() const { return factors_.size(); }
    Int order() const;
    Int exponent() const { return factors_.empty() ? 1 : factors_.back(); }
    bool is_trivial() const { return factors_.empty(); }

    /// Nonzero iff every factor equals that prime.
    Int elementary_prime() const;

    AbElem zero() const { return AbElem(rank(), 0); }
    AbElem reduce(AbElem x) const;
    AbElem add(const AbElem& a, const AbElem& b) const;
    AbElem sub(const AbElem& a, const AbElem& b) const;
    AbElem neg(const AbElem& a) const;
    AbElem scale(Int k, const AbElem& a) const;
    bool is_zero(const AbElem& a) const;
    AbElem basis(size_t i) const;

    /// Mixed-radix index, first coordinate most significant.
    Int index(const AbElem& x) const;
    AbElem element(Int idx) const;
    std::vector<AbElem> elements() const;
    Int element_order(const AbElem& x) const;

    std::string to_string() const;

    friend bool operator==(const FinAbGroup&, const FinAbGroup&) = default;

  private:
    std::vector<Int> factors_;
};

/// Additive map between finite abelian groups; matrix acts on column vectors.
class AbMap {
  public:
    AbMap(FinAbGroup source, FinAbGroup target, IntMatrix matrix);
    static AbMap identity(const FinAbGroup& g);
    static AbMap zero(const FinAbGroup& source, const FinAbGroup& target);

    const FinAbGroup& source() const { return source_; }
    const FinAbGroup& target() const { return target_; }
    const IntMatrix& matrix() const { return matrix_; }
    AbElem operator()(const AbElem& x) const;
    bool is_zero() const { return matrix_.is_zero(); }
    bool is_injective() const;

    friend bool operator==(const AbMap&, const AbMap&) = default;

  private:
    FinAbGroup source_, target_;
    IntMatrix matrix_;
};

/// after ∘ before
AbMap compose(const AbMap& after, const AbMap& before);

struct SubobjectResult {
    FinAbGroup group;
    AbMap map; ///< inclusion (kernel, image) or projection (cokernel)
};

SubobjectResult kernel(const AbMap& f);
SubobjectResult image(const AbMap& f);
SubobjectResult cokernel(const AbMap& f);

/// Solve f(x) = y; some preimage or nothing.
std::optional<AbElem> preimage(const AbMap& f, const AbElem& y);

/// Hom(M, A) with an indexer between its elements and additive maps.
class HomGroup {
  public:
    HomGroup(FinAbGroup source, FinAbGroup target);

    const FinAbGroup& group() const { return group_; }
    const FinAbGroup& source() const { return source_; }
    const FinAbGroup& target() const { return target_; }
    AbMap to_map(const AbElem& h) const;
    AbElem from_map(const AbMap& f) const;
    AbElem from_matrix(const IntMatrix& m) const;

  private:
    FinAbGroup source_, target_, group_;
    std::vector<Int> raw_moduli_; // Z/gcd(m_i, a_j), index i * rank(A) + j
    IntMatrix to_raw_, from_raw_;
};

HomGroup hom_group(const FinAbGroup& m, const FinAbGroup& a);

/// M^∨ = Hom(M, Z/e), e = exponent(M), with the evaluation pairing.
class Dual {
  public:
    explicit Dual(FinAbGroup m);
    const FinAbGroup& group() const { return hom_.group(); }
    const HomGroup& hom() const { return hom_; }
    Int exponent() const { return exponent_; }
    /// ev(x, phi) in Z/e
    Int evaluate(const AbElem& x, const AbElem& functional) const;

  private:
    Int exponent_;
    HomGroup hom_;
};

Dual dual(const FinAbGroup& m);

/// The additive group of `a` as a FiniteGroup, element k = a.element(k).
FiniteGroup additive_group(const FinAbGroup& a, std::string label = "");

/// Invariant-factor structure of an abelian subgroup, with an isomorphism
/// from the additive group of the result onto it (as a hom into the parent).
struct AbelianStructure {
    FinAbGroup group;
    GroupHom embedding; ///< additive_group(group) -> parent, injective with image = subgroup
};
AbelianStructure abelian_structure(const Subgroup& h);

namespace linalg {

Int mod(Int a, Int m);
Int inverse_mod(Int a, Int m);

/// U R V = D over Z/e; U, V invertible mod e; Uinv tracked.
struct ModSnf {
    Int e = 1;
    IntMatrix U, Uinv, V;
    std::vector<Int> diag; // length min(rows, cols); entries gcd-normalized (divisors of e, or 0 meaning e)
    size_t rows = 0, cols = 0;
};
ModSnf snf_mod(IntMatrix r, Int e);

/// Solve R x = y over Z/e using a precomputed SNF of R.
std::optional<AbElem> solve(const ModSnf& s, const AbElem& y);

/// Generators of {x in (Z/e)^n : A x ≡ 0 mod row_moduli}.
std::vector<AbElem> kernel_generators(const IntMatrix& a, const std::vector<Int>& row_moduli, Int e);

/// Quotient of ⊕ Z/moduli[i] by the span of `relations`.
struct QuotientData {
    FinAbGroup group;
    IntMatrix projection; ///< group.rank() x ambient
    IntMatrix lift;       ///< ambient x group.rank()
};
QuotientData quotient_by(const std::vector<Int>& moduli, const std::vector<AbElem>& relations);

/// Span of generators inside ⊕ Z/moduli[i], with coordinates.
class SubgroupSpan {
  public:
    SubgroupSpan(std::vector<Int> moduli, std::vector<AbElem> gens);

    const FinAbGroup& group() const { return coeff_quotient_.group; }
    /// ambient x rank: image of the basis of group()
    const IntMatrix& inclusion() const { return inclusion_; }
    AbElem include(const AbElem& h) const;
    /// Coordinates of x in group(), or nothing if x is not in the span.
    std::optional<AbElem> coordinates(const AbElem& x) const;
    /// Coefficients c with sum c_j gens_j = x.
    std::optional<AbElem> combination(const AbElem& x) const;

  private:
    std::vector<Int> moduli_;
    std::vector<AbElem> gens_;
    Int e_ = 1;
    ModSnf snf_;
    QuotientData coeff_quotient_;
    IntMatrix inclusion_;
};

/// Canonical invariant-factor form of ⊕ Z/moduli[i].
QuotientData canonical_form(const std::vector<Int>& moduli);

} // namespace linalg

} // namespace obstrukt
