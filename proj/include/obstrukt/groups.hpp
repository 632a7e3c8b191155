#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace obstrukt {

/// Index of a group element, 0..order-1.
using Elem = int32_t;

/// Finite group given by its multiplication table.
///
/// Elements are indices 0..order-1; the identity is whatever index the table
/// says it is (for instance SL(2,p) lists its matrices lexicographically, so
/// the identity is not element 0). Copies share the immutable table.
class FiniteGroup {
  public:
    static constexpr int kMaxOrder = 10000;

    /// Validates the table: associativity (exhaustive for order <= 256,
    /// sampled above), a two-sided identity, and inverses.
    static FiniteGroup from_cayley_table(const std::vector<std::vector<int>>& table,
                                         std::string label = "");

    /// Trusted construction from a flat table; only identity/inverse are derived.
    static FiniteGroup from_flat_table(int order, std::vector<uint16_t> table, std::string label);

    FiniteGroup();

    int order() const { return d_->order; }
    Elem identity() const { return d_->identity; }
    Elem mul(Elem a, Elem b) const {
        return static_cast<Elem>(d_->table[static_cast<size_t>(a) * d_->order + b]);
    }
    Elem inv(Elem a) const { return d_->inverse[a]; }
    Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inv(g)); }
    Elem commutator(Elem a, Elem b) const { return mul(mul(a, b), mul(inv(a), inv(b))); }
    Elem pow(Elem a, int64_t k) const;
    int element_order(Elem a) const;
    const std::string& label() const { return d_->label; }

    /// Canonical generating set: greedy, deterministic.
    const std::vector<Elem>& generators() const { return d_->generators; }

    bool is_abelian() const;
    int exponent() const;
    std::vector<std::vector<int>> cayley_table() const;

    /// Structural equality (same order, same table).
    bool same_as(const FiniteGroup& other) const;

    FiniteGroup relabeled(std::string label) const;

  private:
    struct Data {
        int order = 1;
        std::vector<uint16_t> table{0};
        Elem identity = 0;
        std::vector<Elem> inverse{0};
        std::vector<Elem> generators;
        std::string label = "1";
    };
    explicit FiniteGroup(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    static std::shared_ptr<Data> finish(std::shared_ptr<Data> d);

    std::shared_ptr<const Data> d_;
};

class GroupHom {
  public:
    /// Trusted construction; callers that accept outside data use `hom()`.
    GroupHom(FiniteGroup domain, FiniteGroup codomain, std::vector<Elem> image);

    const FiniteGroup& domain() const { return domain_; }
    const FiniteGroup& codomain() const { return codomain_; }
    Elem operator()(Elem x) const { return image_[x]; }
    const std::vector<Elem>& table() const { return image_; }

    bool is_injective() const;
    bool is_surjective() const;

    static GroupHom identity(const FiniteGroup& g);
    static GroupHom trivial(const FiniteGroup& domain, const FiniteGroup& codomain);

    friend bool operator==(const GroupHom& a, const GroupHom& b) { return a.image_ == b.image_; }

  private:
    FiniteGroup domain_;
    FiniteGroup codomain_;
    std::vector<Elem> image_;
};

/// after ∘ before
GroupHom compose(const GroupHom& after, const GroupHom& before);

/// Checks the homomorphism law exhaustively; throws NotAHomomorphism.
void check_homomorphism(const GroupHom& h);

class Subgroup {
  public:
    Subgroup(FiniteGroup parent, std::vector<Elem> members);

    const FiniteGroup& parent() const { return parent_; }
    const std::vector<Elem>& members() const { return members_; }
    int order() const { return static_cast<int>(members_.size()); }
    bool contains(Elem x) const { return mask_[x]; }
    bool is_normal() const;
    bool is_abelian() const;

    /// The subgroup as a group in its own right, with the inclusion into the parent.
    /// Member k of members() becomes element k.
    std::pair<FiniteGroup, GroupHom> as_group(std::string label = "") const;

  private:
    FiniteGroup parent_;
    std::vector<Elem> members_;
    std::vector<bool> mask_;
};

/// Subgroup generated by `gens`.
Subgroup generated_subgroup(const FiniteGroup& g, std::span<const Elem> gens);

/// Builds a homomorphism from images of a generating set, completing by products.
/// Throws NotAHomomorphism (naming the violating pair) or GeneratorsDontGenerate.
GroupHom hom(const FiniteGroup& domain, const FiniteGroup& codomain,
             const std::vector<std::pair<Elem, Elem>>& generator_images);

Subgroup kernel(const GroupHom& h);
Subgroup image(const GroupHom& h);

struct Quotient {
    FiniteGroup group;
    GroupHom projection;
    std::vector<Elem> representative; ///< minimal element of each coset
};

/// Cosets are numbered by their minimal element. Throws NotNormal.
Quotient quotient(const FiniteGroup& g, const Subgroup& n);

struct FiberProduct {
    FiniteGroup group;
    GroupHom to_first;
    GroupHom to_second;
    std::vector<std::pair<Elem, Elem>> pairs; ///< element k is pairs[k], lexicographic
    Elem index_of(Elem first, Elem second) const;

  private:
    friend FiberProduct fiber_product(const GroupHom&, const GroupHom&);
    FiberProduct();
    std::vector<int32_t> lookup_; // first * |second group| + second -> index or -1
    int second_order_ = 1;
};

/// {(a,b) | phi(a) = psi(b)} for phi: G1 -> G2 surjective and psi: B -> G2.
FiberProduct fiber_product(const GroupHom& phi, const GroupHom& psi);

/// Subgroup generated by the commutators of elements of `h`.
Subgroup commutator_subgroup(const FiniteGroup& g, const Subgroup& h);

struct LiftConstraint {
    GroupHom phi; ///< H -> K
    GroupHom psi; ///< G -> K
};

struct HomSearchOptions {
    std::size_t node_cap = 10'000'000;
};

/// All homomorphisms G -> H, lexicographic in the images of G's generators.
/// With a constraint, only those h with phi ∘ h = psi.
/// Throws SearchBudgetExceeded when the node cap is hit.
std::vector<GroupHom> enumerate_homs(const FiniteGroup& g, const FiniteGroup& h,
                                     const std::optional<LiftConstraint>& constraint = std::nullopt,
                                     const HomSearchOptions& opts = {});

/// Some k in `by` with h2(x) = k h1(x) k^-1 for all x; the smallest such index.
std::optional<Elem> are_conjugate(const GroupHom& h1, const GroupHom& h2, const Subgroup& by);

/// Canonical key of h up to conjugation by `by`: the lexicographically smallest
/// image tuple on the domain generators.
std::vector<Elem> conjugacy_key(const GroupHom& h, const Subgroup& by);

// ---- standard groups ----

struct GroupKind {
    enum class Tag { Cyclic, Symmetric, Alternating, Dihedral, Dicyclic, Unipotent, SL2, DirectProduct };
    Tag tag;
    int param = 0;
    std::shared_ptr<const GroupKind> left, right; // DirectProduct operands

    static GroupKind cyclic(int n) { return {Tag::Cyclic, n, nullptr, nullptr}; }
    static GroupKind symmetric(int n) { return {Tag::Symmetric, n, nullptr, nullptr}; }
    static GroupKind alternating(int n) { return {Tag::Alternating, n, nullptr, nullptr}; }
    static GroupKind dihedral(int n) { return {Tag::Dihedral, n, nullptr, nullptr}; }
    static GroupKind dicyclic(int n) { return {Tag::Dicyclic, n, nullptr, nullptr}; }
    static GroupKind unipotent(int n) { return {Tag::Unipotent, n, nullptr, nullptr}; }
    static GroupKind sl2(int p) { return {Tag::SL2, p, nullptr, nullptr}; }
    static GroupKind direct_product(GroupKind a, GroupKind b);
};

/// Cyclic n: residues; symmetric/alternating n: permutations of 0..n-1 in
/// lexicographic order; dihedral n: order 2n, r^i s^j at index j*n+i;
/// dicyclic n: order 4n, a^i x^j at index j*2n+i (dicyclic 2 = Q8);
/// unipotent n over F2: bitmask of the strictly upper entries, row-major,
/// least significant bit first; sl2 p: det-1 matrices over F_p, row-major
/// lexicographic. Throws UnsupportedParameter.
FiniteGroup standard_group(const GroupKind& kind);

FiniteGroup cyclic_group(int n);
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

/// Entries (row-major, strictly upper) of a unipotent element's bitmask.
int unipotent_entry(int n, uint32_t mask, int i, int j);

} // namespace obstrukt
