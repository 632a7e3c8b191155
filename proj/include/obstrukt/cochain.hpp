#pragma once

#include "obstrukt/gmodule.hpp"

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace obstrukt {

/// Numbering of n-tuples of non-identity elements, first entry most significant.
class TupleIndexer {
  public:
    TupleIndexer(const FiniteGroup& g, int degree);

    int degree() const { return degree_; }
    size_t count() const { return count_; }
    size_t base() const { return base_; }
    size_t rank_of(Elem g) const { return static_cast<size_t>(g < identity_ ? g : g - 1); }
    Elem elem_of(size_t r) const { return static_cast<Elem>(static_cast<Elem>(r) < identity_ ? r : r + 1); }
    /// The tuple must not contain the identity.
    size_t index(std::span<const Elem> t) const;
    void tuple(size_t idx, std::span<Elem> out) const;

  private:
    int degree_;
    Elem identity_;
    size_t base_;
    size_t count_;
};

/// Number of normalized n-cochain tuples, or SIZE_MAX on overflow.
size_t cochain_tuple_count(const FiniteGroup& g, int degree);

/// Normalized bar cochain, stored densely: coordinate = tuple index * rank + component.
class Cochain {
  public:
    Cochain(GModule m, int degree);
    static Cochain from_data(GModule m, int degree, std::vector<Int> data);
    static Cochain from_function(GModule m, int degree, const std::function<AbElem(std::span<const Elem>)>& f);

    const GModule& module() const { return module_; }
    int degree() const { return degree_; }
    const TupleIndexer& indexer() const { return indexer_; }
    size_t tuple_count() const { return indexer_.count(); }
    size_t coordinate_count() const { return data_.size(); }
    const std::vector<Int>& data() const { return data_; }

    /// Zero on tuples containing the identity.
    AbElem value(std::span<const Elem> t) const;
    AbElem value_at(size_t tuple_index) const;
    const Int* raw_at(size_t tuple_index) const { return data_.data() + tuple_index * rank_; }
    /// Throws InvalidInput if the tuple contains the identity.
    void set(std::span<const Elem> t, const AbElem& v);
    void set_at(size_t tuple_index, const AbElem& v);

    bool is_zero() const;
    Cochain operator+(const Cochain& o) const;
    Cochain operator-(const Cochain& o) const;
    Cochain operator-() const;
    Cochain scaled(Int k) const;

    friend bool operator==(const Cochain& a, const Cochain& b);

  private:
    void check_compatible(const Cochain& o) const;

    GModule module_;
    int degree_;
    TupleIndexer indexer_;
    size_t rank_;
    std::vector<Int> data_;
};

/// (dc)(g1..g_{n+1}) = g1 c(g2..) + sum_{i=1}^{n} (-1)^i c(.., g_i g_{i+1}, ..) + (-1)^{n+1} c(g1..g_n)
Cochain differential(const Cochain& c);

/// Sparse rows and columns of d^n : C^n -> C^{n+1} in cochain coordinates.
/// Entries are unreduced integers; repeated coordinates add.
class DifferentialOperator {
  public:
    DifferentialOperator(GModule m, int degree);

    size_t rows() const { return out_.count() * rank_; }
    size_t cols() const { return in_.count() * rank_; }
    void row(size_t r, std::vector<std::pair<size_t, Int>>& out) const;
    void column(size_t c, std::vector<std::pair<size_t, Int>>& out) const;

  private:
    GModule module_;
    int degree_;
    TupleIndexer in_, out_;
    size_t rank_;
};

/// (g1..gn) -> c(f g1, .., f gn), valued in the restricted module.
Cochain pullback_cochain(const GroupHom& f, const Cochain& c, const GModule& restricted);

/// Valuewise image under a coefficient map into `target`.
Cochain pushforward_cochain(const AbMap& t, const Cochain& c, const GModule& target);

} // namespace obstrukt
