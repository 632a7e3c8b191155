#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace obstrukt::fp {

/// Dense vector over F_p. Bit-packed for p = 2, one 32-bit word per entry otherwise.
class Row {
  public:
    Row() = default;
    Row(uint32_t p, size_t n);

    uint32_t prime() const { return p_; }
    size_t size() const { return n_; }
    uint32_t get(size_t i) const {
        if (p_ == 2)
            return static_cast<uint32_t>((bits_[i >> 6] >> (i & 63)) & 1u);
        return vals_[i];
    }
    void set(size_t i, uint32_t v);
    void add_at(size_t i, uint32_t v); ///< entry i += v

    /// this += c * other
    void axpy(uint32_t c, const Row& other);
    void scale(uint32_t c);
    bool is_zero() const;
    /// First nonzero index at or after `from`, or size() if none.
    size_t first_nonzero(size_t from = 0) const;

    const std::vector<uint64_t>& words() const { return bits_; }
    std::vector<uint64_t>& words() { return bits_; }

    friend bool operator==(const Row&, const Row&) = default;

  private:
    uint32_t p_ = 2;
    size_t n_ = 0;
    std::vector<uint64_t> bits_;
    std::vector<uint32_t> vals_;
};

uint32_t inv_mod(uint32_t a, uint32_t p);

/// Incremental reduced row echelon form over the first `main` columns;
/// trailing columns are carried along as a tag.
class Echelon {
  public:
    Echelon(uint32_t p, size_t main, size_t total);

    /// Clears the pivot columns of r; the main part of r is zero afterwards
    /// iff r lay in the span.
    void reduce(Row& r) const;
    /// Returns false if r was dependent.
    bool insert(Row r);

    size_t rank() const { return rows_.size(); }
    const std::vector<Row>& rows() const { return rows_; }
    const std::vector<size_t>& pivots() const { return pivots_; }
    size_t main() const { return main_; }
    size_t total() const { return total_; }
    uint32_t prime() const { return p_; }

    /// Basis of the solutions of (rows) x = 0 over the main columns, transposed:
    /// entry c is the row of coefficients of coordinate c over the basis vectors.
    std::vector<Row> nullspace_transposed(size_t& dimension) const;

  private:
    uint32_t p_;
    size_t main_, total_;
    std::vector<Row> rows_;
    std::vector<size_t> pivots_;
    std::vector<int64_t> pivot_row_; // column -> row index or -1
};

} // namespace obstrukt::fp
