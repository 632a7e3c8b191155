#include "obstrukt/fp_linalg.hpp"

#include "obstrukt/error.hpp"

#include <algorithm>
#include <bit>
#include <tuple>

namespace obstrukt::fp {

Row::Row(uint32_t p, size_t n) : p_(p), n_(n) {
    if (p == 2)
        bits_.assign((n + 63) / 64, 0);
    else
        vals_.assign(n, 0);
}

void Row::set(size_t i, uint32_t v) {
    if (p_ == 2) {
        uint64_t m = uint64_t(1) << (i & 63);
        if (v & 1u)
            bits_[i >> 6] |= m;
        else
            bits_[i >> 6] &= ~m;
    } else {
        vals_[i] = v % p_;
    }
}

void Row::add_at(size_t i, uint32_t v) {
    if (p_ == 2) {
        if (v & 1u)
            bits_[i >> 6] ^= uint64_t(1) << (i & 63);
    } else {
        vals_[i] = static_cast<uint32_t>((uint64_t(vals_[i]) + v) % p_);
    }
}

void Row::axpy(uint32_t c, const Row& other) {
    c %= p_;
    if (c == 0)
        return;
    if (p_ == 2) {
        for (size_t w = 0; w < bits_.size(); ++w)
            bits_[w] ^= other.bits_[w];
        return;
    }
    for (size_t i = 0; i < n_; ++i)
        if (other.vals_[i])
            vals_[i] = static_cast<uint32_t>((vals_[i] + uint64_t(c) * other.vals_[i]) % p_);
}

void Row::scale(uint32_t c) {
    c %= p_;
    if (p_ == 2) {
        if (c == 0)
            std::fill(bits_.begin(), bits_.end(), 0);
        return;
    }
    for (auto& v : vals_)
        v = static_cast<uint32_t>(uint64_t(v) * c % p_);
}

bool Row::is_zero() const {
    if (p_ == 2) {
        for (auto w : bits_)
            if (w)
                return false;
        return true;
    }
    for (auto v : vals_)
        if (v)
            return false;
    return true;
}

size_t Row::first_nonzero(size_t from) const {
    if (from >= n_)
        return n_;
    if (p_ == 2) {
        size_t w = from >> 6;
        uint64_t cur = bits_[w] & (~uint64_t(0) << (from & 63));
        while (true) {
            if (cur) {
                size_t i = (w << 6) + static_cast<size_t>(std::countr_zero(cur));
                return i < n_ ? i : n_;
            }
            if (++w == bits_.size())
                return n_;
            cur = bits_[w];
        }
    }
    for (size_t i = from; i < n_; ++i)
        if (vals_[i])
            return i;
    return n_;
}

uint32_t inv_mod(uint32_t a, uint32_t p) {
    int64_t t = 0, nt = 1, r = p, nr = a % p;
    while (nr) {
        int64_t q = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - q * nt);
        std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    ensure(r == 1, "inverse of zero in F_p");
    return static_cast<uint32_t>(t < 0 ? t + p : t);
}

Echelon::Echelon(uint32_t p, size_t main, size_t total) : p_(p), main_(main), total_(total), pivot_row_(main, -1) {}

void Echelon::reduce(Row& r) const {
    for (size_t k = 0; k < rows_.size(); ++k) {
        uint32_t c = r.get(pivots_[k]);
        if (c)
            r.axpy(p_ - c, rows_[k]);
    }
}

bool Echelon::insert(Row r) {
    ensure(r.size() == total_, "echelon row has wrong length");
    reduce(r);
    size_t piv = r.first_nonzero();
    if (piv >= main_)
        return false;
    r.scale(inv_mod(r.get(piv), p_));
    for (auto& row : rows_) {
        uint32_t c = row.get(piv);
        if (c)
            row.axpy(p_ - c, r);
    }
    pivot_row_[piv] = static_cast<int64_t>(rows_.size());
    pivots_.push_back(piv);
    rows_.push_back(std::move(r));
    return true;
}

std::vector<Row> Echelon::nullspace_transposed(size_t& dimension) const {
    std::vector<size_t> free_cols;
    for (size_t c = 0; c < main_; ++c)
        if (pivot_row_[c] < 0)
            free_cols.push_back(c);
    dimension = free_cols.size();
    std::vector<Row> t(main_, Row(p_, dimension));
    for (size_t i = 0; i < free_cols.size(); ++i)
        t[free_cols[i]].set(i, 1);
    for (size_t k = 0; k < rows_.size(); ++k) {
        Row& dst = t[pivots_[k]];
        const Row& src = rows_[k];
        for (size_t i = 0; i < free_cols.size(); ++i) {
            uint32_t v = src.get(free_cols[i]);
            if (v)
                dst.set(i, (p_ - v) % p_);
        }
    }
    return t;
}

} // namespace obstrukt::fp
