#pragma once

#include "obstrukt/gmodule.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace oracle {

using obstrukt::Elem;
using obstrukt::GModule;
using obstrukt::Int;

inline Int modp(Int a, Int p) { return ((a % p) + p) % p; }

inline size_t rank_mod_p(std::vector<std::vector<Int>> a, Int p) {
    size_t rank = 0;
    const size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    for (size_t c = 0; c < cols && rank < rows; ++c) {
        size_t piv = rank;
        while (piv < rows && modp(a[piv][c], p) == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(a[piv], a[rank]);
        Int inv = 1;
        for (Int x = 1; x < p; ++x)
            if (modp(a[rank][c] * x, p) == 1)
                inv = x;
        for (auto& v : a[rank])
            v = modp(v * inv, p);
        for (size_t r = 0; r < rows; ++r)
            if (r != rank && modp(a[r][c], p)) {
                Int f = modp(a[r][c], p);
                for (size_t k = 0; k < cols; ++k)
                    a[r][k] = modp(a[r][k] - f * a[rank][k], p);
            }
        ++rank;
    }
    return rank;
}

// Matrix of the differential on the full (unnormalized) bar complex with
// coefficients (Z/p)^r: rows index (n+1)-tuples x components, columns n-tuples x components.
inline std::vector<std::vector<Int>> full_bar_matrix(const GModule& m, int n, Int p) {
    const auto& g = m.group();
    const size_t N = g.order(), r = m.coeff().rank();
    size_t cin = 1, cout = 1;
    for (int i = 0; i < n; ++i)
        cin *= N;
    cout = cin * N;
    std::vector<std::vector<Int>> mat(cout * r, std::vector<Int>(cin * r, 0));
    std::vector<Elem> t(n + 1);
    for (size_t k = 0; k < cout; ++k) {
        size_t x = k;
        for (int i = n; i >= 0; --i) {
            t[i] = static_cast<Elem>(x % N);
            x /= N;
        }
        auto idx = [&](const std::vector<Elem>& s) {
            size_t v = 0;
            for (Elem e : s)
                v = v * N + e;
            return v;
        };
        std::vector<Elem> s(t.begin() + 1, t.end());
        size_t front = idx(s);
        const auto& a = m.action(t[0]);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j)
                mat[k * r + i][front * r + j] += a(i, j);
        for (int f = 1; f <= n; ++f) {
            std::vector<Elem> mm;
            for (int q = 0; q <= n; ++q) {
                if (q == f)
                    continue;
                mm.push_back(q == f - 1 ? g.mul(t[f - 1], t[f]) : t[q]);
            }
            size_t c = idx(mm);
            for (size_t i = 0; i < r; ++i)
                mat[k * r + i][c * r + i] += (f % 2 ? -1 : 1);
        }
        std::vector<Elem> back(t.begin(), t.end() - 1);
        size_t c = idx(back);
        for (size_t i = 0; i < r; ++i)
            mat[k * r + i][c * r + i] += ((n + 1) % 2 ? -1 : 1);
    }
    return mat;
}

// |H^n| over the full bar complex, for elementary abelian coefficients.
inline Int full_bar_cohomology_order(const GModule& m, int n, Int p) {
    size_t cols = 1;
    for (int i = 0; i < n; ++i)
        cols *= m.group().order();
    cols *= m.coeff().rank();
    size_t rank_dn = rank_mod_p(full_bar_matrix(m, n, p), p);
    size_t rank_prev = n == 0 ? 0 : rank_mod_p(full_bar_matrix(m, n - 1, p), p);
    size_t dim = cols - rank_dn - rank_prev;
    Int o = 1;
    for (size_t i = 0; i < dim; ++i)
        o *= p;
    return o;
}

// Normalized bar complex by direct enumeration; cochains are vectors of
// coefficient-element indices, one per tuple of non-identity elements.
class BruteComplex {
  public:
    explicit BruteComplex(GModule m) : m_(std::move(m)), elems_(m_.coeff().elements()) {
        for (Elem x = 0; x < m_.group().order(); ++x)
            if (x != m_.group().identity())
                nonid_.push_back(x);
    }

    const std::vector<std::vector<Elem>>& tuples(int deg) const {
        auto it = cache_.find(deg);
        if (it != cache_.end())
            return it->second;
        std::vector<std::vector<Elem>> out{{}};
        for (int i = 0; i < deg; ++i) {
            std::vector<std::vector<Elem>> next;
            for (const auto& t : out)
                for (Elem x : nonid_) {
                    auto u = t;
                    u.push_back(x);
                    next.push_back(u);
                }
            out = next;
        }
        return cache_[deg] = out;
    }

    std::vector<std::vector<Int>> all_cochains(int deg) const {
        const size_t count = tuples(deg).size();
        std::vector<std::vector<Int>> out;
        std::vector<Int> cur(count, 0);
        std::function<void(size_t)> rec = [&](size_t i) {
            if (i == count) {
                out.push_back(cur);
                return;
            }
            for (size_t v = 0; v < elems_.size(); ++v) {
                cur[i] = static_cast<Int>(v);
                rec(i + 1);
            }
        };
        rec(0);
        return out;
    }

    obstrukt::AbElem value(int deg, const std::vector<Int>& c, const std::vector<Elem>& t) const {
        const auto& ts = tuples(deg);
        for (Elem x : t)
            if (x == m_.group().identity())
                return m_.coeff().zero();
        for (size_t i = 0; i < ts.size(); ++i)
            if (ts[i] == t)
                return elems_[c[i]];
        return m_.coeff().zero();
    }

    std::vector<Int> d(int deg, const std::vector<Int>& c) const {
        const auto& g = m_.group();
        const auto& a = m_.coeff();
        std::vector<Int> res;
        for (const auto& t : tuples(deg + 1)) {
            std::vector<Elem> s(t.begin() + 1, t.end());
            auto acc = m_.act(t[0], value(deg, c, s));
            for (int f = 1; f <= deg; ++f) {
                std::vector<Elem> mm;
                for (int q = 0; q <= deg; ++q) {
                    if (q == f)
                        continue;
                    mm.push_back(q == f - 1 ? g.mul(t[f - 1], t[f]) : t[q]);
                }
                auto v = value(deg, c, mm);
                acc = f % 2 ? a.sub(acc, v) : a.add(acc, v);
            }
            std::vector<Elem> back(t.begin(), t.end() - 1);
            auto v = value(deg, c, back);
            acc = (deg + 1) % 2 ? a.sub(acc, v) : a.add(acc, v);
            res.push_back(a.index(acc));
        }
        return res;
    }

    /// Element indices of a cochain given by a function on tuples.
    std::vector<Int> encode(int deg, const std::function<obstrukt::AbElem(const std::vector<Elem>&)>& f) const {
        std::vector<Int> out;
        for (const auto& t : tuples(deg))
            out.push_back(m_.coeff().index(f(t)));
        return out;
    }

    bool is_coboundary(int deg, const std::vector<Int>& z) const {
        if (deg == 0) {
            for (Int v : z)
                if (v != 0)
                    return false;
            return true;
        }
        for (const auto& b : all_cochains(deg - 1))
            if (d(deg - 1, b) == z)
                return true;
        return false;
    }

  private:
    GModule m_;
    std::vector<obstrukt::AbElem> elems_;
    std::vector<Elem> nonid_;
    mutable std::map<int, std::vector<std::vector<Elem>>> cache_;
};

// |H^n| by enumerating every normalized cochain; only for tiny cases.
inline Int brute_cohomology_order(const GModule& m, int n) {
    BruteComplex bc(m);
    Int cocycles = 0;
    for (const auto& c : bc.all_cochains(n)) {
        bool zero = true;
        for (Int v : bc.d(n, c))
            zero = zero && v == 0;
        cocycles += zero;
    }
    Int boundaries = 1;
    if (n > 0) {
        std::vector<std::vector<Int>> seen;
        for (const auto& b : bc.all_cochains(n - 1))
            seen.push_back(bc.d(n - 1, b));
        std::sort(seen.begin(), seen.end());
        seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
        boundaries = static_cast<Int>(seen.size());
    }
    return cocycles / boundaries;
}

} // namespace oracle
