#pragma once

#include "obstrukt/groups.hpp"

#include <functional>
#include <set>
#include <vector>

namespace oracle {

using obstrukt::Elem;
using obstrukt::FiniteGroup;

inline std::set<Elem> center(const FiniteGroup& g) {
    std::set<Elem> z;
    for (Elem x = 0; x < g.order(); ++x) {
        bool central = true;
        for (Elem y = 0; y < g.order() && central; ++y)
            central = g.mul(x, y) == g.mul(y, x);
        if (central)
            z.insert(x);
    }
    return z;
}

// Every map G -> H checked against the full multiplication table.
inline std::vector<std::vector<Elem>> all_homs(const FiniteGroup& g, const FiniteGroup& h) {
    std::vector<std::vector<Elem>> out;
    std::vector<Elem> img(g.order(), 0);
    std::function<void(int)> rec = [&](int x) {
        if (x == g.order()) {
            for (Elem a = 0; a < g.order(); ++a)
                for (Elem b = 0; b < g.order(); ++b)
                    if (img[g.mul(a, b)] != h.mul(img[a], img[b]))
                        return;
            out.push_back(img);
            return;
        }
        for (Elem y = 0; y < h.order(); ++y) {
            img[x] = y;
            rec(x + 1);
        }
    };
    rec(0);
    return out;
}

inline int count_elements_with_order_dividing(const FiniteGroup& g, int n) {
    int c = 0;
    for (Elem x = 0; x < g.order(); ++x)
        c += g.pow(x, n) == g.identity();
    return c;
}

inline std::set<Elem> commutators_closure(const FiniteGroup& g, const std::vector<Elem>& h) {
    std::set<Elem> s{g.identity()};
    for (Elem a : h)
        for (Elem b : h)
            s.insert(g.commutator(a, b));
    for (bool grew = true; grew;) {
        grew = false;
        std::vector<Elem> cur(s.begin(), s.end());
        for (Elem a : cur)
            for (Elem b : cur)
                grew |= s.insert(g.mul(a, b)).second;
    }
    return s;
}

} // namespace oracle
