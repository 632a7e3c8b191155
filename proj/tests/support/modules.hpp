#pragma once

#include "obstrukt/gmodule.hpp"

namespace fixtures {

using namespace obstrukt;

inline FiniteGroup klein() { return direct_product(cyclic_group(2), cyclic_group(2)); }
inline FiniteGroup s3() { return standard_group(GroupKind::symmetric(3)); }
inline FiniteGroup q8() { return standard_group(GroupKind::dicyclic(2)); }
inline FiniteGroup d4() { return standard_group(GroupKind::dihedral(4)); }

/// Z/m with g acting as (-1)^{chi(g)} for a character chi : G -> Z/2 given as a table.
inline GModule sign_module(const FiniteGroup& g, const std::vector<int>& chi, Int m) {
    std::vector<IntMatrix> action;
    for (Elem x = 0; x < g.order(); ++x)
        action.push_back(IntMatrix::from_rows({{chi[x] ? m - 1 : 1}}));
    return GModule::from_action_table(g, FinAbGroup({m}), action);
}

/// Sign character of S3 in the lexicographic element order.
inline std::vector<int> s3_sign() { return {0, 1, 1, 0, 0, 1}; }

} // namespace fixtures
