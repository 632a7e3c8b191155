#pragma once

#include "obstrukt/embedding.hpp"

#include <string>
#include <vector>

namespace obstrukt {

/// Extension together with a coefficient module over its base.
struct ExtensionInstance {
    std::string name;
    Extension extension;
    GModule coeff;
};

/// Hand-picked extensions with |total| <= 32: split and nonsplit, trivial and
/// nontrivial actions on the kernel and on the coefficients.
std::vector<ExtensionInstance> extension_corpus();

struct EmbeddingInstance {
    std::string name;
    EmbeddingProblem problem;
};

/// Surjections with small kernels (abelian of order <= 9, plus two nonabelian
/// ones) against bases of order <= 16, with up to `max_psi` choices of psi each.
std::vector<EmbeddingInstance> embedding_corpus(size_t max_psi = 6);

struct DwyerInstance {
    std::string name;
    FiniteGroup base;
    std::vector<GroupHom> characters;
};

/// All tuples of n in {2, 3} characters to Z/2 over Z/2, Z/4, (Z/2)^2, Z/8, D4;
/// `extended` adds Q8 and Z/2 x Z/4.
std::vector<DwyerInstance> dwyer_corpus(bool extended = false);

/// Z/n with g acting by (-1)^chi(g).
GModule sign_twisted(const FiniteGroup& g, Int n, const std::vector<int>& chi);

} // namespace obstrukt
