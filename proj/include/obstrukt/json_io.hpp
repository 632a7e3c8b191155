#pragma once

#include "obstrukt/corpus.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace obstrukt::io {

using Json = nlohmann::ordered_json;

/// Named groups shared by the entries of a corpus file.
using GroupTable = std::map<std::string, FiniteGroup>;

/// Short names: Z<n>, S<n>, A<n>, D<n> (order 2n), Dic<n> (order 4n), Q8, V4,
/// U<n> (unipotent n x n over F2), SL2(<p>); factors joined by 'x', each
/// optionally raised to a power, e.g. "Z2xZ4", "Z2^3", "(Z3)^2xS3".
/// Throws InvalidInput.
FiniteGroup group_from_name(const std::string& name);

/// A short name, a key of `table`, {"label", "order", "table"}, or
/// {"kind": ..., "n" | "p": ..., "factors": [...]}.
FiniteGroup parse_group(const Json& j, const GroupTable* table = nullptr);
Json group_json(const FiniteGroup& g);

/// {"factors": [...]}, a bare list, or a name such as "Z2xZ4". Factors are put
/// into invariant-factor form.
FinAbGroup parse_abelian(const Json& j);
Json abelian_json(const FinAbGroup& a);

AbMap parse_abmap(const Json& j, const FinAbGroup& source, const FinAbGroup& target);
Json abmap_json(const AbMap& f);

/// {"group": ref, "coeff": ..., "action": {"<generator index>": matrix}}; a
/// missing action is trivial.
GModule parse_module(const Json& j, const GroupTable* table = nullptr);
Json module_json(const GModule& m, const std::string& group_ref);

/// {"images": [...]} listing every element, or {"generators": {"<index>": image}}.
GroupHom parse_hom(const Json& j, const FiniteGroup& domain, const FiniteGroup& codomain);
Json hom_json(const GroupHom& h);

/// {"degree": n, "entries": [{"tuple": [...], "value": [...]}]}, zero entries omitted.
Cochain parse_cochain(const Json& j, const GModule& m);
Json cochain_json(const Cochain& c);

/// {"base", "g1", "g2", "phi", "psi"}.
EmbeddingProblem parse_problem(const Json& j, const GroupTable* table = nullptr);
Json problem_json(const EmbeddingProblem& e, const std::string& base_ref, const std::string& g1_ref,
                  const std::string& g2_ref);

/// {"total", "base", "kernel", "inj", "proj"}, or {"module", "cocycle"}.
Extension parse_extension(const Json& j, const GroupTable* table = nullptr);

/// Characters as image tables or generator maps into Z/m.
std::vector<GroupHom> parse_characters(const Json& j, const FiniteGroup& base, Int m);

struct ExtensionEntry {
    std::string name;
    Extension extension;
    GModule coeff;
};
struct EmbeddingEntry {
    std::string name;
    EmbeddingProblem problem;
};
struct DwyerEntry {
    std::string name;
    FiniteGroup base;
    std::vector<GroupHom> characters;
};

/// Corpus files: {"kind": ..., "groups": {name: group}, "instances": [...]}.
Json extension_corpus_json(const std::vector<ExtensionInstance>& corpus);
Json embedding_corpus_json(const std::vector<EmbeddingInstance>& corpus);
Json dwyer_corpus_json(const std::vector<DwyerInstance>& corpus);

std::vector<ExtensionEntry> parse_extension_corpus(const Json& j);
std::vector<EmbeddingEntry> parse_embedding_corpus(const Json& j);
std::vector<DwyerEntry> parse_dwyer_corpus(const Json& j);

/// Parses JSON text; throws InvalidInput with the parser's position and message.
Json parse_text(const std::string& text, const std::string& origin);

} // namespace obstrukt::io
