#include "obstrukt/json_io.hpp"

#include "obstrukt/error.hpp"

#include <regex>

namespace obstrukt::io {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorKind::InvalidInput, what); }

Int as_int(const Json& j, const std::string& what) {
    if (!j.is_number_integer())
        bad(what + ": expected an integer, got " + j.dump());
    return j.get<Int>();
}

const Json& field(const Json& j, const char* key, const std::string& what) {
    if (!j.is_object() || !j.contains(key))
        bad(what + ": missing field \"" + key + "\"");
    return j.at(key);
}

Elem as_elem(const Json& j, const FiniteGroup& g, const std::string& what) {
    Int x = as_int(j, what);
    if (x < 0 || x >= g.order())
        bad(what + ": element " + std::to_string(x) + " out of range for " + g.label());
    return static_cast<Elem>(x);
}

std::vector<std::vector<Int>> int_rows(const Json& j, const std::string& what) {
    if (!j.is_array())
        bad(what + ": expected a matrix");
    std::vector<std::vector<Int>> rows;
    for (const auto& r : j) {
        if (!r.is_array())
            bad(what + ": expected a matrix row");
        std::vector<Int> row;
        for (const auto& x : r)
            row.push_back(as_int(x, what));
        rows.push_back(std::move(row));
    }
    return rows;
}

IntMatrix matrix_of(const Json& j, size_t rows, size_t cols, const std::string& what) {
    const Json& m = j.is_object() ? field(j, "matrix", what) : j;
    auto r = int_rows(m, what);
    if (r.size() != rows)
        bad(what + ": expected " + std::to_string(rows) + " rows");
    for (const auto& row : r)
        if (row.size() != cols)
            bad(what + ": expected " + std::to_string(cols) + " columns");
    return IntMatrix::from_rows(r, cols);
}

FiniteGroup power(const FiniteGroup& g, int k, const std::string& name) {
    if (k < 1 || k > 16)
        bad("group name " + name + ": bad exponent");
    FiniteGroup out = g;
    for (int i = 1; i < k; ++i)
        out = direct_product(out, g);
    return out;
}

FiniteGroup simple_name(const std::string& s) {
    static const std::regex plain(R"((Dic|Z|S|A|D|U|Q|V)(\d+))");
    static const std::regex sl(R"(SL(?:2\(|\(2,)(\d+)\))");
    std::smatch m;
    if (std::regex_match(s, m, sl))
        return standard_group(GroupKind::sl2(std::stoi(m[1])));
    if (!std::regex_match(s, m, plain) || m[2].length() > 5)
        bad("unknown group name \"" + s + "\"");
    std::string k = m[1];
    int n = std::stoi(m[2]);
    if (k == "Z")
        return standard_group(GroupKind::cyclic(n));
    if (k == "S")
        return standard_group(GroupKind::symmetric(n));
    if (k == "A")
        return standard_group(GroupKind::alternating(n));
    if (k == "D")
        return standard_group(GroupKind::dihedral(n));
    if (k == "Dic")
        return standard_group(GroupKind::dicyclic(n));
    if (k == "U")
        return standard_group(GroupKind::unipotent(n));
    if (k == "Q" && n == 8)
        return standard_group(GroupKind::dicyclic(2));
    if (k == "V" && n == 4)
        return direct_product(cyclic_group(2), cyclic_group(2));
    bad("unknown group name \"" + s + "\"");
}

FiniteGroup factor_name(const std::string& s) {
    auto caret = s.rfind('^');
    if (caret != std::string::npos && s.find(')', caret) == std::string::npos) {
        std::string head = s.substr(0, caret), tail = s.substr(caret + 1);
        if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos || tail.size() > 2)
            bad("group name " + s + ": bad exponent");
        return power(factor_name(head), std::stoi(tail), s);
    }
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')')
        return group_from_name(s.substr(1, s.size() - 2));
    return simple_name(s);
}

// Assigns stable keys to the distinct groups of a corpus.
class Registry {
  public:
    std::string key(const FiniteGroup& g) {
        for (const auto& [k, h] : groups_)
            if (h.same_as(g))
                return k;
        std::string k = g.label().empty() ? "G" : g.label();
        int clash = 0;
        while (taken(k))
            k = g.label() + "#" + std::to_string(++clash);
        groups_.emplace_back(k, g);
        return k;
    }
    Json json() const {
        Json out = Json::object();
        for (const auto& [k, g] : groups_)
            out[k] = group_json(g);
        return out;
    }

  private:
    bool taken(const std::string& k) const {
        for (const auto& p : groups_)
            if (p.first == k)
                return true;
        return false;
    }
    std::vector<std::pair<std::string, FiniteGroup>> groups_;
};

GroupTable read_groups(const Json& j) {
    GroupTable t;
    if (j.contains("groups")) {
        const Json& gs = j.at("groups");
        if (!gs.is_object())
            bad("corpus: \"groups\" must be an object");
        for (const auto& [k, v] : gs.items())
            t.emplace(k, parse_group(v));
    }
    return t;
}

const Json& instances(const Json& j, const char* kind) {
    if (!j.is_object())
        bad("corpus: expected an object");
    if (j.contains("kind") && j.at("kind") != kind)
        bad(std::string("corpus: expected kind \"") + kind + "\", got " + j.at("kind").dump());
    const Json& list = field(j, "instances", "corpus");
    if (!list.is_array())
        bad("corpus: \"instances\" must be a list");
    return list;
}

std::string name_of(const Json& j, size_t k) {
    if (j.contains("name") && j.at("name").is_string())
        return j.at("name").get<std::string>();
    return "#" + std::to_string(k);
}

Json extension_json(const Extension& e, Registry& reg) {
    return Json{{"total", reg.key(e.total())},
                {"base", reg.key(e.base())},
                {"kernel", abelian_json(e.kernel_group())},
                {"inj", hom_json(e.inj())},
                {"proj", hom_json(e.proj())}};
}

} // namespace

FiniteGroup group_from_name(const std::string& name) {
    if (name.empty())
        bad("empty group name");
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char ch : name) {
        if (ch == '(')
            ++depth;
        if (ch == ')')
            --depth;
        if (depth < 0)
            bad("group name " + name + ": unbalanced parentheses");
        if (ch == 'x' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else if (ch != ' ') {
            cur += ch;
        }
    }
    if (depth != 0)
        bad("group name " + name + ": unbalanced parentheses");
    parts.push_back(cur);
    FiniteGroup g = factor_name(parts[0]);
    for (size_t i = 1; i < parts.size(); ++i)
        g = direct_product(g, factor_name(parts[i]));
    return g.relabeled(name);
}

FiniteGroup parse_group(const Json& j, const GroupTable* table) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (table) {
            auto it = table->find(s);
            if (it != table->end())
                return it->second;
        }
        return group_from_name(s);
    }
    if (!j.is_object())
        bad("group: expected a name or an object, got " + j.dump());
    if (j.contains("table")) {
        std::vector<std::vector<int>> rows;
        for (const auto& r : int_rows(j.at("table"), "group table")) {
            std::vector<int> row;
            for (Int x : r) {
                if (x < 0 || x > FiniteGroup::kMaxOrder)
                    bad("group table: entry out of range");
                row.push_back(static_cast<int>(x));
            }
            rows.push_back(std::move(row));
        }
        if (rows.empty())
            bad("group table: empty");
        if (j.contains("order") && as_int(j.at("order"), "group order") != static_cast<Int>(rows.size()))
            bad("group: \"order\" disagrees with the table size");
        std::string label = j.contains("label") && j.at("label").is_string() ? j.at("label").get<std::string>() : "";
        return FiniteGroup::from_cayley_table(rows, label);
    }
    if (j.contains("kind")) {
        const Json& kind = j.at("kind");
        if (!kind.is_string())
            bad("group: \"kind\" must be a string");
        const auto k = kind.get<std::string>();
        if (k == "direct_product") {
            const Json& fs = field(j, "factors", "direct_product");
            if (!fs.is_array() || fs.empty())
                bad("direct_product: \"factors\" must be a nonempty list");
            FiniteGroup g = parse_group(fs[0], table);
            for (size_t i = 1; i < fs.size(); ++i)
                g = direct_product(g, parse_group(fs[i], table));
            return g;
        }
        if (k == "sl2")
            return standard_group(GroupKind::sl2(static_cast<int>(as_int(field(j, "p", "sl2"), "sl2 p"))));
        int n = static_cast<int>(as_int(field(j, "n", k), k + " n"));
        if (k == "cyclic")
            return standard_group(GroupKind::cyclic(n));
        if (k == "symmetric")
            return standard_group(GroupKind::symmetric(n));
        if (k == "alternating")
            return standard_group(GroupKind::alternating(n));
        if (k == "dihedral")
            return standard_group(GroupKind::dihedral(n));
        if (k == "dicyclic")
            return standard_group(GroupKind::dicyclic(n));
        if (k == "unipotent")
            return standard_group(GroupKind::unipotent(n));
        bad("group: unknown kind \"" + k + "\"");
    }
    bad("group: expected \"table\" or \"kind\"");
}

Json group_json(const FiniteGroup& g) {
    return Json{{"label", g.label()}, {"order", g.order()}, {"table", g.cayley_table()}};
}

FinAbGroup parse_abelian(const Json& j) {
    std::vector<Int> moduli;
    if (j.is_string()) {
        FiniteGroup g = group_from_name(j.get<std::string>());
        if (!g.is_abelian())
            bad("coefficients " + j.get<std::string>() + " are not abelian");
        std::vector<Elem> all(g.order());
        for (Elem x = 0; x < g.order(); ++x)
            all[x] = x;
        return abelian_structure(Subgroup(g, all)).group;
    }
    const Json& fs = j.is_object() ? field(j, "factors", "abelian group") : j;
    if (!fs.is_array())
        bad("abelian group: expected a list of factors");
    for (const auto& x : fs) {
        Int d = as_int(x, "abelian factor");
        if (d < 1 || d > 1'000'000)
            bad("abelian factor out of range: " + std::to_string(d));
        if (d > 1)
            moduli.push_back(d);
    }
    return linalg::canonical_form(moduli).group;
}

Json abelian_json(const FinAbGroup& a) { return Json{{"factors", a.factors()}}; }

AbMap parse_abmap(const Json& j, const FinAbGroup& source, const FinAbGroup& target) {
    return AbMap(source, target, matrix_of(j, target.rank(), source.rank(), "map"));
}

Json abmap_json(const AbMap& f) { return Json{{"matrix", f.matrix().to_rows()}}; }

GModule parse_module(const Json& j, const GroupTable* table) {
    FiniteGroup g = parse_group(field(j, "group", "module"), table);
    FinAbGroup a = parse_abelian(field(j, "coeff", "module"));
    if (!j.contains("action") || j.at("action").empty())
        return GModule::trivial(g, a);
    const Json& act = j.at("action");
    if (!act.is_object())
        bad("module: \"action\" must map generator indices to matrices");
    std::vector<std::pair<Elem, IntMatrix>> gens;
    for (const auto& [k, v] : act.items()) {
        Elem x;
        try {
            size_t used = 0;
            x = static_cast<Elem>(std::stoi(k, &used));
            if (used != k.size())
                throw std::invalid_argument(k);
        } catch (const std::logic_error&) {
            bad("module action: key \"" + k + "\" is not an element index");
        }
        if (x < 0 || x >= g.order())
            bad("module action: element " + k + " out of range");
        gens.emplace_back(x, matrix_of(v, a.rank(), a.rank(), "action of " + k));
    }
    return GModule::from_generator_action(g, a, gens);
}

Json module_json(const GModule& m, const std::string& group_ref) {
    Json out{{"group", group_ref}, {"coeff", abelian_json(m.coeff())}};
    if (!m.is_trivial()) {
        Json act = Json::object();
        for (Elem x : m.group().generators())
            act[std::to_string(x)] = m.action(x).to_rows();
        out["action"] = act;
    }
    return out;
}

GroupHom parse_hom(const Json& j, const FiniteGroup& domain, const FiniteGroup& codomain) {
    if (j.is_array() || (j.is_object() && j.contains("images"))) {
        const Json& im = j.is_array() ? j : j.at("images");
        if (!im.is_array() || im.size() != static_cast<size_t>(domain.order()))
            bad("hom: \"images\" must list one image per element of " + domain.label());
        std::vector<Elem> t;
        for (const auto& x : im)
            t.push_back(as_elem(x, codomain, "hom image"));
        GroupHom h(domain, codomain, std::move(t));
        check_homomorphism(h);
        return h;
    }
    if (j.is_object() && j.contains("generators")) {
        const Json& gs = j.at("generators");
        std::vector<std::pair<Elem, Elem>> pairs;
        if (gs.is_object()) {
            for (const auto& [k, v] : gs.items())
                pairs.emplace_back(as_elem(Json::parse(k, nullptr, false), domain, "hom generator"),
                                   as_elem(v, codomain, "hom image"));
        } else if (gs.is_array()) {
            for (const auto& p : gs) {
                if (!p.is_array() || p.size() != 2)
                    bad("hom: generator entries must be [element, image]");
                pairs.emplace_back(as_elem(p[0], domain, "hom generator"), as_elem(p[1], codomain, "hom image"));
            }
        } else {
            bad("hom: \"generators\" must be an object or a list of pairs");
        }
        return hom(domain, codomain, pairs);
    }
    bad("hom: expected \"images\" or \"generators\"");
}

Json hom_json(const GroupHom& h) { return Json{{"images", h.table()}}; }

Cochain parse_cochain(const Json& j, const GModule& m) {
    Int deg = as_int(field(j, "degree", "cochain"), "cochain degree");
    if (deg < 0 || deg > 4)
        bad("cochain: degree out of range");
    Cochain c(m, static_cast<int>(deg));
    const Json& entries = field(j, "entries", "cochain");
    if (!entries.is_array())
        bad("cochain: \"entries\" must be a list");
    for (const auto& e : entries) {
        const Json& t = field(e, "tuple", "cochain entry");
        if (!t.is_array() || t.size() != static_cast<size_t>(deg))
            bad("cochain entry: tuple length must equal the degree");
        std::vector<Elem> tuple;
        for (const auto& x : t)
            tuple.push_back(as_elem(x, m.group(), "cochain tuple"));
        const Json& v = field(e, "value", "cochain entry");
        if (!v.is_array() || v.size() != m.coeff().rank())
            bad("cochain entry: value length must equal the coefficient rank");
        AbElem val;
        for (const auto& x : v)
            val.push_back(as_int(x, "cochain value"));
        c.set(tuple, m.coeff().reduce(val));
    }
    return c;
}

Json cochain_json(const Cochain& c) {
    Json entries = Json::array();
    std::vector<Elem> t(c.degree());
    for (size_t k = 0; k < c.tuple_count(); ++k) {
        AbElem v = c.value_at(k);
        if (c.module().coeff().is_zero(v))
            continue;
        c.indexer().tuple(k, t);
        entries.push_back(Json{{"tuple", t}, {"value", v}});
    }
    return Json{{"degree", c.degree()}, {"entries", entries}};
}

EmbeddingProblem parse_problem(const Json& j, const GroupTable* table) {
    FiniteGroup base = parse_group(field(j, "base", "problem"), table);
    FiniteGroup g1 = parse_group(field(j, "g1", "problem"), table);
    FiniteGroup g2 = parse_group(field(j, "g2", "problem"), table);
    GroupHom phi = parse_hom(field(j, "phi", "problem"), g1, g2);
    GroupHom psi = parse_hom(field(j, "psi", "problem"), base, g2);
    return EmbeddingProblem(phi, psi);
}

Json problem_json(const EmbeddingProblem& e, const std::string& base_ref, const std::string& g1_ref,
                  const std::string& g2_ref) {
    return Json{{"base", base_ref},
                {"g1", g1_ref},
                {"g2", g2_ref},
                {"phi", hom_json(e.phi())},
                {"psi", hom_json(e.psi())}};
}

Extension parse_extension(const Json& j, const GroupTable* table) {
    if (j.contains("cocycle")) {
        GModule m = parse_module(field(j, "module", "extension"), table);
        return extension_from_cocycle(m, parse_cochain(j.at("cocycle"), m));
    }
    FiniteGroup total = parse_group(field(j, "total", "extension"), table);
    FiniteGroup base = parse_group(field(j, "base", "extension"), table);
    FinAbGroup m = parse_abelian(field(j, "kernel", "extension"));
    GroupHom inj = parse_hom(field(j, "inj", "extension"), additive_group(m), total);
    GroupHom proj = parse_hom(field(j, "proj", "extension"), total, base);
    return Extension::from_maps(m, inj, proj);
}

std::vector<GroupHom> parse_characters(const Json& j, const FiniteGroup& base, Int m) {
    if (!j.is_array() || j.empty())
        bad("characters: expected a nonempty list");
    if (m < 2 || m > FiniteGroup::kMaxOrder)
        bad("characters: modulus out of range");
    FiniteGroup zm = cyclic_group(static_cast<int>(m));
    std::vector<GroupHom> out;
    for (const auto& c : j)
        out.push_back(parse_hom(c, base, zm));
    return out;
}

Json extension_corpus_json(const std::vector<ExtensionInstance>& corpus) {
    Registry reg;
    Json list = Json::array();
    for (const auto& inst : corpus) {
        Json ext = extension_json(inst.extension, reg);
        list.push_back(Json{{"name", inst.name},
                            {"extension", ext},
                            {"coeff", module_json(inst.coeff, reg.key(inst.coeff.group()))}});
    }
    return Json{{"kind", "extensions"}, {"groups", reg.json()}, {"instances", list}};
}

Json embedding_corpus_json(const std::vector<EmbeddingInstance>& corpus) {
    Registry reg;
    Json list = Json::array();
    for (const auto& inst : corpus) {
        const auto& e = inst.problem;
        Json p = problem_json(e, reg.key(e.base()), reg.key(e.g1()), reg.key(e.g2()));
        list.push_back(Json{{"name", inst.name}, {"problem", p}});
    }
    return Json{{"kind", "embedding"}, {"groups", reg.json()}, {"instances", list}};
}

Json dwyer_corpus_json(const std::vector<DwyerInstance>& corpus) {
    Registry reg;
    Json list = Json::array();
    for (const auto& inst : corpus) {
        Json chars = Json::array();
        for (const auto& c : inst.characters)
            chars.push_back(c.table());
        list.push_back(Json{{"name", inst.name}, {"base", reg.key(inst.base)}, {"characters", chars}});
    }
    return Json{{"kind", "dwyer"}, {"groups", reg.json()}, {"instances", list}};
}

std::vector<ExtensionEntry> parse_extension_corpus(const Json& j) {
    const Json& list = instances(j, "extensions");
    GroupTable t = read_groups(j);
    std::vector<ExtensionEntry> out;
    for (size_t k = 0; k < list.size(); ++k) {
        const Json& inst = list[k];
        Extension e = parse_extension(field(inst, "extension", "corpus instance"), &t);
        GModule a = inst.contains("coeff") ? parse_module(inst.at("coeff"), &t)
                                           : GModule::trivial(e.base(), FinAbGroup::cyclic(2));
        out.push_back(ExtensionEntry{name_of(inst, k), e, a});
    }
    return out;
}

std::vector<EmbeddingEntry> parse_embedding_corpus(const Json& j) {
    const Json& list = instances(j, "embedding");
    GroupTable t = read_groups(j);
    std::vector<EmbeddingEntry> out;
    for (size_t k = 0; k < list.size(); ++k)
        out.push_back(EmbeddingEntry{name_of(list[k], k), parse_problem(field(list[k], "problem", "corpus"), &t)});
    return out;
}

std::vector<DwyerEntry> parse_dwyer_corpus(const Json& j) {
    const Json& list = instances(j, "dwyer");
    GroupTable t = read_groups(j);
    std::vector<DwyerEntry> out;
    for (size_t k = 0; k < list.size(); ++k) {
        const Json& inst = list[k];
        FiniteGroup base = parse_group(field(inst, "base", "corpus instance"), &t);
        out.push_back(DwyerEntry{name_of(inst, k), base,
                                 parse_characters(field(inst, "characters", "corpus instance"), base, 2)});
    }
    return out;
}

Json parse_text(const std::string& text, const std::string& origin) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        bad(origin + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

} // namespace obstrukt::io
