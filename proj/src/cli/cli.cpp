#include "obstrukt/cli.hpp"

#include "obstrukt/error.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace obstrukt::cli {

namespace {

using io::Json;

[[noreturn]] void bad(const std::string& what) { fail(ErrorKind::InvalidInput, what); }

const std::string& input(const Manifest& m, const std::string& key) {
    auto it = m.inputs.find(key);
    if (it == m.inputs.end() || it->second.empty())
        bad("missing input --" + key);
    return it->second;
}

bool has(const Manifest& m, const std::string& key) {
    auto it = m.inputs.find(key);
    return it != m.inputs.end() && !it->second.empty();
}

long long integer(const Manifest& m, const std::string& key) {
    const auto& s = input(m, key);
    try {
        size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used == s.size())
            return v;
    } catch (const std::logic_error&) {
    }
    bad("--" + key + ": expected an integer, got \"" + s + "\"");
}

// Inline JSON, a JSON file, or a bare name.
Json load(const std::string& value, const std::string& origin) {
    if (!value.empty() && (value[0] == '{' || value[0] == '[' || value[0] == '"'))
        return io::parse_text(value, origin);
    std::error_code ec;
    if (std::filesystem::is_regular_file(value, ec)) {
        std::ifstream in(value, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return io::parse_text(ss.str(), value);
    }
    if (value.ends_with(".json"))
        bad(origin + ": cannot read file " + value);
    return Json(value);
}

Json load_input(const Manifest& m, const std::string& key) { return load(input(m, key), "--" + key); }

HomSearchOptions search(const Manifest& m) { return HomSearchOptions{m.budget}; }
MasseyBudget massey_budget(const Manifest& m) { return MasseyBudget{m.budget}; }

CohomologyOptions coh_options(const Manifest& m) {
    CohomologyOptions o;
    o.max_coordinates = m.max_coordinates;
    return o;
}

GModule module_input(const Manifest& m) {
    if (has(m, "module"))
        return io::parse_module(load_input(m, "module"));
    FiniteGroup g = io::parse_group(load_input(m, "group"));
    FinAbGroup a = has(m, "coeff") ? io::parse_abelian(load_input(m, "coeff")) : FinAbGroup::cyclic(2);
    return GModule::trivial(g, a);
}

Json class_json(const CohomologyClass& c) { return Json(c.element()); }

std::string side_name(Side s) {
    switch (s) {
    case Side::Yes: return "yes";
    case Side::No: return "no";
    case Side::BudgetExceeded: return "budget_exceeded";
    }
    return "unknown";
}

std::string status_name(MasseyStatus s) {
    switch (s) {
    case MasseyStatus::Yes: return "yes";
    case MasseyStatus::No: return "no";
    case MasseyStatus::BudgetExceeded: return "budget_exceeded";
    }
    return "unknown";
}

RunResult cohomology_cmd(const Manifest& m) {
    GModule mod = module_input(m);
    long long deg = integer(m, "degree");
    if (deg < 0 || deg > 3)
        bad("--degree must be between 0 and 3");
    auto h = cohomology(mod, static_cast<int>(deg), coh_options(m));
    Json r{{"group", mod.group().label()},
           {"group_order", mod.group().order()},
           {"coeff", io::abelian_json(mod.coeff())},
           {"trivial_action", mod.is_trivial()},
           {"degree", deg},
           {"order", h.group().order()},
           {"invariants", h.group().factors()}};
    if (has(m, "representatives") && input(m, "representatives") == "true") {
        Json reps = Json::array();
        for (size_t i = 0; i < h.group().rank(); ++i)
            reps.push_back(io::cochain_json(h.lift(h.group().basis(i))));
        r["representatives"] = reps;
    }
    return {kExitOk, r};
}

RunResult cup_cmd(const Manifest& m) {
    GModule mod = module_input(m);
    long long p = integer(m, "p"), q = integer(m, "q");
    if (p < 0 || q < 0 || p + q > 3)
        bad("--p and --q must be nonnegative with p + q <= 3");
    auto pr = CoeffPairing::multiplication(mod);
    auto opts = coh_options(m);
    auto hp = cohomology(mod, static_cast<int>(p), opts);
    auto hq = cohomology(mod, static_cast<int>(q), opts);
    auto hpq = cohomology(mod, static_cast<int>(p + q), opts);
    Json products = Json::array();
    bool commutative = true;
    for (size_t i = 0; i < hp.group().rank(); ++i)
        for (size_t j = 0; j < hq.group().rank(); ++j) {
            auto a = hp.element(hp.group().basis(i));
            auto b = hq.element(hq.group().basis(j));
            auto ab = cup_classes(a, b, pr, hpq);
            auto ba = cup_classes(b, a, pr, hpq);
            AbElem expect = (p * q) % 2 ? hpq.group().neg(ab.element()) : ab.element();
            commutative = commutative && expect == ba.element();
            products.push_back(Json{{"left", i}, {"right", j}, {"product", class_json(ab)}});
        }
    Json r{{"group", mod.group().label()},
           {"coeff", io::abelian_json(mod.coeff())},
           {"p", p},
           {"q", q},
           {"left_invariants", hp.group().factors()},
           {"right_invariants", hq.group().factors()},
           {"target_invariants", hpq.group().factors()},
           {"products", products},
           {"graded_commutative", commutative}};
    return {commutative ? kExitOk : kExitDisagreement, r};
}

std::vector<GroupHom> characters_input(const Manifest& m, const FiniteGroup& g, Int modulus) {
    auto chars = io::parse_characters(load_input(m, "characters"), g, modulus);
    if (has(m, "n")) {
        long long n = integer(m, "n");
        if (n < 2 || n > 8)
            bad("--n must be between 2 and 8");
        if (chars.size() == 1)
            chars.assign(static_cast<size_t>(n), chars[0]);
        else if (chars.size() != static_cast<size_t>(n))
            bad("--n disagrees with the number of characters");
    }
    if (chars.size() < 2)
        bad("at least two characters are needed");
    return chars;
}

RunResult massey_cmd(const Manifest& m) {
    FiniteGroup g = io::parse_group(load_input(m, "group"));
    Int modulus = has(m, "mod") ? integer(m, "mod") : 2;
    auto chars = characters_input(m, g, modulus);
    GModule mod = GModule::trivial(g, FinAbGroup::cyclic(modulus));
    std::vector<Cochain> a;
    for (const auto& chi : chars)
        a.push_back(Cochain::from_function(mod, 1, [&](std::span<const Elem> t) { return AbElem{chi(t[0])}; }));
    auto res = massey_contains_zero(a, massey_budget(m));
    Json r{{"group", g.label()}, {"mod", modulus}, {"n", chars.size()}, {"status", status_name(res.status)},
           {"nodes", res.nodes}};
    if (res.witness) {
        Json entries = Json::array();
        const auto& ds = *res.witness;
        int n = ds.n();
        for (int d = 1; d <= n; ++d)
            for (int i = 1; i + d <= n + 1; ++i)
                if ((i != 1 || d != n) && ds.has(i, i + d))
                    entries.push_back(Json{{"i", i}, {"j", i + d}, {"cochain", io::cochain_json(ds.at(i, i + d))}});
        r["witness"] = Json{{"entries", entries}, {"product", io::cochain_json(ds.product_sum(1, n + 1))}};
    }
    return {res.status == MasseyStatus::BudgetExceeded ? kExitError : kExitOk, r};
}

RunResult solve_cmd(const Manifest& m) {
    auto e = io::parse_problem(load_input(m, "problem"));
    auto sols = solve(e, search(m));
    Json list = Json::array();
    for (const auto& s : sols)
        list.push_back(io::hom_json(s.representative));
    bool abelian = e.kernel().is_abelian();
    Json r{{"base", e.base().label()},
           {"g1", e.g1().label()},
           {"g2", e.g2().label()},
           {"kernel_order", e.kernel().order()},
           {"kernel_abelian", abelian},
           {"count", sols.size()},
           {"solutions", list}};
    bool agree = true;
    if (abelian) {
        auto gamma = gamma_of(e);
        auto c = obstruction_class(e);
        Int h1 = cohomology(gamma.module(), 1).group().order();
        r["obstruction"] = Json{{"invariants", c.parent().group().factors()},
                                {"class", class_json(c)},
                                {"zero", c.is_zero()}};
        r["h1_order"] = h1;
        agree = (sols.empty() != c.is_zero()) && (sols.empty() || static_cast<Int>(sols.size()) == h1);
        r["consistent"] = agree;
    }
    return {agree ? kExitOk : kExitDisagreement, r};
}

Json dwyer_json(const std::string& name, const DwyerReport& d) {
    return Json{{"name", name},
                {"massey_contains_zero", side_name(d.massey)},
                {"solvable", side_name(d.solvable)},
                {"agree", d.agree}};
}

RunResult dwyer_cmd(const Manifest& m) {
    std::vector<io::DwyerEntry> entries;
    if (has(m, "corpus")) {
        const auto& c = input(m, "corpus");
        if (c == "default" || c == "extended") {
            for (auto& inst : dwyer_corpus(c == "extended"))
                entries.push_back({inst.name, inst.base, inst.characters});
        } else {
            entries = io::parse_dwyer_corpus(load(c, "--corpus"));
        }
    } else {
        FiniteGroup g = io::parse_group(load_input(m, "group"));
        entries.push_back({g.label(), g, characters_input(m, g, 2)});
    }
    Json list = Json::array();
    size_t agree = 0, disagree = 0, undecided = 0;
    for (const auto& inst : entries) {
        auto d = dwyer_check(inst.base, inst.characters, massey_budget(m), search(m));
        if (d.agree)
            ++agree;
        else if (d.massey == Side::BudgetExceeded || d.solvable == Side::BudgetExceeded)
            ++undecided;
        else
            ++disagree;
        list.push_back(dwyer_json(inst.name, d));
    }
    Json r{{"instances", list}, {"agree", agree}, {"disagree", disagree}, {"budget_exceeded", undecided}};
    return {disagree ? kExitDisagreement : undecided ? kExitError : kExitOk, r};
}

// A set-theoretic section picking a pseudo-random preimage of each element.
std::vector<Elem> random_section(const Extension& e, std::mt19937_64& rng) {
    std::vector<std::vector<Elem>> fibers(e.base().order());
    for (Elem w = 0; w < e.total().order(); ++w)
        fibers[e.proj()(w)].push_back(w);
    std::vector<Elem> s(e.base().order());
    for (Elem p = 0; p < e.base().order(); ++p) {
        const auto& f = fibers[p];
        s[p] = p == e.base().identity() ? e.total().identity() : f[rng() % f.size()];
    }
    return s;
}

RunResult cor65_cmd(const Manifest& m) {
    std::vector<io::ExtensionEntry> entries;
    const auto& c = has(m, "corpus") ? input(m, "corpus") : std::string("default");
    if (c == "default") {
        for (auto& inst : extension_corpus())
            entries.push_back({inst.name, inst.extension, inst.coeff});
    } else {
        entries = io::parse_extension_corpus(load(c, "--corpus"));
    }
    Json list = Json::array();
    size_t checks = 0, passed = 0, failed_instances = 0;
    bool plus_all = true, minus_all = true, independent_all = true;
    for (size_t k = 0; k < entries.size(); ++k) {
        const auto& inst = entries[k];
        auto s = verify_cor65_all(inst.extension, inst.coeff);
        std::mt19937_64 rng(m.seed + k);
        auto other = inst.extension.with_set_section(random_section(inst.extension, rng));
        bool independent = true;
        for (const auto& cls : h2_restricted_kernel(inst.extension, inst.coeff))
            independent = independent && classes_equal(edge_delta(inst.extension, inst.coeff, cls),
                                                        edge_delta(other, inst.coeff, cls));
        bool ok = s.holds == s.checks && independent;
        checks += s.checks;
        passed += s.holds;
        failed_instances += !ok;
        plus_all = plus_all && s.plus == s.checks;
        minus_all = minus_all && s.minus == s.checks;
        independent_all = independent_all && independent;
        list.push_back(Json{{"name", inst.name},
                            {"total_order", inst.extension.total().order()},
                            {"kernel", io::abelian_json(inst.extension.kernel_group())},
                            {"coeff", io::abelian_json(inst.coeff.coeff())},
                            {"kernel_action_trivial", inst.extension.module().is_trivial()},
                            {"coeff_action_trivial", inst.coeff.is_trivial()},
                            {"sections", s.sections},
                            {"restricted_kernel_classes", s.classes},
                            {"checks", s.checks},
                            {"passed", s.holds},
                            {"delta_independent_of_set_section", independent},
                            {"holds", ok}});
    }
    Json sign{{"sign", kCor65Sign},
              {"identity", "s1*(c) - s2*(c) = sign * ([s1 - s2] u delta(c))"},
              {"pairing", "evaluation M x Hom(M, A) -> A, section difference on the left"},
              {"plus_holds_everywhere", plus_all},
              {"minus_holds_everywhere", minus_all}};
    Json r{{"instances", list},
           {"instance_count", entries.size()},
           {"checks", checks},
           {"passed", passed},
           {"failed_instances", failed_instances},
           {"sign_convention", sign}};
    return {failed_instances ? kExitDisagreement : kExitOk, r};
}

RunResult icosahedral_cmd(const Manifest&) {
    auto x = icosahedral_example();
    bool ok = x.h2_order == 2 && x.sl25_class_nonzero && x.pullback_order == 4 && x.pullback_exponent == 4 &&
              x.pullback_class_nonzero && x.witness_found;
    Json r{{"h2_order", x.h2_order},
           {"sl25_class_nonzero", x.sl25_class_nonzero},
           {"involution", x.involution},
           {"pullback_order", x.pullback_order},
           {"pullback_exponent", x.pullback_exponent},
           {"pullback_cyclic", x.pullback_order == x.pullback_exponent},
           {"pullback_class_nonzero", x.pullback_class_nonzero},
           {"witness_found", x.witness_found},
           {"witness_involution", x.witness_involution},
           {"witness_matches_sl25", x.witness_matches_sl25},
           {"as_expected", ok}};
    return {ok ? kExitOk : kExitDisagreement, r};
}

RunResult emit_cmd(const Manifest& m) {
    const auto& kind = input(m, "kind");
    long long size = has(m, "size") ? integer(m, "size") : -1;
    if (kind == "extensions")
        return {kExitOk, io::extension_corpus_json(extension_corpus())};
    if (kind == "dwyer")
        return {kExitOk, io::dwyer_corpus_json(dwyer_corpus(size > 0))};
    if (kind == "embedding") {
        if (size == 0 || size > 64)
            bad("--size for the embedding corpus must be between 1 and 64");
        return {kExitOk, io::embedding_corpus_json(embedding_corpus(size < 0 ? 6 : static_cast<size_t>(size)))};
    }
    bad("--kind must be extensions, dwyer or embedding");
}

RunResult dispatch(const Manifest& m) {
    switch (m.command) {
    case Command::Cohomology: return cohomology_cmd(m);
    case Command::Cup: return cup_cmd(m);
    case Command::Massey: return massey_cmd(m);
    case Command::Solve: return solve_cmd(m);
    case Command::Dwyer: return dwyer_cmd(m);
    case Command::VerifyCor65: return cor65_cmd(m);
    case Command::Icosahedral: return icosahedral_cmd(m);
    case Command::EmitCorpus: return emit_cmd(m);
    }
    bad("unknown command");
}

Json error_json(const std::string& kind, const std::string& message) {
    return Json{{"error", Json{{"kind", kind}, {"message", message}}}};
}

const std::vector<std::pair<Command, std::string>>& command_names() {
    static const std::vector<std::pair<Command, std::string>> names{
        {Command::Cohomology, "cohomology"}, {Command::Cup, "cup"},
        {Command::Massey, "massey"},         {Command::Solve, "solve"},
        {Command::Dwyer, "dwyer"},           {Command::VerifyCor65, "verify-cor65"},
        {Command::Icosahedral, "icosahedral-example"}, {Command::EmitCorpus, "emit-corpus"}};
    return names;
}

constexpr const char* kDescription =
    "Cohomology, extensions and embedding problems for finite groups.\n"
    "Profinite Galois groups are replaced by finite groups throughout: every continuous\n"
    "homomorphism from a profinite group to a finite group factors through a finite\n"
    "quotient, so the finite instances carry all of the computable content.\n"
    "Reports are JSON. Exit codes: 0 success, 1 input or budget error, 2 disagreement.\n"
    "OBSTRUKT_BUDGET sets the default node cap.";

} // namespace

std::string command_name(Command c) {
    for (const auto& [k, v] : command_names())
        if (k == c)
            return v;
    return "unknown";
}

RunResult run(const Manifest& m) {
    RunResult r;
    try {
        if (m.budget == 0)
            bad("budget must be positive");
        if (m.max_coordinates == 0)
            bad("max-coordinates must be positive");
        r = dispatch(m);
    } catch (const Error& e) {
        r = {kExitError, error_json(std::string(to_string(e.kind())), e.what())};
    } catch (const Json::exception& e) {
        r = {kExitError, error_json("InvalidInput", e.what())};
    } catch (const std::bad_alloc&) {
        r = {kExitError, error_json("BudgetExceeded", "out of memory")};
    }
    Json head{{"command", command_name(m.command)}, {"seed", m.seed}, {"budget", m.budget}};
    for (auto& [k, v] : r.report.items())
        head[k] = v;
    r.report = std::move(head);
    return r;
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Manifest m;
    if (const char* env = std::getenv("OBSTRUKT_BUDGET")) {
        try {
            size_t used = 0;
            long long v = std::stoll(env, &used);
            if (used != std::strlen(env) || v <= 0)
                throw std::invalid_argument(env);
            m.budget = static_cast<size_t>(v);
        } catch (const std::logic_error&) {
            err << "error: OBSTRUKT_BUDGET must be a positive integer\n";
            return kExitError;
        }
    }

    CLI::App app{kDescription, "obstrukt"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string output;
    app.add_option("--budget", m.budget, "Node cap for searches")->check(CLI::PositiveNumber);
    app.add_option("--max-coordinates", m.max_coordinates, "Cap on cochain coordinates")->check(CLI::PositiveNumber);
    app.add_option("--seed", m.seed, "Seed for randomized checks; recorded in every report");
    app.add_option("--output,-o", output, "Write the report to this file");

    auto opt = [&](CLI::App* sub, const std::string& key, const std::string& help) {
        sub->add_option("--" + key, m.inputs[key], help);
    };
    const std::string group_help = "Group: a name such as A5 or Z2xZ4, inline JSON, or a JSON file";
    std::map<CLI::App*, Command> subs;
    auto add = [&](Command c, const std::string& help) {
        auto* s = app.add_subcommand(command_name(c), help);
        subs[s] = c;
        return s;
    };
    auto* coh = add(Command::Cohomology, "Order and invariants of H^n(G, M)");
    opt(coh, "group", group_help);
    opt(coh, "coeff", "Trivial coefficients, e.g. Z2 or {\"factors\": [2, 4]}");
    opt(coh, "module", "G-module JSON instead of --group/--coeff");
    opt(coh, "degree", "Degree 0..3");
    coh->add_flag_function("--representatives", [&](int64_t) { m.inputs["representatives"] = "true"; },
                           "Include representative cocycles");
    auto* cup = add(Command::Cup, "Cup products of basis classes with Z/n coefficients");
    opt(cup, "group", group_help);
    opt(cup, "coeff", "Cyclic trivial coefficients");
    opt(cup, "module", "Cyclic G-module JSON");
    opt(cup, "p", "Left degree");
    opt(cup, "q", "Right degree");
    auto* mas = add(Command::Massey, "Whether the Massey product of characters contains zero");
    opt(mas, "group", group_help);
    opt(mas, "characters", "JSON list of characters (image tables or generator maps)");
    opt(mas, "n", "Length; a single character is repeated n times");
    opt(mas, "mod", "Prime modulus of the coefficients (default 2)");
    auto* sol = add(Command::Solve, "Solutions of an embedding problem up to kernel conjugation");
    opt(sol, "problem", "Problem JSON {base, g1, g2, phi, psi}, inline or a file");
    auto* dw = add(Command::Dwyer, "Massey vanishing against solvability of the unipotent embedding problem");
    opt(dw, "group", group_help);
    opt(dw, "characters", "JSON list of characters to Z/2");
    opt(dw, "n", "Length; a single character is repeated n times");
    opt(dw, "corpus", "default, extended, or a corpus file");
    auto* cor = add(Command::VerifyCor65, "Section-difference identity over an extension corpus");
    opt(cor, "corpus", "default or a corpus file");
    add(Command::Icosahedral, "Binary icosahedral example over A5");
    auto* emit = add(Command::EmitCorpus, "Write a corpus as JSON");
    opt(emit, "kind", "extensions, dwyer or embedding");
    opt(emit, "size", "embedding: choices of psi per pair (default 6); dwyer: 1 adds extra bases");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
    for (const auto& [s, c] : subs)
        if (s->parsed())
            m.command = c;
    if (!output.empty())
        m.output = output;

    RunResult r = run(m);
    std::string text = r.report.dump(2) + "\n";
    if (r.report.contains("error"))
        err << "error: " << r.report["error"]["message"].get<std::string>() << "\n";
    if (m.output) {
        std::ofstream f(*m.output, std::ios::binary);
        if (!f) {
            err << "error: cannot write " << *m.output << "\n";
            return kExitError;
        }
        f << text;
    } else {
        out << text;
    }
    return r.exit_code;
}

} // namespace obstrukt::cli
