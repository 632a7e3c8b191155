#include "obstrukt/cli.hpp"
#include "obstrukt/error.hpp"

#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace obstrukt;
using io::Json;

namespace {

struct Outcome {
    int code;
    std::string out, err;
    Json json() const { return Json::parse(out); }
};

Outcome call(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::main(args, out, err);
    return {code, out.str(), err.str()};
}

std::string golden_path(const std::string& name) { return std::string(OBSTRUKT_GOLDEN_DIR) + "/" + name; }

// Compares against the stored report; OBSTRUKT_UPDATE_GOLDEN=1 rewrites it.
void check_golden(const std::string& name, const std::string& text) {
    if (const char* u = std::getenv("OBSTRUKT_UPDATE_GOLDEN"); u && std::string(u) == "1") {
        std::ofstream(golden_path(name), std::ios::binary) << text;
        return;
    }
    std::ifstream in(golden_path(name), std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == text);
}

} // namespace

TEST_CASE("group names") {
    CHECK(io::group_from_name("Z2xZ4").order() == 8);
    CHECK(io::group_from_name("Z2xZ4").exponent() == 4);
    auto e = io::group_from_name("Z2^3");
    CHECK(e.order() == 8);
    CHECK(e.exponent() == 2);
    CHECK(io::group_from_name("(Z3)^2xS3").order() == 54);
    CHECK(io::group_from_name("SL2(5)").order() == 120);
    CHECK(io::group_from_name("SL(2,3)").order() == 24);
    CHECK_FALSE(io::group_from_name("Q8").is_abelian());
    CHECK(io::group_from_name("Q8").order() == 8);
    CHECK(io::group_from_name("D4").order() == 8);
    CHECK(io::group_from_name("Dic3").order() == 12);
    CHECK(io::group_from_name("U4").order() == 64);
    CHECK(io::group_from_name("V4").exponent() == 2);
    CHECK_THROWS_AS(io::group_from_name("Y7"), Error);
    CHECK_THROWS_AS(io::group_from_name("(Z2"), Error);
    CHECK_THROWS_AS(io::group_from_name("Z2^"), Error);
}

TEST_CASE("json round trips") {
    auto s3 = standard_group(GroupKind::symmetric(3));
    CHECK(io::parse_group(io::group_json(s3)).same_as(s3));
    CHECK(io::parse_group(Json{{"kind", "dihedral"}, {"n", 4}}).same_as(standard_group(GroupKind::dihedral(4))));
    CHECK(io::parse_group(Json{{"kind", "sl2"}, {"p", 3}}).order() == 24);
    CHECK(io::parse_abelian(Json::parse("[6, 2]")) == FinAbGroup({2, 6}));
    CHECK(io::parse_abelian(Json("Z2xZ3")) == FinAbGroup({6}));

    auto sign = sign_twisted(s3, 3, {0, 1, 1, 0, 0, 1});
    auto m = io::parse_module(io::module_json(sign, "S3"));
    CHECK(m.same_as(sign));
    CHECK_FALSE(m.is_trivial());

    auto h = cohomology(m, 1);
    auto z = h.lift(h.group().zero());
    Cochain c(m, 2);
    c.set(std::vector<Elem>{1, 2}, AbElem{2});
    c.set(std::vector<Elem>{3, 3}, AbElem{1});
    CHECK(io::parse_cochain(io::cochain_json(c), m) == c);
    CHECK(io::parse_cochain(io::cochain_json(z), m) == z);

    auto z2 = cyclic_group(2);
    auto sgn = enumerate_homs(s3, z2).back();
    CHECK(io::parse_hom(io::hom_json(sgn), s3, z2) == sgn);
    CHECK(io::parse_hom(Json{{"generators", Json::array({Json::array({1, 1}), Json::array({2, 1})})}}, s3, z2) ==
          sgn);
    CHECK_THROWS_AS(io::parse_hom(Json{{"images", {0, 1, 0, 0, 0, 0}}}, s3, z2), Error);
}

TEST_CASE("corpus files round trip") {
    auto ext = extension_corpus();
    auto back = io::parse_extension_corpus(io::extension_corpus_json(ext));
    REQUIRE(back.size() == ext.size());
    for (size_t k = 0; k < ext.size(); ++k) {
        CHECK(back[k].name == ext[k].name);
        CHECK(back[k].extension.same_as(ext[k].extension));
        CHECK(back[k].coeff.same_as(ext[k].coeff));
    }

    auto dw = dwyer_corpus();
    auto dback = io::parse_dwyer_corpus(io::dwyer_corpus_json(dw));
    REQUIRE(dback.size() == dw.size());
    for (size_t k = 0; k < dw.size(); ++k) {
        CHECK(dback[k].base.same_as(dw[k].base));
        CHECK(dback[k].characters == dw[k].characters);
    }

    auto emb = embedding_corpus(2);
    auto eback = io::parse_embedding_corpus(io::embedding_corpus_json(emb));
    REQUIRE(eback.size() == emb.size());
    for (size_t k = 0; k < emb.size(); ++k)
        CHECK(eback[k].problem.same_as(emb[k].problem));
}

TEST_CASE("emitted corpora contain the hand-picked instances") {
    auto ext = call({"emit-corpus", "--kind", "extensions"}).json();
    bool split_v4 = false;
    for (const auto& i : ext["instances"])
        split_v4 = split_v4 || i["name"] == "Z2 x Z2, A = Z2";
    CHECK(split_v4);

    // (a, b) in Z2 x Z2 has index 2a + b.
    auto dw = call({"emit-corpus", "--kind", "dwyer"}).json();
    bool projections = false;
    for (const auto& i : dw["instances"]) {
        std::vector<std::vector<int>> ch = i["characters"];
        if (ch.size() == 2 && ch[0] == std::vector<int>{0, 0, 1, 1} && ch[1] == std::vector<int>{0, 1, 0, 1})
            projections = true;
    }
    CHECK(projections);

    auto emb = io::parse_embedding_corpus(call({"emit-corpus", "--kind", "embedding"}).json());
    bool obstructed = false;
    for (const auto& i : emb)
        if (i.name.starts_with("Z4 -> Z2 over Z2 ") && i.problem.psi().is_surjective())
            obstructed = !obstruction_class(i.problem).is_zero() && solve(i.problem).empty();
    CHECK(obstructed);
}

TEST_CASE("cli reports") {
    auto r = call({"cohomology", "--group", "A5", "--coeff", "Z2", "--degree", "2"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.json()["order"] == 2);
    CHECK(r.json()["seed"] == 0);
    check_golden("cohomology_a5_z2_2.json", r.out);

    auto ico = call({"icosahedral-example"});
    CHECK(ico.code == cli::kExitOk);
    check_golden("icosahedral_example.json", ico.out);

    auto cor = call({"verify-cor65", "--corpus", "default"});
    CHECK(cor.code == cli::kExitOk);
    CHECK(cor.json()["failed_instances"] == 0);
    CHECK(cor.json()["sign_convention"]["sign"] == kCor65Sign);
    check_golden("verify_cor65_default.json", cor.out);

    auto cup = call({"cup", "--group", "V4", "--coeff", "Z2", "--p", "1", "--q", "1"});
    CHECK(cup.code == cli::kExitOk);
    CHECK(cup.json()["graded_commutative"] == true);

    auto ms = call({"massey", "--group", "V4", "--characters", "[[0,0,1,1],[0,1,0,1]]"});
    CHECK(ms.code == cli::kExitOk);
    CHECK(ms.json()["status"] == "no");
    auto my = call({"massey", "--group", "Z4", "--characters", "[[0,1,0,1]]", "--n", "3"});
    CHECK(my.json()["status"] == "yes");
    CHECK(my.json()["witness"]["entries"].size() == 5);

    auto dw = call({"dwyer", "--group", "Z4", "--characters", "[[0,1,0,1]]", "--n", "3"});
    CHECK(dw.code == cli::kExitOk);
    CHECK(dw.json()["instances"][0]["agree"] == true);

    Json problem{{"base", "Z2"},
                 {"g1", "Z4"},
                 {"g2", "Z2"},
                 {"phi", {{"images", {0, 1, 0, 1}}}},
                 {"psi", {{"images", {0, 1}}}}};
    auto sol = call({"solve", "--problem", problem.dump()});
    CHECK(sol.code == cli::kExitOk);
    CHECK(sol.json()["count"] == 0);
    CHECK(sol.json()["obstruction"]["zero"] == false);
}

TEST_CASE("cli errors and budgets") {
    auto bad = call({"cohomology", "--group", "{\"label\": \"G\", \"table\": [[0, 1], [1", "--degree", "1"});
    CHECK(bad.code == cli::kExitError);
    CHECK(bad.json()["error"]["kind"] == "InvalidInput");
    CHECK(bad.err.find("malformed JSON") != std::string::npos);

    auto notgroup = call({"cohomology", "--group", "{\"table\": [[0, 1], [0, 1]]}", "--degree", "1"});
    CHECK(notgroup.code == cli::kExitError);

    CHECK(call({"cohomology", "--group", "Nope", "--degree", "1"}).code == cli::kExitError);
    CHECK(call({"cohomology", "--group", "Z2"}).code == cli::kExitError);
    CHECK(call({"frobnicate"}).code == cli::kExitError);
    CHECK(call({"--budget", "0", "icosahedral-example"}).code == cli::kExitError);

    auto tight = call({"--budget", "1", "massey", "--group", "Z4", "--characters", "[[0,1,0,1]]", "--n", "3"});
    CHECK(tight.code == cli::kExitError);
    CHECK(tight.json()["status"] == "budget_exceeded");

    setenv("OBSTRUKT_BUDGET", "12345", 1);
    auto env = call({"cohomology", "--group", "Z2", "--degree", "1"});
    auto flag = call({"--budget", "77", "cohomology", "--group", "Z2", "--degree", "1"});
    setenv("OBSTRUKT_BUDGET", "-3", 1);
    auto broken = call({"cohomology", "--group", "Z2", "--degree", "1"});
    unsetenv("OBSTRUKT_BUDGET");
    CHECK(env.json()["budget"] == 12345);
    CHECK(flag.json()["budget"] == 77);
    CHECK(broken.code == cli::kExitError);
}

TEST_CASE("reports are deterministic and record the seed") {
    std::vector<std::string> args{"--seed", "42", "verify-cor65"};
    auto a = call(args), b = call(args);
    CHECK(a.code == cli::kExitOk);
    CHECK(a.out == b.out);
    CHECK(a.json()["seed"] == 42);
    auto d1 = call({"emit-corpus", "--kind", "embedding", "--size", "2"});
    auto d2 = call({"emit-corpus", "--kind", "embedding", "--size", "2"});
    CHECK(d1.out == d2.out);
}
