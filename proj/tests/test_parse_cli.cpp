#include "support/oracles.hpp"

#include "qkoszul/cli.hpp"
#include "qkoszul/parse.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace qkoszul;

namespace {

std::string write_temp(const std::string& name, const std::string& content)
{
    std::string path = std::string("qk_test_") + name;
    std::ofstream f(path, std::ios::binary);
    f << content;
    return path;
}

struct CliResult {
    int code;
    std::string out, err;
};

CliResult run_cli(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("polynomial grammar")
{
    const std::vector<std::string> names{"X1", "X2", "X3", "X4"};
    SECTION("commutator sugar")
    {
        NcPoly f = parse_polynomial("[X1,X2] + [X3,X4]", 3, names);
        REQUIRE(f.terms().size() == 4);
        REQUIRE(f.terms().at(Monomial({0, 1})) == 1);
        REQUIRE(f.terms().at(Monomial({1, 0})) == 2);
    }
    SECTION("coefficients and powers")
    {
        NcPoly f = parse_polynomial("2*X1*X2 + X1^2", 5, names);
        REQUIRE(f.terms().at(Monomial({0, 1})) == 2);
        REQUIRE(f.terms().at(Monomial({0, 0})) == 1);
        NcPoly g = parse_polynomial("X1^2 - 3*X2^2", 5, names);
        REQUIRE(g.terms().at(Monomial({1, 1})) == 2);
    }
    SECTION("leading minus and cancellation")
    {
        NcPoly f = parse_polynomial("-X1*X2 + X2*X1", 3, names);
        REQUIRE(f.terms().at(Monomial({0, 1})) == 2);
        NcPoly z = parse_polynomial("[X1,X2] - X1*X2 + X2*X1", 3, names);
        REQUIRE(z.is_zero());
    }
    SECTION("nested commutators of polynomials")
    {
        NcPoly f = parse_polynomial("[[X1,X2],X3]", 3, names);
        REQUIRE(f.is_homogeneous());
        REQUIRE(f.max_degree() == 3);
    }
    SECTION("errors carry positions")
    {
        REQUIRE_THROWS_AS(parse_polynomial("X9", 3, names), ParseError);
        REQUIRE_THROWS_AS(parse_polynomial("X1 +", 3, names), ParseError);
        REQUIRE_THROWS_AS(parse_polynomial("X1 X2", 3, names), ParseError);
        REQUIRE_THROWS_AS(parse_polynomial("X1^-2", 3, names), ParseError);
    }
}

TEST_CASE("polynomial printing round-trips")
{
    DetRng rng(404);
    const std::vector<std::string> names{"X1", "X2", "X3"};
    for (int trial = 0; trial < 40; ++trial) {
        unsigned p = trial % 2 ? 3 : 5;
        HomogeneousPoly f(p, 2);
        for (int t = 0; t < 3; ++t)
            f.add_term(Monomial({static_cast<unsigned>(rng.below(3)),
                                 static_cast<unsigned>(rng.below(3))}),
                       1 + static_cast<long long>(rng.below(p - 1)));
        if (f.is_zero())
            continue;
        NcPoly back = parse_polynomial(to_string(f, names), p, names);
        REQUIRE(back.to_homogeneous(2) == f);
    }
}

TEST_CASE("algebra files")
{
    const char* text = "# one commuting pair\n"
                       "p = 3\n"
                       "generators = X1 X2\n"
                       "relation = [X1,X2]\n";
    QuadraticPresentation a = parse_algebra(text);
    REQUIRE(a.p() == 3);
    REQUIRE(a.generator_count() == 2);
    REQUIRE(equal_presentations(a, symmetric_presentation(3, 2)));

    SECTION("round trip is exact")
    {
        DetRng rng(777);
        for (int trial = 0; trial < 25; ++trial) {
            unsigned p = trial % 2 ? 2 : 3;
            std::size_t d = 1 + rng.below(3);
            QuadraticPresentation b = oracle::random_presentation(rng, p, d, rng.below(d * d + 1));
            QuadraticPresentation back = parse_algebra(to_algebra_file(b));
            REQUIRE(equal_presentations(back, b));
            REQUIRE(to_algebra_file(back) == to_algebra_file(b));
        }
    }
    SECTION("rejections")
    {
        REQUIRE_THROWS_AS(parse_algebra("p = 4\ngenerators = X1\n"), ParseError);
        REQUIRE_THROWS_AS(parse_algebra("p = 3\ngenerators = X1 X1\n"), ParseError);
        REQUIRE_THROWS_AS(parse_algebra("p = 3\ngenerators = X1\nrelation = X1\n"), ParseError);
        REQUIRE_THROWS_AS(parse_algebra("p = 3\ngenerators = X1\nrelation = X1^2 + X1\n"),
                          ParseError);
        REQUIRE_THROWS_AS(parse_algebra("p = 3\nrelation = X1^2\ngenerators = X1\n"), ParseError);
    }
}

TEST_CASE("presentation files")
{
    const char* text = "p = 3\ngenerators = x1 x2 x3\nrelator = [x1,x2]*x3^-3\n";
    GroupPresentation g = parse_presentation(text);
    REQUIRE(g.p == 3);
    REQUIRE(g.d == 3);
    REQUIRE(g.names[2] == "x3");

    SECTION("round trip preserves the word")
    {
        std::string printed = to_presentation_file(g);
        GroupPresentation back = parse_presentation(printed);
        REQUIRE(to_presentation_file(back) == printed);
        REQUIRE(magnus_expand(back.relator, 3, 4, 3) == magnus_expand(g.relator, 3, 4, 3));
    }
    SECTION("rejections")
    {
        REQUIRE_THROWS_AS(parse_presentation("p = 3\ngenerators = x1\nrelator = x1^0\n"), ParseError);
        REQUIRE_THROWS_AS(parse_presentation("p = 3\ngenerators = x1\n"), ParseError);
        REQUIRE_THROWS_AS(parse_presentation("p = 3\ngenerators = x1\nrelator = x2\n"), ParseError);
        REQUIRE_THROWS_AS(
            parse_presentation("p = 3\ngenerators = x1\nrelator = x1\nrelator = x1\n"), ParseError);
    }
}

TEST_CASE("cli verbs")
{
    SECTION("dual of the symmetric algebra is the exterior algebra")
    {
        std::string path = write_temp("sym2.alg", to_algebra_file(symmetric_presentation(3, 2)));
        auto r = run_cli({"dual", path});
        REQUIRE(r.code == cli::exit_ok);
        REQUIRE(equal_presentations(parse_algebra(r.out), exterior_presentation(3, 2)));
        std::remove(path.c_str());
    }
    SECTION("dims of the d=4 normal form")
    {
        std::string path =
            write_temp("dem4.alg", to_algebra_file(demushkin_normal(3, 4, DemushkinCase::a)));
        auto r = run_cli({"dims", "--deg", "4", path});
        REQUIRE(r.code == cli::exit_ok);
        REQUIRE(r.out == "1 4 15 56 209\n");
        std::remove(path.c_str());
    }
    SECTION("product verbs emit parseable files")
    {
        std::string pa = write_temp("a.alg", to_algebra_file(free_presentation(3, 1)));
        std::string pb = write_temp("b.alg", to_algebra_file(free_presentation(3, 1)));
        auto r = run_cli({"product", "--tensor1", pa, pb});
        REQUIRE(r.code == cli::exit_ok);
        REQUIRE(equal_presentations(parse_algebra(r.out), symmetric_presentation(3, 2)));
        auto r2 = run_cli({"product", pa, pb});
        REQUIRE(r2.code == cli::exit_parse);
        std::remove(pa.c_str());
        std::remove(pb.c_str());
    }
    SECTION("koszul verb certifies the exterior algebra")
    {
        std::string path = write_temp("ext2.alg", to_algebra_file(exterior_presentation(3, 2)));
        auto r = run_cli({"koszul", path});
        REQUIRE(r.code == cli::exit_ok);
        REQUIRE(r.out.find("status=certified-koszul") != std::string::npos);
        std::remove(path.c_str());
    }
    SECTION("analyze produces the full report")
    {
        std::string path =
            write_temp("kz.pres", "p = 3\ngenerators = x1 x2 x3\nrelator = [x1,x2]*x3^-3\n");
        auto r = run_cli({"analyze", path});
        REQUIRE(r.code == cli::exit_ok);
        REQUIRE(r.out.find("decomposition = F_3[X1,X2] ⊔ F_3[X3]") != std::string::npos);
        REQUIRE(r.out.find("theorem2=true") != std::string::npos);
        std::remove(path.c_str());
    }
    SECTION("normalize and initial-form verbs")
    {
        std::string path =
            write_temp("sq.pres", "p = 2\ngenerators = x1 x2 x3\nrelator = x1^2\n");
        auto r = run_cli({"initial-form", path});
        REQUIRE(r.code == cli::exit_ok);
        REQUIRE(r.out.find("depth=2") != std::string::npos);
        auto r2 = run_cli({"normalize", path});
        REQUIRE(r2.code == cli::exit_ok);
        REQUIRE(r2.out.find("case=p2-n1") != std::string::npos);
        std::remove(path.c_str());
    }
    SECTION("exit codes")
    {
        auto missing = run_cli({"dual", "no_such_file.alg"});
        REQUIRE(missing.code == cli::exit_parse);
        auto unknown = run_cli({"frobnicate"});
        REQUIRE(unknown.code == cli::exit_parse);
        std::string path =
            write_temp("bad.pres", "p = 3\ngenerators = x1 x2\nrelator = x1*x2^3\n");
        auto hypo = run_cli({"analyze", path});
        REQUIRE(hypo.code == cli::exit_hypothesis);
        REQUIRE(hypo.err.find("not minimal") != std::string::npos);
        std::remove(path.c_str());
    }
    SECTION("catalog is deterministic and covers the fixture families")
    {
        auto first = run_cli({"catalog", "--deg", "5"});
        auto second = run_cli({"catalog", "--deg", "5"});
        REQUIRE(first.code == cli::exit_ok);
        REQUIRE(first.out == second.out);
        for (const char* needle :
             {"dual-of-demushkin-a(p=3,d=6)", "dims-of-demushkin-c(p=2,d=5)",
              "koszul-free(p=5,d=4)", "koszul-exterior(p=2,d=4)", "theorem2-kz(q=9)",
              "koszul-gr-of-square-two-commutators(d=5)"})
            REQUIRE(first.out.find(needle) != std::string::npos);
    }
    SECTION("--out writes the file")
    {
        std::string path = write_temp("sym2b.alg", to_algebra_file(symmetric_presentation(3, 2)));
        auto r = run_cli({"dual", path, "--out", "qk_test_out.alg"});
        REQUIRE(r.code == cli::exit_ok);
        std::ifstream f("qk_test_out.alg", std::ios::binary);
        std::ostringstream ss;
        ss << f.rdbuf();
        REQUIRE(equal_presentations(parse_algebra(ss.str()), exterior_presentation(3, 2)));
        std::remove(path.c_str());
        std::remove("qk_test_out.alg");
    }
}
