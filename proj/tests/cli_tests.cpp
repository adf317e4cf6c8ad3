#include <doctest.h>
#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "misere/Cli.hpp"
#include "misere/Expression.hpp"
#include "misere/HeapGames.hpp"
#include "misere/Outcome.hpp"
#include "misere/Position.hpp"

#include "test_support.hpp"

using namespace misere;

namespace {

struct CliRun {
    int code = 0;
    std::string out;
    std::string err;
};

CliRun run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json parse_json(const std::string& text) { return nlohmann::json::parse(text); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("outcome prints a single winner letter") {
    CHECK(run_cli({"outcome", "rho"}).out == "L\n");
    CHECK(run_cli({"outcome", "rho"}).code == 0);
    CHECK(run_cli({"outcome", "0"}).out == "N\n");
    CHECK(run_cli({"outcome", "star"}).out == "P\n");
    CHECK(run_cli({"outcome", "one"}).out == "R\n");
    CHECK(run_cli({"outcome", "one", "--normal"}).out == "L\n");
    CHECK(run_cli({"outcome", "star", "--normal"}).out == "N\n");
    CHECK(run_cli({"outcome", "star(2) + star(2)"}).out == "P\n");
}

TEST_CASE("whitespace never changes a parse") {
    const CliRun tight = run_cli({"outcome", "2*star+rho"});
    const CliRun spaced = run_cli({"outcome", "  2 * star  +  rho "});
    CHECK(tight.out == spaced.out);
    CHECK(run_cli({"outcome", "{|}"}).out == run_cli({"outcome", "0"}).out);
    CHECK(run_cli({"props", "{0|}"}).out == run_cli({"props", "one"}).out);
}

TEST_CASE("json envelopes start with the schema version") {
    const CliRun r = run_cli({"outcome", "rho", "--json"});
    REQUIRE(r.code == 0);
    const auto j = parse_json(r.out);
    CHECK(j["schema_version"] == 1);
    CHECK(j["command"] == "outcome");
    CHECK(j["expression"] == "rho");
    CHECK(j["play"] == "misere");
    CHECK(j["outcome"] == "L");
    const auto version_at = r.out.find("\"schema_version\"");
    const auto command_at = r.out.find("\"command\"");
    const auto outcome_at = r.out.find("\"outcome\"");
    CHECK(version_at < command_at);
    CHECK(command_at < outcome_at);
}

TEST_CASE("json output is byte-for-byte deterministic") {
    const CliRun a = run_cli({"monoid", "-g", "rho", "--json"});
    const CliRun b = run_cli({"monoid", "-g", "rho", "--json"});
    CHECK(a.out == b.out);
    const auto j = parse_json(a.out);
    CHECK(j["classes"].size() == 9);
}

TEST_CASE("monoid reports the nine class quotient of rho") {
    const CliRun r = run_cli({"monoid", "-g", "rho", "--json"});
    REQUIRE(r.code == 0);
    const auto j = parse_json(r.out);
    CHECK(j["status"] == "finite_verified_at_bound");
    CHECK(j["classes"].size() == 9);
    CHECK(j["classes"][0]["word"] == "1");
    CHECK(j["classes"][0]["outcome"] == "N");
    bool saw_square = false;
    for (const auto& rel : j["relations"]) {
        if (rel["lhs"] == "a^2" && rel["rhs"] == "1") saw_square = true;
    }
    CHECK(saw_square);
    CHECK(j["tetrapartition"]["N"].size() == 4);
    CHECK(j["tetrapartition"]["P"].size() == 2);
    CHECK(j["tetrapartition"]["L"].size() == 1);
    CHECK(j["tetrapartition"]["R"].size() == 2);
    CHECK(j["symbols"][0]["symbol"] == "a");
    CHECK(j["symbols"][0]["position"] == "star");

    const CliRun plain = run_cli({"monoid", "-g", "rho"});
    CHECK(plain.code == 0);
    CHECK(plain.out.find("classes: 9") != std::string::npos);
    CHECK(plain.out.find("a^2 = 1") != std::string::npos);
}

TEST_CASE("poset renders covers and the dot graph") {
    const CliRun text = run_cli({"poset", "-g", "rho"});
    REQUIRE(text.code == 0);
    CHECK(text.out.find("bottom: b^4") != std::string::npos);
    CHECK(text.out.find("top: none") != std::string::npos);

    const CliRun dot = run_cli({"poset", "-g", "rho", "--dot"});
    CHECK(dot.out.rfind("digraph poset {", 0) == 0);
    CHECK(dot.out.find("label=\"b^4\"") != std::string::npos);

    const CliRun not_finite = run_cli({"poset", "-g", "one", "-g", "conj(one)"});
    CHECK(not_finite.code == 2);
    CHECK(not_finite.err.find("error:") != std::string::npos);
}

TEST_CASE("star modes census image and isomorphism") {
    CHECK(run_cli({"star", "--day", "1"}).out ==
          "star-built positions born on day 1: 1\n");
    CHECK(run_cli({"star", "--day", "2"}).out ==
          "star-built positions born on day 2: 3\n");

    CHECK(run_cli({"star", "--sum", "8*sigma + 3*L(tau(4))"}).out == "N\n");
    CHECK(run_cli({"star", "--sum", "star + star(2)"}).code == 2);

    const CliRun pass = run_cli({"star", "-g", "sigma", "conj(sigma)"});
    CHECK(pass.code == 0);
    CHECK(pass.out == "star-isomorphic: yes\n");

    const CliRun fail = run_cli({"star", "-g", "rho"});
    CHECK(fail.code == 1);
    CHECK(fail.out.find("star-isomorphic: no") != std::string::npos);
    CHECK(fail.out.find("element: rho") != std::string::npos);
    CHECK(fail.out.find("element outcome: L") != std::string::npos);

    const CliRun both = run_cli({"star", "--day", "1", "-g", "rho"});
    CHECK(both.code == 2);
    CHECK(both.err.find("exactly one of") != std::string::npos);
}

TEST_CASE("heap prefix output matches the engine table") {
    SubtractionGameSpec spec;
    spec.left_set = {1};
    spec.right_set = {2};
    const CliRun r = run_cli({"heap", "--left", "1", "--right", "2", "--prefix", "7,6"});
    REQUIRE(r.code == 0);
    CHECK(r.out == format_outcome_table(outcome_table(spec, {7, 6})));
    CHECK(r.out.find("x2=0 | N R R R R R R R") != std::string::npos);

    const CliRun j = run_cli({"heap", "--left", "1", "--right", "2", "--prefix", "7,6",
                              "--json"});
    const auto doc = parse_json(j.out);
    CHECK(doc["rows"][0] == "NRRRRRRR");
    CHECK(doc["rows"][6] == "NRPNRPNR");
    CHECK(doc["row_labels"][3] == "x2=3");
    CHECK(doc["limits"] == nlohmann::json({7, 6}));
}

TEST_CASE("heap vector periodicity and monoid modes") {
    CHECK(run_cli({"heap", "--left", "1,2", "--right", "1", "--vector", "0,2"}).out == "L\n");
    CHECK(run_cli({"heap", "--left", "1,2", "--right", "1", "--vector", "0"}).out == "N\n");

    const CliRun p = run_cli({"heap", "--left", "1,2", "--right", "1", "--periodicity"});
    CHECK(p.out.find("coordinate 1: r=0 d=2") != std::string::npos);
    CHECK(p.out.find("coordinate 2: r=2 d=1") != std::string::npos);

    const CliRun diag = run_cli({"heap", "--left", "1", "--right", "2", "--max-heap", "2",
                                 "--periodicity"});
    CHECK(diag.out.find("coordinate 2: unresolved within bounds; diagonal partner 1") !=
          std::string::npos);

    const CliRun m = run_cli({"heap", "--left", "1,2", "--right", "1", "--monoid"});
    REQUIRE(m.code == 0);
    CHECK(m.out.find("h3 -> b^2") != std::string::npos);
    CHECK(m.out.find("h6 -> b^2") != std::string::npos);
    CHECK(m.out.find("ab^2 = b^2") != std::string::npos);
    CHECK(m.out.find("status: finite (verified at bound)") != std::string::npos);

    const CliRun modeless = run_cli({"heap", "--left", "1", "--right", "2"});
    CHECK(modeless.code == 2);
    CHECK(modeless.err.find("exactly one of") != std::string::npos);
}

TEST_CASE("strategy plays the literal board and reports the result") {
    const CliRun win = run_cli({"strategy", "rho + conj(rho)"});
    CHECK(win.code == 0);
    CHECK(win.out.find("result: win") != std::string::npos);
    CHECK(win.out.find("no move available and wins") != std::string::npos);

    const CliRun right = run_cli({"strategy", "tau + tau", "--right"});
    CHECK(right.code == 0);
    CHECK(right.out.find("Right: tau -> star") != std::string::npos);

    CHECK(run_cli({"strategy", "rho"}).code == 2);
    CHECK(run_cli({"strategy", "one + conj(one)"}).code == 2);
}

TEST_CASE("checks exit one exactly when refuted") {
    CHECK(run_cli({"altsum-check", "0"}).code == 0);
    const CliRun star_check = run_cli({"altsum-check", "star"});
    CHECK(star_check.code == 1);
    CHECK(star_check.out.find("or: P  first-player Left loses") != std::string::npos);
    CHECK(star_check.out.find("result: refuted") != std::string::npos);

    const CliRun adj = run_cli({"adjoint-check", "rho"});
    CHECK(adj.code == 0);
    CHECK(adj.out.find("holds: yes") != std::string::npos);
    const auto adj_json = parse_json(run_cli({"adjoint-check", "eta", "--json"}).out);
    CHECK(adj_json["sum_outcome"] == "P");
    CHECK(adj_json["holds"] == true);
}

TEST_CASE("usage errors print the grammar and exit two") {
    const CliRun none = run_cli({});
    CHECK(none.code == 2);
    CHECK(none.err.find("subcommands:") != std::string::npos);

    const CliRun missing = run_cli({"outcome"});
    CHECK(missing.code == 2);
    CHECK(missing.err.find("expressions:") != std::string::npos);

    const CliRun bad_expr = run_cli({"outcome", "rho +"});
    CHECK(bad_expr.code == 2);
    CHECK(bad_expr.err.find("parse error") != std::string::npos);
    CHECK(bad_expr.err.find("expressions:") != std::string::npos);

    const CliRun bad_genus = run_cli({"genus", "one"});
    CHECK(bad_genus.code == 2);
    CHECK(bad_genus.err.find("error:") != std::string::npos);

    const CliRun help = run_cli({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("SUBCOMMAND") != std::string::npos);
}

TEST_CASE("dot output walks the game tree") {
    const CliRun r = run_cli({"dot", "tau"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("digraph position {", 0) == 0);
    CHECK(testsupport::count_substr(r.out, " [label=\"{") == 3);
    CHECK(r.out.find("n2 [label=\"{|}\"]") != std::string::npos);
}

TEST_CASE("canonical forms round trip through the parser") {
    const auto pool = testsupport::random_pool(0xC11u, 40, 3, 4);
    for (const PositionId p : pool) {
        const std::string text = format_position(p);
        CHECK(parse_position(text) == p);
        const CliRun r = run_cli({"props", text, "--json"});
        REQUIRE(r.code == 0);
        CHECK(parse_json(r.out)["canonical"] == text);
    }
}

}
