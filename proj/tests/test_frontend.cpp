#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cqa/error.hpp"
#include "cqa/parser.hpp"
#include "cqa/printer.hpp"
#include "cqa/rewrite.hpp"
#include "support.hpp"

using namespace cqa;

TEST_CASE("parse_rules basic shapes") {
    auto rules = parse_rules("P(X,Y), T(X) -> exists Z . R(Z,Y) .");
    REQUIRE(rules.size() == 1);
    CHECK(rules[0].body.atoms.size() == 2);
    CHECK(rules[0].body.atoms[0].pred == "P");
    CHECK(rules[0].body.atoms[1].pred == "T");
    CHECK(rules[0].head.disjuncts.size() == 1);
    CHECK(rules[0].head.disjuncts[0].exist_vars == std::vector<std::string>{"Z"});

    auto denial = parse_rules("R(V,V) -> FALSE .");
    REQUIRE(denial.size() == 1);
    CHECK(denial[0].head.disjuncts[0].body.atoms[0].is_false_atom());

    auto disj = parse_rules("P(X) -> T(X) | exists Y . S(X,Y), X != Y .");
    REQUIRE(disj.size() == 1);
    CHECK(disj[0].head.disjuncts.size() == 2);
    CHECK(disj[0].head.disjuncts[1].body.ineqs.size() == 1);
}

TEST_CASE("parse_rules errors name the violated clause") {
    CHECK_THROWS_WITH_AS(parse_rules("P(X) -> R(X,Z) ."),
                         doctest::Contains("Z"), ParseError);
    CHECK_THROWS_AS(parse_rules("P(X), X != W -> T(X) ."), ParseError);
    CHECK_THROWS_AS(parse_rules("P(X) -> T(X)"), ParseError);  // missing period
    CHECK_THROWS_AS(parse_rules("P(X), FALSE -> T(X) ."), ParseError);
    // Arity clash across rules.
    CHECK_THROWS_AS(parse_rules("P(X) -> T(X) . P(X1,Y1) -> T(X1) ."), InputError);
}

TEST_CASE("parse_rules renames shared variables apart") {
    auto rules = parse_rules("P(X) -> T(X) . T(X) -> P(X) .");
    REQUIRE(rules.size() == 2);
    CHECK(rules[0].body.vars() != rules[1].body.vars());
}

TEST_CASE("parse_database merges duplicates and rejects FALSE") {
    CHECK(parse_database("P(a,b). T(a).").size() == 2);
    CHECK(parse_database("P(a,b). P(a,b).").size() == 1);
    CHECK_THROWS_AS(parse_database("FALSE."), ParseError);
    CHECK_THROWS_AS(parse_database("P(X)."), ParseError);
    CHECK_THROWS_AS(parse_database("P(a). P(a,b)."), ParseError);
    CHECK(parse_database("").empty());
}

TEST_CASE("parse_query checks Boolean and safety") {
    auto q1 = parse_query("exists X,Y . T(X,Y)");
    CHECK(q1.disjuncts.size() == 1);
    CHECK(q1.boolean());
    CHECK(q1.safe());

    auto q2 = parse_query("exists X,Y,Z . P(X), R(Y,Z,X)");
    CHECK(q2.disjuncts[0].body.atoms.size() == 2);

    CHECK_THROWS_WITH_AS(parse_query("exists X . X != a"),
                         doctest::Contains("unsafe"), ParseError);
    CHECK_THROWS_WITH_AS(parse_query("T(X,Y)"), doctest::Contains("free"),
                         ParseError);
    // Union of two disjuncts, nullary atoms.
    auto q3 = parse_query("exists X . P(X) | U");
    CHECK(q3.disjuncts.size() == 2);
    CHECK(q3.disjuncts[1].body.atoms[0].args.empty());
}

TEST_CASE("print_fo examples") {
    CHECK(print_fo(fo_aux(Atom{"P", {Term::variable("X"), Term::variable("Y")}})) ==
          "@P(X,Y)");
    CHECK(print_fo(fo_true()) == "TRUE");

    auto sigma = parse_rules("R(V,V) -> FALSE .");
    CHECK(print_fo(psi_inc(sigma)) == "exists V . (@R(V,V) & !(FALSE))");
}

TEST_CASE("fo parse/print round trip on compiled and random sentences") {
    auto sigma = parse_rules(
        "P(X,Y), T(X) -> exists Z . R(Z,Y) .\n"
        "R(V,W) -> T(V) | exists U1 . P(V,U1), U1 != W .");
    for (const FOPtr& f : {psi_inc(sigma), psi_rc(sigma)}) {
        std::string text = print_fo(f);
        FOPtr back = parse_fo(text);
        CHECK(fo_equal(f, back));
        CHECK(print_fo(back) == text);
    }
    // Hand-rolled structures exercising precedence and binders.
    std::vector<std::string> samples = {
        "exists X . (P(X) & !(Q(X)))",
        "(A | B) & C -> forall X,Y . (R(X,Y) | X = Y)",
        "!(exists X . (P(X))) | '0' != 'x y'",
        "@P(a,X) -> P(X,a) -> FALSE",
    };
    for (const auto& s : samples) {
        FOPtr f = parse_fo(s);
        CHECK(fo_equal(f, parse_fo(print_fo(f))));
    }
}

TEST_CASE("rules and database round trip") {
    support::Rng rng(99);
    for (int i = 0; i < 60; ++i) {
        auto sig = support::small_signature(rng);
        auto sigma = support::random_sigma(rng, sig, support::kGeneral, 3);
        auto back = parse_rules(print_rules(sigma));
        REQUIRE(back.size() == sigma.size());
        for (size_t j = 0; j < sigma.size(); ++j) CHECK(back[j] == sigma[j]);

        auto db = support::random_db(rng, sig, 8);
        CHECK(parse_database(print_database(db)) == db);

        auto q = support::random_bucq(rng, sig);
        CHECK(parse_query(print_query(q)) == q);
    }
}

TEST_CASE("quoted constants") {
    auto db = parse_database("P('Hello world','0').");
    CHECK(db.size() == 1);
    CHECK(parse_database(print_database(db)) == db);
}
