#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "cqa/chase.hpp"
#include "cqa/error.hpp"
#include "cqa/foeval.hpp"
#include "cqa/parser.hpp"
#include "support.hpp"

using namespace cqa;

namespace {
Term c(const std::string& n) { return Term::constant(n); }
}

TEST_CASE("normalize_full splits conjunctive heads") {
    auto sigma = parse_rules("P(X) -> Q(X), R(X) .");
    auto rules = normalize_full(sigma);
    REQUIRE(rules.size() == 2);
    CHECK(rules[0].head.disjuncts[0].body.atoms[0].pred == "Q");
    CHECK(rules[1].head.disjuncts[0].body.atoms[0].pred == "R");
}

TEST_CASE("normalize_full turns head inequalities into denials") {
    auto sigma = parse_rules("P(X,Y) -> X != Y .");
    auto rules = normalize_full(sigma);
    REQUIRE(rules.size() == 1);
    const auto& body = rules[0].body.atoms;
    REQUIRE(body.size() == 1);
    CHECK(body[0].pred == "P");
    CHECK(body[0].args[0] == body[0].args[1]);  // unified positions
    CHECK(rules[0].head.disjuncts[0].body.atoms[0].is_false_atom());
}

TEST_CASE("normalize_full leaves single-head rules alone and rejects non-full") {
    auto sigma = parse_rules("P(X) -> Q(X) .");
    auto rules = normalize_full(sigma);
    REQUIRE(rules.size() == 1);
    CHECK(rules[0] == sigma[0]);
    CHECK_THROWS_AS(normalize_full(parse_rules("P(X) -> exists Y . Q(Y) .")),
                    InputError);
}

TEST_CASE("chase on the weakly-consistent example") {
    auto sigma = parse_rules(
        "P(X,Y), T(X,Z) -> R(Y,Z) .\n"
        "R(V,V) -> FALSE .");
    auto db = parse_database("P(a,b). T(a,c). R(b,c). P(d,e). T(d,e). R(e,e).");

    auto good = chase(parse_database("P(a,b). T(a,c)."), sigma);
    CHECK(!good.derived_false);
    CHECK(good.facts.count(Atom{"R", {c("b"), c("c")}}));
    CHECK(good.contained_in(db));

    auto bad = chase(parse_database("P(d,e). T(d,e)."), sigma);
    CHECK(bad.derived_false);
    CHECK(!bad.contained_in(db));
    CHECK(bad.facts.count(Atom{"R", {c("e"), c("e")}}));

    CHECK(chase(Database{}, sigma).facts.empty());
}

TEST_CASE("chase laws on random full instances") {
    support::Rng rng(2025);
    for (int i = 0; i < 300; ++i) {
        auto sig = support::small_signature(rng);
        auto sigma = support::random_sigma(rng, sig, support::kFull, 3);
        auto db = support::random_db(rng, sig, 6);

        auto r = chase(db, sigma);
        // Extensive.
        CHECK(std::includes(r.facts.begin(), r.facts.end(), db.facts.begin(),
                            db.facts.end()));
        // Idempotent.
        auto r2 = chase(r.facts, sigma);
        CHECK(r2.facts == r.facts);
        CHECK(r2.derived_false == r.derived_false);
        // Order independent.
        std::vector<Dependency> shuffled = sigma;
        for (size_t j = shuffled.size(); j > 1; --j)
            std::swap(shuffled[j - 1], shuffled[rng.below(j)]);
        auto r3 = chase(db, shuffled);
        CHECK(r3.facts == r.facts);
        CHECK(r3.derived_false == r.derived_false);
        // Fixpoint characterization of consistency.
        bool fixpoint = !r.derived_false && r.facts == db.facts;
        CHECK(fixpoint == is_consistent(db, sigma));
    }
}

TEST_CASE("derivation log replays the chase") {
    auto sigma = parse_rules("P(X) -> Q(X) . Q(Y) -> R(Y,Y) .");
    auto r = chase(parse_database("P(a)."), sigma);
    CHECK(r.facts.size() == 3);
    REQUIRE(r.log.size() == 2);
    CHECK(r.log[0].produced == Atom{"Q", {c("a")}});
    CHECK(r.log[1].produced == Atom{"R", {c("a"), c("a")}});
}
