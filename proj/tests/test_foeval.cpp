#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cqa/error.hpp"
#include "cqa/foeval.hpp"
#include "cqa/parser.hpp"
#include "cqa/printer.hpp"
#include "cqa/rewrite.hpp"
#include "support.hpp"

using namespace cqa;

namespace {

Term v(const std::string& n) { return Term::variable(n); }
Term c(const std::string& n) { return Term::constant(n); }

}  // namespace

TEST_CASE("instantiations of the two-atom body") {
    auto sigma = parse_rules("P(X,Y), T(X) -> exists Z . R(Z,Y) .");
    auto db = parse_database("P(a,b). P(a,c). T(a). R(d,b). R(e,b).");
    auto subs = instantiations(sigma[0].body, db);
    REQUIRE(subs.size() == 2);
    CHECK(subs[0].map.at("X") == c("a"));
    CHECK(subs[0].map.at("Y") == c("b"));
    CHECK(subs[1].map.at("Y") == c("c"));
}

TEST_CASE("instantiations edge cases") {
    Conjunction self;
    self.atoms.push_back(Atom{"P", {v("X"), v("X")}});
    CHECK(instantiations(self, parse_database("P(a,b).")).empty());

    Conjunction ineq;
    ineq.ineqs.emplace_back(v("X"), v("Y"));
    ineq.atoms.push_back(Atom{"P", {v("X"), v("Y")}});
    CHECK(instantiations(ineq, parse_database("P(a,a).")).empty());
    CHECK(instantiations(ineq, parse_database("P(a,b).")).size() == 1);
}

TEST_CASE("images") {
    auto db = parse_database("P(a). T(a,b). T(c,b). R(c,b,a).");
    auto q1 = parse_query("exists X,Y . T(X,Y)");
    auto imgs = images(q1, db);
    REQUIRE(imgs.size() == 2);
    CHECK(imgs[0] == std::vector<Fact>{Atom{"T", {c("a"), c("b")}}});
    CHECK(imgs[1] == std::vector<Fact>{Atom{"T", {c("c"), c("b")}}});

    CHECK(images(parse_query("exists X . P(X), X != a"), db).empty());

    // Two disjuncts sharing an image list it once.
    auto u = parse_query("exists X,Y . T(X,Y) | exists Y1 . T(a,Y1)");
    CHECK(images(u, db).size() == 2);
}

TEST_CASE("eval_bucq over the unique-repair example") {
    auto intrep = parse_database("T(c,b). R(c,b,a).");
    CHECK(eval_bucq(parse_query("exists X,Y . T(X,Y)"), intrep));
    CHECK(!eval_bucq(parse_query("exists X,Y,Z . P(X), R(Y,Z,X)"), intrep));
    Database empty;
    CHECK(!eval_bucq(parse_query("exists X,Y . T(X,Y)"), empty));
}

TEST_CASE("is_consistent on the repair example") {
    auto sigma = parse_rules(
        "P(X,Y), P(X,Z), Y != Z -> FALSE .\n"
        "T(X) -> exists Y . P(Y,X) .");
    auto db = parse_database("T(a). T(b). P(c,a). P(c,b). P(d,c).");
    CHECK(!is_consistent(db, sigma));
    CHECK(is_consistent(parse_database("P(c,a). P(d,c). T(a)."), sigma));
    CHECK(is_consistent(parse_database("P(c,b). P(d,c). T(b)."), sigma));
    Database empty;
    CHECK(is_consistent(empty, sigma));
}

TEST_CASE("eval_fo basics") {
    auto db = parse_database("P(a). P(b).");
    CHECK(eval_fo(parse_fo("forall X . (P(X) -> P(X))"), db));
    CHECK(eval_fo(parse_fo("exists X,Y . (P(X) & P(Y) & X != Y)"), db));
    CHECK(!eval_fo(parse_fo("exists X . (!(P(X)))"), db));
    CHECK(eval_fo(parse_fo("exists X . (X = q)"), db));  // constants join the domain
    CHECK_THROWS_AS(eval_fo(parse_fo("P(X)"), db), InputError);
}

TEST_CASE("eval_fo over empty structures") {
    Database empty;
    CHECK(!eval_fo(parse_fo("exists X . (TRUE)"), empty));  // empty active domain
    CHECK(eval_fo(parse_fo("forall X . (FALSE)"), empty));
    CHECK(eval_fo(parse_fo("TRUE"), empty));
}

TEST_CASE("psi_rc evaluation on the acyclic example") {
    auto sigma = parse_rules("P(X,Y), T(X) -> exists Z . R(Z,Y) .");
    auto db = parse_database("P(a,b). P(a,c). T(a). R(d,b). R(e,b).");
    FOPtr rc = psi_rc(sigma);

    Database no_t = db;
    no_t.facts.erase(Atom{"T", {c("a")}});
    CHECK(eval_fo(rc, EvalStructure{db, no_t}));

    Database no_pac = db;
    no_pac.facts.erase(Atom{"P", {c("a"), c("c")}});
    CHECK(eval_fo(rc, EvalStructure{db, no_pac}));

    CHECK(!eval_fo(rc, EvalStructure{db, db}));  // the database is inconsistent
    Database empty;
    CHECK(!eval_fo(rc, EvalStructure{db, empty}));  // not maximal
}

TEST_CASE("step cap raises CapExceeded") {
    auto db = parse_database("P(a). P(b). P(c). P(d).");
    FOPtr f = parse_fo(
        "forall A,B,C,D . (exists E,F,G,H . (P(A) & P(B) & P(C) & P(D) & P(E) & "
        "P(F) & P(G) & P(H)))");
    CHECK_THROWS_AS(eval_fo(f, EvalStructure{db, db}, 50), CapExceeded);
}

TEST_CASE("active-domain evaluation agrees with image-based evaluation") {
    support::Rng rng(1234);
    int checked = 0;
    for (int i = 0; i < 1000; ++i) {
        auto sig = support::small_signature(rng);
        auto db = support::random_db(rng, sig, 6);
        auto q = support::random_bucq(rng, sig);
        bool by_images = eval_bucq(q, db);
        bool by_fo = eval_fo(ucq_to_fo(q), db);
        CHECK(by_images == by_fo);
        ++checked;
    }
    CHECK(checked == 1000);
}

TEST_CASE("consistency agrees with direct FO evaluation of the dependencies") {
    support::Rng rng(555);
    for (int i = 0; i < 300; ++i) {
        auto sig = support::small_signature(rng);
        auto sigma = support::random_sigma(rng, sig, support::kGeneral, 3);
        auto db = support::random_db(rng, sig, 6);
        std::vector<FOPtr> parts;
        for (const auto& d : sigma) parts.push_back(dependency_to_fo(d));
        CHECK(is_consistent(db, sigma) == eval_fo(fo_and(parts), db));
    }
}

TEST_CASE("sentence evaluation is isomorphism invariant") {
    support::Rng rng(808);
    for (int i = 0; i < 60; ++i) {
        auto sig = support::small_signature(rng);
        auto sigma = support::random_sigma(rng, sig, support::kAcyclic, 2);
        // Rename constants in the database only; formulas with constants are
        // skipped since renaming must cover them too.
        bool has_const = false;
        for (const auto& d : sigma) {
            for (const auto& a : d.body.atoms)
                for (const auto& t : a.args) has_const |= t.is_const();
            for (const auto& q : d.head.disjuncts)
                for (const auto& a : q.body.atoms)
                    for (const auto& t : a.args) has_const |= t.is_const();
        }
        if (has_const) continue;
        auto db = support::random_db(rng, sig, 5);
        auto sub = support::random_db(rng, sig, 3).intersect(db);

        auto rename = [](const Database& in) {
            Database out;
            for (const auto& f : in.facts) {
                Fact g = f;
                for (auto& t : g.args) t.name = "z_" + t.name;
                out.facts.insert(g);
            }
            return out;
        };
        FOPtr rc = psi_rc(sigma);
        CHECK(eval_fo(rc, EvalStructure{db, sub}) ==
              eval_fo(rc, EvalStructure{rename(db), rename(sub)}));
    }
}
