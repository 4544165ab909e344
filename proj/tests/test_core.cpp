#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cqa/ast.hpp"
#include "cqa/error.hpp"
#include "support.hpp"

using namespace cqa;

namespace {

Atom atom(const std::string& pred, const std::vector<Term>& args) {
    return Atom{pred, args};
}
Term v(const std::string& n) { return Term::variable(n); }
Term c(const std::string& n) { return Term::constant(n); }

}  // namespace

TEST_CASE("apply_substitution on atoms") {
    Substitution s;
    s.map["X"] = c("a");
    CHECK(apply_substitution(atom("P", {v("X"), v("Y")}), s) ==
          atom("P", {c("a"), v("Y")}));
    Substitution id;
    CHECK(apply_substitution(atom("P", {v("X"), v("Y")}), id) ==
          atom("P", {v("X"), v("Y")}));
}

TEST_CASE("apply_substitution keeps collapsed inequalities unsimplified") {
    Conjunction g;
    g.ineqs.emplace_back(v("X"), v("Y"));
    g.atoms.push_back(atom("T", {v("X")}));
    Substitution s;
    s.map["X"] = c("c");
    s.map["Y"] = c("c");
    Conjunction r = apply_substitution(g, s);
    REQUIRE(r.ineqs.size() == 1);
    CHECK(r.ineqs[0].first == c("c"));
    CHECK(r.ineqs[0].second == c("c"));
    CHECK(r.atoms[0] == atom("T", {c("c")}));
}

TEST_CASE("mgu forced bindings") {
    auto u = mgu(atom("R", {v("X"), c("b")}), atom("R", {c("a"), v("Y")}));
    REQUIRE(u);
    CHECK((*u)(v("X")) == c("a"));
    CHECK((*u)(v("Y")) == c("b"));
}

TEST_CASE("mgu clash") {
    CHECK(!mgu(atom("R", {v("X"), v("X")}), atom("R", {c("a"), c("b")})));
    CHECK(!mgu(atom("R", {v("X")}), atom("S", {v("X")})));
}

TEST_CASE("mgu merges chained variables and stays most general") {
    Atom a = atom("R", {v("X"), v("Y")});
    Atom b = atom("R", {v("Y"), v("Z")});
    auto u = mgu(a, b);
    REQUIRE(u);
    CHECK(apply_substitution(a, *u) == apply_substitution(b, *u));
    // All three variables collapse to a single one.
    std::set<std::string> names;
    for (const auto& var : {"X", "Y", "Z"}) {
        Term t = (*u)(v(var));
        REQUIRE(t.is_var());
        names.insert(t.name);
    }
    CHECK(names.size() == 1);
    // Factoring: every ground unifier over a two-constant domain extends the
    // mgu, checked by enumeration.
    std::vector<std::string> dom{"a", "b"};
    for (const auto& gx : dom)
        for (const auto& gy : dom)
            for (const auto& gz : dom) {
                Substitution g;
                g.map["X"] = c(gx);
                g.map["Y"] = c(gy);
                g.map["Z"] = c(gz);
                if (!(apply_substitution(a, g) == apply_substitution(b, g))) continue;
                Substitution s;
                bool ok = true;
                for (const auto& var : {"X", "Y", "Z"}) {
                    Term img = (*u)(v(var));
                    Term want = g(v(var));
                    if (img.is_const()) {
                        ok = ok && img == want;
                    } else if (s.map.count(img.name)) {
                        ok = ok && s.map[img.name] == want;
                    } else {
                        s.map[img.name] = want;
                    }
                }
                CHECK(ok);
            }
}

TEST_CASE("mgu soundness and generality on random atoms") {
    support::Rng rng(20240817);
    std::vector<std::string> vars{"X", "Y", "Z"};
    std::vector<std::string> consts{"a", "b"};
    auto rand_atom = [&](size_t arity) {
        Atom a{"P", {}};
        for (size_t i = 0; i < arity; ++i)
            a.args.push_back(rng.chance(40) ? c(consts[rng.below(2)])
                                            : v(vars[rng.below(3)]));
        return a;
    };
    for (int iter = 0; iter < 500; ++iter) {
        size_t arity = 1 + rng.below(3);
        Atom a = rand_atom(arity);
        Atom b = rand_atom(arity);
        auto u = mgu(a, b);
        // A ground unifier over {a,b} exists iff the atoms unify.
        bool any_ground = false;
        size_t total = 1;
        for (size_t i = 0; i < vars.size(); ++i) total *= consts.size();
        for (size_t bits = 0; bits < total; ++bits) {
            Substitution g;
            size_t x = bits;
            for (const auto& var : vars) {
                g.map[var] = c(consts[x % consts.size()]);
                x /= consts.size();
            }
            if (apply_substitution(a, g) == apply_substitution(b, g)) {
                any_ground = true;
                // Generality: g factors through u.
                if (u) {
                    Substitution s;
                    for (const auto& var : vars) {
                        Term img = (*u)(v(var));
                        Term want = g(v(var));
                        if (img.is_const()) {
                            CHECK(img == want);
                        } else if (s.map.count(img.name)) {
                            CHECK(s.map[img.name] == want);
                        } else {
                            s.map[img.name] = want;
                        }
                    }
                }
            }
        }
        if (u) {
            CHECK(apply_substitution(a, *u) == apply_substitution(b, *u));
            CHECK(any_ground);
        } else {
            CHECK(!any_ground);
        }
    }
}

TEST_CASE("substitution composition law") {
    support::Rng rng(7);
    std::vector<std::string> vars{"X", "Y", "Z"};
    std::vector<std::string> consts{"a", "b"};
    for (int iter = 0; iter < 300; ++iter) {
        auto rand_sub = [&]() {
            Substitution s;
            for (const auto& var : vars)
                if (rng.chance(50))
                    s.map[var] = rng.chance(50) ? c(consts[rng.below(2)])
                                                : v(vars[rng.below(3)]);
            return s;
        };
        Substitution s1 = rand_sub(), s2 = rand_sub();
        Atom a{"P", {v("X"), v("Y"), v("Z"), c("a")}};
        CHECK(apply_substitution(apply_substitution(a, s1), s2) ==
              apply_substitution(a, compose(s2, s1)));
    }
}

TEST_CASE("database canonical order and set semantics") {
    Database db;
    db.insert(atom("T", {c("a")}));
    db.insert(atom("P", {c("a"), c("b")}));
    db.insert(atom("P", {c("a"), c("b")}));
    CHECK(db.size() == 2);
    CHECK(db.facts.begin()->pred == "P");
    CHECK_THROWS_AS(db.insert(atom(kFalsePred, {})), InputError);
    CHECK_THROWS_AS(db.insert(atom("P", {v("X"), c("b")})), InputError);
}

TEST_CASE("dependency well-formedness carries the violated clause") {
    Dependency d;
    d.body.atoms.push_back(atom("P", {v("X")}));
    d.body.ineqs.emplace_back(v("X"), v("W"));  // W only in an inequality
    d.universal_vars = d.body.vars();
    d.head.disjuncts.push_back(CQ{{}, {}, Conjunction{{atom("T", {v("X")})}, {}}});
    auto bad = dependency_violation(d);
    REQUIRE(bad);
    CHECK(bad->find("unsafe body") != std::string::npos);

    Dependency d2;
    d2.body.atoms.push_back(atom("P", {v("X")}));
    d2.universal_vars = d2.body.vars();
    d2.head.disjuncts.push_back(CQ{{}, {}, Conjunction{{atom("T", {v("Z")})}, {}}});
    auto bad2 = dependency_violation(d2);
    REQUIRE(bad2);
    CHECK(bad2->find("Z") != std::string::npos);

    Dependency ok;
    ok.body.atoms.push_back(atom("P", {v("X")}));
    ok.universal_vars = ok.body.vars();
    ok.head.disjuncts.push_back(
        CQ{{}, {"Y"}, Conjunction{{atom("R", {v("X"), v("Y")})}, {}}});
    CHECK(!dependency_violation(ok));
}

TEST_CASE("head disjunct with only inequalities over universal variables") {
    // Admitted: grounding leaves a variable-free, hence safe, conjunct.
    Dependency d;
    d.body.atoms.push_back(atom("P", {v("X"), v("Y")}));
    d.universal_vars = d.body.vars();
    d.head.disjuncts.push_back(CQ{{}, {}, Conjunction{{}, {{v("X"), v("Y")}}}});
    CHECK(!dependency_violation(d));

    // Rejected: an existential variable living only in an inequality.
    Dependency bad = d;
    bad.head.disjuncts[0] = CQ{{}, {"W"}, Conjunction{{}, {{v("X"), v("W")}}}};
    CHECK(dependency_violation(bad));
}

TEST_CASE("rename_apart keeps structure") {
    Dependency d;
    d.body.atoms.push_back(atom("P", {v("X"), v("Y")}));
    d.body.ineqs.emplace_back(v("X"), v("Y"));
    d.universal_vars = d.body.vars();
    d.head.disjuncts.push_back(
        CQ{{}, {"Z"}, Conjunction{{atom("R", {v("X"), v("Z")})}, {}}});
    VarGen vg;
    vg.reserve_from(d);
    Dependency r = rename_apart(d, vg);
    CHECK(!dependency_violation(r));
    CHECK(r.body.atoms[0].pred == "P");
    CHECK(!(r.body.atoms[0].args[0] == v("X")));
    CHECK(r.head.disjuncts[0].exist_vars.size() == 1);
}
