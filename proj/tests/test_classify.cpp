#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cqa/classify.hpp"
#include "cqa/parser.hpp"
#include "support.hpp"

using namespace cqa;

TEST_CASE("dependency graph edges") {
    auto two_cycle = parse_rules("P(X) -> Q(X) . Q(Y) -> P(Y) .");
    auto g = build_graph(two_cycle);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 0));
    CHECK(!topological_order(g));

    auto single = parse_rules("P(X,Y), T(X) -> exists Z . R(Z,Y) .");
    auto g2 = build_graph(single);
    CHECK(g2.edges[0].empty());
    CHECK(topological_order(g2));

    DependencyGraph empty;
    CHECK(topological_order(empty)->empty());
}

TEST_CASE("topological order respects edges") {
    auto chain = parse_rules("P(X) -> Q(X) . Q(Y) -> R(Y,Y) . R(Z,W) -> S(Z) .");
    auto g = build_graph(chain);
    auto order = topological_order(g);
    REQUIRE(order);
    std::vector<size_t> pos(order->size());
    for (size_t i = 0; i < order->size(); ++i) pos[(*order)[i]] = i;
    for (size_t from = 0; from < g.n; ++from)
        for (size_t to : g.edges[from]) CHECK(pos[from] < pos[to]);
}

TEST_CASE("linear full guarded flags on the worked examples") {
    auto qe = parse_rules(
        "T(X,Y) -> exists Z . R(X,Y,Z) .\n"
        "P(X) -> exists Y . T(X,Y), X != Y .");
    CHECK(is_linear(qe));
    CHECK(!is_full(qe));
    CHECK(is_guarded(qe));
    CHECK(topological_order(build_graph(qe)));

    auto rc = parse_rules("P(X,Y), T(X) -> exists Z . R(Z,Y) .");
    CHECK(!is_linear(rc));
    CHECK(!is_full(rc));

    auto wc = parse_rules(
        "P(X,Y), T(X,Z) -> R(Y,Z) .\n"
        "R(V,V) -> FALSE .");
    CHECK(is_full(wc));
    CHECK(is_guarded(wc));
    CHECK(topological_order(build_graph(wc)));

    // A head inequality over body variables keeps a dependency full.
    auto ineq_head = parse_rules("P(X,Y) -> X != Y .");
    CHECK(is_full(ineq_head));
}

TEST_CASE("marked variables and stickiness") {
    auto s1 = parse_rules("R(X,Y) -> T(X) .");
    auto m1 = marked_variables(s1);
    CHECK(m1[0] == std::set<std::string>{"Y"});
    CHECK(is_sticky(s1));

    // Propagation: Y feeds a marked position through P.
    auto s2 = parse_rules("R(X,Y) -> P(Y) . P(W) -> T(c) .");
    auto m2 = marked_variables(s2);
    CHECK(m2[0].count("X"));
    CHECK(m2[0].count("Y"));  // via the second rule's marked W
    CHECK(m2[1].count("W"));
    CHECK(is_sticky(s2));

    auto s3 = parse_rules("R(X,X) -> T(X) .");
    CHECK(marked_variables(s3)[0].empty());
    CHECK(is_sticky(s3));

    auto s4 = parse_rules("S(X,Y), S(Y,Z) -> T(Y) .");
    auto m4 = marked_variables(s4);
    CHECK(m4[0].count("X"));
    CHECK(m4[0].count("Z"));
    CHECK(!m4[0].count("Y"));
    CHECK(is_sticky(s4));

    // A marked variable with two body occurrences breaks stickiness.
    auto s5 = parse_rules("S(X,Y), S(Y,Z) -> T(W,W) | T(X,X) .");
    CHECK(!is_sticky(parse_rules("S(X,Y), S(Y,Z) -> P(X) .")));
    (void)s5;
}

TEST_CASE("marking fixpoint terminates within the variable budget") {
    support::Rng rng(31337);
    for (int i = 0; i < 100; ++i) {
        auto sig = support::small_signature(rng);
        auto sigma = support::random_sigma(rng, sig, support::kGeneral, 4);
        auto marked = marked_variables(sigma);
        CHECK(marked.size() == sigma.size());
        // Monotonicity: marks only reference body variables.
        for (size_t j = 0; j < sigma.size(); ++j) {
            auto body_vars = sigma[j].body.vars();
            for (const auto& v : marked[j])
                CHECK(std::find(body_vars.begin(), body_vars.end(), v) !=
                      body_vars.end());
        }
    }
}

TEST_CASE("linear implies guarded on random sets") {
    support::Rng rng(4242);
    for (int i = 0; i < 150; ++i) {
        auto sig = support::small_signature(rng);
        auto sigma = support::random_sigma(rng, sig, support::kGeneral, 4);
        ClassProfile p = classify(sigma);
        if (p.linear) CHECK(p.guarded);
        if (p.acyclic) {
            REQUIRE(p.topological_order);
            auto g = build_graph(sigma);
            std::vector<size_t> pos(g.n);
            for (size_t j = 0; j < g.n; ++j) pos[(*p.topological_order)[j]] = j;
            for (size_t from = 0; from < g.n; ++from)
                for (size_t to : g.edges[from]) CHECK(pos[from] < pos[to]);
        }
    }
}

TEST_CASE("engine recommendations") {
    auto empty = classify({});
    CHECK(empty.acyclic);
    CHECK(empty.linear);
    CHECK(empty.full);
    CHECK(empty.guarded);
    CHECK(empty.sticky);

    auto qe = classify(parse_rules(
        "T(X,Y) -> exists Z . R(X,Y,Z) .\n"
        "P(X) -> exists Y . T(X,Y), X != Y ."));
    CHECK(qe.engines.at(Problem::IarEntailment) == "rewrite");
    CHECK(qe.engines.at(Problem::ArEntailment) == "rewrite");
    CHECK(qe.engines.at(Problem::RepairChecking) == "acyclic-fo");
    CHECK(qe.engines.at(Problem::WeakConsistency) == "acyclic-linear-fo");

    auto ex1 = classify(parse_rules(
        "P(X,Y), P(X,Z), Y != Z -> FALSE .\n"
        "T(X) -> exists Y . P(Y,X) ."));
    CHECK(!ex1.linear);
    CHECK(ex1.engines.at(Problem::ArEntailment) == "search");
}
