#include "cqa/classify.hpp"

#include <algorithm>

namespace cqa {

namespace {

std::set<std::string> head_predicates(const Dependency& d) {
    std::set<std::string> out;
    for (const auto& q : d.head.disjuncts)
        for (const auto& a : q.body.atoms)
            if (!a.is_false_atom()) out.insert(a.pred);
    return out;
}

std::set<std::string> body_predicates(const Dependency& d) {
    std::set<std::string> out;
    for (const auto& a : d.body.atoms) out.insert(a.pred);
    return out;
}

}  // namespace

DependencyGraph build_graph(const std::vector<Dependency>& sigma) {
    DependencyGraph g;
    g.n = sigma.size();
    g.edges.resize(g.n);
    std::vector<std::set<std::string>> heads, bodies;
    for (const auto& d : sigma) {
        heads.push_back(head_predicates(d));
        bodies.push_back(body_predicates(d));
    }
    for (size_t i = 0; i < g.n; ++i)
        for (size_t j = 0; j < g.n; ++j)
            for (const auto& p : heads[i])
                if (bodies[j].count(p)) {
                    g.edges[i].insert(j);
                    break;
                }
    return g;
}

std::optional<std::vector<size_t>> topological_order(const DependencyGraph& g) {
    std::vector<size_t> indeg(g.n, 0);
    for (size_t i = 0; i < g.n; ++i)
        for (size_t j : g.edges[i]) ++indeg[j];
    std::vector<size_t> order;
    std::set<size_t> ready;
    for (size_t i = 0; i < g.n; ++i)
        if (indeg[i] == 0) ready.insert(i);
    while (!ready.empty()) {
        size_t v = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(v);
        for (size_t j : g.edges[v])
            if (--indeg[j] == 0) ready.insert(j);
    }
    if (order.size() != g.n) return std::nullopt;
    return order;
}

bool is_linear(const std::vector<Dependency>& sigma) {
    for (const auto& d : sigma)
        if (d.body.atoms.size() != 1) return false;
    return true;
}

bool is_full(const std::vector<Dependency>& sigma) {
    for (const auto& d : sigma) {
        if (d.head.disjuncts.size() != 1) return false;
        const CQ& q = d.head.disjuncts[0];
        std::set<std::string> body_vars;
        for (const auto& v : d.body.vars()) body_vars.insert(v);
        for (const auto& v : q.vars())
            if (!body_vars.count(v)) return false;
    }
    return true;
}

bool is_guarded(const std::vector<Dependency>& sigma) {
    for (const auto& d : sigma) {
        auto body_vars = d.body.vars();
        std::set<std::string> all(body_vars.begin(), body_vars.end());
        bool found = false;
        for (const auto& a : d.body.atoms) {
            std::set<std::string> vs;
            for (const auto& t : a.args)
                if (t.is_var()) vs.insert(t.name);
            if (vs == all) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

std::vector<std::set<std::string>> marked_variables(const std::vector<Dependency>& sigma) {
    size_t n = sigma.size();
    std::vector<std::set<std::string>> marked(n);

    std::vector<std::set<std::string>> body_vars(n);
    for (size_t i = 0; i < n; ++i)
        for (const auto& v : sigma[i].body.vars()) body_vars[i].insert(v);

    // Clause (i): some head predicate atom omits the variable.
    for (size_t i = 0; i < n; ++i) {
        for (const auto& q : sigma[i].head.disjuncts)
            for (const auto& a : q.body.atoms) {
                std::set<std::string> in_atom;
                for (const auto& t : a.args)
                    if (t.is_var()) in_atom.insert(t.name);
                for (const auto& v : body_vars[i])
                    if (!in_atom.count(v)) marked[i].insert(v);
            }
    }

    // Clause (ii): propagate backwards through head-to-body predicate links.
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < n; ++i) {
            for (const auto& q : sigma[i].head.disjuncts)
                for (const auto& h : q.body.atoms) {
                    for (size_t pos = 0; pos < h.args.size(); ++pos) {
                        const Term& t = h.args[pos];
                        if (!t.is_var() || !body_vars[i].count(t.name)) continue;
                        if (marked[i].count(t.name)) continue;
                        for (size_t j = 0; j < n && !marked[i].count(t.name); ++j)
                            for (const auto& b : sigma[j].body.atoms) {
                                if (b.pred != h.pred || b.args.size() != h.args.size())
                                    continue;
                                const Term& u = b.args[pos];
                                if (u.is_var() && marked[j].count(u.name)) {
                                    marked[i].insert(t.name);
                                    changed = true;
                                    break;
                                }
                            }
                    }
                }
        }
    }
    return marked;
}

bool is_sticky(const std::vector<Dependency>& sigma) {
    auto marked = marked_variables(sigma);
    for (size_t i = 0; i < sigma.size(); ++i) {
        std::map<std::string, int> occ;
        for (const auto& a : sigma[i].body.atoms)
            for (const auto& t : a.args)
                if (t.is_var()) ++occ[t.name];
        for (const auto& v : marked[i])
            if (occ[v] > 1) return false;
    }
    return true;
}

ClassProfile classify(const std::vector<Dependency>& sigma) {
    ClassProfile p;
    auto g = build_graph(sigma);
    p.topological_order = topological_order(g);
    p.acyclic = p.topological_order.has_value();
    p.linear = is_linear(sigma);
    p.full = is_full(sigma);
    p.guarded = is_guarded(sigma);
    p.marked = marked_variables(sigma);
    p.sticky = is_sticky(sigma);

    bool full_rewritable = p.full && (p.acyclic || p.linear || p.sticky);

    // Weak consistency.
    if (p.acyclic && p.linear)
        p.engines[Problem::WeakConsistency] = "acyclic-linear-fo";
    else if (p.full)
        p.engines[Problem::WeakConsistency] = "chase";
    else if (p.linear)
        p.engines[Problem::WeakConsistency] = "linear";
    else
        p.engines[Problem::WeakConsistency] = "search";

    // Repair checking.
    if (p.acyclic)
        p.engines[Problem::RepairChecking] = "acyclic-fo";
    else if (full_rewritable)
        p.engines[Problem::RepairChecking] = "full-fo";
    else if (p.linear)
        p.engines[Problem::RepairChecking] = "linear";
    else if (p.full)
        p.engines[Problem::RepairChecking] = "full";
    else
        p.engines[Problem::RepairChecking] = "general";

    // IAR entailment.
    if (p.acyclic && p.linear)
        p.engines[Problem::IarEntailment] = "rewrite";
    else if (p.linear)
        p.engines[Problem::IarEntailment] = "unique-repair";
    else if (full_rewritable)
        p.engines[Problem::IarEntailment] = "rewrite";
    else if (p.acyclic)
        p.engines[Problem::IarEntailment] = "image-repair";
    else
        p.engines[Problem::IarEntailment] = "search";

    // AR entailment.
    if (p.acyclic && p.linear)
        p.engines[Problem::ArEntailment] = "rewrite";
    else if (p.linear)
        p.engines[Problem::ArEntailment] = "unique-repair";
    else
        p.engines[Problem::ArEntailment] = "search";

    return p;
}

std::string problem_name(Problem p) {
    switch (p) {
        case Problem::WeakConsistency: return "weak-consistency";
        case Problem::RepairChecking: return "repair-checking";
        case Problem::IarEntailment: return "iar-entailment";
        case Problem::ArEntailment: return "ar-entailment";
    }
    return "?";
}

}  // namespace cqa
