#include "cqa/ast.hpp"

#include <algorithm>

#include "cqa/error.hpp"

namespace cqa {

void Database::insert(const Fact& f) {
    if (!f.ground()) throw InputError("non-ground atom in database: " + f.pred);
    if (f.is_false_atom())
        throw InputError("the reserved predicate FALSE cannot appear in a database");
    facts.insert(f);
}

bool Database::subset_of(const Database& o) const {
    return std::includes(o.facts.begin(), o.facts.end(), facts.begin(), facts.end());
}

Database Database::set_minus(const Database& o) const {
    Database r;
    std::set_difference(facts.begin(), facts.end(), o.facts.begin(), o.facts.end(),
                        std::inserter(r.facts, r.facts.end()));
    return r;
}

Database Database::set_union(const Database& o) const {
    Database r = *this;
    r.facts.insert(o.facts.begin(), o.facts.end());
    return r;
}

Database Database::intersect(const Database& o) const {
    Database r;
    std::set_intersection(facts.begin(), facts.end(), o.facts.begin(), o.facts.end(),
                          std::inserter(r.facts, r.facts.end()));
    return r;
}

std::set<std::string> Database::constants() const {
    std::set<std::string> cs;
    for (const auto& f : facts)
        for (const auto& t : f.args) cs.insert(t.name);
    return cs;
}

std::vector<std::string> Conjunction::vars() const {
    std::vector<std::string> out;
    auto add = [&](const Term& t) {
        if (t.is_var() && std::find(out.begin(), out.end(), t.name) == out.end())
            out.push_back(t.name);
    };
    for (const auto& a : atoms)
        for (const auto& t : a.args) add(t);
    for (const auto& [l, r] : ineqs) {
        add(l);
        add(r);
    }
    return out;
}

bool CQ::safe() const {
    for (const auto& v : vars()) {
        bool in_pa = false;
        for (const auto& a : body.atoms)
            for (const auto& t : a.args)
                if (t.is_var() && t.name == v) in_pa = true;
        if (!in_pa) return false;
    }
    return true;
}

bool UCQ::boolean() const {
    for (const auto& q : disjuncts)
        if (!q.boolean()) return false;
    return true;
}

bool UCQ::safe() const {
    for (const auto& q : disjuncts)
        if (!q.safe()) return false;
    return true;
}

Term Substitution::operator()(const Term& t) const {
    if (t.is_var()) {
        auto it = map.find(t.name);
        if (it != map.end()) return it->second;
    }
    return t;
}

Atom apply_substitution(const Atom& a, const Substitution& s) {
    Atom r = a;
    for (auto& t : r.args) t = s(t);
    return r;
}

Conjunction apply_substitution(const Conjunction& c, const Substitution& s) {
    Conjunction r;
    r.atoms.reserve(c.atoms.size());
    for (const auto& a : c.atoms) r.atoms.push_back(apply_substitution(a, s));
    for (const auto& [l, rr] : c.ineqs) r.ineqs.emplace_back(s(l), s(rr));
    return r;
}

CQ apply_substitution(const CQ& q, const Substitution& s) {
    CQ r = q;
    r.body = apply_substitution(q.body, s);
    auto rename_list = [&](std::vector<std::string>& vs) {
        for (auto& v : vs) {
            Term t = s(Term::variable(v));
            if (t.is_var()) v = t.name;
        }
    };
    rename_list(r.free_vars);
    rename_list(r.exist_vars);
    return r;
}

UCQ apply_substitution(const UCQ& q, const Substitution& s) {
    UCQ r;
    r.disjuncts.reserve(q.disjuncts.size());
    for (const auto& d : q.disjuncts) r.disjuncts.push_back(apply_substitution(d, s));
    return r;
}

Substitution compose(const Substitution& s2, const Substitution& s1) {
    Substitution r;
    for (const auto& [v, t] : s1.map) r.map[v] = s2(t);
    for (const auto& [v, t] : s2.map)
        if (!r.map.count(v)) r.map[v] = t;
    return r;
}

std::optional<Substitution> mgu(const Atom& a, const Atom& b) {
    if (a.pred != b.pred || a.args.size() != b.args.size()) return std::nullopt;
    Substitution s;
    auto resolve = [&](Term t) {
        while (t.is_var()) {
            auto it = s.map.find(t.name);
            if (it == s.map.end()) break;
            t = it->second;
        }
        return t;
    };
    for (size_t i = 0; i < a.args.size(); ++i) {
        Term x = resolve(a.args[i]);
        Term y = resolve(b.args[i]);
        if (x == y) continue;
        if (x.is_const() && y.is_const()) return std::nullopt;
        // Prefer binding the right-hand atom's variable.
        if (y.is_var())
            s.map[y.name] = x;
        else
            s.map[x.name] = y;
    }
    // Path-compress so the result is idempotent.
    Substitution out;
    for (const auto& [v, t] : s.map) out.map[v] = resolve(t);
    return out;
}

std::optional<std::string> dependency_violation(const Dependency& d) {
    if (d.body.atoms.empty() && d.body.ineqs.empty())
        return "empty body: at least one conjunct is required";
    for (const auto& a : d.body.atoms)
        if (a.is_false_atom()) return "reserved predicate FALSE in a body";
    // Body must be a safe BCQ: every body variable occurs in a predicate atom.
    std::set<std::string> body_pa_vars;
    for (const auto& a : d.body.atoms)
        for (const auto& t : a.args)
            if (t.is_var()) body_pa_vars.insert(t.name);
    for (const auto& v : d.body.vars())
        if (!body_pa_vars.count(v)) return "unsafe body: variable " + v +
                                            " occurs only in inequality atoms";
    std::set<std::string> universal(d.universal_vars.begin(), d.universal_vars.end());
    if (d.head.disjuncts.empty()) return "empty head: at least one disjunct is required";
    for (const auto& q : d.head.disjuncts) {
        if (q.body.atoms.empty() && q.body.ineqs.empty())
            return "empty head disjunct: at least one conjunct is required";
        std::set<std::string> exis(q.exist_vars.begin(), q.exist_vars.end());
        std::set<std::string> pa_vars;
        for (const auto& a : q.body.atoms)
            for (const auto& t : a.args)
                if (t.is_var()) pa_vars.insert(t.name);
        for (const auto& v : q.body.vars()) {
            if (exis.count(v)) {
                // Grounding leaves these; safety of the grounded BUCQ requires
                // each to occur in a predicate atom.
                if (!pa_vars.count(v))
                    return "unsafe head: existential variable " + v +
                           " occurs only in inequality atoms";
            } else if (!universal.count(v)) {
                return "head variable " + v + " is neither universally nor "
                       "existentially quantified";
            }
        }
        for (const auto& v : q.exist_vars) {
            bool occurs = false;
            for (const auto& w : q.body.vars())
                if (w == v) occurs = true;
            if (!occurs)
                return "existential variable " + v + " does not occur in the disjunct";
        }
    }
    return std::nullopt;
}

static void note_arity(Signature& sig, const Atom& a) {
    if (a.is_false_atom()) {
        if (!a.args.empty()) throw InputError("FALSE must be nullary");
        return;
    }
    auto it = sig.find(a.pred);
    if (it == sig.end())
        sig[a.pred] = a.args.size();
    else if (it->second != a.args.size())
        throw InputError("arity clash for predicate " + a.pred + ": " +
                         std::to_string(it->second) + " vs " +
                         std::to_string(a.args.size()));
}

Signature signature_of(const std::vector<Dependency>& sigma) {
    Signature sig;
    for (const auto& d : sigma) {
        for (const auto& a : d.body.atoms) note_arity(sig, a);
        for (const auto& q : d.head.disjuncts)
            for (const auto& a : q.body.atoms) note_arity(sig, a);
    }
    return sig;
}

void check_database_against(const Signature& sig, const Database& db,
                            const std::string& what) {
    for (const auto& f : db.facts) {
        auto it = sig.find(f.pred);
        if (it == sig.end())
            throw InputError(what + ": predicate " + f.pred +
                             " does not occur in the dependencies");
        if (it->second != f.args.size())
            throw InputError(what + ": arity clash for predicate " + f.pred);
    }
}

void check_query_against(const Signature& sig, const UCQ& q) {
    for (const auto& d : q.disjuncts)
        for (const auto& a : d.body.atoms) {
            if (a.is_false_atom()) continue;
            auto it = sig.find(a.pred);
            if (it != sig.end() && it->second != a.args.size())
                throw InputError("query: arity clash for predicate " + a.pred);
        }
}

void VarGen::reserve_from(const Dependency& d) {
    for (const auto& v : d.body.vars()) reserved.insert(v);
    for (const auto& q : d.head.disjuncts)
        for (const auto& v : q.body.vars()) reserved.insert(v);
}

void VarGen::reserve_from(const UCQ& q) {
    for (const auto& d : q.disjuncts)
        for (const auto& v : d.body.vars()) reserved.insert(v);
}

std::string VarGen::fresh(const std::string& hint) {
    for (;;) {
        std::string name = hint + "_" + std::to_string(++counter);
        if (!reserved.count(name)) {
            reserved.insert(name);
            return name;
        }
    }
}

Dependency rename_apart(const Dependency& d, VarGen& vg) {
    Substitution s;
    auto rename = [&](const std::vector<std::string>& vs) {
        for (const auto& v : vs)
            if (!s.map.count(v)) s.map[v] = Term::variable(vg.fresh(v));
    };
    rename(d.body.vars());
    for (const auto& q : d.head.disjuncts) rename(q.body.vars());
    Dependency r;
    r.body = apply_substitution(d.body, s);
    for (const auto& v : d.universal_vars) r.universal_vars.push_back(s(Term::variable(v)).name);
    r.head = apply_substitution(d.head, s);
    return r;
}

std::vector<std::string> sorted_predicates(const Signature& sig) {
    std::vector<std::string> out;
    for (const auto& [p, _] : sig)
        if (p != kFalsePred) out.push_back(p);
    return out;
}

}  // namespace cqa
