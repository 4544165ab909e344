#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cqa {

// Name of the reserved nullary predicate that is false in every database.
inline const std::string kFalsePred = "FALSE";

// A term is a constant or a variable. The two name spaces are disjoint by
// lexical convention (see the parser).
struct Term {
    enum class Kind { Constant, Variable };

    Kind kind;
    std::string name;

    static Term constant(std::string n) { return {Kind::Constant, std::move(n)}; }
    static Term variable(std::string n) { return {Kind::Variable, std::move(n)}; }

    bool is_var() const { return kind == Kind::Variable; }
    bool is_const() const { return kind == Kind::Constant; }

    bool operator==(const Term& o) const { return kind == o.kind && name == o.name; }
    bool operator!=(const Term& o) const { return !(*this == o); }
    bool operator<(const Term& o) const {
        if (kind != o.kind) return kind < o.kind;
        return name < o.name;
    }
};

// Predicate applied to an ordered list of terms. A ground atom is a fact.
struct Atom {
    std::string pred;
    std::vector<Term> args;

    bool ground() const {
        for (const auto& t : args)
            if (t.is_var()) return false;
        return true;
    }
    bool is_false_atom() const { return pred == kFalsePred; }

    bool operator==(const Atom& o) const { return pred == o.pred && args == o.args; }
    bool operator!=(const Atom& o) const { return !(*this == o); }
    bool operator<(const Atom& o) const {
        if (pred != o.pred) return pred < o.pred;
        return args < o.args;
    }
};

using Fact = Atom;

// predicate -> arity. Arity must be consistent across one problem instance.
using Signature = std::map<std::string, size_t>;

// Finite set of facts with canonical iteration order (predicate, then args).
struct Database {
    std::set<Fact> facts;

    // Inserts a ground atom. Rejects non-ground atoms and the FALSE fact.
    void insert(const Fact& f);

    bool contains(const Fact& f) const { return facts.count(f) > 0; }
    size_t size() const { return facts.size(); }
    bool empty() const { return facts.empty(); }

    bool subset_of(const Database& o) const;
    Database set_minus(const Database& o) const;
    Database set_union(const Database& o) const;
    Database intersect(const Database& o) const;

    std::set<std::string> constants() const;

    bool operator==(const Database& o) const { return facts == o.facts; }
    bool operator<(const Database& o) const { return facts < o.facts; }
};

// Conjunction of predicate atoms and inequality atoms; at least one conjunct.
struct Conjunction {
    std::vector<Atom> atoms;
    std::vector<std::pair<Term, Term>> ineqs;

    // Variables in first-occurrence order (atoms first, then inequalities).
    std::vector<std::string> vars() const;
    bool operator==(const Conjunction& o) const {
        return atoms == o.atoms && ineqs == o.ineqs;
    }
};

// Conjunctive query with inequalities. Variables not listed in exist_vars are
// free. Boolean iff free_vars is empty.
struct CQ {
    std::vector<std::string> free_vars;
    std::vector<std::string> exist_vars;
    Conjunction body;

    bool boolean() const { return free_vars.empty(); }
    // Safe: every variable occurs in at least one predicate atom.
    bool safe() const;
    std::vector<std::string> vars() const { return body.vars(); }
    bool operator==(const CQ& o) const {
        return free_vars == o.free_vars && exist_vars == o.exist_vars && body == o.body;
    }
};

// Union of conjunctive queries; nonempty.
struct UCQ {
    std::vector<CQ> disjuncts;

    bool boolean() const;
    bool safe() const;
    bool operator==(const UCQ& o) const { return disjuncts == o.disjuncts; }
};

// Disjunctive embedded dependency with inequalities:
//   forall x ( body -> head )
// where x is the list of body variables and head is a UCQ whose free
// variables all occur in x.
struct Dependency {
    std::vector<std::string> universal_vars;
    Conjunction body;
    UCQ head;

    bool operator==(const Dependency& o) const {
        return universal_vars == o.universal_vars && body == o.body && head == o.head;
    }
};

// Map from variable name to term. Kept idempotent: no variable in the range
// is also in the domain once a unifier is finalized.
struct Substitution {
    std::map<std::string, Term> map;

    bool bound(const std::string& v) const { return map.count(v) > 0; }
    Term operator()(const Term& t) const;
    bool empty() const { return map.empty(); }
};

Atom apply_substitution(const Atom& a, const Substitution& s);
Conjunction apply_substitution(const Conjunction& c, const Substitution& s);
CQ apply_substitution(const CQ& q, const Substitution& s);
UCQ apply_substitution(const UCQ& q, const Substitution& s);

// s2 after s1: apply(x, compose(s2, s1)) == apply(apply(x, s1), s2).
Substitution compose(const Substitution& s2, const Substitution& s1);

// Most general unifier of two atoms, treating constants as rigid. Bindings
// prefer mapping variables of `b` to terms of `a` where possible, so that
// unifying a query atom (left) against a rule atom (right) leaves the query's
// variables untouched when it can.
std::optional<Substitution> mgu(const Atom& a, const Atom& b);

// Validates the Def.-3 conditions of a dependency. Returns the violated
// clause as a message, or nullopt if well-formed.
std::optional<std::string> dependency_violation(const Dependency& d);

// Predicates occurring in the dependencies (bodies and heads), FALSE
// excluded, with their arities. Throws InputError on arity clashes.
Signature signature_of(const std::vector<Dependency>& sigma);

// Checks that every database predicate occurs in the signature with the same
// arity; extends nothing. Throws InputError otherwise.
void check_database_against(const Signature& sig, const Database& db,
                            const std::string& what);
void check_query_against(const Signature& sig, const UCQ& q);

// Fresh-variable source. Generated names avoid every name in `reserved`.
struct VarGen {
    std::set<std::string> reserved;
    size_t counter = 0;

    void reserve_from(const Dependency& d);
    void reserve_from(const UCQ& q);
    std::string fresh(const std::string& hint = "V");
};

// Renames the dependency's variables to fresh ones.
Dependency rename_apart(const Dependency& d, VarGen& vg);

std::vector<std::string> sorted_predicates(const Signature& sig);

}  // namespace cqa
