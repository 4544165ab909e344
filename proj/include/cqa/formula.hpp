#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cqa/ast.hpp"

namespace cqa {

// First-order formulas over base and auxiliary predicate atoms, with
// equality, inequality, the usual connectives and quantifiers. Nodes are
// immutable and shared. The reserved FALSE atom is represented by the False
// constant, never as an Atom node.
struct FOFormula;
using FOPtr = std::shared_ptr<const FOFormula>;

struct FOFormula {
    enum class Kind {
        True,
        False,
        Atom,     // base predicate atom, evaluated in the main database
        AuxAtom,  // auxiliary copy @p, evaluated in the aux database
        Eq,
        Neq,
        Not,
        And,
        Or,
        Implies,
        Exists,
        Forall
    };

    Kind kind;
    std::string pred;              // Atom, AuxAtom
    std::vector<Term> args;        // Atom, AuxAtom, Eq/Neq (two terms)
    std::vector<FOPtr> children;   // Not (1), And/Or (n>=2), Implies (2), quantifiers (1)
    std::vector<std::string> vars; // Exists, Forall

    // Free variables, each listed once, in first-occurrence order.
    std::vector<std::string> free_vars() const;
    bool sentence() const { return free_vars().empty(); }
};

FOPtr fo_true();
FOPtr fo_false();
FOPtr fo_atom(const Atom& a);      // FALSE atom collapses to fo_false()
FOPtr fo_aux(const Atom& a);
FOPtr fo_eq(const Term& a, const Term& b);
FOPtr fo_neq(const Term& a, const Term& b);
FOPtr fo_not(FOPtr f);
// Empty list collapses to the unit (TRUE / FALSE), a single element to itself.
FOPtr fo_and(std::vector<FOPtr> fs);
FOPtr fo_or(std::vector<FOPtr> fs);
FOPtr fo_implies(FOPtr a, FOPtr b);
FOPtr fo_exists(std::vector<std::string> vars, FOPtr f);
FOPtr fo_forall(std::vector<std::string> vars, FOPtr f);

bool fo_equal(const FOPtr& a, const FOPtr& b);

// Equality up to renaming of bound variables; free variables must match.
bool fo_alpha_equal(const FOPtr& a, const FOPtr& b);

// Replaces free occurrences of mapped variables; bound occurrences are left
// alone (callers keep bound names disjoint from substitution domains).
FOPtr apply_substitution(const FOPtr& f, const Substitution& s);

// Constants appearing anywhere in the formula.
std::set<std::string> fo_constants(const FOPtr& f);

// Conversions from query-layer values (base atoms).
FOPtr conjunction_to_fo(const Conjunction& c);
FOPtr cq_to_fo(const CQ& q);
FOPtr ucq_to_fo(const UCQ& q);
FOPtr dependency_to_fo(const Dependency& d);

}  // namespace cqa
