#pragma once

#include <optional>
#include <vector>

#include "cqa/ast.hpp"
#include "cqa/formula.hpp"

namespace cqa {

// --- Inconsistency and repair-checking sentences (acyclic route) ---

// True over aux(D') iff D' violates some dependency.
FOPtr psi_inc(const std::vector<Dependency>& sigma);

// Free variables = the variables of `at`; true over aux(D') under x := t iff
// D' together with the extra fact p(t) violates some dependency. Every
// auxiliary atom of at's predicate is widened with the matching equalities.
FOPtr psi_inc_at(const std::vector<Dependency>& sigma, const Atom& at);

// Repair-checking sentence for acyclic dependencies, evaluated over
// (D, aux(D')).
FOPtr psi_rc(const std::vector<Dependency>& sigma);

// --- UCQ rewriting for full dependencies ---

// One disjunct of a rewritten query: the answer tuple pattern plus a body.
struct RewriteDisjunct {
    std::vector<Term> answer;
    Conjunction body;
};

struct RewrittenUCQ {
    size_t arity = 0;
    std::vector<RewriteDisjunct> disjuncts;
};

// Backward-chaining saturation of a conjunctive query against a set of full
// dependencies from a CQ-FO-rewritable class (acyclic, linear or sticky).
// Rule-body inequalities are collected into the rewritten disjuncts. Throws
// CapExceeded if saturation outgrows max_cqs.
RewrittenUCQ cq_rewrite_full(const std::vector<Dependency>& sigma, const CQ& query,
                             size_t max_cqs = 10000);

// Answer tuples of the rewritten query over a database.
std::set<std::vector<std::string>> rewritten_answers(const RewrittenUCQ& r,
                                                     const Database& db);

// FO query with the given free variables; atoms rendered over the auxiliary
// alphabet when aux is set.
FOPtr rewritten_to_fo(const RewrittenUCQ& r, const std::vector<std::string>& target,
                      bool aux, VarGen& vg);

// --- Weak-consistency and repair-checking sentences (full route) ---

// Conjunction over all predicates of "rewritten atomic query over aux implies
// the base atom"; with the FALSE-rewriting negated. True over (D, aux(D'))
// iff the chase of D' stays inside D.
FOPtr phi_wc(const std::vector<Dependency>& sigma, size_t max_cqs = 10000);

// Widens every auxiliary atom @r(t) of f with the unification equalities
// against the atoms of A sharing r.
FOPtr replace_aux_with_atoms(const FOPtr& f, const std::vector<Atom>& A);

// Phi^wc with the atom set folded in; free variables Vars(A).
FOPtr phi_wc_with(const std::vector<Atom>& A, const std::vector<Dependency>& sigma,
                  size_t max_cqs = 10000);

// Repair-checking sentence for CQ-FO-rewritable full dependencies.
FOPtr phi_rc(const std::vector<Dependency>& sigma, size_t max_cqs = 10000);

// --- Acyclic+linear weak consistency and IAR sentences ---

// Formula with free variables Vars(alpha): together with membership of the
// ground atom in D it decides weak consistency of the singleton.
FOPtr psi_wc_atom(const Atom& alpha, const std::vector<Dependency>& sigma);
FOPtr psi_wc_atom(const Atom& alpha, const std::vector<Dependency>& sigma, VarGen& vg);

// Sentence over (D, aux(D')) deciding weak consistency of D' for
// acyclic+linear dependencies.
FOPtr psi_wc_sentence(const std::vector<Dependency>& sigma);

// IAR-entailment sentence for acyclic+linear dependencies, evaluated over D.
FOPtr psi_iar(const UCQ& query, const std::vector<Dependency>& sigma);

// --- IAR sentence for full rewritable classes ---

// k fresh-variable copies of one template atom per predicate (FALSE
// excluded). Every variable occurs exactly once across the set.
std::vector<Atom> atoms_templates(const Signature& sig, size_t k, VarGen& vg);

// Witness formula: some instantiation of A lies in D, chases inside D, but
// stops doing so once the atoms of q are added. Free variables Vars(q).
FOPtr phi_ni(const std::vector<Atom>& A, const CQ& q,
             const std::vector<Dependency>& sigma, size_t max_cqs = 10000);

// IAR-entailment sentence: some image of q admits no witness set A of up to
// k atoms per predicate. Subsets of the template set are deduplicated up to
// variable renaming. Throws CapExceeded when the subset count exceeds
// max_subsets.
FOPtr phi_iar(const CQ& q, const std::vector<Dependency>& sigma, size_t k,
              size_t max_subsets = 4096, size_t max_cqs = 10000);
FOPtr phi_iar(const UCQ& query, const std::vector<Dependency>& sigma, size_t k,
              size_t max_subsets = 4096, size_t max_cqs = 10000);

// Default k: m^(h+1) with m the largest predicate-atom count of a dependency
// (body plus head) and h = |sigma|; saturates instead of overflowing.
size_t default_iar_k(const std::vector<Dependency>& sigma);

}  // namespace cqa
