#pragma once

#include <cstddef>
#include <vector>

#include "cqa/ast.hpp"
#include "cqa/formula.hpp"

namespace cqa {

// Pair of databases over which rewritten sentences are evaluated: base atoms
// against `main`, auxiliary atoms against `aux`.
struct EvalStructure {
    const Database& main;
    const Database& aux;
};

inline constexpr size_t kDefaultEvalSteps = 1'000'000'000;

// All substitutions of the conjunction's variables such that every predicate
// atom maps into db and no inequality collapses to t != t. Variables that
// occur only in inequalities range over the database constants. Deterministic
// order.
std::vector<Substitution> instantiations(const Conjunction& c, const Database& db);

// The fact sets hit by the query's instantiations, de-duplicated, in
// canonical order.
std::vector<std::vector<Fact>> images(const UCQ& q, const Database& db);

// True iff the query has an image in db.
bool eval_bucq(const UCQ& q, const Database& db);
bool eval_bcq(const CQ& q, const Database& db);

// True iff every dependency is satisfied: each body instantiation extends to
// an image of the instantiated head.
bool is_consistent(const Database& db, const std::vector<Dependency>& sigma);

// Active-domain evaluation of an FO sentence. Quantifiers range over the
// constants of both databases and of the sentence itself. Throws CapExceeded
// when the step budget runs out, and InputError if f is not a sentence.
bool eval_fo(const FOPtr& f, const EvalStructure& s,
             size_t step_cap = kDefaultEvalSteps);

inline bool eval_fo(const FOPtr& f, const Database& main,
                    size_t step_cap = kDefaultEvalSteps) {
    Database empty;
    return eval_fo(f, EvalStructure{main, empty}, step_cap);
}

}  // namespace cqa
