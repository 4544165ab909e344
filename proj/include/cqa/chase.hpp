#pragma once

#include <vector>

#include "cqa/ast.hpp"

namespace cqa {

struct ChaseStep {
    size_t rule_index;  // into the normalized rule set
    Substitution binding;
    Fact produced;      // meaningless when derived_false fired
};

struct ChaseResult {
    std::set<Fact> facts;
    bool derived_false = false;
    std::vector<ChaseStep> log;

    bool contained_in(const Database& db) const {
        if (derived_false) return false;
        for (const auto& f : facts)
            if (!db.contains(f)) return false;
        return true;
    }
};

// Rewrites a set of full dependencies into single-head rules with
// inequality-free heads: head conjunctions split per atom, and a head
// inequality x != t becomes a FALSE-headed rule over the unified body.
// Throws InputError if some dependency is not full.
std::vector<Dependency> normalize_full(const std::vector<Dependency>& sigma);

// Least superset of the facts closed under all (full) dependencies.
// Normalizes internally; semi-naive iteration.
ChaseResult chase(const std::set<Fact>& facts, const std::vector<Dependency>& sigma);
ChaseResult chase(const Database& db, const std::vector<Dependency>& sigma);

}  // namespace cqa
