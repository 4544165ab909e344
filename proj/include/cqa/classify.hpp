#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cqa/ast.hpp"

namespace cqa {

// Directed graph over the dependencies: an edge i -> j means some head atom
// predicate of dependency i occurs in a body predicate atom of dependency j.
struct DependencyGraph {
    size_t n = 0;
    std::vector<std::set<size_t>> edges;

    bool has_edge(size_t from, size_t to) const {
        return from < n && edges[from].count(to) > 0;
    }
};

enum class Problem { WeakConsistency, RepairChecking, IarEntailment, ArEntailment };

struct ClassProfile {
    bool acyclic = false;
    bool linear = false;
    bool full = false;
    bool guarded = false;
    bool sticky = false;
    // Valid when acyclic: every edge goes from an earlier to a later index.
    std::optional<std::vector<size_t>> topological_order;
    // Marked body variables, per dependency index.
    std::vector<std::set<std::string>> marked;
    // Lowest-complexity admissible engine per problem.
    std::map<Problem, std::string> engines;
};

DependencyGraph build_graph(const std::vector<Dependency>& sigma);

// Acyclicity plus a topological order (sources first) when acyclic.
std::optional<std::vector<size_t>> topological_order(const DependencyGraph& g);

bool is_linear(const std::vector<Dependency>& sigma);
bool is_full(const std::vector<Dependency>& sigma);
bool is_guarded(const std::vector<Dependency>& sigma);

// Least fixpoint of the marking rules: a body variable is marked if some head
// atom omits it, or if it reaches a marked body position through a head atom.
std::vector<std::set<std::string>> marked_variables(const std::vector<Dependency>& sigma);
bool is_sticky(const std::vector<Dependency>& sigma);

ClassProfile classify(const std::vector<Dependency>& sigma);

std::string problem_name(Problem p);

}  // namespace cqa
