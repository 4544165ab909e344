#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cqa/ast.hpp"

namespace cqa {

// One loaded problem: rules plus the databases and query a task needs.
// Every database predicate must occur in the rules; candidate and subset
// must be subsets of the database.
struct ProblemBundle {
    std::vector<Dependency> rules;
    Database database;
    std::optional<Database> candidate;
    std::optional<Database> subset;
    std::optional<UCQ> query;
    Signature signature;
};

ProblemBundle load_bundle(const std::string& rules_text,
                          const std::optional<std::string>& database_text,
                          const std::optional<std::string>& candidate_text,
                          const std::optional<std::string>& subset_text,
                          const std::optional<std::string>& query_text);

}  // namespace cqa
