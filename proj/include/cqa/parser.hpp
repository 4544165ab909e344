#pragma once

#include <string>
#include <vector>

#include "cqa/ast.hpp"
#include "cqa/formula.hpp"

namespace cqa {

// Rule files: one dependency per "body -> head ." statement. Variables match
// [A-Z][A-Za-z0-9_]*, constants [a-z0-9][A-Za-z0-9_]* or single-quoted
// strings. Distinct dependencies are renamed apart on load.
std::vector<Dependency> parse_rules(const std::string& text);

// Fact files: ground atoms terminated by ".". Duplicates merge; FALSE is
// rejected.
Database parse_database(const std::string& text);

// Query files: a Boolean, safe UCQ ("exists X,Y . P(X,Y) | exists Z . Q(Z)").
UCQ parse_query(const std::string& text);

// FO sentence files in the grammar emitted by print_fo.
FOPtr parse_fo(const std::string& text);

}  // namespace cqa
