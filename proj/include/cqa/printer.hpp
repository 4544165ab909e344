#pragma once

#include <string>
#include <vector>

#include "cqa/ast.hpp"
#include "cqa/formula.hpp"

namespace cqa {

std::string print_term(const Term& t);
std::string print_atom(const Atom& a);
std::string print_conjunction(const Conjunction& c);
std::string print_cq(const CQ& q);
std::string print_query(const UCQ& q);
std::string print_rule(const Dependency& d);
std::string print_rules(const std::vector<Dependency>& sigma);
std::string print_database(const Database& db);

// Round-trips through parse_fo: parse_fo(print_fo(f)) is structurally equal
// to f. Auxiliary predicates are rendered with an '@' prefix.
std::string print_fo(const FOPtr& f);

}  // namespace cqa
