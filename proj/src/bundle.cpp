#include "cqa/bundle.hpp"

#include "cqa/error.hpp"
#include "cqa/parser.hpp"

namespace cqa {

ProblemBundle load_bundle(const std::string& rules_text,
                          const std::optional<std::string>& database_text,
                          const std::optional<std::string>& candidate_text,
                          const std::optional<std::string>& subset_text,
                          const std::optional<std::string>& query_text) {
    ProblemBundle b;
    b.rules = parse_rules(rules_text);
    b.signature = signature_of(b.rules);
    if (database_text) {
        b.database = parse_database(*database_text);
        check_database_against(b.signature, b.database, "database");
    }
    if (candidate_text) {
        b.candidate = parse_database(*candidate_text);
        check_database_against(b.signature, *b.candidate, "candidate");
        if (!b.candidate->subset_of(b.database))
            throw InputError("candidate is not a subset of the database");
    }
    if (subset_text) {
        b.subset = parse_database(*subset_text);
        check_database_against(b.signature, *b.subset, "subset");
        if (!b.subset->subset_of(b.database))
            throw InputError("subset file is not a subset of the database");
    }
    if (query_text) {
        b.query = parse_query(*query_text);
        check_query_against(b.signature, *b.query);
    }
    return b;
}

}  // namespace cqa
