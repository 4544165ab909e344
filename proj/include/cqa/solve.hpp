#pragma once

#include <optional>
#include <vector>

#include "cqa/ast.hpp"
#include "cqa/classify.hpp"
#include "cqa/foeval.hpp"

namespace cqa {

struct SolveLimits {
    size_t max_enum_facts = 24;   // subset-enumeration width cap
    size_t eval_steps = kDefaultEvalSteps;
    size_t max_rewrite_cqs = 10000;
    size_t max_iar_subsets = 4096;
};

// All repairs in canonical order, plus their intersection.
struct RepairSet {
    std::vector<Database> repairs;
    Database intersection;
};

enum class WcEngine { Auto, Search, Chase, Linear, AcyclicLinearFo };
enum class RcEngine { Auto, General, Linear, Full, Acyclic, AcyclicFo, FullFo };
enum class EntEngine { Auto, Oracle, Search, UniqueRepair, ImageRepair, Rewrite };

// D' must be a subset of D. True iff some consistent set lies between D'
// and D.
bool weakly_consistent(const Database& db, const Database& sub,
                       const std::vector<Dependency>& sigma,
                       WcEngine engine = WcEngine::Auto,
                       const SolveLimits& limits = {});

// The unique repair of a database under linear dependencies: body images of
// head-violating instantiations are deleted to fixpoint.
Database compute_repair_linear(const Database& db,
                               const std::vector<Dependency>& sigma);

// Exactly the maximal consistent subsets, by descending-cardinality sweep.
RepairSet enumerate_repairs(const Database& db, const std::vector<Dependency>& sigma,
                            const SolveLimits& limits = {});

bool is_repair(const Database& db, const Database& candidate,
               const std::vector<Dependency>& sigma, RcEngine engine = RcEngine::Auto,
               const SolveLimits& limits = {});

bool iar_entails(const Database& db, const std::vector<Dependency>& sigma,
                 const UCQ& query, EntEngine engine = EntEngine::Auto,
                 const SolveLimits& limits = {},
                 std::optional<size_t> k = std::nullopt);

bool ar_entails(const Database& db, const std::vector<Dependency>& sigma,
                const UCQ& query, EntEngine engine = EntEngine::Auto,
                const SolveLimits& limits = {},
                std::optional<size_t> k = std::nullopt);

// Engine names as used on the command line; throws InputError on unknown
// names or violated preconditions.
WcEngine wc_engine_from_name(const std::string& name);
RcEngine rc_engine_from_name(const std::string& name);
EntEngine ent_engine_from_name(const std::string& name);

}  // namespace cqa
