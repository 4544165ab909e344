#include "cqa/solve.hpp"

#include <algorithm>
#include <unordered_map>

#include "cqa/chase.hpp"
#include "cqa/error.hpp"
#include "cqa/rewrite.hpp"

namespace cqa {

namespace {

// Shared bitmask view over one database, with memoized consistency checks.
struct MaskContext {
    std::vector<Fact> facts;  // canonical order
    const std::vector<Dependency>& sigma;
    std::unordered_map<uint64_t, bool> memo;

    MaskContext(const Database& db, const std::vector<Dependency>& s,
                const SolveLimits& limits)
        : facts(db.facts.begin(), db.facts.end()), sigma(s) {
        if (facts.size() > limits.max_enum_facts || facts.size() > 63)
            throw CapExceeded("subset enumeration over " +
                              std::to_string(facts.size()) +
                              " facts exceeds the configured cap");
    }

    size_t size() const { return facts.size(); }

    uint64_t mask_of(const Database& sub) const {
        uint64_t m = 0;
        for (const auto& f : sub.facts) {
            auto it = std::lower_bound(facts.begin(), facts.end(), f);
            if (it == facts.end() || !(*it == f))
                throw InputError("subset contains a fact outside the database");
            m |= uint64_t(1) << (it - facts.begin());
        }
        return m;
    }

    Database materialize(uint64_t m) const {
        Database db;
        for (size_t i = 0; i < facts.size(); ++i)
            if (m & (uint64_t(1) << i)) db.facts.insert(facts[i]);
        return db;
    }

    bool consistent(uint64_t m) {
        auto it = memo.find(m);
        if (it != memo.end()) return it->second;
        bool r = is_consistent(materialize(m), sigma);
        memo.emplace(m, r);
        return r;
    }

    // Supersets of `base`, by increasing added size.
    bool weakly_consistent(uint64_t base) {
        std::vector<size_t> rest;
        for (size_t i = 0; i < size(); ++i)
            if (!(base & (uint64_t(1) << i))) rest.push_back(i);
        size_t n = rest.size();
        for (size_t added = 0; added <= n; ++added) {
            // All subsets of `rest` of the given cardinality.
            std::vector<size_t> pick(added);
            std::function<bool(size_t, size_t)> go = [&](size_t start, size_t depth) {
                if (depth == added) {
                    uint64_t m = base;
                    for (size_t i : pick) m |= uint64_t(1) << rest[i];
                    return consistent(m);
                }
                for (size_t i = start; i + (added - depth) <= n; ++i) {
                    pick[depth] = i;
                    if (go(i + 1, depth + 1)) return true;
                }
                return false;
            };
            if (go(0, 0)) return true;
        }
        return false;
    }
};

void require(bool cond, const char* msg) {
    if (!cond) throw InputError(msg);
}

void check_subset(const Database& db, const Database& sub, const char* what) {
    if (!sub.subset_of(db))
        throw InputError(std::string(what) + ": the given set is not a subset of the database");
}

std::vector<uint64_t> masks_by_descending_size(size_t n) {
    std::vector<uint64_t> masks;
    masks.reserve(size_t(1) << n);
    for (uint64_t m = 0; m < (uint64_t(1) << n); ++m) masks.push_back(m);
    std::stable_sort(masks.begin(), masks.end(), [](uint64_t a, uint64_t b) {
        return __builtin_popcountll(a) > __builtin_popcountll(b);
    });
    return masks;
}

}  // namespace

bool weakly_consistent(const Database& db, const Database& sub,
                       const std::vector<Dependency>& sigma, WcEngine engine,
                       const SolveLimits& limits) {
    check_subset(db, sub, "weak consistency");
    if (engine == WcEngine::Auto) {
        ClassProfile p = classify(sigma);
        if (p.acyclic && p.linear)
            engine = WcEngine::AcyclicLinearFo;
        else if (p.full)
            engine = WcEngine::Chase;
        else if (p.linear)
            engine = WcEngine::Linear;
        else
            engine = WcEngine::Search;
    }
    switch (engine) {
        case WcEngine::Search: {
            MaskContext ctx(db, sigma, limits);
            return ctx.weakly_consistent(ctx.mask_of(sub));
        }
        case WcEngine::Chase:
            require(is_full(sigma), "wc engine 'chase' requires full dependencies");
            return chase(sub, sigma).contained_in(db);
        case WcEngine::Linear: {
            require(is_linear(sigma), "wc engine 'linear' requires linear dependencies");
            // A set is weakly consistent iff each of its singletons is, and a
            // singleton is iff it survives the deletion fixpoint.
            Database repair = compute_repair_linear(db, sigma);
            return sub.subset_of(repair);
        }
        case WcEngine::AcyclicLinearFo: {
            FOPtr sentence = psi_wc_sentence(sigma);
            return eval_fo(sentence, EvalStructure{db, sub}, limits.eval_steps);
        }
        default:
            throw InputError("unresolved weak-consistency engine");
    }
}

Database compute_repair_linear(const Database& db,
                               const std::vector<Dependency>& sigma) {
    require(is_linear(sigma),
            "compute_repair_linear requires linear dependencies");
    Database cur = db;
    bool changed = true;
    while (changed) {
        changed = false;
        std::set<Fact> doomed;
        for (const auto& tau : sigma) {
            for (const auto& s : instantiations(tau.body, cur)) {
                UCQ grounded = apply_substitution(tau.head, s);
                if (!eval_bucq(grounded, cur))
                    for (const auto& a : tau.body.atoms)
                        doomed.insert(apply_substitution(a, s));
            }
        }
        for (const auto& f : doomed) {
            cur.facts.erase(f);
            changed = true;
        }
    }
    return cur;
}

RepairSet enumerate_repairs(const Database& db, const std::vector<Dependency>& sigma,
                            const SolveLimits& limits) {
    MaskContext ctx(db, sigma, limits);
    std::vector<uint64_t> kept;
    for (uint64_t m : masks_by_descending_size(ctx.size())) {
        bool dominated = false;
        for (uint64_t k : kept)
            if ((m & k) == m) {
                dominated = true;
                break;
            }
        if (dominated) continue;
        if (ctx.consistent(m)) kept.push_back(m);
    }
    RepairSet out;
    for (uint64_t m : kept) out.repairs.push_back(ctx.materialize(m));
    std::sort(out.repairs.begin(), out.repairs.end());
    if (!out.repairs.empty()) {
        out.intersection = out.repairs[0];
        for (size_t i = 1; i < out.repairs.size(); ++i)
            out.intersection = out.intersection.intersect(out.repairs[i]);
    }
    return out;
}

bool is_repair(const Database& db, const Database& candidate,
               const std::vector<Dependency>& sigma, RcEngine engine,
               const SolveLimits& limits) {
    check_subset(db, candidate, "repair checking");
    if (engine == RcEngine::Auto) {
        ClassProfile p = classify(sigma);
        if (p.acyclic)
            engine = RcEngine::AcyclicFo;
        else if (p.full && (p.linear || p.sticky))
            engine = RcEngine::FullFo;
        else if (p.linear)
            engine = RcEngine::Linear;
        else if (p.full)
            engine = RcEngine::Full;
        else
            engine = RcEngine::General;
    }
    switch (engine) {
        case RcEngine::General: {
            if (!is_consistent(candidate, sigma)) return false;
            MaskContext ctx(db, sigma, limits);
            uint64_t base = ctx.mask_of(candidate);
            for (size_t i = 0; i < ctx.size(); ++i) {
                uint64_t bit = uint64_t(1) << i;
                if (base & bit) continue;
                if (ctx.weakly_consistent(base | bit)) return false;
            }
            return true;
        }
        case RcEngine::Linear:
            require(is_linear(sigma), "rc engine 'linear' requires linear dependencies");
            return candidate == compute_repair_linear(db, sigma);
        case RcEngine::Full: {
            require(is_full(sigma), "rc engine 'full' requires full dependencies");
            if (!chase(candidate, sigma).contained_in(db)) return false;
            for (const auto& f : db.set_minus(candidate).facts) {
                Database ext = candidate;
                ext.facts.insert(f);
                if (chase(ext, sigma).contained_in(db)) return false;
            }
            return true;
        }
        case RcEngine::Acyclic: {
            require(topological_order(build_graph(sigma)).has_value(),
                    "rc engine 'acyclic' requires acyclic dependencies");
            if (!is_consistent(candidate, sigma)) return false;
            for (const auto& f : db.set_minus(candidate).facts) {
                Database ext = candidate;
                ext.facts.insert(f);
                if (is_consistent(ext, sigma)) return false;
            }
            return true;
        }
        case RcEngine::AcyclicFo: {
            FOPtr sentence = psi_rc(sigma);
            return eval_fo(sentence, EvalStructure{db, candidate}, limits.eval_steps);
        }
        case RcEngine::FullFo: {
            FOPtr sentence = phi_rc(sigma, limits.max_rewrite_cqs);
            return eval_fo(sentence, EvalStructure{db, candidate}, limits.eval_steps);
        }
        default:
            throw InputError("unresolved repair-checking engine");
    }
}

namespace {

void check_bucq(const UCQ& query) {
    if (!query.boolean()) throw InputError("entailment queries must be Boolean");
    if (!query.safe()) throw InputError("entailment queries must be safe");
}

bool full_rewritable(const ClassProfile& p) {
    return p.full && (p.acyclic || p.linear || p.sticky);
}

EntEngine resolve_iar(const ClassProfile& p) {
    if (p.acyclic && p.linear) return EntEngine::Rewrite;
    if (p.linear) return EntEngine::UniqueRepair;
    if (full_rewritable(p)) return EntEngine::Rewrite;
    if (p.acyclic) return EntEngine::ImageRepair;
    return EntEngine::Search;
}

EntEngine resolve_ar(const ClassProfile& p) {
    if (p.acyclic && p.linear) return EntEngine::Rewrite;
    if (p.linear) return EntEngine::UniqueRepair;
    return EntEngine::Search;
}

}  // namespace

bool iar_entails(const Database& db, const std::vector<Dependency>& sigma,
                 const UCQ& query, EntEngine engine, const SolveLimits& limits,
                 std::optional<size_t> k) {
    check_bucq(query);
    ClassProfile profile = classify(sigma);
    if (engine == EntEngine::Auto) engine = resolve_iar(profile);
    switch (engine) {
        case EntEngine::Oracle:
            return eval_bucq(query, enumerate_repairs(db, sigma, limits).intersection);
        case EntEngine::Search: {
            // True iff some image admits no weakly consistent set whose
            // extension by the image loses weak consistency.
            MaskContext ctx(db, sigma, limits);
            for (const auto& image : images(query, db)) {
                Database m;
                for (const auto& f : image) m.facts.insert(f);
                uint64_t image_mask = ctx.mask_of(m);
                bool witness_found = false;
                uint64_t rest = ~image_mask & ((ctx.size() == 64 ? ~uint64_t(0) : (uint64_t(1) << ctx.size()) - 1));
                // Enumerate subsets of db \ image; intersecting the image
                // never helps since it joins both sides of the test.
                for (uint64_t sub = rest;; sub = (sub - 1) & rest) {
                    if (ctx.weakly_consistent(sub) &&
                        !ctx.weakly_consistent(sub | image_mask)) {
                        witness_found = true;
                        break;
                    }
                    if (sub == 0) break;
                }
                if (!witness_found) return true;
            }
            return false;
        }
        case EntEngine::UniqueRepair: {
            require(profile.linear,
                    "entail engine 'unique-repair' requires linear dependencies");
            return eval_bucq(query, compute_repair_linear(db, sigma));
        }
        case EntEngine::ImageRepair: {
            require(profile.acyclic,
                    "entail engine 'image-repair' requires acyclic dependencies");
            MaskContext ctx(db, sigma, limits);
            auto masks = masks_by_descending_size(ctx.size());
            for (const auto& image : images(query, db)) {
                Database m;
                for (const auto& f : image) m.facts.insert(f);
                uint64_t image_mask = ctx.mask_of(m);
                bool excluded = false;
                for (uint64_t cand : masks) {
                    if ((cand & image_mask) == image_mask) continue;
                    if (!ctx.consistent(cand)) continue;
                    // Maximality via the acyclic single-fact criterion.
                    bool maximal = true;
                    for (size_t i = 0; i < ctx.size() && maximal; ++i) {
                        uint64_t bit = uint64_t(1) << i;
                        if ((cand & bit) == 0 && ctx.consistent(cand | bit))
                            maximal = false;
                    }
                    if (maximal) {
                        excluded = true;
                        break;
                    }
                }
                if (!excluded) return true;  // image inside every repair
            }
            return false;
        }
        case EntEngine::Rewrite: {
            if (profile.acyclic && profile.linear) {
                FOPtr sentence = psi_iar(query, sigma);
                return eval_fo(sentence, db, limits.eval_steps);
            }
            require(full_rewritable(profile),
                    "entail engine 'rewrite' requires acyclic+linear or full "
                    "rewritable dependencies");
            size_t kk = k ? *k : default_iar_k(sigma);
            FOPtr sentence =
                phi_iar(query, sigma, kk, limits.max_iar_subsets, limits.max_rewrite_cqs);
            return eval_fo(sentence, db, limits.eval_steps);
        }
        default:
            throw InputError("unresolved IAR engine");
    }
}

bool ar_entails(const Database& db, const std::vector<Dependency>& sigma,
                const UCQ& query, EntEngine engine, const SolveLimits& limits,
                std::optional<size_t> k) {
    check_bucq(query);
    ClassProfile profile = classify(sigma);
    if (engine == EntEngine::Auto) engine = resolve_ar(profile);
    switch (engine) {
        case EntEngine::Oracle: {
            for (const auto& r : enumerate_repairs(db, sigma, limits).repairs)
                if (!eval_bucq(query, r)) return false;
            return true;
        }
        case EntEngine::Search: {
            // Not entailed iff some repair falsifies the query; search
            // query-falsifying consistent subsets by descending size and test
            // maximality.
            MaskContext ctx(db, sigma, limits);
            for (uint64_t cand : masks_by_descending_size(ctx.size())) {
                if (!ctx.consistent(cand)) continue;
                if (eval_bucq(query, ctx.materialize(cand))) continue;
                bool maximal = true;
                for (size_t i = 0; i < ctx.size() && maximal; ++i) {
                    uint64_t bit = uint64_t(1) << i;
                    if ((cand & bit) == 0 && ctx.weakly_consistent(cand | bit))
                        maximal = false;
                }
                if (maximal) return false;
            }
            return true;
        }
        case EntEngine::UniqueRepair: {
            require(profile.linear,
                    "entail engine 'unique-repair' requires linear dependencies");
            return eval_bucq(query, compute_repair_linear(db, sigma));
        }
        case EntEngine::Rewrite: {
            require(profile.acyclic && profile.linear,
                    "AR entailment by rewriting requires acyclic+linear "
                    "dependencies");
            FOPtr sentence = psi_iar(query, sigma);
            return eval_fo(sentence, db, limits.eval_steps);
        }
        case EntEngine::ImageRepair:
            throw InputError("engine 'image-repair' answers IAR entailment only");
        default:
            throw InputError("unresolved AR engine");
    }
    (void)k;
}

WcEngine wc_engine_from_name(const std::string& name) {
    if (name == "auto") return WcEngine::Auto;
    if (name == "search") return WcEngine::Search;
    if (name == "chase") return WcEngine::Chase;
    if (name == "linear") return WcEngine::Linear;
    if (name == "acyclic-linear-fo") return WcEngine::AcyclicLinearFo;
    throw InputError("unknown weak-consistency engine '" + name + "'");
}

RcEngine rc_engine_from_name(const std::string& name) {
    if (name == "auto") return RcEngine::Auto;
    if (name == "general") return RcEngine::General;
    if (name == "linear") return RcEngine::Linear;
    if (name == "full") return RcEngine::Full;
    if (name == "acyclic-fo") return RcEngine::AcyclicFo;
    if (name == "full-fo") return RcEngine::FullFo;
    throw InputError("unknown repair-checking engine '" + name + "'");
}

EntEngine ent_engine_from_name(const std::string& name) {
    if (name == "auto") return EntEngine::Auto;
    if (name == "oracle") return EntEngine::Oracle;
    if (name == "search") return EntEngine::Search;
    if (name == "unique-repair") return EntEngine::UniqueRepair;
    if (name == "image-repair") return EntEngine::ImageRepair;
    if (name == "rewrite") return EntEngine::Rewrite;
    throw InputError("unknown entailment engine '" + name + "'");
}

}  // namespace cqa
