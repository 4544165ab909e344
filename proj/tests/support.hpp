// Shared test helpers: seeded random instances per dependency class, and an
// independent brute-force layer (subset enumeration over bitmasks) used as
// the reference answer for every decision procedure.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cqa/ast.hpp"
#include "cqa/classify.hpp"
#include "cqa/foeval.hpp"

namespace support {

using namespace cqa;

struct Profile {
    bool acyclic = false;
    bool linear = false;
    bool full = false;
    bool sticky = false;
};

inline const Profile kGeneral{};
inline const Profile kAcyclic{true, false, false, false};
inline const Profile kLinear{false, true, false, false};
inline const Profile kFull{false, false, true, false};
inline const Profile kAcyclicLinear{true, true, false, false};
inline const Profile kAcyclicFull{true, false, true, false};
inline const Profile kFullLinear{false, true, true, false};
inline const Profile kFullSticky{false, false, true, true};

struct Instance {
    std::vector<Dependency> sigma;
    Database db;
};

class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    size_t below(size_t n) { return n == 0 ? 0 : eng_() % n; }
    int range(int lo, int hi) { return lo + static_cast<int>(below(hi - lo + 1)); }
    bool chance(int percent) { return range(1, 100) <= percent; }

    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[below(v.size())];
    }

private:
    std::mt19937_64 eng_;
};

struct SigSpec {
    std::vector<std::pair<std::string, size_t>> preds;  // name, arity
    std::vector<std::string> consts;
};

inline SigSpec small_signature(Rng& rng) {
    SigSpec s;
    std::vector<std::pair<std::string, size_t>> pool = {
        {"P", 1}, {"R", 2}, {"S", 2}, {"T", 3}};
    size_t n = 2 + rng.below(2);
    for (size_t i = 0; i < n; ++i) s.preds.push_back(pool[i]);
    s.consts = {"a", "b", "c", "d"};
    s.consts.resize(2 + rng.below(3));
    return s;
}

inline Term rand_term(Rng& rng, const std::vector<std::string>& vars,
                      const SigSpec& sig, int const_percent) {
    if (vars.empty() || rng.chance(const_percent))
        return Term::constant(rng.pick(sig.consts));
    return Term::variable(rng.pick(vars));
}

inline Atom rand_atom(Rng& rng, const SigSpec& sig,
                      const std::vector<std::string>& vars, int const_percent,
                      size_t pred_lo, size_t pred_hi) {
    size_t pi = pred_lo + rng.below(pred_hi - pred_lo + 1);
    const auto& [name, arity] = sig.preds[pi];
    Atom a{name, {}};
    for (size_t i = 0; i < arity; ++i)
        a.args.push_back(rand_term(rng, vars, sig, const_percent));
    return a;
}

// One random dependency honoring the profile; predicates are stratified when
// acyclicity is requested (bodies draw from lower strata than heads).
inline Dependency rand_dependency(Rng& rng, const SigSpec& sig, const Profile& pr,
                                  size_t dep_index) {
    Dependency d;
    size_t np = sig.preds.size();
    size_t cut = pr.acyclic && np > 1 ? 1 + rng.below(np - 1) : np;

    std::vector<std::string> pool;
    for (int i = 0; i < 4; ++i)
        pool.push_back("X" + std::to_string(dep_index) + "_" + std::to_string(i));

    size_t body_atoms = pr.linear ? 1 : 1 + rng.below(2);
    for (size_t i = 0; i < body_atoms; ++i)
        d.body.atoms.push_back(
            rand_atom(rng, sig, pool, 10, 0, (pr.acyclic ? cut : np) - 1));
    // Only variables that actually occur stay eligible.
    std::vector<std::string> body_vars = d.body.vars();
    if (body_vars.size() >= 2 && rng.chance(25))
        d.body.ineqs.emplace_back(Term::variable(rng.pick(body_vars)),
                                  Term::variable(rng.pick(body_vars)));
    d.universal_vars = d.body.vars();

    bool denial = rng.chance(25);
    if (denial) {
        d.head.disjuncts.push_back(CQ{{}, {}, Conjunction{{Atom{kFalsePred, {}}}, {}}});
        return d;
    }

    size_t disjuncts = (pr.full || rng.chance(70)) ? 1 : 2;
    for (size_t di = 0; di < disjuncts; ++di) {
        CQ q;
        std::vector<std::string> head_pool = body_vars;
        if (!pr.full) {
            size_t ne = rng.below(3);
            for (size_t i = 0; i < ne || head_pool.empty(); ++i) {
                std::string v =
                    "Y" + std::to_string(dep_index) + "_" + std::to_string(i + 10 * di);
                q.exist_vars.push_back(v);
                head_pool.push_back(v);
                if (i >= ne && !head_pool.empty()) break;
            }
        }
        size_t head_atoms = 1 + (rng.chance(25) ? 1 : 0);
        for (size_t i = 0; i < head_atoms; ++i)
            q.body.atoms.push_back(
                rand_atom(rng, sig, head_pool, 5, pr.acyclic ? cut : 0, np - 1));
        // Drop declared existentials that ended up unused.
        std::vector<std::string> used = q.body.vars();
        std::vector<std::string> kept;
        for (const auto& v : q.exist_vars)
            if (std::find(used.begin(), used.end(), v) != used.end()) kept.push_back(v);
        q.exist_vars = kept;
        if (used.size() >= 2 && rng.chance(15)) {
            std::pair<Term, Term> ineq{Term::variable(rng.pick(used)),
                                       Term::variable(rng.pick(used))};
            // Head variables outside the body must be existential, which the
            // atom pool already guarantees; inequalities reuse those names.
            q.body.ineqs.push_back(ineq);
        }
        d.head.disjuncts.push_back(q);
    }
    return d;
}

// Random dependency set matching the exact profile flags requested (each
// required flag true; others unconstrained). Retries with fresh draws.
inline std::vector<Dependency> random_sigma(Rng& rng, const SigSpec& sig,
                                            const Profile& pr, size_t max_rules) {
    for (int attempt = 0; attempt < 400; ++attempt) {
        std::vector<Dependency> sigma;
        size_t n = 1 + rng.below(max_rules);
        for (size_t i = 0; i < n; ++i) sigma.push_back(rand_dependency(rng, sig, pr, i));
        bool ok = true;
        for (const auto& d : sigma)
            if (dependency_violation(d)) ok = false;
        if (!ok) continue;
        ClassProfile got = classify(sigma);
        if (pr.acyclic && !got.acyclic) continue;
        if (pr.linear && !got.linear) continue;
        if (pr.full && !got.full) continue;
        if (pr.sticky && !got.sticky) continue;
        return sigma;
    }
    throw std::runtime_error("random_sigma: no instance found for profile");
}

inline Database random_db(Rng& rng, const SigSpec& sig, size_t max_facts) {
    Database db;
    size_t n = 1 + rng.below(max_facts);
    for (size_t i = 0; i < n; ++i) {
        const auto& [name, arity] = sig.preds[rng.below(sig.preds.size())];
        Fact f{name, {}};
        for (size_t j = 0; j < arity; ++j)
            f.args.push_back(Term::constant(rng.pick(sig.consts)));
        db.insert(f);
    }
    return db;
}

inline UCQ random_bucq(Rng& rng, const SigSpec& sig) {
    UCQ q;
    size_t disjuncts = 1 + (rng.chance(30) ? 1 : 0);
    for (size_t di = 0; di < disjuncts; ++di) {
        CQ cq;
        std::vector<std::string> pool = {"Q" + std::to_string(di) + "a",
                                         "Q" + std::to_string(di) + "b",
                                         "Q" + std::to_string(di) + "c"};
        size_t atoms = 1 + (rng.chance(35) ? 1 : 0);
        for (size_t i = 0; i < atoms; ++i)
            cq.body.atoms.push_back(rand_atom(rng, sig, pool, 25, 0, sig.preds.size() - 1));
        std::vector<std::string> used = cq.body.vars();
        cq.exist_vars = used;
        if (used.size() >= 2 && rng.chance(20))
            cq.body.ineqs.emplace_back(Term::variable(used[0]),
                                       Term::variable(used[1]));
        q.disjuncts.push_back(cq);
    }
    return q;
}

inline UCQ fact_query(const Fact& f) {
    return UCQ{{CQ{{}, {}, Conjunction{{f}, {}}}}};
}

// ---------------------------------------------------------------------------
// Brute-force reference layer
// ---------------------------------------------------------------------------

struct Brute {
    std::vector<Fact> facts;
    const std::vector<Dependency>& sigma;
    std::vector<uint64_t> consistent_masks;

    Brute(const Database& db, const std::vector<Dependency>& s)
        : facts(db.facts.begin(), db.facts.end()), sigma(s) {
        for (uint64_t m = 0; m < (uint64_t(1) << facts.size()); ++m)
            if (is_consistent(materialize(m), sigma)) consistent_masks.push_back(m);
    }

    Database materialize(uint64_t m) const {
        Database db;
        for (size_t i = 0; i < facts.size(); ++i)
            if (m & (uint64_t(1) << i)) db.facts.insert(facts[i]);
        return db;
    }

    uint64_t mask_of(const Database& sub) const {
        uint64_t m = 0;
        for (size_t i = 0; i < facts.size(); ++i)
            if (sub.contains(facts[i])) m |= uint64_t(1) << i;
        return m;
    }

    std::vector<uint64_t> repair_masks() const {
        std::vector<uint64_t> out;
        for (uint64_t m : consistent_masks) {
            bool maximal = true;
            for (uint64_t o : consistent_masks)
                if (o != m && (m & o) == m) {
                    maximal = false;
                    break;
                }
            if (maximal) out.push_back(m);
        }
        return out;
    }

    std::vector<Database> repairs() const {
        std::vector<Database> out;
        for (uint64_t m : repair_masks()) out.push_back(materialize(m));
        std::sort(out.begin(), out.end());
        return out;
    }

    bool weakly_consistent(const Database& sub) const {
        uint64_t m = mask_of(sub);
        for (uint64_t c : consistent_masks)
            if ((m & c) == m) return true;
        return false;
    }

    bool is_repair(const Database& cand) const {
        uint64_t m = mask_of(cand);
        for (uint64_t r : repair_masks())
            if (r == m) return true;
        return false;
    }

    bool iar(const UCQ& q) const {
        auto rs = repair_masks();
        uint64_t inter = ~uint64_t(0);
        for (uint64_t r : rs) inter &= r;
        return eval_bucq(q, materialize(inter));
    }

    bool ar(const UCQ& q) const {
        for (uint64_t r : repair_masks())
            if (!eval_bucq(q, materialize(r))) return false;
        return true;
    }
};

}  // namespace support
