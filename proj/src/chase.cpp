#include "cqa/chase.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "cqa/classify.hpp"
#include "cqa/error.hpp"

namespace cqa {

std::vector<Dependency> normalize_full(const std::vector<Dependency>& sigma) {
    if (!is_full(sigma)) throw InputError("normalize_full requires full dependencies");
    std::vector<Dependency> out;
    for (const auto& d : sigma) {
        const CQ& q = d.head.disjuncts[0];
        for (const auto& a : q.body.atoms) {
            Dependency s;
            s.body = d.body;
            s.universal_vars = d.universal_vars;
            s.head.disjuncts.push_back(CQ{{}, {}, Conjunction{{a}, {}}});
            out.push_back(std::move(s));
        }
        for (const auto& [l, r] : q.body.ineqs) {
            if (l == r) {
                // x != x in the head can never hold, so the body is forbidden.
                Dependency s;
                s.body = d.body;
                s.universal_vars = d.universal_vars;
                s.head.disjuncts.push_back(
                    CQ{{}, {}, Conjunction{{Atom{kFalsePred, {}}}, {}}});
                out.push_back(std::move(s));
                continue;
            }
            if (l.is_const() && r.is_const()) continue;  // always satisfied
            Substitution u;
            if (l.is_var())
                u.map[l.name] = r;
            else
                u.map[r.name] = l;
            Dependency s;
            s.body = apply_substitution(d.body, u);
            s.universal_vars = s.body.vars();
            s.head.disjuncts.push_back(
                CQ{{}, {}, Conjunction{{Atom{kFalsePred, {}}}, {}}});
            out.push_back(std::move(s));
        }
    }
    return out;
}

namespace {

bool match(const Atom& a, const Fact& f, std::map<std::string, Term>& binding) {
    if (a.pred != f.pred || a.args.size() != f.args.size()) return false;
    std::vector<std::string> added;
    auto undo = [&]() {
        for (const auto& v : added) binding.erase(v);
    };
    for (size_t i = 0; i < a.args.size(); ++i) {
        const Term& t = a.args[i];
        if (t.is_const()) {
            if (t != f.args[i]) {
                undo();
                return false;
            }
        } else {
            auto it = binding.find(t.name);
            if (it != binding.end()) {
                if (it->second != f.args[i]) {
                    undo();
                    return false;
                }
            } else {
                binding[t.name] = f.args[i];
                added.push_back(t.name);
            }
        }
    }
    return true;
}

// Joins the rule body against `all`. When delta is non-null, only matches
// touching at least one delta fact count (semi-naive restriction).
void fire_rule(const Dependency& rule, size_t rule_idx,
               const std::map<std::string, std::vector<const Fact*>>& idx,
               const std::set<Fact>* delta, ChaseResult& result,
               std::set<Fact>& fresh) {
    const Conjunction& body = rule.body;
    std::map<std::string, Term> binding;
    std::function<void(size_t, bool)> rec = [&](size_t i, bool used_delta) {
        if (result.derived_false) return;
        if (i == body.atoms.size()) {
            if (delta && !used_delta) return;
            for (const auto& [l, r] : body.ineqs) {
                Term lt = l.is_var() ? binding.at(l.name) : l;
                Term rt = r.is_var() ? binding.at(r.name) : r;
                if (lt == rt) return;
            }
            Substitution s;
            s.map = binding;
            const Atom& head = rule.head.disjuncts[0].body.atoms[0];
            if (head.is_false_atom()) {
                result.derived_false = true;
                result.log.push_back({rule_idx, s, head});
                return;
            }
            Fact produced = apply_substitution(head, s);
            if (!result.facts.count(produced) && !fresh.count(produced)) {
                fresh.insert(produced);
                result.log.push_back({rule_idx, s, produced});
            }
            return;
        }
        auto it = idx.find(body.atoms[i].pred);
        if (it == idx.end()) return;
        for (const Fact* f : it->second) {
            std::map<std::string, Term> saved = binding;
            if (match(body.atoms[i], *f, binding)) {
                bool in_delta = delta && delta->count(*f) > 0;
                rec(i + 1, used_delta || in_delta);
                if (result.derived_false) return;
            }
            binding = std::move(saved);
        }
    };
    rec(0, false);
}

}  // namespace

ChaseResult chase(const std::set<Fact>& facts, const std::vector<Dependency>& sigma) {
    std::vector<Dependency> rules = normalize_full(sigma);
    ChaseResult result;
    result.facts = facts;

    std::set<Fact> delta = facts;
    bool first = true;
    while (!delta.empty() && !result.derived_false) {
        std::map<std::string, std::vector<const Fact*>> idx;
        for (const auto& f : result.facts) idx[f.pred].push_back(&f);
        std::set<Fact> fresh;
        for (size_t i = 0; i < rules.size() && !result.derived_false; ++i)
            fire_rule(rules[i], i, idx, first ? nullptr : &delta, result, fresh);
        first = false;
        result.facts.insert(fresh.begin(), fresh.end());
        delta = std::move(fresh);
    }
    return result;
}

ChaseResult chase(const Database& db, const std::vector<Dependency>& sigma) {
    return chase(db.facts, sigma);
}

}  // namespace cqa
