#include "cqa/foeval.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "cqa/error.hpp"

namespace cqa {

namespace {

using FactIndex = std::map<std::string, std::vector<const Fact*>>;

FactIndex index_facts(const Database& db) {
    FactIndex idx;
    for (const auto& f : db.facts) idx[f.pred].push_back(&f);
    return idx;
}

// Matches an atom against a fact under a partial binding. Extends the binding
// on success.
bool match_atom(const Atom& a, const Fact& f, std::map<std::string, Term>& binding) {
    if (a.pred != f.pred || a.args.size() != f.args.size()) return false;
    std::vector<std::pair<std::string, Term>> added;
    for (size_t i = 0; i < a.args.size(); ++i) {
        const Term& t = a.args[i];
        if (t.is_const()) {
            if (t != f.args[i]) goto fail;
        } else {
            auto it = binding.find(t.name);
            if (it != binding.end()) {
                if (it->second != f.args[i]) goto fail;
            } else {
                binding[t.name] = f.args[i];
                added.emplace_back(t.name, f.args[i]);
            }
        }
    }
    return true;
fail:
    for (const auto& [v, _] : added) binding.erase(v);
    return false;
}

void enumerate_matches(const Conjunction& c, size_t atom_idx, const FactIndex& idx,
                       const std::vector<std::string>& domain_consts,
                       std::map<std::string, Term>& binding,
                       const std::function<bool()>& emit, bool& stop) {
    if (stop) return;
    if (atom_idx == c.atoms.size()) {
        // Bind leftover variables (inequality-only ones) over the constants.
        std::vector<std::string> leftover;
        for (const auto& v : c.vars())
            if (!binding.count(v)) leftover.push_back(v);

        std::function<void(size_t)> fill = [&](size_t i) {
            if (stop) return;
            if (i == leftover.size()) {
                for (const auto& [l, r] : c.ineqs) {
                    Term lt = l.is_var() ? binding.at(l.name) : l;
                    Term rt = r.is_var() ? binding.at(r.name) : r;
                    if (lt == rt) return;
                }
                if (emit()) stop = true;
                return;
            }
            for (const auto& cst : domain_consts) {
                binding[leftover[i]] = Term::constant(cst);
                fill(i + 1);
                if (stop) break;
            }
            binding.erase(leftover[i]);
        };
        fill(0);
        return;
    }
    const Atom& a = c.atoms[atom_idx];
    auto it = idx.find(a.pred);
    if (it == idx.end()) return;
    for (const Fact* f : it->second) {
        std::map<std::string, Term> saved = binding;
        if (match_atom(a, *f, binding)) {
            enumerate_matches(c, atom_idx + 1, idx, domain_consts, binding, emit, stop);
            if (stop) return;
        }
        binding = std::move(saved);
    }
}

void for_each_instantiation(const Conjunction& c, const Database& db,
                            const std::function<bool(const Substitution&)>& fn) {
    FactIndex idx = index_facts(db);
    std::vector<std::string> consts;
    for (const auto& cst : db.constants()) consts.push_back(cst);
    std::map<std::string, Term> binding;
    bool stop = false;
    auto emit = [&]() {
        Substitution s;
        s.map = binding;
        return fn(s);
    };
    enumerate_matches(c, 0, idx, consts, binding, emit, stop);
}

}  // namespace

std::vector<Substitution> instantiations(const Conjunction& c, const Database& db) {
    std::vector<Substitution> out;
    for_each_instantiation(c, db, [&](const Substitution& s) {
        out.push_back(s);
        return false;
    });
    std::sort(out.begin(), out.end(), [](const Substitution& a, const Substitution& b) {
        return a.map < b.map;
    });
    return out;
}

std::vector<std::vector<Fact>> images(const UCQ& q, const Database& db) {
    std::set<std::vector<Fact>> seen;
    for (const auto& d : q.disjuncts) {
        for_each_instantiation(d.body, db, [&](const Substitution& s) {
            std::set<Fact> img;
            for (const auto& a : d.body.atoms) img.insert(apply_substitution(a, s));
            seen.insert(std::vector<Fact>(img.begin(), img.end()));
            return false;
        });
    }
    return std::vector<std::vector<Fact>>(seen.begin(), seen.end());
}

bool eval_bcq(const CQ& q, const Database& db) {
    bool found = false;
    for_each_instantiation(q.body, db, [&](const Substitution&) {
        found = true;
        return true;
    });
    return found;
}

bool eval_bucq(const UCQ& q, const Database& db) {
    for (const auto& d : q.disjuncts)
        if (eval_bcq(d, db)) return true;
    return false;
}

bool is_consistent(const Database& db, const std::vector<Dependency>& sigma) {
    for (const auto& tau : sigma) {
        bool violated = false;
        for_each_instantiation(tau.body, db, [&](const Substitution& s) {
            UCQ grounded = apply_substitution(tau.head, s);
            if (!eval_bucq(grounded, db)) {
                violated = true;
                return true;
            }
            return false;
        });
        if (violated) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// FO evaluation
// ---------------------------------------------------------------------------

namespace {

using Kind = FOFormula::Kind;
using Env = std::map<std::string, std::string>;  // variable -> constant

struct EvalSession {
    const Database& main;
    const Database& aux;
    std::vector<std::string> domain;
    FactIndex main_idx;
    FactIndex aux_idx;
    size_t steps = 0;
    size_t cap;
    size_t rename_counter = 0;
    std::unordered_map<const FOFormula*, std::vector<std::string>> free_cache;
    std::unordered_map<std::string, bool> memo;

    EvalSession(const EvalStructure& s, const FOPtr& f, size_t cap) : main(s.main), aux(s.aux), cap(cap) {
        std::set<std::string> cs = s.main.constants();
        for (const auto& c : s.aux.constants()) cs.insert(c);
        for (const auto& c : fo_constants(f)) cs.insert(c);
        domain.assign(cs.begin(), cs.end());
        main_idx = index_facts(s.main);
        aux_idx = index_facts(s.aux);
    }

    void tick() {
        if (++steps > cap) throw CapExceeded("evaluation step budget exceeded");
    }

    const std::vector<std::string>& free_of(const FOPtr& f) {
        auto it = free_cache.find(f.get());
        if (it != free_cache.end()) return it->second;
        return free_cache.emplace(f.get(), f->free_vars()).first->second;
    }

    std::string resolve(const Term& t, const Env& env) const {
        if (t.is_const()) return t.name;
        auto it = env.find(t.name);
        if (it == env.end())
            throw InputError("unbound variable " + t.name + " during evaluation");
        return it->second;
    }

    bool lookup_atom(const FOFormula& f, const Env& env) const {
        Fact fact{f.pred, {}};
        fact.args.reserve(f.args.size());
        for (const auto& t : f.args) fact.args.push_back(Term::constant(resolve(t, env)));
        const Database& db = f.kind == Kind::Atom ? main : aux;
        return db.contains(fact);
    }

    bool eval(const FOPtr& f, const Env& env) {
        tick();
        switch (f->kind) {
            case Kind::True: return true;
            case Kind::False: return false;
            case Kind::Atom:
            case Kind::AuxAtom: return lookup_atom(*f, env);
            case Kind::Eq: return resolve(f->args[0], env) == resolve(f->args[1], env);
            case Kind::Neq: return resolve(f->args[0], env) != resolve(f->args[1], env);
            default: break;
        }
        std::string key = memo_key(f, env);
        auto hit = memo.find(key);
        if (hit != memo.end()) return hit->second;
        bool result;
        switch (f->kind) {
            case Kind::Not:
                result = !eval(f->children[0], env);
                break;
            case Kind::And: {
                result = true;
                for (const auto& c : f->children)
                    if (!eval(c, env)) {
                        result = false;
                        break;
                    }
                break;
            }
            case Kind::Or: {
                result = false;
                for (const auto& c : f->children)
                    if (eval(c, env)) {
                        result = true;
                        break;
                    }
                break;
            }
            case Kind::Implies:
                result = !eval(f->children[0], env) || eval(f->children[1], env);
                break;
            case Kind::Exists: {
                Env e = env;
                result = solve({f->children[0]}, std::set<std::string>(f->vars.begin(), f->vars.end()), e);
                break;
            }
            case Kind::Forall: {
                Env e = env;
                result = !solve({fo_not(f->children[0])},
                                std::set<std::string>(f->vars.begin(), f->vars.end()), e);
                break;
            }
            default:
                result = false;
        }
        memo.emplace(std::move(key), result);
        return result;
    }

    std::string memo_key(const FOPtr& f, const Env& env) {
        std::string key = std::to_string(reinterpret_cast<uintptr_t>(f.get()));
        for (const auto& v : free_of(f)) {
            key += '|';
            key += v;
            key += '=';
            auto it = env.find(v);
            key += it == env.end() ? std::string("?") : it->second;
        }
        return key;
    }

    // Conjunctive solver: finds a binding of the unbound variables making all
    // items true. Items are decomposed and joined against the fact indexes.
    bool solve(std::vector<FOPtr> items, std::set<std::string> unbound, Env& env) {
        for (;;) {
            tick();
            // 1. Evaluate items whose free variables are all bound.
            bool progressed = false;
            for (size_t i = 0; i < items.size();) {
                const auto& fv = free_of(items[i]);
                bool bound = true;
                for (const auto& v : fv)
                    if (!env.count(v)) {
                        bound = false;
                        break;
                    }
                if (bound) {
                    if (!eval(items[i], env)) return false;
                    items.erase(items.begin() + i);
                    progressed = true;
                } else {
                    ++i;
                }
            }
            if (items.empty()) {
                // Leftover quantified variables just need the domain nonempty.
                for (const auto& v : unbound)
                    if (!env.count(v) && domain.empty()) return false;
                return true;
            }

            // 2. Join on an atom with unbound variables; pick the narrowest.
            int best = -1;
            size_t best_width = SIZE_MAX;
            for (size_t i = 0; i < items.size(); ++i) {
                Kind k = items[i]->kind;
                if (k != Kind::Atom && k != Kind::AuxAtom) continue;
                const FactIndex& idx = k == Kind::Atom ? main_idx : aux_idx;
                auto it = idx.find(items[i]->pred);
                size_t width = it == idx.end() ? 0 : it->second.size();
                if (width < best_width) {
                    best_width = width;
                    best = static_cast<int>(i);
                }
            }
            if (best >= 0) {
                FOPtr atom = items[best];
                items.erase(items.begin() + best);
                const FactIndex& idx = atom->kind == Kind::Atom ? main_idx : aux_idx;
                auto it = idx.find(atom->pred);
                if (it == idx.end()) return false;
                for (const Fact* fact : it->second) {
                    tick();
                    Env saved = env;
                    bool ok = true;
                    for (size_t i = 0; i < atom->args.size() && ok; ++i) {
                        const Term& t = atom->args[i];
                        const std::string& val = fact->args[i].name;
                        if (t.is_const()) {
                            ok = t.name == val;
                        } else {
                            auto b = env.find(t.name);
                            if (b != env.end())
                                ok = b->second == val;
                            else
                                env[t.name] = val;
                        }
                    }
                    if (ok && solve(items, unbound, env)) return true;
                    env = std::move(saved);
                }
                return false;
            }

            if (progressed) continue;

            // 3. Orientable equalities bind a variable directly.
            bool bound_one = false;
            for (size_t i = 0; i < items.size(); ++i) {
                if (items[i]->kind != Kind::Eq) continue;
                const Term& l = items[i]->args[0];
                const Term& r = items[i]->args[1];
                auto value_of = [&](const Term& t) -> std::optional<std::string> {
                    if (t.is_const()) return t.name;
                    auto it = env.find(t.name);
                    if (it != env.end()) return it->second;
                    return std::nullopt;
                };
                auto lv = value_of(l);
                auto rv = value_of(r);
                if (lv && !rv) {
                    env[r.name] = *lv;
                    bound_one = true;
                } else if (rv && !lv) {
                    env[l.name] = *rv;
                    bound_one = true;
                }
                if (bound_one) {
                    items.erase(items.begin() + i);
                    break;
                }
            }
            if (bound_one) continue;

            // 4. Decompose structural items.
            bool decomposed = false;
            for (size_t i = 0; i < items.size(); ++i) {
                FOPtr f = items[i];
                if (f->kind == Kind::And) {
                    items.erase(items.begin() + i);
                    items.insert(items.end(), f->children.begin(), f->children.end());
                    decomposed = true;
                    break;
                }
                if (f->kind == Kind::Exists) {
                    items.erase(items.begin() + i);
                    Substitution ren;
                    std::vector<std::string> fresh;
                    for (const auto& v : f->vars) {
                        std::string nv = "#" + std::to_string(++rename_counter);
                        ren.map[v] = Term::variable(nv);
                        fresh.push_back(nv);
                    }
                    items.push_back(apply_substitution(f->children[0], ren));
                    for (const auto& v : fresh) unbound.insert(v);
                    decomposed = true;
                    break;
                }
                if (f->kind == Kind::Not) {
                    FOPtr pushed = push_negation(f->children[0]);
                    if (pushed) {
                        items[i] = pushed;
                        decomposed = true;
                        break;
                    }
                    continue;  // negated atom: wait for other items to bind it
                }
                if (f->kind == Kind::Or) {
                    std::vector<FOPtr> rest(items.begin(), items.end());
                    rest.erase(rest.begin() + i);
                    for (const auto& d : f->children) {
                        Env saved = env;
                        std::vector<FOPtr> branch = rest;
                        branch.push_back(d);
                        if (solve(std::move(branch), unbound, env)) return true;
                        env = std::move(saved);
                    }
                    return false;
                }
                if (f->kind == Kind::Implies) {
                    items[i] = fo_or({fo_not(f->children[0]), f->children[1]});
                    decomposed = true;
                    break;
                }
            }
            if (decomposed) continue;

            // 5. Fall back to enumerating an unbound variable of some item.
            std::string var;
            for (const auto& it : items) {
                for (const auto& v : free_of(it))
                    if (!env.count(v)) {
                        var = v;
                        break;
                    }
                if (!var.empty()) break;
            }
            if (var.empty())
                throw InputError("evaluator failed to make progress");
            for (const auto& c : domain) {
                tick();
                Env saved = env;
                env[var] = c;
                if (solve(items, unbound, env)) return true;
                env = std::move(saved);
            }
            return false;
        }
    }

    // One-step negation push; returns nullptr for negated atoms (left as-is).
    static FOPtr push_negation(const FOPtr& f) {
        switch (f->kind) {
            case Kind::True: return fo_false();
            case Kind::False: return fo_true();
            case Kind::Not: return f->children[0];
            case Kind::Eq: return fo_neq(f->args[0], f->args[1]);
            case Kind::Neq: return fo_eq(f->args[0], f->args[1]);
            case Kind::And: {
                std::vector<FOPtr> parts;
                for (const auto& c : f->children) parts.push_back(fo_not(c));
                return fo_or(std::move(parts));
            }
            case Kind::Or: {
                std::vector<FOPtr> parts;
                for (const auto& c : f->children) parts.push_back(fo_not(c));
                return fo_and(std::move(parts));
            }
            case Kind::Implies:
                return fo_and({f->children[0], fo_not(f->children[1])});
            case Kind::Exists:
                return fo_forall(f->vars, fo_not(f->children[0]));
            default:
                return nullptr;  // Atom, AuxAtom, Forall
        }
    }
};

}  // namespace

bool eval_fo(const FOPtr& f, const EvalStructure& s, size_t step_cap) {
    if (!f->sentence())
        throw InputError("eval_fo requires a sentence (free variable " +
                         f->free_vars().front() + ")");
    EvalSession session(s, f, step_cap);
    Env env;
    return session.eval(f, env);
}

}  // namespace cqa
