#include "cqa/rewrite.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "cqa/classify.hpp"
#include "cqa/error.hpp"
#include "cqa/chase.hpp"
#include "cqa/foeval.hpp"

namespace cqa {

namespace {

using Kind = FOFormula::Kind;

FOPtr aux_conjunction_fo(const Conjunction& c) {
    std::vector<FOPtr> parts;
    for (const auto& a : c.atoms) parts.push_back(fo_aux(a));
    for (const auto& [l, r] : c.ineqs) parts.push_back(fo_neq(l, r));
    return fo_and(std::move(parts));
}

FOPtr aux_ucq_fo(const UCQ& q) {
    std::vector<FOPtr> ds;
    for (const auto& d : q.disjuncts)
        ds.push_back(fo_exists(d.exist_vars, aux_conjunction_fo(d.body)));
    return fo_or(std::move(ds));
}

VarGen seeded_vargen(const std::vector<Dependency>& sigma) {
    VarGen vg;
    for (const auto& d : sigma) vg.reserve_from(d);
    return vg;
}

std::vector<std::string> fresh_tuple(VarGen& vg, size_t n, const std::string& hint) {
    std::vector<std::string> out;
    out.reserve(n);
    for (size_t i = 0; i < n; ++i) out.push_back(vg.fresh(hint));
    return out;
}

}  // namespace

FOPtr psi_inc(const std::vector<Dependency>& sigma) {
    std::vector<FOPtr> disjuncts;
    for (const auto& tau : sigma) {
        FOPtr body = aux_conjunction_fo(tau.body);
        FOPtr head = aux_ucq_fo(tau.head);
        disjuncts.push_back(
            fo_exists(tau.universal_vars, fo_and({body, fo_not(head)})));
    }
    return fo_or(std::move(disjuncts));
}

namespace {

// Widens @p atoms (p = at's predicate) into (@p(t) | t = x).
FOPtr widen_aux_for(const FOPtr& f, const Atom& at) {
    switch (f->kind) {
        case Kind::AuxAtom: {
            if (f->pred != at.pred || f->args.size() != at.args.size()) return f;
            std::vector<FOPtr> eqs;
            for (size_t i = 0; i < at.args.size(); ++i)
                eqs.push_back(fo_eq(f->args[i], at.args[i]));
            return fo_or({f, fo_and(std::move(eqs))});
        }
        case Kind::Exists:
        case Kind::Forall: {
            FOFormula r = *f;
            r.children = {widen_aux_for(f->children[0], at)};
            return std::make_shared<const FOFormula>(std::move(r));
        }
        default: {
            if (f->children.empty()) return f;
            FOFormula r = *f;
            for (auto& c : r.children) c = widen_aux_for(c, at);
            return std::make_shared<const FOFormula>(std::move(r));
        }
    }
}

}  // namespace

FOPtr psi_inc_at(const std::vector<Dependency>& sigma, const Atom& at) {
    return widen_aux_for(psi_inc(sigma), at);
}

FOPtr psi_rc(const std::vector<Dependency>& sigma) {
    if (!topological_order(build_graph(sigma)))
        throw InputError("psi_rc requires acyclic dependencies");
    VarGen vg = seeded_vargen(sigma);
    std::vector<FOPtr> parts{fo_not(psi_inc(sigma))};
    Signature sig = signature_of(sigma);
    for (const auto& p : sorted_predicates(sig)) {
        auto xs = fresh_tuple(vg, sig.at(p), "X");
        Atom pat{p, {}};
        for (const auto& v : xs) pat.args.push_back(Term::variable(v));
        parts.push_back(fo_forall(
            xs, fo_implies(fo_and({fo_atom(pat), fo_not(fo_aux(pat))}),
                           psi_inc_at(sigma, pat))));
    }
    return fo_and(std::move(parts));
}

// ---------------------------------------------------------------------------
// UCQ rewriting for full dependencies
// ---------------------------------------------------------------------------

namespace {

// Canonical serialization up to variable renaming: atoms are pre-sorted by a
// name-free signature, variables numbered in first-occurrence order, ties
// broken towards the lexicographically least serialization (bounded effort).
std::string canonical_key(const RewriteDisjunct& d) {
    // Group atoms by name-free signature.
    std::vector<size_t> idx(d.body.atoms.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    auto sig = [&](size_t i) {
        std::string s = d.body.atoms[i].pred + "/";
        for (const auto& t : d.body.atoms[i].args)
            s += t.is_const() ? "c:" + t.name + ";" : "*;";
        return s;
    };
    std::stable_sort(idx.begin(), idx.end(),
                     [&](size_t a, size_t b) { return sig(a) < sig(b); });

    // Serialize under a given atom order, numbering variables on first use.
    auto serialize = [&](const std::vector<size_t>& order) {
        std::map<std::string, size_t> names;
        auto label = [&](const Term& t) -> std::string {
            if (t.is_const()) return "c:" + t.name;
            auto it = names.find(t.name);
            if (it == names.end()) it = names.emplace(t.name, names.size()).first;
            return "v" + std::to_string(it->second);
        };
        std::string out;
        for (const auto& t : d.answer) out += label(t) + ",";
        out += "|";
        for (size_t i : order) {
            const Atom& a = d.body.atoms[i];
            out += a.pred + "(";
            for (const auto& t : a.args) out += label(t) + ",";
            out += ");";
        }
        out += "|";
        std::vector<std::string> ins;
        for (const auto& [l, r] : d.body.ineqs) {
            std::string a = label(l), b = label(r);
            if (b < a) std::swap(a, b);
            ins.push_back(a + "!=" + b);
        }
        std::sort(ins.begin(), ins.end());
        ins.erase(std::unique(ins.begin(), ins.end()), ins.end());
        for (const auto& s : ins) out += s + ";";
        return out;
    };

    // Explore tie permutations within equal-signature groups, keeping the
    // least serialization; bounded effort.
    std::string best = serialize(idx);
    size_t budget = 200;
    std::function<void(size_t)> permute = [&](size_t start) {
        if (budget == 0) return;
        if (start >= idx.size()) {
            --budget;
            std::string s = serialize(idx);
            if (s < best) best = s;
            return;
        }
        size_t end = start + 1;
        while (end < idx.size() && sig(idx[end]) == sig(idx[start])) ++end;
        if (end - start <= 1) {
            permute(end);
            return;
        }
        std::vector<size_t> group(idx.begin() + start, idx.begin() + end);
        std::sort(group.begin(), group.end());
        do {
            std::copy(group.begin(), group.end(), idx.begin() + start);
            permute(end);
            if (budget == 0) return;
        } while (std::next_permutation(group.begin(), group.end()));
    };
    permute(0);
    return best;
}

// Drops inequalities that always hold; returns false if one can never hold.
bool simplify_ineqs(Conjunction& c) {
    std::vector<std::pair<Term, Term>> kept;
    for (const auto& [l, r] : c.ineqs) {
        if (l == r) return false;
        if (l.is_const() && r.is_const()) continue;
        Term a = l, b = r;
        if (b < a) std::swap(a, b);
        kept.emplace_back(a, b);
    }
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    c.ineqs = std::move(kept);
    return true;
}

}  // namespace

RewrittenUCQ cq_rewrite_full(const std::vector<Dependency>& sigma, const CQ& query,
                             size_t max_cqs) {
    std::vector<Dependency> rules = normalize_full(sigma);
    VarGen vg = seeded_vargen(sigma);
    vg.reserve_from(UCQ{{query}});

    RewrittenUCQ out;
    out.arity = query.free_vars.size();

    RewriteDisjunct start;
    for (const auto& v : query.free_vars) start.answer.push_back(Term::variable(v));
    start.body = query.body;
    if (!simplify_ineqs(start.body)) return out;

    std::set<std::string> seen;
    std::vector<RewriteDisjunct> work{start};
    seen.insert(canonical_key(start));
    out.disjuncts.push_back(start);

    for (size_t wi = 0; wi < work.size(); ++wi) {
        RewriteDisjunct d = work[wi];
        for (size_t ai = 0; ai < d.body.atoms.size(); ++ai) {
            for (const auto& rule : rules) {
                Dependency r = rename_apart(rule, vg);
                const Atom& head = r.head.disjuncts[0].body.atoms[0];
                auto u = mgu(d.body.atoms[ai], head);
                if (!u) continue;
                RewriteDisjunct nd;
                for (const auto& t : d.answer) nd.answer.push_back((*u)(t));
                for (size_t i = 0; i < d.body.atoms.size(); ++i) {
                    if (i == ai) continue;
                    nd.body.atoms.push_back(apply_substitution(d.body.atoms[i], *u));
                }
                for (const auto& a : r.body.atoms)
                    nd.body.atoms.push_back(apply_substitution(a, *u));
                for (const auto& [l, rr] : d.body.ineqs)
                    nd.body.ineqs.emplace_back((*u)(l), (*u)(rr));
                for (const auto& [l, rr] : r.body.ineqs)
                    nd.body.ineqs.emplace_back((*u)(l), (*u)(rr));
                if (!simplify_ineqs(nd.body)) continue;
                std::string key = canonical_key(nd);
                if (seen.count(key)) continue;
                if (seen.size() >= max_cqs)
                    throw CapExceeded("query rewriting exceeded " +
                                      std::to_string(max_cqs) + " conjuncts");
                seen.insert(std::move(key));
                out.disjuncts.push_back(nd);
                work.push_back(std::move(nd));
            }
        }
    }
    return out;
}

std::set<std::vector<std::string>> rewritten_answers(const RewrittenUCQ& r,
                                                     const Database& db) {
    std::set<std::vector<std::string>> out;
    for (const auto& d : r.disjuncts) {
        for (const auto& s : instantiations(d.body, db)) {
            std::vector<std::string> tuple;
            bool ok = true;
            for (const auto& t : d.answer) {
                Term v = s(t);
                if (v.is_var()) {
                    ok = false;  // answer variable absent from the body
                    break;
                }
                tuple.push_back(v.name);
            }
            if (ok) out.insert(std::move(tuple));
        }
    }
    return out;
}

FOPtr rewritten_to_fo(const RewrittenUCQ& r, const std::vector<std::string>& target,
                      bool aux, VarGen& vg) {
    std::vector<FOPtr> disjuncts;
    for (const auto& d : r.disjuncts) {
        // Fresh copy of the disjunct's variables.
        Substitution fresh;
        auto freshen = [&](const Term& t) {
            if (t.is_var() && !fresh.map.count(t.name))
                fresh.map[t.name] = Term::variable(vg.fresh(t.name));
        };
        for (const auto& t : d.answer) freshen(t);
        for (const auto& a : d.body.atoms)
            for (const auto& t : a.args) freshen(t);
        for (const auto& [l, rr] : d.body.ineqs) {
            freshen(l);
            freshen(rr);
        }

        // Bind answer positions to the target variables.
        Substitution to_target;
        std::vector<FOPtr> eqs;
        for (size_t i = 0; i < target.size(); ++i) {
            Term t = fresh(d.answer[i]);
            Term x = Term::variable(target[i]);
            if (t.is_const()) {
                eqs.push_back(fo_eq(x, t));
            } else if (to_target.map.count(t.name)) {
                eqs.push_back(fo_eq(x, to_target.map.at(t.name)));
            } else {
                to_target.map[t.name] = x;
            }
        }
        Substitution s = compose(to_target, fresh);
        Conjunction body = apply_substitution(d.body, s);

        std::vector<FOPtr> parts;
        for (const auto& a : body.atoms) parts.push_back(aux ? fo_aux(a) : fo_atom(a));
        for (const auto& [l, rr] : body.ineqs) parts.push_back(fo_neq(l, rr));
        for (auto& e : eqs) parts.push_back(std::move(e));

        std::vector<std::string> exis;
        for (const auto& v : body.vars())
            if (std::find(target.begin(), target.end(), v) == target.end())
                exis.push_back(v);
        disjuncts.push_back(fo_exists(std::move(exis), fo_and(std::move(parts))));
    }
    return fo_or(std::move(disjuncts));
}

// ---------------------------------------------------------------------------
// Phi^wc / Phi^rc
// ---------------------------------------------------------------------------

namespace {

void require_full_rewritable(const std::vector<Dependency>& sigma, const char* what) {
    if (!is_full(sigma))
        throw InputError(std::string(what) + " requires full dependencies");
    bool acyclic = topological_order(build_graph(sigma)).has_value();
    if (!acyclic && !is_linear(sigma) && !is_sticky(sigma))
        throw InputError(std::string(what) +
                         " requires an acyclic, linear or sticky set of dependencies");
}

}  // namespace

FOPtr phi_wc(const std::vector<Dependency>& sigma, size_t max_cqs) {
    require_full_rewritable(sigma, "phi_wc");
    VarGen vg = seeded_vargen(sigma);
    Signature sig = signature_of(sigma);
    std::vector<FOPtr> parts;
    for (const auto& p : sorted_predicates(sig)) {
        auto xs = fresh_tuple(vg, sig.at(p), "X");
        Atom pat{p, {}};
        for (const auto& v : xs) pat.args.push_back(Term::variable(v));
        CQ q;
        q.free_vars = xs;
        q.body.atoms.push_back(pat);
        RewrittenUCQ rw = cq_rewrite_full(sigma, q, max_cqs);
        parts.push_back(
            fo_forall(xs, fo_implies(rewritten_to_fo(rw, xs, true, vg), fo_atom(pat))));
    }
    // The FALSE atom must stay underivable.
    CQ qf;
    qf.body.atoms.push_back(Atom{kFalsePred, {}});
    RewrittenUCQ rf = cq_rewrite_full(sigma, qf, max_cqs);
    // The seed disjunct (the FALSE atom itself) evaluates to false and is
    // dropped; only genuine derivations remain.
    RewrittenUCQ pruned;
    pruned.arity = 0;
    for (const auto& d : rf.disjuncts) {
        bool has_false = false;
        for (const auto& a : d.body.atoms)
            if (a.is_false_atom()) has_false = true;
        if (!has_false) pruned.disjuncts.push_back(d);
    }
    if (!pruned.disjuncts.empty())
        parts.push_back(fo_not(rewritten_to_fo(pruned, {}, true, vg)));
    return fo_and(std::move(parts));
}

FOPtr replace_aux_with_atoms(const FOPtr& f, const std::vector<Atom>& A) {
    switch (f->kind) {
        case Kind::AuxAtom: {
            std::vector<FOPtr> disjuncts{f};
            for (const auto& a : A) {
                if (a.pred != f->pred || a.args.size() != f->args.size()) continue;
                std::vector<FOPtr> eqs;
                bool unifiable = true;
                for (size_t i = 0; i < a.args.size() && unifiable; ++i) {
                    const Term& t = f->args[i];
                    const Term& t2 = a.args[i];
                    if (t == t2) continue;
                    if (t.is_const() && t2.is_const())
                        unifiable = false;
                    else
                        eqs.push_back(fo_eq(t2, t));
                }
                if (unifiable) disjuncts.push_back(fo_and(std::move(eqs)));
            }
            if (disjuncts.size() == 1) return f;
            return fo_or(std::move(disjuncts));
        }
        default: {
            if (f->children.empty()) return f;
            FOFormula r = *f;
            for (auto& c : r.children) c = replace_aux_with_atoms(c, A);
            return std::make_shared<const FOFormula>(std::move(r));
        }
    }
}

FOPtr phi_wc_with(const std::vector<Atom>& A, const std::vector<Dependency>& sigma,
                  size_t max_cqs) {
    return replace_aux_with_atoms(phi_wc(sigma, max_cqs), A);
}

FOPtr phi_rc(const std::vector<Dependency>& sigma, size_t max_cqs) {
    require_full_rewritable(sigma, "phi_rc");
    FOPtr wc = phi_wc(sigma, max_cqs);
    VarGen vg = seeded_vargen(sigma);
    Signature sig = signature_of(sigma);
    std::vector<FOPtr> parts{wc};
    for (const auto& p : sorted_predicates(sig)) {
        auto ys = fresh_tuple(vg, sig.at(p), "Y");
        Atom pat{p, {}};
        for (const auto& v : ys) pat.args.push_back(Term::variable(v));
        FOPtr widened = replace_aux_with_atoms(wc, {pat});
        parts.push_back(fo_not(fo_exists(
            ys, fo_and({fo_atom(pat), fo_not(fo_aux(pat)), widened}))));
    }
    return fo_and(std::move(parts));
}

// ---------------------------------------------------------------------------
// Psi^wc / Psi^iar (acyclic + linear)
// ---------------------------------------------------------------------------

namespace {

std::vector<Dependency> topo_sorted(const std::vector<Dependency>& sigma,
                                    const char* what) {
    auto order = topological_order(build_graph(sigma));
    if (!order) throw InputError(std::string(what) + " requires acyclic dependencies");
    if (!is_linear(sigma))
        throw InputError(std::string(what) + " requires linear dependencies");
    std::vector<Dependency> out;
    out.reserve(sigma.size());
    for (size_t i : *order) out.push_back(sigma[i]);
    return out;
}

FOPtr psi_wc_rec(const Atom& alpha, const std::vector<Dependency>& ordered,
                 size_t from, VarGen& vg) {
    std::vector<FOPtr> conjuncts;
    for (size_t i = from; i < ordered.size(); ++i) {
        Dependency tau = rename_apart(ordered[i], vg);
        auto u = mgu(alpha, tau.body.atoms[0]);
        if (!u) continue;

        // Guard: the unifier's constraints on alpha's variables, plus the
        // instantiated body inequalities.
        std::vector<FOPtr> guard;
        for (const auto& v : alpha.args)
            if (v.is_var() && u->bound(v.name)) {
                Term img = (*u)(v);
                if (!(img.is_var() && img.name == v.name))
                    guard.push_back(fo_eq(v, img));
            }
        bool impossible = false;
        for (const auto& [l, r] : tau.body.ineqs) {
            Term lt = (*u)(l), rt = (*u)(r);
            if (lt == rt) {
                impossible = true;  // the dependency can never fire here
                break;
            }
            if (lt.is_const() && rt.is_const()) continue;
            guard.push_back(fo_neq(lt, rt));
        }
        if (impossible) continue;

        std::vector<FOPtr> disjuncts;
        for (const auto& qd : tau.head.disjuncts) {
            Conjunction qc = apply_substitution(qd.body, *u);
            std::vector<FOPtr> inner;
            for (const auto& a : qc.atoms) inner.push_back(fo_atom(a));
            for (const auto& [l, r] : qc.ineqs) inner.push_back(fo_neq(l, r));
            for (const auto& a : qc.atoms) {
                if (a.is_false_atom()) continue;
                FOPtr rec = psi_wc_rec(a, ordered, i + 1, vg);
                if (rec->kind != Kind::True) inner.push_back(std::move(rec));
            }
            disjuncts.push_back(fo_exists(qd.exist_vars, fo_and(std::move(inner))));
        }
        FOPtr head = fo_or(std::move(disjuncts));
        conjuncts.push_back(guard.empty() ? head
                                          : fo_implies(fo_and(std::move(guard)), head));
    }
    return fo_and(std::move(conjuncts));
}

}  // namespace

FOPtr psi_wc_atom(const Atom& alpha, const std::vector<Dependency>& sigma, VarGen& vg) {
    auto ordered = topo_sorted(sigma, "psi_wc_atom");
    return psi_wc_rec(alpha, ordered, 0, vg);
}

FOPtr psi_wc_atom(const Atom& alpha, const std::vector<Dependency>& sigma) {
    VarGen vg = seeded_vargen(sigma);
    for (const auto& t : alpha.args)
        if (t.is_var()) vg.reserved.insert(t.name);
    return psi_wc_atom(alpha, sigma, vg);
}

FOPtr psi_wc_sentence(const std::vector<Dependency>& sigma) {
    auto ordered = topo_sorted(sigma, "psi_wc_sentence");
    VarGen vg = seeded_vargen(sigma);
    Signature sig = signature_of(sigma);
    std::vector<FOPtr> parts;
    for (const auto& p : sorted_predicates(sig)) {
        auto xs = fresh_tuple(vg, sig.at(p), "X");
        Atom pat{p, {}};
        for (const auto& v : xs) pat.args.push_back(Term::variable(v));
        parts.push_back(
            fo_forall(xs, fo_implies(fo_aux(pat), psi_wc_rec(pat, ordered, 0, vg))));
    }
    return fo_and(std::move(parts));
}

FOPtr psi_iar(const UCQ& query, const std::vector<Dependency>& sigma) {
    auto ordered = topo_sorted(sigma, "psi_iar");
    VarGen vg = seeded_vargen(sigma);
    vg.reserve_from(query);
    std::vector<FOPtr> disjuncts;
    for (const auto& q : query.disjuncts) {
        std::vector<FOPtr> inner;
        for (const auto& a : q.body.atoms) inner.push_back(fo_atom(a));
        for (const auto& [l, r] : q.body.ineqs) inner.push_back(fo_neq(l, r));
        for (const auto& a : q.body.atoms) {
            if (a.is_false_atom()) continue;
            FOPtr rec = psi_wc_rec(a, ordered, 0, vg);
            if (rec->kind != Kind::True) inner.push_back(std::move(rec));
        }
        disjuncts.push_back(fo_exists(q.vars(), fo_and(std::move(inner))));
    }
    return fo_or(std::move(disjuncts));
}

// ---------------------------------------------------------------------------
// Atoms(P,k) / Phi^ni / Phi^iar
// ---------------------------------------------------------------------------

std::vector<Atom> atoms_templates(const Signature& sig, size_t k, VarGen& vg) {
    std::vector<Atom> out;
    for (size_t copy = 1; copy <= k; ++copy) {
        for (const auto& p : sorted_predicates(sig)) {
            Atom a{p, {}};
            for (size_t i = 0; i < sig.at(p); ++i)
                a.args.push_back(Term::variable(vg.fresh("A")));
            out.push_back(std::move(a));
        }
    }
    return out;
}

FOPtr phi_ni(const std::vector<Atom>& A, const CQ& q,
             const std::vector<Dependency>& sigma, size_t max_cqs) {
    FOPtr wc_a = phi_wc_with(A, sigma, max_cqs);
    std::vector<Atom> a_plus_q = A;
    for (const auto& a : q.body.atoms)
        if (!a.is_false_atom()) a_plus_q.push_back(a);
    FOPtr wc_aq = phi_wc_with(a_plus_q, sigma, max_cqs);

    std::vector<FOPtr> inner;
    for (const auto& a : A) inner.push_back(fo_atom(a));
    inner.push_back(wc_a);
    inner.push_back(fo_not(wc_aq));

    std::vector<std::string> ys;
    for (const auto& a : A)
        for (const auto& t : a.args)
            if (t.is_var()) ys.push_back(t.name);
    return fo_exists(std::move(ys), fo_and(std::move(inner)));
}

size_t default_iar_k(const std::vector<Dependency>& sigma) {
    size_t m = 1;
    for (const auto& d : sigma) {
        size_t count = 0;
        for (const auto& a : d.body.atoms)
            if (!a.is_false_atom()) ++count;
        for (const auto& q : d.head.disjuncts)
            for (const auto& a : q.body.atoms)
                if (!a.is_false_atom()) ++count;
        m = std::max(m, count);
    }
    size_t k = 1;
    for (size_t i = 0; i <= sigma.size(); ++i) {
        if (k > 1'000'000 / std::max<size_t>(m, 2)) return 1'000'000;
        k *= m;
    }
    return k;
}

FOPtr phi_iar(const CQ& q, const std::vector<Dependency>& sigma, size_t k,
              size_t max_subsets, size_t max_cqs) {
    require_full_rewritable(sigma, "phi_iar");
    VarGen vg = seeded_vargen(sigma);
    vg.reserve_from(UCQ{{q}});
    Signature sig = signature_of(sigma);
    std::vector<std::string> preds = sorted_predicates(sig);

    // Subsets of the template set, up to variable renaming: one canonical
    // subset per per-predicate multiplicity vector.
    size_t count = 1;
    for (const auto& p : preds) {
        size_t choices = sig.at(p) == 0 ? 2 : k + 1;
        if (count > max_subsets / choices + 1) count = max_subsets + 1;
        else count *= choices;
        if (count > max_subsets)
            throw CapExceeded("phi_iar: " + std::to_string(k) +
                              " template copies over " + std::to_string(preds.size()) +
                              " predicates exceed the subset cap");
    }

    // Per-predicate template copies.
    std::map<std::string, std::vector<Atom>> copies;
    for (const auto& p : preds) {
        size_t n = sig.at(p) == 0 ? 1 : k;
        for (size_t c = 0; c < n; ++c) {
            Atom a{p, {}};
            for (size_t i = 0; i < sig.at(p); ++i)
                a.args.push_back(Term::variable(vg.fresh("A")));
            copies[p].push_back(std::move(a));
        }
    }

    std::vector<FOPtr> parts{conjunction_to_fo(q.body)};
    std::vector<size_t> mult(preds.size(), 0);
    for (;;) {
        std::vector<Atom> A;
        for (size_t i = 0; i < preds.size(); ++i)
            for (size_t c = 0; c < mult[i]; ++c) A.push_back(copies[preds[i]][c]);
        parts.push_back(fo_not(phi_ni(A, q, sigma, max_cqs)));

        // Next multiplicity vector.
        size_t i = 0;
        for (; i < preds.size(); ++i) {
            size_t limit = sig.at(preds[i]) == 0 ? 1 : k;
            if (mult[i] < limit) {
                ++mult[i];
                break;
            }
            mult[i] = 0;
        }
        if (i == preds.size()) break;
    }
    return fo_exists(q.vars(), fo_and(std::move(parts)));
}

FOPtr phi_iar(const UCQ& query, const std::vector<Dependency>& sigma, size_t k,
              size_t max_subsets, size_t max_cqs) {
    std::vector<FOPtr> parts;
    for (const auto& q : query.disjuncts)
        parts.push_back(phi_iar(q, sigma, k, max_subsets, max_cqs));
    return fo_or(std::move(parts));
}

}  // namespace cqa
