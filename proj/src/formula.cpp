#include "cqa/formula.hpp"

#include <algorithm>
#include <map>

namespace cqa {

using Kind = FOFormula::Kind;

static FOPtr make(FOFormula f) { return std::make_shared<const FOFormula>(std::move(f)); }

FOPtr fo_true() {
    static FOPtr t = make({Kind::True, {}, {}, {}, {}});
    return t;
}

FOPtr fo_false() {
    static FOPtr f = make({Kind::False, {}, {}, {}, {}});
    return f;
}

FOPtr fo_atom(const Atom& a) {
    if (a.is_false_atom()) return fo_false();
    return make({Kind::Atom, a.pred, a.args, {}, {}});
}

FOPtr fo_aux(const Atom& a) {
    if (a.is_false_atom()) return fo_false();
    return make({Kind::AuxAtom, a.pred, a.args, {}, {}});
}

FOPtr fo_eq(const Term& a, const Term& b) {
    return make({Kind::Eq, {}, {a, b}, {}, {}});
}

FOPtr fo_neq(const Term& a, const Term& b) {
    return make({Kind::Neq, {}, {a, b}, {}, {}});
}

FOPtr fo_not(FOPtr f) { return make({Kind::Not, {}, {}, {std::move(f)}, {}}); }

FOPtr fo_and(std::vector<FOPtr> fs) {
    if (fs.empty()) return fo_true();
    if (fs.size() == 1) return fs[0];
    return make({Kind::And, {}, {}, std::move(fs), {}});
}

FOPtr fo_or(std::vector<FOPtr> fs) {
    if (fs.empty()) return fo_false();
    if (fs.size() == 1) return fs[0];
    return make({Kind::Or, {}, {}, std::move(fs), {}});
}

FOPtr fo_implies(FOPtr a, FOPtr b) {
    return make({Kind::Implies, {}, {}, {std::move(a), std::move(b)}, {}});
}

FOPtr fo_exists(std::vector<std::string> vars, FOPtr f) {
    if (vars.empty()) return f;
    return make({Kind::Exists, {}, {}, {std::move(f)}, std::move(vars)});
}

FOPtr fo_forall(std::vector<std::string> vars, FOPtr f) {
    if (vars.empty()) return f;
    return make({Kind::Forall, {}, {}, {std::move(f)}, std::move(vars)});
}

static void collect_free(const FOFormula& f, std::vector<std::string>& out,
                         std::vector<std::string>& bound) {
    auto add = [&](const Term& t) {
        if (!t.is_var()) return;
        if (std::find(bound.begin(), bound.end(), t.name) != bound.end()) return;
        if (std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
    };
    switch (f.kind) {
        case Kind::Atom:
        case Kind::AuxAtom:
        case Kind::Eq:
        case Kind::Neq:
            for (const auto& t : f.args) add(t);
            return;
        case Kind::Exists:
        case Kind::Forall: {
            size_t n = bound.size();
            for (const auto& v : f.vars) bound.push_back(v);
            collect_free(*f.children[0], out, bound);
            bound.resize(n);
            return;
        }
        default:
            for (const auto& c : f.children) collect_free(*c, out, bound);
            return;
    }
}

std::vector<std::string> FOFormula::free_vars() const {
    std::vector<std::string> out, bound;
    collect_free(*this, out, bound);
    return out;
}

bool fo_equal(const FOPtr& a, const FOPtr& b) {
    if (a == b) return true;
    if (a->kind != b->kind || a->pred != b->pred || a->args != b->args ||
        a->vars != b->vars || a->children.size() != b->children.size())
        return false;
    for (size_t i = 0; i < a->children.size(); ++i)
        if (!fo_equal(a->children[i], b->children[i])) return false;
    return true;
}

static bool alpha_eq(const FOFormula& a, const FOFormula& b,
                     std::map<std::string, std::string>& ab,
                     std::map<std::string, std::string>& ba) {
    if (a.kind != b.kind) return false;
    auto term_eq = [&](const Term& x, const Term& y) {
        if (x.is_const() || y.is_const()) return x == y;
        auto ia = ab.find(x.name);
        auto ib = ba.find(y.name);
        if (ia == ab.end() && ib == ba.end()) return x.name == y.name;  // both free
        if (ia == ab.end() || ib == ba.end()) return false;
        return ia->second == y.name && ib->second == x.name;
    };
    switch (a.kind) {
        case Kind::True:
        case Kind::False:
            return true;
        case Kind::Atom:
        case Kind::AuxAtom:
            if (a.pred != b.pred || a.args.size() != b.args.size()) return false;
            for (size_t i = 0; i < a.args.size(); ++i)
                if (!term_eq(a.args[i], b.args[i])) return false;
            return true;
        case Kind::Eq:
        case Kind::Neq:
            return term_eq(a.args[0], b.args[0]) && term_eq(a.args[1], b.args[1]);
        case Kind::Exists:
        case Kind::Forall: {
            if (a.vars.size() != b.vars.size()) return false;
            auto ab2 = ab;
            auto ba2 = ba;
            for (size_t i = 0; i < a.vars.size(); ++i) {
                ab2[a.vars[i]] = b.vars[i];
                ba2[b.vars[i]] = a.vars[i];
            }
            return alpha_eq(*a.children[0], *b.children[0], ab2, ba2);
        }
        default: {
            if (a.children.size() != b.children.size()) return false;
            for (size_t i = 0; i < a.children.size(); ++i)
                if (!alpha_eq(*a.children[i], *b.children[i], ab, ba)) return false;
            return true;
        }
    }
}

bool fo_alpha_equal(const FOPtr& a, const FOPtr& b) {
    std::map<std::string, std::string> ab, ba;
    return alpha_eq(*a, *b, ab, ba);
}

FOPtr apply_substitution(const FOPtr& f, const Substitution& s) {
    if (s.empty()) return f;
    switch (f->kind) {
        case Kind::True:
        case Kind::False:
            return f;
        case Kind::Atom:
        case Kind::AuxAtom:
        case Kind::Eq:
        case Kind::Neq: {
            FOFormula r = *f;
            for (auto& t : r.args) t = s(t);
            return make(std::move(r));
        }
        case Kind::Exists:
        case Kind::Forall: {
            Substitution inner = s;
            for (const auto& v : f->vars) inner.map.erase(v);
            FOFormula r = *f;
            r.children = {apply_substitution(f->children[0], inner)};
            return make(std::move(r));
        }
        default: {
            FOFormula r = *f;
            for (auto& c : r.children) c = apply_substitution(c, s);
            return make(std::move(r));
        }
    }
}

static void collect_consts(const FOFormula& f, std::set<std::string>& out) {
    for (const auto& t : f.args)
        if (t.is_const()) out.insert(t.name);
    for (const auto& c : f.children) collect_consts(*c, out);
}

std::set<std::string> fo_constants(const FOPtr& f) {
    std::set<std::string> out;
    collect_consts(*f, out);
    return out;
}

FOPtr conjunction_to_fo(const Conjunction& c) {
    std::vector<FOPtr> parts;
    for (const auto& a : c.atoms) parts.push_back(fo_atom(a));
    for (const auto& [l, r] : c.ineqs) parts.push_back(fo_neq(l, r));
    return fo_and(std::move(parts));
}

FOPtr cq_to_fo(const CQ& q) {
    return fo_exists(q.exist_vars, conjunction_to_fo(q.body));
}

FOPtr ucq_to_fo(const UCQ& q) {
    std::vector<FOPtr> ds;
    for (const auto& d : q.disjuncts) ds.push_back(cq_to_fo(d));
    return fo_or(std::move(ds));
}

FOPtr dependency_to_fo(const Dependency& d) {
    return fo_forall(d.universal_vars,
                     fo_implies(conjunction_to_fo(d.body), ucq_to_fo(d.head)));
}

}  // namespace cqa
