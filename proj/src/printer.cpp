#include "cqa/printer.hpp"

#include <cctype>
#include <sstream>

namespace cqa {

namespace {

bool plain_constant(const std::string& s) {
    if (s.empty()) return false;
    char c0 = s[0];
    if (!(std::islower(static_cast<unsigned char>(c0)) ||
          std::isdigit(static_cast<unsigned char>(c0))))
        return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

}  // namespace

std::string print_term(const Term& t) {
    if (t.is_var()) return t.name;
    return plain_constant(t.name) ? t.name : "'" + t.name + "'";
}

std::string print_atom(const Atom& a) {
    if (a.args.empty()) return a.pred;
    std::vector<std::string> args;
    for (const auto& t : a.args) args.push_back(print_term(t));
    return a.pred + "(" + join(args, ",") + ")";
}

std::string print_conjunction(const Conjunction& c) {
    std::vector<std::string> parts;
    for (const auto& a : c.atoms) parts.push_back(print_atom(a));
    for (const auto& [l, r] : c.ineqs)
        parts.push_back(print_term(l) + " != " + print_term(r));
    return join(parts, ", ");
}

std::string print_cq(const CQ& q) {
    std::string out;
    if (!q.exist_vars.empty()) out += "exists " + join(q.exist_vars, ",") + " . ";
    out += print_conjunction(q.body);
    return out;
}

std::string print_query(const UCQ& q) {
    std::vector<std::string> parts;
    for (const auto& d : q.disjuncts) parts.push_back(print_cq(d));
    return join(parts, " | ");
}

std::string print_rule(const Dependency& d) {
    std::vector<std::string> heads;
    for (const auto& q : d.head.disjuncts) heads.push_back(print_cq(q));
    return print_conjunction(d.body) + " -> " + join(heads, " | ") + " .";
}

std::string print_rules(const std::vector<Dependency>& sigma) {
    std::string out;
    for (const auto& d : sigma) out += print_rule(d) + "\n";
    return out;
}

std::string print_database(const Database& db) {
    std::string out;
    for (const auto& f : db.facts) out += print_atom(f) + ".\n";
    return out;
}

namespace {

using Kind = FOFormula::Kind;

// Connective children are parenthesized; atoms, (in)equalities and the
// constants are not, except under '!'.
bool needs_parens(const FOFormula& f) {
    switch (f.kind) {
        case Kind::And:
        case Kind::Or:
        case Kind::Implies:
        case Kind::Exists:
        case Kind::Forall:
            return true;
        default:
            return false;
    }
}

void print(const FOFormula& f, std::ostringstream& out);

void print_child(const FOPtr& c, std::ostringstream& out) {
    if (needs_parens(*c)) {
        out << "(";
        print(*c, out);
        out << ")";
    } else {
        print(*c, out);
    }
}

void print(const FOFormula& f, std::ostringstream& out) {
    switch (f.kind) {
        case Kind::True:
            out << "TRUE";
            return;
        case Kind::False:
            out << "FALSE";
            return;
        case Kind::Atom:
            out << print_atom(Atom{f.pred, f.args});
            return;
        case Kind::AuxAtom:
            out << "@" << print_atom(Atom{f.pred, f.args});
            return;
        case Kind::Eq:
            out << print_term(f.args[0]) << " = " << print_term(f.args[1]);
            return;
        case Kind::Neq:
            out << print_term(f.args[0]) << " != " << print_term(f.args[1]);
            return;
        case Kind::Not:
            out << "!(";
            print(*f.children[0], out);
            out << ")";
            return;
        case Kind::And:
        case Kind::Or: {
            const char* sep = f.kind == Kind::And ? " & " : " | ";
            for (size_t i = 0; i < f.children.size(); ++i) {
                if (i) out << sep;
                print_child(f.children[i], out);
            }
            return;
        }
        case Kind::Implies:
            print_child(f.children[0], out);
            out << " -> ";
            // Right side keeps its own implications unparenthesized
            // (right-associative grammar).
            if (f.children[1]->kind == Kind::Implies) {
                print(*f.children[1], out);
            } else {
                print_child(f.children[1], out);
            }
            return;
        case Kind::Exists:
        case Kind::Forall: {
            out << (f.kind == Kind::Exists ? "exists " : "forall ");
            for (size_t i = 0; i < f.vars.size(); ++i) {
                if (i) out << ",";
                out << f.vars[i];
            }
            out << " . (";
            print(*f.children[0], out);
            out << ")";
            return;
        }
    }
}

}  // namespace

std::string print_fo(const FOPtr& f) {
    std::ostringstream out;
    print(*f, out);
    return out.str();
}

}  // namespace cqa
