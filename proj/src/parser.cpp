#include "cqa/parser.hpp"

#include <cctype>
#include <set>

#include "cqa/error.hpp"

namespace cqa {

namespace {

enum class Tok {
    Ident,     // variable or constant or predicate, classified by first char
    Quoted,    // quoted constant
    LParen,
    RParen,
    Comma,
    Period,
    Arrow,     // ->
    Pipe,      // |
    Amp,       // &
    Bang,      // !
    Neq,       // !=
    Eq,        // =
    At,        // @
    End
};

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

struct Lexer {
    const std::string& src;
    size_t pos = 0;
    int line = 1;
    int col = 1;

    explicit Lexer(const std::string& s) : src(s) {}

    void advance() {
        if (pos < src.size() && src[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }

    void skip_ws() {
        for (;;) {
            while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
                advance();
            if (pos < src.size() && src[pos] == '#') {
                while (pos < src.size() && src[pos] != '\n') advance();
                continue;
            }
            break;
        }
    }

    Token next() {
        skip_ws();
        int l = line, c = col;
        if (pos >= src.size()) return {Tok::End, "", l, c};
        char ch = src[pos];
        auto one = [&](Tok k) {
            advance();
            return Token{k, std::string(1, ch), l, c};
        };
        switch (ch) {
            case '(': return one(Tok::LParen);
            case ')': return one(Tok::RParen);
            case ',': return one(Tok::Comma);
            case '.': return one(Tok::Period);
            case '|': return one(Tok::Pipe);
            case '&': return one(Tok::Amp);
            case '=': return one(Tok::Eq);
            case '@': return one(Tok::At);
            case '-':
                advance();
                if (pos < src.size() && src[pos] == '>') {
                    advance();
                    return {Tok::Arrow, "->", l, c};
                }
                throw ParseError("expected '>' after '-'", l, c);
            case '!':
                advance();
                if (pos < src.size() && src[pos] == '=') {
                    advance();
                    return {Tok::Neq, "!=", l, c};
                }
                return {Tok::Bang, "!", l, c};
            case '\'': {
                advance();
                std::string s;
                while (pos < src.size() && src[pos] != '\'') {
                    s += src[pos];
                    advance();
                }
                if (pos >= src.size()) throw ParseError("unterminated quoted constant", l, c);
                advance();
                return {Tok::Quoted, s, l, c};
            }
            default:
                if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_') {
                    std::string s;
                    while (pos < src.size() &&
                           (std::isalnum(static_cast<unsigned char>(src[pos])) ||
                            src[pos] == '_')) {
                        s += src[pos];
                        advance();
                    }
                    return {Tok::Ident, s, l, c};
                }
                throw ParseError(std::string("unexpected character '") + ch + "'", l, c);
        }
    }
};

bool variable_name(const std::string& s) {
    return !s.empty() && s[0] >= 'A' && s[0] <= 'Z';
}

struct Parser {
    Lexer lex;
    Token tok;

    explicit Parser(const std::string& s) : lex(s) { tok = lex.next(); }

    void consume() { tok = lex.next(); }

    void expect(Tok k, const std::string& what) {
        if (tok.kind != k)
            throw ParseError("expected " + what + ", got '" + tok.text + "'", tok.line,
                             tok.col);
        consume();
    }

    bool is_keyword(const std::string& kw) const {
        return tok.kind == Tok::Ident && tok.text == kw;
    }

    Term parse_term() {
        if (tok.kind == Tok::Quoted) {
            Term t = Term::constant(tok.text);
            consume();
            return t;
        }
        if (tok.kind != Tok::Ident)
            throw ParseError("expected a term, got '" + tok.text + "'", tok.line, tok.col);
        std::string name = tok.text;
        consume();
        if (variable_name(name)) return Term::variable(name);
        return Term::constant(name);
    }

    std::vector<std::string> parse_var_list() {
        std::vector<std::string> vars;
        for (;;) {
            if (tok.kind != Tok::Ident || !variable_name(tok.text))
                throw ParseError("expected a variable name, got '" + tok.text + "'",
                                 tok.line, tok.col);
            vars.push_back(tok.text);
            consume();
            if (tok.kind != Tok::Comma) break;
            consume();
        }
        return vars;
    }

    Atom parse_atom_tail(const std::string& pred) {
        Atom a{pred, {}};
        if (tok.kind == Tok::LParen) {
            consume();
            for (;;) {
                a.args.push_back(parse_term());
                if (tok.kind == Tok::Comma) {
                    consume();
                    continue;
                }
                break;
            }
            expect(Tok::RParen, "')'");
        }
        if (a.is_false_atom() && !a.args.empty())
            throw ParseError("FALSE is nullary", tok.line, tok.col);
        return a;
    }

    // atom | term != term ; used for rule bodies, rule heads and queries
    void parse_conjunct(Conjunction& out) {
        if (tok.kind == Tok::Quoted) {
            Term l = parse_term();
            expect(Tok::Neq, "'!=' after a constant term");
            out.ineqs.emplace_back(l, parse_term());
            return;
        }
        if (tok.kind != Tok::Ident)
            throw ParseError("expected an atom or inequality, got '" + tok.text + "'",
                             tok.line, tok.col);
        std::string name = tok.text;
        int l = tok.line, c = tok.col;
        consume();
        if (tok.kind == Tok::LParen) {
            out.atoms.push_back(parse_atom_tail(name));
            return;
        }
        if (tok.kind == Tok::Neq) {
            consume();
            Term left = variable_name(name) ? Term::variable(name) : Term::constant(name);
            out.ineqs.emplace_back(left, parse_term());
            return;
        }
        if (name == "exists" || name == "forall" || name == "TRUE")
            throw ParseError("reserved word '" + name + "' cannot be a predicate", l, c);
        out.atoms.push_back(Atom{name, {}});  // nullary predicate atom
    }

    Conjunction parse_conjunction() {
        Conjunction c;
        for (;;) {
            parse_conjunct(c);
            if (tok.kind == Tok::Comma) {
                consume();
                continue;
            }
            break;
        }
        return c;
    }

    // [exists X,Y .] conjunction
    CQ parse_cq(const std::set<std::string>& outer_vars) {
        CQ q;
        if (is_keyword("exists")) {
            consume();
            q.exist_vars = parse_var_list();
            expect(Tok::Period, "'.' after the existential variable list");
        }
        q.body = parse_conjunction();
        std::set<std::string> exis(q.exist_vars.begin(), q.exist_vars.end());
        for (const auto& v : q.body.vars())
            if (!exis.count(v) && !outer_vars.count(v)) q.free_vars.push_back(v);
        return q;
    }

    Dependency parse_rule() {
        Dependency d;
        d.body = parse_conjunction();
        d.universal_vars = d.body.vars();
        expect(Tok::Arrow, "'->'");
        std::set<std::string> universal(d.universal_vars.begin(), d.universal_vars.end());
        for (;;) {
            d.head.disjuncts.push_back(parse_cq(universal));
            if (tok.kind == Tok::Pipe) {
                consume();
                continue;
            }
            break;
        }
        expect(Tok::Period, "'.' terminating the rule");
        return d;
    }

    // --- FO sentence grammar ---

    FOPtr parse_fo_formula() { return parse_fo_implies(); }

    FOPtr parse_fo_implies() {
        FOPtr left = parse_fo_or();
        if (tok.kind == Tok::Arrow) {
            consume();
            return fo_implies(left, parse_fo_implies());
        }
        return left;
    }

    FOPtr parse_fo_or() {
        std::vector<FOPtr> parts{parse_fo_and()};
        while (tok.kind == Tok::Pipe) {
            consume();
            parts.push_back(parse_fo_and());
        }
        return fo_or(std::move(parts));
    }

    FOPtr parse_fo_and() {
        std::vector<FOPtr> parts{parse_fo_unary()};
        while (tok.kind == Tok::Amp) {
            consume();
            parts.push_back(parse_fo_unary());
        }
        return fo_and(std::move(parts));
    }

    FOPtr parse_fo_unary() {
        if (tok.kind == Tok::Bang) {
            consume();
            return fo_not(parse_fo_unary());
        }
        return parse_fo_primary();
    }

    FOPtr parse_fo_primary() {
        if (tok.kind == Tok::LParen) {
            consume();
            FOPtr f = parse_fo_formula();
            expect(Tok::RParen, "')'");
            return f;
        }
        if (is_keyword("exists") || is_keyword("forall")) {
            bool ex = tok.text == "exists";
            consume();
            auto vars = parse_var_list();
            expect(Tok::Period, "'.' after the quantified variable list");
            FOPtr body = parse_fo_formula();
            return ex ? fo_exists(std::move(vars), body) : fo_forall(std::move(vars), body);
        }
        if (tok.kind == Tok::At) {
            consume();
            if (tok.kind != Tok::Ident)
                throw ParseError("expected a predicate after '@'", tok.line, tok.col);
            std::string pred = tok.text;
            consume();
            return fo_aux(parse_atom_tail(pred));
        }
        if (is_keyword("TRUE")) {
            consume();
            return fo_true();
        }
        if (is_keyword("FALSE")) {
            consume();
            return fo_false();
        }
        // atom, equality or inequality
        if (tok.kind == Tok::Quoted) {
            Term l = parse_term();
            if (tok.kind == Tok::Eq) {
                consume();
                return fo_eq(l, parse_term());
            }
            expect(Tok::Neq, "'=' or '!='");
            return fo_neq(l, parse_term());
        }
        if (tok.kind != Tok::Ident)
            throw ParseError("expected a formula, got '" + tok.text + "'", tok.line,
                             tok.col);
        std::string name = tok.text;
        consume();
        if (tok.kind == Tok::LParen) return fo_atom(parse_atom_tail(name));
        if (tok.kind == Tok::Eq) {
            consume();
            Term l = variable_name(name) ? Term::variable(name) : Term::constant(name);
            return fo_eq(l, parse_term());
        }
        if (tok.kind == Tok::Neq) {
            consume();
            Term l = variable_name(name) ? Term::variable(name) : Term::constant(name);
            return fo_neq(l, parse_term());
        }
        return fo_atom(Atom{name, {}});
    }
};

}  // namespace

std::vector<Dependency> parse_rules(const std::string& text) {
    Parser p(text);
    std::vector<Dependency> out;
    while (p.tok.kind != Tok::End) {
        int l = p.tok.line, c = p.tok.col;
        Dependency d = p.parse_rule();
        if (auto bad = dependency_violation(d))
            throw ParseError("ill-formed dependency: " + *bad, l, c);
        out.push_back(std::move(d));
    }
    // Rename apart: distinct dependencies use distinct variable names.
    std::set<std::string> used;
    size_t counter = 0;
    for (auto& d : out) {
        std::set<std::string> own;
        for (const auto& v : d.body.vars()) own.insert(v);
        for (const auto& q : d.head.disjuncts)
            for (const auto& v : q.body.vars()) own.insert(v);
        Substitution s;
        for (const auto& v : own) {
            if (!used.count(v)) continue;
            std::string fresh;
            do {
                fresh = v + "_" + std::to_string(++counter);
            } while (used.count(fresh) || own.count(fresh));
            s.map[v] = Term::variable(fresh);
        }
        if (!s.empty()) {
            Dependency r;
            r.body = apply_substitution(d.body, s);
            for (const auto& v : d.universal_vars)
                r.universal_vars.push_back(s(Term::variable(v)).name);
            r.head = apply_substitution(d.head, s);
            d = std::move(r);
        }
        for (const auto& v : d.body.vars()) used.insert(v);
        for (const auto& q : d.head.disjuncts)
            for (const auto& v : q.body.vars()) used.insert(v);
    }
    signature_of(out);  // arity consistency
    return out;
}

Database parse_database(const std::string& text) {
    Parser p(text);
    Database db;
    Signature sig;
    while (p.tok.kind != Tok::End) {
        int l = p.tok.line, c = p.tok.col;
        if (p.tok.kind != Tok::Ident)
            throw ParseError("expected a fact, got '" + p.tok.text + "'", l, c);
        std::string pred = p.tok.text;
        p.consume();
        Atom a = p.parse_atom_tail(pred);
        if (a.is_false_atom())
            throw ParseError("the reserved predicate FALSE cannot be a fact", l, c);
        if (!a.ground()) throw ParseError("non-ground atom in database", l, c);
        auto it = sig.find(a.pred);
        if (it == sig.end())
            sig[a.pred] = a.args.size();
        else if (it->second != a.args.size())
            throw ParseError("arity clash for predicate " + a.pred, l, c);
        db.insert(a);
        p.expect(Tok::Period, "'.' terminating the fact");
    }
    return db;
}

UCQ parse_query(const std::string& text) {
    Parser p(text);
    UCQ q;
    for (;;) {
        int l = p.tok.line, c = p.tok.col;
        CQ cq = p.parse_cq({});
        if (!cq.free_vars.empty())
            throw ParseError("free variable " + cq.free_vars.front() +
                                 " in a Boolean query",
                             l, c);
        if (!cq.safe()) {
            std::string bad;
            for (const auto& v : cq.vars())
                if (bad.empty() && !cq.safe()) {
                    std::set<std::string> pa_vars;
                    for (const auto& a : cq.body.atoms)
                        for (const auto& t : a.args)
                            if (t.is_var()) pa_vars.insert(t.name);
                    if (!pa_vars.count(v)) bad = v;
                }
            throw ParseError("unsafe variable " + bad +
                                 " occurs only in inequality atoms",
                             l, c);
        }
        q.disjuncts.push_back(std::move(cq));
        if (p.tok.kind == Tok::Pipe) {
            p.consume();
            continue;
        }
        break;
    }
    if (p.tok.kind == Tok::Period) p.consume();
    if (p.tok.kind != Tok::End)
        throw ParseError("unexpected trailing input '" + p.tok.text + "'", p.tok.line,
                         p.tok.col);
    return q;
}

FOPtr parse_fo(const std::string& text) {
    Parser p(text);
    FOPtr f = p.parse_fo_formula();
    if (p.tok.kind == Tok::Period) p.consume();
    if (p.tok.kind != Tok::End)
        throw ParseError("unexpected trailing input '" + p.tok.text + "'", p.tok.line,
                         p.tok.col);
    return f;
}

}  // namespace cqa
