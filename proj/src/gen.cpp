#include "cqa/gen.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <sstream>

#include "cqa/ast.hpp"
#include "cqa/error.hpp"
#include "cqa/printer.hpp"

namespace cqa {

namespace {

std::string var_const(int v) { return "v" + std::to_string(v); }
std::string clause_const(size_t i) { return "c" + std::to_string(i); }

Fact mk(const std::string& pred, const std::vector<std::string>& args) {
    Fact f{pred, {}};
    for (const auto& a : args) f.args.push_back(Term::constant(a));
    return f;
}

std::set<int> cnf_vars(const Cnf& cnf) {
    std::set<int> vs;
    for (const auto& cl : cnf.clauses)
        for (int lit : cl) vs.insert(std::abs(lit));
    return vs;
}

void check_nonempty(const Cnf& cnf, const char* what) {
    if (cnf.clauses.empty()) throw InputError(std::string(what) + ": no clauses");
    for (const auto& cl : cnf.clauses)
        if (cl.empty()) throw InputError(std::string(what) + ": empty clause");
}

void check_width3(const Cnf& cnf, const char* what) {
    for (const auto& cl : cnf.clauses)
        if (cl.size() != 3)
            throw InputError(std::string(what) +
                             ": every clause must have exactly 3 literals");
}

void check_horn(const Cnf& cnf, const char* what) {
    for (const auto& cl : cnf.clauses) {
        int pos = 0;
        for (int lit : cl)
            if (lit > 0) ++pos;
        if (pos > 1)
            throw InputError(std::string(what) +
                             ": clause with more than one positive literal");
    }
}

}  // namespace

Cnf parse_dimacs(const std::string& text) {
    Cnf cnf;
    std::istringstream in(text);
    std::string line;
    bool header = false;
    std::vector<int> current;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c' || line[0] == '%') continue;
        if (line[0] == 'p') {
            std::istringstream h(line);
            std::string p, kind;
            size_t v = 0, c = 0;
            h >> p >> kind >> v >> c;
            if (kind != "cnf") throw InputError("DIMACS header must be 'p cnf'");
            cnf.num_vars = v;
            header = true;
            continue;
        }
        std::istringstream ls(line);
        int lit;
        while (ls >> lit) {
            if (lit == 0) {
                cnf.clauses.push_back(current);
                current.clear();
            } else {
                current.push_back(lit);
            }
        }
    }
    if (!current.empty()) cnf.clauses.push_back(current);
    if (!header) throw InputError("missing DIMACS 'p cnf' header");
    return cnf;
}

Qbf2 parse_qdimacs(const std::string& text) {
    Qbf2 q;
    std::istringstream in(text);
    std::string line;
    bool header = false;
    bool saw_e = false;
    std::vector<int> current;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c' || line[0] == '%') continue;
        if (line[0] == 'p') {
            std::istringstream h(line);
            std::string p, kind;
            size_t v = 0, c = 0;
            h >> p >> kind >> v >> c;
            if (kind != "cnf") throw InputError("QDIMACS header must be 'p cnf'");
            q.matrix.num_vars = v;
            header = true;
            continue;
        }
        if (line[0] == 'a' || line[0] == 'e') {
            std::istringstream ls(line.substr(1));
            int v;
            std::vector<int>& block = line[0] == 'a' ? q.universal : q.existential;
            if (line[0] == 'a' && saw_e)
                throw InputError("QDIMACS: expected a single forall-exists prefix");
            if (line[0] == 'e') saw_e = true;
            while (ls >> v && v != 0) block.push_back(v);
            continue;
        }
        std::istringstream ls(line);
        int lit;
        while (ls >> lit) {
            if (lit == 0) {
                q.matrix.clauses.push_back(current);
                current.clear();
            } else {
                current.push_back(lit);
            }
        }
    }
    if (!current.empty()) q.matrix.clauses.push_back(current);
    if (!header) throw InputError("missing QDIMACS 'p cnf' header");
    return q;
}

// ---------------------------------------------------------------------------
// HORN SAT -> repair checking (linear + sticky)
// ---------------------------------------------------------------------------

std::vector<GenInstance> gen_hornsat_rc(const Cnf& horn) {
    check_nonempty(horn, "hornsat-rc");
    check_horn(horn, "hornsat-rc");

    // A Horn rule: body variables and a head ("u" replaces a missing head).
    struct Rule {
        std::vector<std::string> body;
        std::string head;
    };
    const std::string u = "u";
    std::vector<Rule> rules;
    size_t u_headed = 0;
    for (const auto& cl : horn.clauses) {
        Rule r;
        r.head = u;
        for (int lit : cl) {
            if (lit > 0)
                r.head = var_const(lit);
            else
                r.body.push_back(var_const(-lit));
        }
        if (r.head == u) ++u_headed;
        rules.push_back(std::move(r));
    }
    // The target fact references the first two positions of u's rule cycle,
    // so u needs at least two head occurrences; u -> u is inert.
    while (u_headed < 2) {
        rules.push_back({{u}, u});
        ++u_headed;
    }
    // Variables never derived by any rule keep a self-supporting cycle so
    // that their body occurrences are not spuriously discharged.
    std::set<std::string> vars;
    std::set<std::string> headed;
    for (const auto& r : rules) {
        vars.insert(r.head);
        headed.insert(r.head);
        for (const auto& b : r.body) vars.insert(b);
    }
    for (const auto& v : vars)
        if (!headed.count(v)) rules.push_back({{v}, v});

    // Ids: a u-headed rule first.
    std::stable_sort(rules.begin(), rules.end(), [&](const Rule& a, const Rule& b) {
        return (a.head == u) > (b.head == u);
    });

    Database db;
    std::map<std::string, std::vector<size_t>> by_head;
    for (size_t i = 0; i < rules.size(); ++i) by_head[rules[i].head].push_back(i);
    for (const auto& [x, ids] : by_head) {
        size_t h = ids.size();
        for (size_t k = 0; k < h; ++k)
            db.insert(mk("H", {"r" + std::to_string(ids[k] + 1), x,
                               std::to_string(k + 1),
                               std::to_string(((k + 1) % h) + 1)}));
    }
    for (size_t i = 0; i < rules.size(); ++i)
        for (const auto& x : rules[i].body)
            db.insert(mk("B", {"r" + std::to_string(i + 1), x}));

    GenInstance g;
    g.name = "hornsat";
    g.task = "repair-check";
    g.holds_iff = "input-unsatisfiable";
    g.rules_text =
        "H(X,Y,Z,W) -> exists V . B(X,V) .\n"
        "H(X,Y,Z,W) -> exists V,T . H(V,Y,W,T) .\n"
        "B(X,Y) -> exists Z,W,V . H(Z,Y,W,V) .\n"
        "H(X,Y,Z,W) -> H(r1,u,1,2) .\n"
        "B(X,Y) -> H(r1,u,1,2) .\n";
    g.facts_text = print_database(db);
    g.candidate_text = "";  // the empty database
    g.advertised_classes = {"linear", "sticky"};
    return {g};
}

// ---------------------------------------------------------------------------
// Horn 3-CNF -> repair checking (full + guarded)
// ---------------------------------------------------------------------------

std::vector<GenInstance> gen_horn3cnf_rc(const Cnf& horn3) {
    check_nonempty(horn3, "horn3cnf-rc");
    check_horn(horn3, "horn3cnf-rc");
    for (const auto& cl : horn3.clauses)
        if (cl.size() > 3)
            throw InputError("horn3cnf-rc: clause with more than 3 literals");

    auto vars = cnf_vars(horn3);
    Database db, candidate;
    for (int v : vars) {
        db.insert(mk("M", {var_const(v)}));
        db.insert(mk("A", {var_const(v)}));
    }
    std::set<std::string> units;
    for (const auto& cl : horn3.clauses) {
        std::vector<std::string> body;
        std::string head;
        for (int lit : cl) {
            if (lit > 0)
                head = var_const(lit);
            else
                body.push_back(var_const(-lit));
        }
        if (body.empty()) {
            units.insert(head);  // unit fact
            continue;
        }
        while (body.size() < 2) body.push_back(body.front());
        if (head.empty()) {
            while (body.size() < 3) body.push_back(body.front());
            db.insert(mk("N", {body[0], body[1], body[2]}));
        } else {
            db.insert(mk("P", {body[0], body[1], head}));
        }
    }
    for (const auto& z : units)
        for (int w : vars) db.insert(mk("U", {z, var_const(w)}));

    for (const auto& f : db.facts)
        if (f.pred != "M" && f.pred != "A") candidate.insert(f);

    GenInstance g;
    g.name = "horn3cnf";
    g.task = "repair-check";
    g.holds_iff = "input-unsatisfiable";
    g.rules_text =
        "A(W), U(X,W) -> M(X) .\n"
        "P(X,Y,Z), M(X), M(Y) -> M(Z) .\n"
        "N(X,Y,Z), M(X), M(Y), M(Z) -> F .\n"
        "M(X) -> A(X) .\n";
    g.facts_text = print_database(db);
    g.candidate_text = print_database(candidate);
    g.advertised_classes = {"full", "guarded"};
    return {g};
}

// ---------------------------------------------------------------------------
// CNF SAT -> repair checking / 2-QBF -> instance checking (guarded + sticky)
// ---------------------------------------------------------------------------

namespace {

const char* kCycleRules =
    "R(X,Y,Z,W) -> exists X1,Y1,Z1 . R(X1,Y1,Z1,Z) .\n"
    "R(X,0,Y,Z), R(X,1,Y1,Z1), RAUX(X,Y,Z,Y1,Z1) -> U(X,Y,Z,Y1,Z1) .\n";

// Clause-literal facts R(var, sign, c_i, c_{(i mod n)+1}).
void add_clause_facts(Database& db, const Cnf& cnf) {
    size_t n = cnf.clauses.size();
    for (size_t i = 1; i <= n; ++i)
        for (int lit : cnf.clauses[i - 1])
            db.insert(mk("R", {var_const(std::abs(lit)), lit > 0 ? "1" : "0",
                               clause_const(i), clause_const((i % n) + 1)}));
}

// Witness facts RAUX(v, i, i', j, j') for every negative/positive slot pair
// of v among the R facts; equivalent to the full cross product for blocking
// both signs, at a fraction of the size.
Database aux_witnesses(const Database& r_facts) {
    std::map<std::string, std::set<std::pair<std::string, std::string>>> neg, pos;
    for (const auto& f : r_facts.facts) {
        if (f.pred != "R") continue;
        const std::string& sign = f.args[1].name;
        auto slot = std::make_pair(f.args[2].name, f.args[3].name);
        if (sign == "0") neg[f.args[0].name].insert(slot);
        if (sign == "1") pos[f.args[0].name].insert(slot);
    }
    Database out;
    for (const auto& [v, ns] : neg) {
        auto it = pos.find(v);
        if (it == pos.end()) continue;
        for (const auto& [ny, nz] : ns)
            for (const auto& [py, pz] : it->second)
                out.insert(mk("RAUX", {v, ny, nz, py, pz}));
    }
    return out;
}

}  // namespace

std::vector<GenInstance> gen_cnf_rc(const Cnf& cnf) {
    check_nonempty(cnf, "cnf-rc");
    Database r_facts;
    add_clause_facts(r_facts, cnf);
    Database aux = aux_witnesses(r_facts);
    Database db = r_facts.set_union(aux);

    GenInstance g;
    g.name = "cnf";
    g.task = "repair-check";
    g.holds_iff = "input-unsatisfiable";
    g.rules_text = kCycleRules;
    g.facts_text = print_database(db);
    g.candidate_text = print_database(aux);
    g.advertised_classes = {"guarded", "sticky"};
    return {g};
}

std::vector<GenInstance> gen_qbf2_ic(const Qbf2& qbf) {
    check_nonempty(qbf.matrix, "qbf2-ic");
    Database r_facts;
    add_clause_facts(r_facts, qbf.matrix);
    // Free sign choice for the universal variables.
    for (int x : qbf.universal) {
        r_facts.insert(mk("R", {var_const(x), "1", "c0", "c0"}));
        r_facts.insert(mk("R", {var_const(x), "0", "c0", "c0"}));
    }
    Fact target = mk("R", {"a", "a", "c1", "a"});
    Database db = r_facts;
    db.insert(target);
    db = db.set_union(aux_witnesses(r_facts));

    GenInstance g;
    g.name = "qbf2";
    g.task = "entail-ar";
    g.holds_iff = "input-valid";
    g.rules_text = kCycleRules;
    g.facts_text = print_database(db);
    g.query_text = print_atom(target);
    g.advertised_classes = {"guarded", "sticky"};
    return {g};
}

// ---------------------------------------------------------------------------
// 3-CNF -> instance checking (two encodings)
// ---------------------------------------------------------------------------

namespace {

// The value vectors over a clause's variable tuple that satisfy it,
// consistent on repeated variables, in binary order.
std::vector<std::array<int, 3>> satisfying_vectors(const std::vector<int>& clause) {
    std::vector<std::array<int, 3>> out;
    for (int bits = 0; bits < 8; ++bits) {
        std::array<int, 3> val{(bits >> 2) & 1, (bits >> 1) & 1, bits & 1};
        bool consistent = true, satisfied = false;
        for (size_t i = 0; i < 3 && consistent; ++i) {
            for (size_t j = i + 1; j < 3; ++j)
                if (std::abs(clause[i]) == std::abs(clause[j]) && val[i] != val[j])
                    consistent = false;
            int want = clause[i] > 0 ? 1 : 0;
            if (val[i] == want) satisfied = true;
        }
        if (consistent && satisfied) out.push_back(val);
    }
    return out;
}

}  // namespace

std::vector<GenInstance> gen_cnf3_ic(const Cnf& cnf3) {
    check_nonempty(cnf3, "cnf3-ic");
    check_width3(cnf3, "cnf3-ic");
    auto vars = cnf_vars(cnf3);
    size_t m = cnf3.clauses.size();

    // Variant 1: full + guarded chain over S(c1)..S(cm).
    Database db1;
    for (int v : vars) {
        db1.insert(mk("V", {var_const(v), "0"}));
        db1.insert(mk("V", {var_const(v), "1"}));
    }
    for (size_t i = 1; i <= m; ++i) {
        const auto& cl = cnf3.clauses[i - 1];
        std::vector<std::string> args{clause_const(i - 1), clause_const(i)};
        for (int lit : cl) {
            args.push_back(var_const(std::abs(lit)));
            args.push_back(lit > 0 ? "1" : "0");
        }
        db1.insert(mk("C", args));
        db1.insert(mk("S", {clause_const(i)}));
    }
    GenInstance g1;
    g1.name = "cnf3_ic_full_guarded";
    g1.task = "entail-ar";
    g1.holds_iff = "input-unsatisfiable";
    g1.rules_text =
        "S(Z), C(Y,Z,X1,V1,X2,V2,X3,V3), V(X1,V1) -> S(Y) .\n"
        "S(Z), C(Y,Z,X1,V1,X2,V2,X3,V3), V(X2,V2) -> S(Y) .\n"
        "S(Z), C(Y,Z,X1,V1,X2,V2,X3,V3), V(X3,V3) -> S(Y) .\n"
        "V(X,0), V(X,1) -> U .\n";
    g1.facts_text = print_database(db1);
    g1.query_text = print_atom(mk("S", {clause_const(m)}));
    g1.advertised_classes = {"full", "guarded"};

    // Variant 2: acyclic + guarded + sticky with the 7-level clause chain.
    Database db2;
    for (int v : vars) {
        db2.insert(mk("V", {var_const(v), "0"}));
        db2.insert(mk("V", {var_const(v), "1"}));
    }
    for (size_t i = 1; i <= m; ++i) {
        const auto& cl = cnf3.clauses[i - 1];
        auto vecs = satisfying_vectors(cl);
        // Levels beyond the satisfying vectors repeat the last one; the
        // duplicate levels drop together with it, keeping the chain exact.
        for (size_t level = 1; level <= 7; ++level) {
            const auto& val = vecs[std::min(level, vecs.size()) - 1];
            std::vector<std::string> args{clause_const(i)};
            for (size_t j = 0; j < 3; ++j) {
                args.push_back(var_const(std::abs(cl[j])));
                args.push_back(std::to_string(val[j]));
            }
            db2.insert(mk("C" + std::to_string(level), args));
        }
    }
    db2.insert(mk("U", {}));
    std::string rules2 = "V(X,1), V(X,0) -> U1(X) .\n";
    for (int j = 1; j <= 7; ++j)
        rules2 += "C" + std::to_string(j) +
                  "(X,Y1,Z1,Y2,Z2,Y3,Z3), V(Y1,Z1), V(Y2,Z2), V(Y3,Z3) -> "
                  "U2(Y1,Z1,Y2,Z2,Y3,Z3) .\n";
    for (int j = 1; j <= 6; ++j)
        rules2 += "C" + std::to_string(j) +
                  "(X,Y1,Y2,Y3,Y4,Y5,Y6) -> exists W1,W2,W3,W4,W5,W6 . C" +
                  std::to_string(j + 1) + "(X,W1,W2,W3,W4,W5,W6) .\n";
    rules2 += "U -> exists X,Y1,Y2,Y3,Y4,Y5,Y6 . C1(X,Y1,Y2,Y3,Y4,Y5,Y6) .\n";

    GenInstance g2;
    g2.name = "cnf3_ic_acyclic";
    g2.task = "entail-ar";
    g2.holds_iff = "input-unsatisfiable";
    g2.rules_text = rules2;
    g2.facts_text = print_database(db2);
    g2.query_text = "U";
    g2.advertised_classes = {"acyclic", "guarded", "sticky"};

    return {g1, g2};
}

std::vector<GenInstance> gen_cnf3_ar(const Cnf& cnf3) {
    check_nonempty(cnf3, "cnf3-ar");
    check_width3(cnf3, "cnf3-ar");
    auto vars = cnf_vars(cnf3);
    Database db;
    for (int v : vars) {
        db.insert(mk("V", {var_const(v), "0"}));
        db.insert(mk("V", {var_const(v), "1"}));
    }
    for (size_t i = 1; i <= cnf3.clauses.size(); ++i) {
        std::vector<std::string> args{clause_const(i)};
        for (int lit : cnf3.clauses[i - 1]) {
            args.push_back(var_const(std::abs(lit)));
            args.push_back(lit > 0 ? "0" : "1");  // falsifying value
        }
        db.insert(mk("NC", args));
    }
    GenInstance g;
    g.name = "cnf3_ar";
    g.task = "entail-ar";
    g.holds_iff = "input-unsatisfiable";
    g.rules_text =
        "V(X,0), V(X,1) -> U(X) .\n"
        "NC(Z,X1,V1,X2,V2,X3,V3) -> V(X1,V1) .\n"
        "NC(Z,X1,V1,X2,V2,X3,V3) -> V(X2,V2) .\n"
        "NC(Z,X1,V1,X2,V2,X3,V3) -> V(X3,V3) .\n";
    g.facts_text = print_database(db);
    g.query_text = "exists Z,X1,V1,X2,V2,X3,V3 . NC(Z,X1,V1,X2,V2,X3,V3)";
    g.advertised_classes = {"acyclic", "full", "guarded", "sticky"};
    return {g};
}

std::vector<GenInstance> run_generator(const std::string& reduction,
                                       const std::string& input_text) {
    if (reduction == "hornsat-rc") return gen_hornsat_rc(parse_dimacs(input_text));
    if (reduction == "horn3cnf-rc") return gen_horn3cnf_rc(parse_dimacs(input_text));
    if (reduction == "cnf-rc") return gen_cnf_rc(parse_dimacs(input_text));
    if (reduction == "qbf2-ic") return gen_qbf2_ic(parse_qdimacs(input_text));
    if (reduction == "cnf3-ic") return gen_cnf3_ic(parse_dimacs(input_text));
    if (reduction == "cnf3-ar") return gen_cnf3_ar(parse_dimacs(input_text));
    throw InputError("unknown reduction '" + reduction + "'");
}

bool cnf_satisfiable(const Cnf& cnf) {
    std::vector<int> vars(cnf_vars(cnf).begin(), cnf_vars(cnf).end());
    size_t n = vars.size();
    for (uint64_t bits = 0; bits < (uint64_t(1) << n); ++bits) {
        std::map<int, bool> val;
        for (size_t i = 0; i < n; ++i) val[vars[i]] = bits & (uint64_t(1) << i);
        bool ok = true;
        for (const auto& cl : cnf.clauses) {
            bool sat = false;
            for (int lit : cl)
                if (val[std::abs(lit)] == (lit > 0)) sat = true;
            if (!sat) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return cnf.clauses.empty();
}

bool qbf2_valid(const Qbf2& qbf) {
    auto occurring = cnf_vars(qbf.matrix);
    std::vector<int> uni(qbf.universal.begin(), qbf.universal.end());
    std::set<int> uni_set(uni.begin(), uni.end());
    std::vector<int> exi;
    for (int v : occurring)
        if (!uni_set.count(v)) exi.push_back(v);

    size_t nu = uni.size(), ne = exi.size();
    for (uint64_t ub = 0; ub < (uint64_t(1) << nu); ++ub) {
        bool found = false;
        for (uint64_t eb = 0; eb < (uint64_t(1) << ne) && !found; ++eb) {
            std::map<int, bool> val;
            for (size_t i = 0; i < nu; ++i) val[uni[i]] = ub & (uint64_t(1) << i);
            for (size_t i = 0; i < ne; ++i) val[exi[i]] = eb & (uint64_t(1) << i);
            bool ok = true;
            for (const auto& cl : qbf.matrix.clauses) {
                bool sat = false;
                for (int lit : cl)
                    if (val.count(std::abs(lit)) && val[std::abs(lit)] == (lit > 0))
                        sat = true;
                if (!sat) {
                    ok = false;
                    break;
                }
            }
            if (ok) found = true;
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace cqa
