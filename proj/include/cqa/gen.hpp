#pragma once

#include <optional>
#include <string>
#include <vector>

namespace cqa {

// DIMACS CNF: literals are +/- 1-based variable numbers.
struct Cnf {
    size_t num_vars = 0;
    std::vector<std::vector<int>> clauses;
};

// 2-QBF, forall block then exists block over the matrix.
struct Qbf2 {
    std::vector<int> universal;
    std::vector<int> existential;
    Cnf matrix;
};

Cnf parse_dimacs(const std::string& text);
Qbf2 parse_qdimacs(const std::string& text);

// One generated problem instance with a known ground truth.
struct GenInstance {
    std::string name;
    std::string task;       // "repair-check" | "entail-ar" | "entail-iar"
    std::string holds_iff;  // "input-unsatisfiable" | "input-valid"
    std::string rules_text;
    std::string facts_text;
    std::optional<std::string> candidate_text;  // repair-check candidate
    std::optional<std::string> query_text;      // entailment query
    std::vector<std::string> advertised_classes;
};

// HORN SAT -> repair checking over linear+sticky dependencies; the empty
// database is the unique repair iff the input is unsatisfiable.
std::vector<GenInstance> gen_hornsat_rc(const Cnf& horn);

// Horn 3-CNF -> repair checking over full+guarded dependencies.
std::vector<GenInstance> gen_horn3cnf_rc(const Cnf& horn3);

// CNF SAT -> repair checking over guarded+sticky dependencies.
std::vector<GenInstance> gen_cnf_rc(const Cnf& cnf);

// 2-QBF -> instance checking over guarded+sticky dependencies; the target
// fact is AR-entailed iff the formula is valid.
std::vector<GenInstance> gen_qbf2_ic(const Qbf2& qbf);

// 3-CNF -> instance checking; two instances, one over full+guarded and one
// over acyclic+guarded+sticky dependencies.
std::vector<GenInstance> gen_cnf3_ic(const Cnf& cnf3);

// 3-CNF -> BCQ AR-entailment over acyclic+full+guarded+sticky dependencies.
std::vector<GenInstance> gen_cnf3_ar(const Cnf& cnf3);

std::vector<GenInstance> run_generator(const std::string& reduction,
                                       const std::string& input_text);

// Test-side ground truth.
bool cnf_satisfiable(const Cnf& cnf);
bool qbf2_valid(const Qbf2& qbf);

}  // namespace cqa
