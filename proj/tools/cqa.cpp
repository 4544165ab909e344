// Command-line front end: classification, consistency checking, repair
// computation and checking, weak consistency, AR/IAR entailment, rewriting
// output and reduction-based instance generation.
//
// Exit codes: 0 = decision TRUE / success, 1 = decision FALSE, 2 = input
// error, 3 = resource cap exceeded.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "cqa/bundle.hpp"
#include "cqa/classify.hpp"
#include "cqa/error.hpp"
#include "cqa/foeval.hpp"
#include "cqa/gen.hpp"
#include "cqa/parser.hpp"
#include "cqa/printer.hpp"
#include "cqa/rewrite.hpp"
#include "cqa/solve.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw cqa::InputError("cannot open file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::optional<std::string> slurp_opt(const std::string& path) {
    if (path.empty()) return std::nullopt;
    return slurp(path);
}

int decision_exit(bool value) { return value ? 0 : 1; }

// Runs the chosen engine and the enumeration oracle side by side and fails
// loudly on disagreement.
bool cross_checked(const std::function<bool()>& engine,
                   const std::function<bool()>& oracle) {
    bool engine_result = false, oracle_result = false;
    std::exception_ptr engine_err, oracle_err;
    std::thread t1([&] {
        try {
            engine_result = engine();
        } catch (...) {
            engine_err = std::current_exception();
        }
    });
    std::thread t2([&] {
        try {
            oracle_result = oracle();
        } catch (...) {
            oracle_err = std::current_exception();
        }
    });
    t1.join();
    t2.join();
    if (engine_err) std::rethrow_exception(engine_err);
    if (oracle_err) std::rethrow_exception(oracle_err);
    if (engine_result != oracle_result)
        throw cqa::InputError("cross-check failed: engine and oracle disagree");
    return engine_result;
}

void print_profile(const cqa::ClassProfile& p) {
    auto flag = [](bool b) { return b ? "yes" : "no"; };
    std::cout << "acyclic: " << flag(p.acyclic) << "\n"
              << "linear:  " << flag(p.linear) << "\n"
              << "full:    " << flag(p.full) << "\n"
              << "guarded: " << flag(p.guarded) << "\n"
              << "sticky:  " << flag(p.sticky) << "\n";
    std::cout << "engines:\n";
    for (const auto& [problem, engine] : p.engines)
        std::cout << "  " << cqa::problem_name(problem) << ": " << engine << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"consistent query answering over disjunctive embedded dependencies"};
    app.require_subcommand(1);

    bool cross_check = false;
    long seed = 0;
    app.add_flag("--cross-check", cross_check,
                 "also run the enumeration oracle and fail on disagreement");
    app.add_option("--seed", seed, "seed for randomized auxiliary runs");

    std::string rules_file, db_file, candidate_file, subset_file, query_file;
    std::string engine_name = "auto", task, out_file, reduction, input_file, out_dir;
    std::string semantics;
    size_t max_facts = 24;
    long k_opt = -1;

    auto* c_classify = app.add_subcommand("classify", "report class flags and engines");
    c_classify->add_option("-r,--rules", rules_file)->required();

    auto* c_check = app.add_subcommand("check", "database consistency");
    c_check->add_option("-r,--rules", rules_file)->required();
    c_check->add_option("-d,--database", db_file)->required();

    auto* c_repairs = app.add_subcommand("repairs", "enumerate repairs");
    c_repairs->add_option("-r,--rules", rules_file)->required();
    c_repairs->add_option("-d,--database", db_file)->required();
    bool only_enumerate = false, only_intersection = false;
    c_repairs->add_flag("--enumerate", only_enumerate, "print the repairs only");
    c_repairs->add_flag("--intersection", only_intersection,
                        "print the intersection only");
    c_repairs->add_option("--max-facts", max_facts, "subset enumeration cap");

    auto* c_rc = app.add_subcommand("repair-check", "is the candidate a repair");
    c_rc->add_option("-r,--rules", rules_file)->required();
    c_rc->add_option("-d,--database", db_file)->required();
    c_rc->add_option("--candidate", candidate_file)->required();
    c_rc->add_option("--engine", engine_name)
        ->check(CLI::IsMember({"auto", "general", "linear", "full", "acyclic-fo",
                               "full-fo"}));

    auto* c_wc = app.add_subcommand("wc", "weak consistency of a subset");
    c_wc->add_option("-r,--rules", rules_file)->required();
    c_wc->add_option("-d,--database", db_file)->required();
    c_wc->add_option("--subset", subset_file)->required();
    c_wc->add_option("--engine", engine_name)
        ->check(CLI::IsMember({"auto", "search", "chase", "linear",
                               "acyclic-linear-fo"}));

    auto* c_entail = app.add_subcommand("entail", "AR or IAR entailment");
    c_entail->add_option("-r,--rules", rules_file)->required();
    c_entail->add_option("-d,--database", db_file)->required();
    c_entail->add_option("-q,--query", query_file)->required();
    c_entail->add_option("--semantics", semantics)
        ->required()
        ->check(CLI::IsMember({"ar", "iar"}));
    c_entail->add_option("--engine", engine_name)
        ->check(CLI::IsMember({"auto", "oracle", "search", "unique-repair",
                               "image-repair", "rewrite"}));
    c_entail->add_option("-k", k_opt, "template copies for the full IAR rewriting");

    auto* c_rewrite = app.add_subcommand("rewrite", "emit a first-order sentence");
    c_rewrite->add_option("-r,--rules", rules_file)->required();
    c_rewrite->add_option("--task", task)
        ->required()
        ->check(CLI::IsMember({"rc-acyclic", "rc-full", "wc-acyclic-linear",
                               "iar-acyclic-linear", "iar-full"}));
    c_rewrite->add_option("-q,--query", query_file);
    c_rewrite->add_option("-k", k_opt, "template copies for the full IAR rewriting");
    c_rewrite->add_option("-o,--output", out_file)->required();

    auto* c_gen = app.add_subcommand("gen", "instance generators from reductions");
    c_gen->add_option("--reduction", reduction)
        ->required()
        ->check(CLI::IsMember({"hornsat-rc", "horn3cnf-rc", "cnf-rc", "qbf2-ic",
                               "cnf3-ic", "cnf3-ar"}));
    c_gen->add_option("-i,--input", input_file)->required();
    c_gen->add_option("-o,--output", out_dir)->required();

    CLI11_PARSE(app, argc, argv);
    (void)seed;

    try {
        cqa::SolveLimits limits;
        limits.max_enum_facts = max_facts;

        if (c_classify->parsed()) {
            auto rules = cqa::parse_rules(slurp(rules_file));
            print_profile(cqa::classify(rules));
            return 0;
        }

        if (c_check->parsed()) {
            auto b = cqa::load_bundle(slurp(rules_file), slurp(db_file), std::nullopt,
                                      std::nullopt, std::nullopt);
            bool ok = cqa::is_consistent(b.database, b.rules);
            std::cout << (ok ? "consistent" : "inconsistent") << "\n";
            return decision_exit(ok);
        }

        if (c_repairs->parsed()) {
            auto b = cqa::load_bundle(slurp(rules_file), slurp(db_file), std::nullopt,
                                      std::nullopt, std::nullopt);
            auto rs = cqa::enumerate_repairs(b.database, b.rules, limits);
            if (!only_intersection) {
                size_t i = 0;
                for (const auto& r : rs.repairs) {
                    std::cout << "repair " << ++i << ": ";
                    bool first = true;
                    for (const auto& f : r.facts) {
                        if (!first) std::cout << " ";
                        std::cout << cqa::print_atom(f) << ".";
                        first = false;
                    }
                    std::cout << "\n";
                }
            }
            if (!only_enumerate) {
                std::cout << "intersection: ";
                bool first = true;
                for (const auto& f : rs.intersection.facts) {
                    if (!first) std::cout << " ";
                    std::cout << cqa::print_atom(f) << ".";
                    first = false;
                }
                std::cout << "\n";
            }
            return 0;
        }

        if (c_rc->parsed()) {
            auto b = cqa::load_bundle(slurp(rules_file), slurp(db_file),
                                      slurp(candidate_file), std::nullopt, std::nullopt);
            auto engine = cqa::rc_engine_from_name(engine_name);
            auto run = [&] {
                return cqa::is_repair(b.database, *b.candidate, b.rules, engine, limits);
            };
            bool ok = cross_check
                          ? cross_checked(run,
                                          [&] {
                                              auto rs = cqa::enumerate_repairs(
                                                  b.database, b.rules, limits);
                                              for (const auto& r : rs.repairs)
                                                  if (r == *b.candidate) return true;
                                              return false;
                                          })
                          : run();
            std::cout << (ok ? "true" : "false") << "\n";
            return decision_exit(ok);
        }

        if (c_wc->parsed()) {
            auto b = cqa::load_bundle(slurp(rules_file), slurp(db_file), std::nullopt,
                                      slurp(subset_file), std::nullopt);
            auto engine = cqa::wc_engine_from_name(engine_name);
            auto run = [&] {
                return cqa::weakly_consistent(b.database, *b.subset, b.rules, engine,
                                              limits);
            };
            bool ok = cross_check
                          ? cross_checked(run,
                                          [&] {
                                              return cqa::weakly_consistent(
                                                  b.database, *b.subset, b.rules,
                                                  cqa::WcEngine::Search, limits);
                                          })
                          : run();
            std::cout << (ok ? "true" : "false") << "\n";
            return decision_exit(ok);
        }

        if (c_entail->parsed()) {
            auto b = cqa::load_bundle(slurp(rules_file), slurp(db_file), std::nullopt,
                                      std::nullopt, slurp(query_file));
            auto engine = cqa::ent_engine_from_name(engine_name);
            std::optional<size_t> k;
            if (k_opt >= 0) k = static_cast<size_t>(k_opt);
            bool ar = semantics == "ar";
            auto run = [&] {
                return ar ? cqa::ar_entails(b.database, b.rules, *b.query, engine,
                                            limits, k)
                          : cqa::iar_entails(b.database, b.rules, *b.query, engine,
                                             limits, k);
            };
            auto oracle = [&] {
                return ar ? cqa::ar_entails(b.database, b.rules, *b.query,
                                            cqa::EntEngine::Oracle, limits, k)
                          : cqa::iar_entails(b.database, b.rules, *b.query,
                                             cqa::EntEngine::Oracle, limits, k);
            };
            bool ok = cross_check ? cross_checked(run, oracle) : run();
            std::cout << (ok ? "true" : "false") << "\n";
            return decision_exit(ok);
        }

        if (c_rewrite->parsed()) {
            auto rules = cqa::parse_rules(slurp(rules_file));
            cqa::FOPtr sentence;
            if (task == "rc-acyclic") {
                sentence = cqa::psi_rc(rules);
            } else if (task == "rc-full") {
                sentence = cqa::phi_rc(rules, limits.max_rewrite_cqs);
            } else if (task == "wc-acyclic-linear") {
                sentence = cqa::psi_wc_sentence(rules);
            } else {
                if (query_file.empty())
                    throw cqa::InputError("task '" + task + "' needs a query (-q)");
                auto query = cqa::parse_query(slurp(query_file));
                cqa::check_query_against(cqa::signature_of(rules), query);
                if (task == "iar-acyclic-linear") {
                    sentence = cqa::psi_iar(query, rules);
                } else {
                    size_t k = k_opt >= 0 ? static_cast<size_t>(k_opt)
                                          : cqa::default_iar_k(rules);
                    sentence = cqa::phi_iar(query, rules, k, limits.max_iar_subsets,
                                            limits.max_rewrite_cqs);
                }
            }
            std::ofstream out(out_file);
            if (!out) throw cqa::InputError("cannot write file: " + out_file);
            out << cqa::print_fo(sentence) << "\n";
            return 0;
        }

        if (c_gen->parsed()) {
            auto instances = cqa::run_generator(reduction, slurp(input_file));
            std::filesystem::create_directories(out_dir);
            nlohmann::json manifest;
            manifest["reduction"] = reduction;
            manifest["source"] = input_file;
            manifest["instances"] = nlohmann::json::array();
            for (const auto& g : instances) {
                auto path = [&](const std::string& suffix) {
                    return out_dir + "/" + g.name + suffix;
                };
                auto write = [&](const std::string& p, const std::string& text) {
                    std::ofstream out(p);
                    if (!out) throw cqa::InputError("cannot write file: " + p);
                    out << text;
                };
                nlohmann::json entry;
                entry["task"] = g.task;
                entry["holds_iff"] = g.holds_iff;
                entry["rules"] = g.name + ".rules";
                entry["database"] = g.name + ".facts";
                entry["advertised_classes"] = g.advertised_classes;
                write(path(".rules"), g.rules_text);
                write(path(".facts"), g.facts_text);
                if (g.candidate_text) {
                    write(path(".candidate.facts"), *g.candidate_text);
                    entry["candidate"] = g.name + ".candidate.facts";
                }
                if (g.query_text) {
                    write(path(".q"), *g.query_text);
                    entry["query"] = g.name + ".q";
                }
                manifest["instances"].push_back(entry);
            }
            std::ofstream mout(out_dir + "/manifest.json");
            mout << manifest.dump(2) << "\n";
            return 0;
        }
    } catch (const cqa::CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const cqa::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
