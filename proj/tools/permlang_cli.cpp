#include <future>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "permlang/permlang.hpp"

namespace {

using namespace permlang;
using nlohmann::json;

json sample_json(const LanguageSample& s) {
    json words = json::array();
    for (const Word& w : s.words) words.push_back(word_to_string(w));
    return json{{"words", std::move(words)}, {"bound", s.bound}, {"exhaustive", s.exhaustive}};
}

json report_json(const VerifyReport& r) {
    json missing = json::array(), extra = json::array();
    for (const Word& w : r.missing) missing.push_back(word_to_string(w));
    for (const Word& w : r.extra) extra.push_back(word_to_string(w));
    return json{{"construction", r.construction},
                {"bound", r.bound},
                {"actual_count", r.actualCount},
                {"expected_count", r.expectedCount},
                {"missing", std::move(missing)},
                {"extra", std::move(extra)},
                {"actual_exhaustive", r.actualExhaustive},
                {"expected_exhaustive", r.expectedExhaustive},
                {"wall_seconds", r.wallSeconds},
                {"equal", r.equal()}};
}

void emit(const std::string& text, const std::string& outPath) {
    if (outPath.empty()) std::cout << text;
    else save_text(outPath, text);
}

const Cfg& need_cfg(const AnyGrammar& g) {
    if (const Cfg* c = std::get_if<Cfg>(&g)) return *c;
    throw ValidationError("this command needs a context-free grammar input");
}

const Ig& need_ig(const AnyGrammar& g) {
    if (const Ig* i = std::get_if<Ig>(&g)) return *i;
    throw ValidationError("this command needs an indexed grammar input");
}

const Nfa& need_nfa(const AnyGrammar& g) {
    if (const Nfa* m = std::get_if<Nfa>(&g)) return *m;
    throw ValidationError("this command needs an automaton input");
}

std::string shape_text(const TreeShape& t, size_t idx, size_t total) {
    EdgeOrder ord = order_edges(t);
    Outline ol = outline(t, ord);
    std::vector<BranchPoint> bps = branch_points(t, ord);
    std::string out = "shape " + std::to_string(idx + 1) + " of " + std::to_string(total) + ": " +
                      std::to_string(t.leaf_count()) + " leaves, " + std::to_string(ord.edgeCount) +
                      " edges, " + std::to_string(ord.innerCount) + " inner\n";
    out += "  branch points [parent,left,right]:";
    if (bps.empty()) out += " none";
    for (const BranchPoint& b : bps)
        out += " (" + std::to_string(b.parent) + "," + std::to_string(b.left) + "," +
               std::to_string(b.right) + ")";
    out += "\n  outline:";
    for (size_t p = 0; p < ol.segments.size(); ++p) {
        out += (p ? " | part " : " part ") + std::to_string(p + 1) + ":";
        for (const OutlineEntry& e : ol.segments[p])
            out += " " + std::to_string(e.edge) + (e.rightSide ? "R" : "L");
    }
    out += "\n";
    return out;
}

std::string shape_dot(const TreeShape& t, size_t idx) {
    EdgeOrder ord = order_edges(t);
    std::string out = "digraph shape" + std::to_string(idx + 1) + " {\n";
    for (size_t v = 0; v < t.nodes.size(); ++v)
        out += "  n" + std::to_string(v) + " [label=\"e" +
               std::to_string(ord.edgeOfNode[v]) + "\"];\n";
    for (size_t v = 0; v < t.nodes.size(); ++v) {
        if (t.nodes[v].left >= 0) out += "  n" + std::to_string(v) + " -> n" + std::to_string(t.nodes[v].left) + ";\n";
        if (t.nodes[v].right >= 0) out += "  n" + std::to_string(v) + " -> n" + std::to_string(t.nodes[v].right) + ";\n";
    }
    out += "}\n";
    return out;
}

void print_reports(const std::vector<VerifyReport>& reports, bool asJson, int& rc) {
    bool allEqual = true;
    for (const VerifyReport& r : reports) allEqual = allEqual && r.equal();
    if (asJson) {
        json arr = json::array();
        for (const VerifyReport& r : reports) arr.push_back(report_json(r));
        std::cout << json{{"reports", std::move(arr)}, {"equal", allEqual}}.dump(2) << "\n";
    } else {
        for (const VerifyReport& r : reports) {
            if (r.equal()) {
                std::cout << "ok: " << r.construction << " (" << r.actualCount << " words, bound "
                          << r.bound << ")\n";
            } else {
                std::cout << "MISMATCH: " << report_json(r).dump(2) << "\n";
            }
        }
    }
    if (!allEqual) rc = 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"permutation closures of context-free and indexed languages"};
    app.require_subcommand(1);
    int rc = 0;

    std::string inPath, outPath, permStr;
    int maxLen = 8, kArg = 0, leaves = 0, fuzzCount = 0;
    unsigned seed = 0;
    bool asJson = false, dot = false, relaxed = true, allPerms = false, sigmaMode = false;
    Budget budget;

    auto addBudgetFlags = [&](CLI::App* cmd) {
        cmd->add_option("--flag-depth", budget.maxFlagDepth, "flag string depth budget");
        cmd->add_option("--form-len", budget.maxFormLen, "sentential form length budget");
        cmd->add_option("--states", budget.maxStates, "explored form count budget");
    };

    CLI::App* validateCmd = app.add_subcommand("validate", "parse and validate a grammar or automaton");
    validateCmd->add_option("input", inPath, "grammar file")->required();
    validateCmd->callback([&] {
        AnyGrammar g = load_grammar(inPath);
        std::visit([&](const auto& x) { validate(x); }, g);
        if (const Cfg* c = std::get_if<Cfg>(&g))
            std::cout << "cfg: " << c->syms.of_kind(SymbolKind::Nonterminal).size() << " nonterminals, "
                      << c->prods.size() << " productions" << (c->cnf ? ", chomsky normal form" : "") << "\n";
        else if (const Ig* i = std::get_if<Ig>(&g))
            std::cout << "indexed: " << i->syms.of_kind(SymbolKind::Nonterminal).size()
                      << " nonterminals, " << i->syms.of_kind(SymbolKind::Flag).size() << " flags, "
                      << i->prods.size() << " productions"
                      << (is_ig_normal_form(*i) ? ", normal form" : "") << "\n";
        else if (const Nfa* m = std::get_if<Nfa>(&g))
            std::cout << "nfa: " << m->states.size() << " states, " << m->trans.size()
                      << " transitions, " << m->accepts.size() << " accepting\n";
    });

    CLI::App* normCmd = app.add_subcommand("normalize", "convert to Chomsky/indexed normal form");
    normCmd->add_option("input", inPath, "grammar file")->required();
    normCmd->add_option("-o,--output", outPath, "output file (stdout when absent)");
    normCmd->callback([&] {
        AnyGrammar g = load_grammar(inPath);
        if (const Cfg* c = std::get_if<Cfg>(&g)) {
            CnfResult r = cfg_to_cnf(*c);
            if (r.hadEpsilon)
                std::cerr << "note: the language contained the empty word; the normal form drops it\n";
            emit(serialize_grammar(r.grammar), outPath);
        } else if (const Ig* i = std::get_if<Ig>(&g)) {
            IgNormalFormResult r = ig_to_normal_form(*i);
            if (r.hadEpsilon)
                std::cerr << "note: the language contained the empty word; the normal form drops it\n";
            emit(serialize_grammar(r.grammar), outPath);
        } else {
            throw ValidationError("nothing to normalize for an automaton");
        }
    });

    CLI::App* enumCmd = app.add_subcommand("enum", "enumerate the language up to a length bound");
    enumCmd->add_option("input", inPath, "grammar file")->required();
    enumCmd->add_option("--max-len", maxLen, "length bound")->required();
    enumCmd->add_flag("--json", asJson, "machine output");
    addBudgetFlags(enumCmd);
    enumCmd->callback([&] {
        AnyGrammar g = load_grammar(inPath);
        LanguageSample s;
        if (const Cfg* c = std::get_if<Cfg>(&g)) s = enumerate_cfg(*c, maxLen);
        else if (const Ig* i = std::get_if<Ig>(&g)) s = enumerate_ig(*i, maxLen, budget).sample;
        else s = enumerate_nfa(std::get<Nfa>(g), maxLen);
        if (asJson) {
            std::cout << sample_json(s).dump(2) << "\n";
        } else {
            for (const Word& w : s.words) std::cout << word_to_string(w) << "\n";
            if (!s.exhaustive) std::cerr << "warning: truncated by search budget, sample is partial\n";
        }
    });

    CLI::App* cycCmd = app.add_subcommand("cyc", "cyclic-closure grammar of a normal-form indexed grammar");
    cycCmd->add_option("input", inPath, "indexed grammar file")->required();
    cycCmd->add_option("-o,--output", outPath, "output file (stdout when absent)");
    cycCmd->callback([&] {
        AnyGrammar any = load_grammar(inPath);
        const Ig& g = need_ig(any);
        try {
            emit(serialize_grammar(cyc_grammar(g)), outPath);
        } catch (const NotNormalFormError& e) {
            throw NotNormalFormError(std::string(e.what()) + " (run `normalize` on the input first)");
        }
    });

    CLI::App* ltauCmd = app.add_subcommand("ltau", "grammar of one fixed permutation of split words");
    ltauCmd->add_option("input", inPath, "context-free grammar file")->required();
    ltauCmd->add_option("--perm", permStr, "permutation images, e.g. 2,1")->required();
    ltauCmd->add_option("-o,--output", outPath, "output file (stdout when absent)");
    ltauCmd->callback([&] {
        AnyGrammar any = load_grammar(inPath);
        const Cfg& g = need_cfg(any);
        emit(serialize_grammar(l_tau_grammar(g, parse_permutation(permStr))), outPath);
    });

    CLI::App* sigmaCmd = app.add_subcommand("sigma", "grammar of a permutation's closure (all subpatterns)");
    sigmaCmd->add_option("input", inPath, "context-free grammar file")->required();
    sigmaCmd->add_option("--perm", permStr, "permutation images, e.g. 2,3,1")->required();
    sigmaCmd->add_option("-o,--output", outPath, "output file (stdout when absent)");
    sigmaCmd->callback([&] {
        AnyGrammar any = load_grammar(inPath);
        const Cfg& g = need_cfg(any);
        emit(serialize_grammar(sigma_grammar(g, parse_permutation(permStr))), outPath);
    });

    CLI::App* ckCmd = app.add_subcommand("ck", "grammar of the degree-bounded permutation closure");
    ckCmd->add_option("input", inPath, "context-free grammar file")->required();
    ckCmd->add_option("--k", kArg, "maximum permutation degree")->required();
    ckCmd->add_option("-o,--output", outPath, "output file (stdout when absent)");
    ckCmd->callback([&] {
        AnyGrammar any = load_grammar(inPath);
        const Cfg& g = need_cfg(any);
        emit(serialize_grammar(ck_grammar(g, kArg)), outPath);
    });

    CLI::App* regCmd = app.add_subcommand("regperm", "automaton for a permutation of a regular language");
    regCmd->add_option("input", inPath, "automaton file")->required();
    regCmd->add_option("--perm", permStr, "permutation images, e.g. 2,1")->required();
    regCmd->add_option("-o,--output", outPath, "output file (stdout when absent)");
    regCmd->callback([&] {
        AnyGrammar any = load_grammar(inPath);
        const Nfa& m = need_nfa(any);
        emit(serialize_grammar(sigma_nfa(m, parse_permutation(permStr))), outPath);
    });

    CLI::App* shapesCmd = app.add_subcommand("shapes", "enumerate binary tree shapes with a fixed leaf count");
    shapesCmd->add_option("--leaves", leaves, "number of leaves")->required();
    shapesCmd->add_flag("--dot", dot, "print graph descriptions");
    shapesCmd->callback([&] {
        std::vector<TreeShape> all = enumerate_shapes(leaves);
        for (size_t i = 0; i < all.size(); ++i)
            std::cout << (dot ? shape_dot(all[i], i) : shape_text(all[i], i, all.size()));
    });

    CLI::App* verifyCmd = app.add_subcommand("verify", "compare a construction against its brute-force oracle");
    verifyCmd->add_option("input", inPath, "grammar or automaton file");
    verifyCmd->add_option("--perm", permStr, "permutation images");
    verifyCmd->add_option("--k", kArg, "closure degree (with a grammar input), or degree bound");
    verifyCmd->add_option("--max-len", maxLen, "length bound (default 8; 6 with --fuzz)");
    verifyCmd->add_flag("--relaxed,!--strict", relaxed,
                        "allow the first split part to be empty in the oracle (default)");
    verifyCmd->add_flag("--sigma", sigmaMode, "verify the closure construction instead of one permutation");
    verifyCmd->add_flag("--all-perms", allPerms, "verify every permutation of degree 2..k (default k=3)");
    verifyCmd->add_option("--fuzz", fuzzCount, "verify N seeded random automata instead of a file");
    verifyCmd->add_option("--seed", seed, "random seed for --fuzz (default 0)");
    verifyCmd->add_flag("--json", asJson, "machine output");
    addBudgetFlags(verifyCmd);
    verifyCmd->callback([&] {
        std::vector<VerifyReport> reports;
        int degreeBound = kArg > 0 ? kArg : 3;
        if (fuzzCount > 0) {
            int bound = verifyCmd->count("--max-len") ? maxLen : 6;
            reports = fuzz_regperm(seed, fuzzCount, degreeBound, bound);
        } else {
            if (inPath.empty()) throw ValidationError("verify needs an input file or --fuzz N");
            AnyGrammar g = load_grammar(inPath);
            if (const Ig* i = std::get_if<Ig>(&g)) {
                reports.push_back(verify_cyc(*i, maxLen, budget));
            } else if (const Nfa* m = std::get_if<Nfa>(&g)) {
                if (allPerms) {
                    for (int d = 1; d <= degreeBound; ++d)
                        for (const Permutation& s : all_permutations(d))
                            reports.push_back(verify_regperm(*m, s, maxLen));
                } else {
                    if (permStr.empty()) throw ValidationError("verify on an automaton needs --perm or --all-perms");
                    reports.push_back(verify_regperm(*m, parse_permutation(permStr), maxLen));
                }
            } else {
                const Cfg& c = std::get<Cfg>(g);
                if (allPerms) {
                    std::vector<std::future<VerifyReport>> jobs;
                    for (int d = 2; d <= degreeBound; ++d)
                        for (const Permutation& tau : all_permutations(d))
                            jobs.push_back(std::async(std::launch::async, [&, tau] {
                                return verify_ltau(c, tau, maxLen, relaxed, budget);
                            }));
                    for (auto& j : jobs) reports.push_back(j.get());
                } else if (verifyCmd->count("--k")) {
                    reports.push_back(verify_ck(c, kArg, maxLen, budget));
                } else {
                    if (permStr.empty()) throw ValidationError("verify on a grammar needs --perm, --k, or --all-perms");
                    Permutation p = parse_permutation(permStr);
                    reports.push_back(sigmaMode ? verify_sigma(c, p, maxLen, budget)
                                                : verify_ltau(c, p, maxLen, relaxed, budget));
                }
            }
        }
        print_reports(reports, asJson, rc);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const permlang::PermlangError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
