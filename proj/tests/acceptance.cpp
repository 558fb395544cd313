// Acceptance gate: one line per criterion, PASS only on exact results within
// the stated wall-time limit.  Takes the fixture directory as its argument.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "permlang/permlang.hpp"

using namespace permlang;

namespace {

std::string fixtureDir;

Cfg load_cfg(const std::string& name) { return std::get<Cfg>(load_grammar(fixtureDir + "/" + name)); }
Ig load_ig(const std::string& name) { return std::get<Ig>(load_grammar(fixtureDir + "/" + name)); }
Nfa load_nfa(const std::string& name) { return std::get<Nfa>(load_grammar(fixtureDir + "/" + name)); }

const std::vector<std::string> kCfgFixtures{"g_ab.cfg", "g_dyck.cfg", "g_fin.cfg", "g_evenpal.cfg"};
const std::vector<std::string> kIgFixtures{"ig_abc.igr", "ig_abc_nf.igr", "ig_anbn_nf.igr",
                                           "ig_pow2_nf.igr"};

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void run(int index, const std::string& name, double limitSeconds,
         const std::function<Outcome()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.pass && secs >= limitSeconds) {
        o.pass = false;
        o.detail += (o.detail.empty() ? "" : "; ") + std::string("over the ") +
                    std::to_string(static_cast<int>(limitSeconds)) + "s limit";
    }
    std::ostringstream line;
    line << (o.pass ? "PASS" : "FAIL") << " criterion " << index << ": " << name << " ["
         << std::fixed << std::setprecision(2) << secs << "s]";
    if (!o.detail.empty()) line << " - " << o.detail;
    std::cout << line.str() << "\n";
    if (!o.pass) ++failures;
}

std::string diff_note(const SampleDiff& d) {
    std::string s = "missing " + std::to_string(d.missing.size()) + ", extra " +
                    std::to_string(d.extra.size());
    if (!d.missing.empty()) s += ", first missing: " + word_to_string(d.missing.front());
    if (!d.extra.empty()) s += ", first extra: " + word_to_string(d.extra.front());
    return s;
}

Outcome criterion_shape_counts() {
    const std::vector<size_t> want{1, 2, 5, 14, 42};
    std::string got;
    for (int leaves = 2; leaves <= 6; ++leaves) {
        size_t n = enumerate_shapes(leaves).size();
        got += (got.empty() ? "" : ",") + std::to_string(n);
        if (n != want[static_cast<size_t>(leaves - 2)])
            return {false, "leaves " + std::to_string(leaves) + " gave " + std::to_string(n)};
    }
    return {true, "counts " + got};
}

Outcome criterion_regular() {
    int comparisons = 0;
    Nfa abStar = load_nfa("nfa_ab_star.nfa");
    for (int d = 1; d <= 3; ++d)
        for (const Permutation& sigma : all_permutations(d)) {
            VerifyReport r = verify_regperm(abStar, sigma, 6);
            ++comparisons;
            if (!r.equal()) return {false, "(ab)* failed at " + r.construction};
        }
    for (const VerifyReport& r : fuzz_regperm(0, 20, 3, 6)) {
        ++comparisons;
        if (!r.equal()) return {false, "random sweep failed at " + r.construction};
    }
    return {true, std::to_string(comparisons) + " comparisons"};
}

Outcome criterion_rotation() {
    size_t total = 0;
    for (const std::string& name : {std::string("ig_abc_nf.igr"), std::string("ig_anbn_nf.igr"),
                                    std::string("ig_pow2_nf.igr")}) {
        Ig g = load_ig(name);
        auto input = enumerate_ig(g, 9).sample;
        if (!input.exhaustive) return {false, name + ": input enumeration not exhaustive"};
        auto got = enumerate_ig(cyc_grammar(g), 9).sample;
        if (!got.exhaustive) return {false, name + ": rotation enumeration not exhaustive"};
        SampleDiff d = samples_equal(oracle_cyc(input), got);
        if (!d.missing.empty() || !d.extra.empty()) return {false, name + ": " + diff_note(d)};
        total += got.words.size();
    }
    return {true, "3 grammars, " + std::to_string(total) + " rotated words"};
}

Outcome criterion_split_permutations() {
    std::vector<Permutation> taus;
    for (int d = 2; d <= 3; ++d)
        for (const Permutation& tau : all_permutations(d)) taus.push_back(tau);
    taus.push_back(Permutation{{2, 4, 1, 3}});
    int comparisons = 0;
    for (const std::string& name : kCfgFixtures) {
        Cfg g = load_cfg(name);
        auto base = enumerate_cfg(g, 8);
        for (const Permutation& tau : taus) {
            auto got = enumerate_ig(l_tau_grammar(g, tau), 8).sample;
            if (!got.exhaustive)
                return {false, name + " tau=" + format_permutation(tau) + ": not exhaustive"};
            SampleDiff d = samples_equal(oracle_ltau(base, tau, true), got);
            if (!d.missing.empty() || !d.extra.empty())
                return {false, name + " tau=" + format_permutation(tau) + ": " + diff_note(d)};
            ++comparisons;
        }
    }
    return {true, std::to_string(comparisons) + " grammar/pattern pairs"};
}

Outcome criterion_decomposition() {
    Permutation sigma{{2, 3, 1}};
    for (const std::string& name : kCfgFixtures) {
        Cfg g = load_cfg(name);
        auto base = enumerate_cfg(g, 8);
        bool hasEpsilon = base.contains({});

        auto gotSigma = enumerate_ig(sigma_grammar(g, sigma), 8).sample;
        SampleDiff d = samples_equal(oracle_sigma(base, sigma), gotSigma);
        if (!gotSigma.exhaustive || !d.missing.empty() || !d.extra.empty())
            return {false, name + " sigma: " + diff_note(d)};
        LanguageSample unionSample;
        unionSample.bound = 8;
        if (hasEpsilon) unionSample.words.insert({});
        for (const Permutation& tau : subpatterns(sigma)) {
            auto part = enumerate_ig(l_tau_grammar(g, tau), 8).sample;
            if (!part.exhaustive) return {false, name + ": subpattern part not exhaustive"};
            unionSample.words.insert(part.words.begin(), part.words.end());
        }
        d = samples_equal(unionSample, gotSigma);
        if (!d.missing.empty() || !d.extra.empty())
            return {false, name + " subpattern union: " + diff_note(d)};

        auto gotCk = enumerate_ig(ck_grammar(g, 2), 8).sample;
        d = samples_equal(oracle_ck(base, 2), gotCk);
        if (!gotCk.exhaustive || !d.missing.empty() || !d.extra.empty())
            return {false, name + " degree-2 closure: " + diff_note(d)};
        d = samples_equal(oracle_cyc(base), gotCk);
        if (!d.missing.empty() || !d.extra.empty())
            return {false, name + " degree-2 closure vs rotations: " + diff_note(d)};
    }
    return {true, "closure, union, and rotation identities on 4 grammars"};
}

Outcome criterion_cross_construction() {
    for (const std::string& name : kCfgFixtures) {
        Cfg g = load_cfg(name);
        auto viaCk = enumerate_ig(ck_grammar(g, 2), 8).sample;
        Ig nf = ig_to_normal_form(cfg_as_indexed(g)).grammar;
        auto viaCyc = enumerate_ig(cyc_grammar(nf), 8).sample;
        if (!viaCk.exhaustive || !viaCyc.exhaustive) return {false, name + ": not exhaustive"};
        SampleDiff d = samples_equal(viaCk, viaCyc);
        if (!d.missing.empty() || !d.extra.empty()) return {false, name + ": " + diff_note(d)};
    }
    return {true, "both routes agree on 4 grammars"};
}

Outcome criterion_normal_form() {
    int converted = 0;
    std::vector<Ig> inputs;
    for (const std::string& name : kIgFixtures) inputs.push_back(load_ig(name));
    for (const std::string& name : kCfgFixtures) inputs.push_back(cfg_as_indexed(load_cfg(name)));
    for (const Ig& g : inputs) {
        IgNormalFormResult r = ig_to_normal_form(g);
        if (!is_ig_normal_form(r.grammar)) return {false, "output not in normal form"};
        auto before = enumerate_ig(g, 8).sample;
        auto after = enumerate_ig(r.grammar, 8).sample;
        if (!before.exhaustive || !after.exhaustive) return {false, "enumeration not exhaustive"};
        auto expected = before.words;
        if (r.hadEpsilon) expected.erase(Word{});
        if (after.words != expected) return {false, "language changed by conversion"};
        ++converted;
    }
    return {true, std::to_string(converted) + " grammars converted and re-enumerated"};
}

Outcome criterion_enumerator_soundness() {
    size_t replayed = 0;
    for (const std::string& name : kIgFixtures) {
        Ig g = load_ig(name);
        auto r = enumerate_ig(g, 9);
        for (const auto& [word, wit] : r.witnesses) {
            if (replay_witness(g, wit) != word) return {false, name + ": witness replay mismatch"};
            ++replayed;
        }
    }
    {
        Ig g = l_tau_grammar(load_cfg("g_ab.cfg"), Permutation{{2, 1}});
        auto r = enumerate_ig(g, 8);
        for (const auto& [word, wit] : r.witnesses) {
            if (replay_witness(g, wit) != word) return {false, "permuted grammar witness mismatch"};
            ++replayed;
        }
    }
    size_t checked = 0;
    for (const std::string& name : {std::string("g_ab.cfg"), std::string("g_dyck.cfg"),
                                    std::string("g_evenpal.cfg")}) {
        Cfg g = load_cfg(name);
        auto alphabet = g.syms.of_kind(SymbolKind::Terminal);
        if (alphabet.size() != 2) return {false, name + ": expected a binary alphabet"};
        Cfg c = cfg_to_cnf(g).grammar;
        auto sample = enumerate_cfg(g, 6);
        std::function<bool(Word&)> rec = [&](Word& w) -> bool {
            if (cyk_accepts(c, w) != sample.contains(w)) return false;
            ++checked;
            if (w.size() == 6) return true;
            for (Sym t : alphabet) {
                w.push_back(g.syms.name(t));
                if (!rec(w)) return false;
                w.pop_back();
            }
            return true;
        };
        Word w;
        if (!rec(w)) return {false, name + ": enumerator disagrees with membership at " + word_to_string(w)};
    }
    return {true, std::to_string(replayed) + " witnesses replayed, " + std::to_string(checked) +
                      " membership checks"};
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <fixture-dir>\n";
        return 2;
    }
    fixtureDir = argv[1];
    run(1, "tree shape counts 1,2,5,14,42", 1.0, criterion_shape_counts);
    run(2, "regular permutation vs oracle on (ab)* and 20 random automata", 10.0, criterion_regular);
    run(3, "rotation grammar vs oracle on three normal-form grammars", 30.0, criterion_rotation);
    run(4, "split-permutation grammars vs relaxed oracle, 36 pairs", 60.0, criterion_split_permutations);
    run(5, "closure decomposition identities", 600.0, criterion_decomposition);
    run(6, "degree-2 closure agrees with the rotation construction", 600.0, criterion_cross_construction);
    run(7, "indexed normal form preserves enumerations", 600.0, criterion_normal_form);
    run(8, "witness replay and brute-force membership agreement", 600.0, criterion_enumerator_soundness);
    if (failures) std::cout << failures << " criterion(s) failed\n";
    else std::cout << "all criteria passed\n";
    return failures == 0 ? 0 : 1;
}
