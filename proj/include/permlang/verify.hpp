#pragma once

#include <chrono>
#include <random>
#include <string>
#include <vector>

#include "permlang/cyclic.hpp"
#include "permlang/enumerate.hpp"
#include "permlang/grammar.hpp"
#include "permlang/nfa_permute.hpp"
#include "permlang/oracles.hpp"
#include "permlang/permutation.hpp"
#include "permlang/permuted_grammar.hpp"
#include "permlang/symbols.hpp"

namespace permlang {

// Outcome of one construction-against-oracle comparison.  `missing` holds
// oracle words the construction failed to produce, `extra` words it produced
// beyond the oracle.
struct VerifyReport {
    std::string construction;
    int bound = 0;
    size_t actualCount = 0;
    size_t expectedCount = 0;
    std::vector<Word> missing;
    std::vector<Word> extra;
    bool actualExhaustive = false;
    bool expectedExhaustive = false;
    double wallSeconds = 0.0;

    bool equal() const {
        return missing.empty() && extra.empty() && actualExhaustive && expectedExhaustive;
    }
};

namespace detail {

inline VerifyReport compare_samples(std::string name, const LanguageSample& actual,
                                    const LanguageSample& expected, double seconds) {
    VerifyReport r;
    r.construction = std::move(name);
    r.bound = actual.bound;
    r.actualCount = actual.words.size();
    r.expectedCount = expected.words.size();
    SampleDiff d = samples_equal(expected, actual);
    r.missing = std::move(d.missing);
    r.extra = std::move(d.extra);
    r.actualExhaustive = actual.exhaustive;
    r.expectedExhaustive = expected.exhaustive;
    r.wallSeconds = seconds;
    return r;
}

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace detail

inline VerifyReport verify_ltau(const Cfg& g, const Permutation& tau, int n, bool relaxFirst = true,
                                const Budget& budget = {}) {
    detail::Stopwatch sw;
    LanguageSample actual = enumerate_ig(l_tau_grammar(g, tau), n, budget).sample;
    LanguageSample expected = oracle_ltau(enumerate_cfg(g, n), tau, relaxFirst);
    return detail::compare_samples("ltau " + format_permutation(tau), actual, expected, sw.seconds());
}

inline VerifyReport verify_sigma(const Cfg& g, const Permutation& sigma, int n, const Budget& budget = {}) {
    detail::Stopwatch sw;
    LanguageSample actual = enumerate_ig(sigma_grammar(g, sigma), n, budget).sample;
    LanguageSample expected = oracle_sigma(enumerate_cfg(g, n), sigma);
    return detail::compare_samples("sigma " + format_permutation(sigma), actual, expected, sw.seconds());
}

inline VerifyReport verify_ck(const Cfg& g, int k, int n, const Budget& budget = {}) {
    detail::Stopwatch sw;
    LanguageSample actual = enumerate_ig(ck_grammar(g, k), n, budget).sample;
    LanguageSample expected = oracle_ck(enumerate_cfg(g, n), k);
    return detail::compare_samples("ck " + std::to_string(k), actual, expected, sw.seconds());
}

inline VerifyReport verify_cyc(const Ig& g, int n, const Budget& budget = {}) {
    detail::Stopwatch sw;
    LanguageSample actual = enumerate_ig(cyc_grammar(g), n, budget).sample;
    LanguageSample expected = oracle_cyc(enumerate_ig(g, n, budget).sample);
    return detail::compare_samples("cyc", actual, expected, sw.seconds());
}

inline VerifyReport verify_regperm(const Nfa& m, const Permutation& sigma, int n) {
    detail::Stopwatch sw;
    LanguageSample actual = enumerate_nfa(sigma_nfa(m, sigma), n);
    LanguageSample expected = oracle_sigma(enumerate_nfa(m, n), sigma);
    return detail::compare_samples("regperm " + format_permutation(sigma), actual, expected, sw.seconds());
}

// Deterministic pseudo-random NFA over {a, b}: up to four states, sparse
// letter and epsilon transitions, possibly empty accept set.  Raw engine
// draws (not distributions) keep the stream identical across platforms.
inline Nfa random_nfa(std::mt19937& rng) {
    Nfa m;
    int n = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < n; ++i) m.add_state("q" + std::to_string(i));
    m.alphabet = {"a", "b"};
    m.start = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            for (const std::string& label : m.alphabet)
                if (rng() % 10 < 3) m.trans.push_back({i, j, label});
            if (i != j && rng() % 10 < 1) m.trans.push_back({i, j, ""});
        }
    for (int i = 0; i < n; ++i)
        if (rng() % 2 == 0) m.accepts.insert(i);
    validate(m);
    return m;
}

// Seeded sweep: `count` random NFAs against every permutation of degree at
// most `maxDegree`, each compared at length bound `n`.
inline std::vector<VerifyReport> fuzz_regperm(unsigned seed, int count, int maxDegree, int n) {
    std::mt19937 rng(seed);
    std::vector<VerifyReport> reports;
    for (int i = 0; i < count; ++i) {
        Nfa m = random_nfa(rng);
        for (int d = 1; d <= maxDegree; ++d)
            for (const Permutation& sigma : all_permutations(d)) {
                VerifyReport r = verify_regperm(m, sigma, n);
                r.construction = "nfa" + std::to_string(i) + " " + r.construction;
                reports.push_back(std::move(r));
            }
    }
    return reports;
}

}  // namespace permlang
