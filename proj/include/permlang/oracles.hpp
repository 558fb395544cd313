#pragma once

#include <functional>
#include <vector>

#include "permlang/permutation.hpp"
#include "permlang/symbols.hpp"

namespace permlang {

namespace detail {

// All ways to split w into k consecutive parts.  Every part must be
// non-empty, except that the first may be empty when relaxFirst is set.
inline void for_each_split(const Word& w, int k, bool relaxFirst,
                           const std::function<void(const std::vector<Word>&)>& fn) {
    int n = static_cast<int>(w.size());
    std::vector<Word> parts(static_cast<size_t>(k));
    std::function<void(int, int)> rec = [&](int part, int from) {
        int minLen = (part == 0 && relaxFirst) ? 0 : 1;
        if (part == k - 1) {
            if (n - from < minLen) return;
            parts[static_cast<size_t>(part)].assign(w.begin() + from, w.end());
            fn(parts);
            return;
        }
        for (int len = minLen; from + len <= n; ++len) {
            parts[static_cast<size_t>(part)].assign(w.begin() + from, w.begin() + from + len);
            rec(part + 1, from + len);
        }
    };
    rec(0, 0);
}

}  // namespace detail

// Words w_{tau(1)}...w_{tau(l)} over all l-splits w_1...w_l of each input
// word.  Strict mode requires every part non-empty; relaxed mode lets the
// first part alone be empty.  Splitting preserves length, so the output is
// exhaustive at the same bound whenever the input is.
inline LanguageSample oracle_ltau(const LanguageSample& w, const Permutation& tau, bool relaxFirst) {
    validate(tau);
    int l = tau.degree();
    LanguageSample out;
    out.bound = w.bound;
    out.exhaustive = w.exhaustive;
    for (const auto& word : w.words) {
        detail::for_each_split(word, l, relaxFirst, [&](const std::vector<Word>& parts) {
            Word img;
            for (int i = 1; i <= l; ++i) {
                const Word& p = parts[static_cast<size_t>(tau(i) - 1)];
                img.insert(img.end(), p.begin(), p.end());
            }
            out.words.insert(std::move(img));
        });
    }
    return out;
}

// Union of strict oracle_ltau over all subpatterns of sigma, plus epsilon if
// the input contains it (deleting parts can leave nothing).
inline LanguageSample oracle_sigma(const LanguageSample& w, const Permutation& sigma) {
    LanguageSample out;
    out.bound = w.bound;
    out.exhaustive = w.exhaustive;
    for (const auto& tau : subpatterns(sigma)) {
        auto part = oracle_ltau(w, tau, false);
        out.words.insert(part.words.begin(), part.words.end());
    }
    if (w.contains(Word{})) out.words.insert(Word{});
    return out;
}

// All rotations w2w1 over all 2-splits w1w2, computed directly (independent
// of oracle_sigma; their agreement at sigma = (2,1) is a tested property).
inline LanguageSample oracle_cyc(const LanguageSample& w) {
    LanguageSample out;
    out.bound = w.bound;
    out.exhaustive = w.exhaustive;
    for (const auto& word : w.words) {
        out.words.insert(word);
        for (size_t cut = 1; cut < word.size(); ++cut) {
            Word rot(word.begin() + static_cast<long>(cut), word.end());
            rot.insert(rot.end(), word.begin(), word.begin() + static_cast<long>(cut));
            out.words.insert(std::move(rot));
        }
    }
    return out;
}

// Union of oracle_sigma over all permutations of degree exactly k; by the
// subpattern decomposition this equals the union over all degrees <= k.
inline LanguageSample oracle_ck(const LanguageSample& w, int k) {
    if (k < 1) throw ValidationError("oracle_ck: k must be positive");
    LanguageSample out;
    out.bound = w.bound;
    out.exhaustive = w.exhaustive;
    for (const auto& sigma : all_permutations(k)) {
        auto part = oracle_sigma(w, sigma);
        out.words.insert(part.words.begin(), part.words.end());
    }
    return out;
}

}  // namespace permlang
