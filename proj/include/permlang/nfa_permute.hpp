#pragma once

#include <string>
#include <vector>

#include "permlang/grammar.hpp"
#include "permlang/permutation.hpp"
#include "permlang/symbols.hpp"

namespace permlang {

namespace detail {

inline int add_unique_state(Nfa& m, const std::string& name) {
    if (m.stateIndex.count(name))
        throw ValidationError("generated state name '" + name + "' collides with an existing state");
    return m.add_state(name);
}

}  // namespace detail

// Adds a fresh sink accept state reached by an empty move from each old
// accept state.
inline Nfa nfa_single_accept(const Nfa& m) {
    validate(m);
    Nfa out = m;
    int sink = detail::add_unique_state(out, "_acc");
    for (int q : m.accepts) out.trans.push_back({q, sink, ""});
    out.accepts = {sink};
    validate(out);
    return out;
}

// Automaton for the permuted language: every accepting run of m is cut into
// k pieces at guessed intermediate states, and the pieces are replayed in
// permuted order.  One branch per (k-1)-tuple of guessed states; branch b
// holds copies 1..k of the automaton, copy s replaying piece s.
inline Nfa sigma_nfa(const Nfa& m, const Permutation& sigma) {
    validate(m);
    validate(sigma);
    int k = sigma.degree();
    Nfa msa = (m.accepts.size() == 1) ? m : nfa_single_accept(m);
    if (k == 1) return msa;

    int q = static_cast<int>(msa.states.size());
    int acceptState = *msa.accepts.begin();

    Nfa out;
    out.alphabet = msa.alphabet;
    int start = detail::add_unique_state(out, "_start");
    int accept = detail::add_unique_state(out, "_accept");
    out.start = start;
    out.accepts = {accept};

    long long branches = 1;
    for (int i = 0; i < k - 1; ++i) branches *= q;

    std::vector<int> tuple(static_cast<size_t>(k - 1), 0);
    for (long long b = 0; b < branches; ++b) {
        long long rem = b;
        for (int i = 0; i < k - 1; ++i) {
            tuple[static_cast<size_t>(i)] = static_cast<int>(rem % q);
            rem /= q;
        }
        // copy s of branch b: state v lives at base(b, s) + v
        std::vector<int> base(static_cast<size_t>(k + 1), 0);
        for (int s = 1; s <= k; ++s) {
            base[static_cast<size_t>(s)] = static_cast<int>(out.states.size());
            for (int v = 0; v < q; ++v)
                detail::add_unique_state(out, msa.states[static_cast<size_t>(v)] + "@b" + std::to_string(b) +
                                                  "c" + std::to_string(s));
            for (const auto& t : msa.trans)
                out.trans.push_back({base[static_cast<size_t>(s)] + t.from, base[static_cast<size_t>(s)] + t.to,
                                     t.label});
        }
        auto entry = [&](int s) {
            return base[static_cast<size_t>(s)] + (s == 1 ? msa.start : tuple[static_cast<size_t>(s - 2)]);
        };
        auto exit = [&](int s) {
            return base[static_cast<size_t>(s)] + (s == k ? acceptState : tuple[static_cast<size_t>(s - 1)]);
        };
        out.trans.push_back({start, entry(sigma(1)), ""});
        for (int j = 1; j < k; ++j) out.trans.push_back({exit(sigma(j)), entry(sigma(j + 1)), ""});
        out.trans.push_back({exit(sigma(k)), accept, ""});
    }
    validate(out);
    return out;
}

}  // namespace permlang
