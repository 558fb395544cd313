#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "permlang/symbols.hpp"

namespace permlang {

// ---------------------------------------------------------------------------
// Context-free grammars

struct CfgProd {
    Sym lhs;
    std::vector<Sym> rhs;  // empty = epsilon
};

struct Cfg {
    SymbolTable syms;
    Sym start = -1;
    std::vector<CfgProd> prods;
    bool cnf = false;

    bool is_terminal(Sym s) const { return syms.kind(s) == SymbolKind::Terminal; }
    bool is_nonterminal(Sym s) const { return syms.kind(s) == SymbolKind::Nonterminal; }
};

inline void validate(const Cfg& g) {
    if (g.start < 0 || !g.is_nonterminal(g.start)) throw ValidationError("cfg: start symbol missing or not a nonterminal");
    for (const auto& p : g.prods) {
        if (!g.is_nonterminal(p.lhs)) throw ValidationError("cfg: production lhs is not a nonterminal");
        for (Sym s : p.rhs)
            if (g.syms.kind(s) == SymbolKind::Flag) throw ValidationError("cfg: flag symbol in production body");
    }
}

inline bool is_cnf_grammar(const Cfg& g) {
    for (const auto& p : g.prods) {
        bool pair = p.rhs.size() == 2 && g.is_nonterminal(p.rhs[0]) && g.is_nonterminal(p.rhs[1]);
        bool unit_terminal = p.rhs.size() == 1 && g.is_terminal(p.rhs[0]);
        if (!pair && !unit_terminal) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Indexed grammars

enum class PKind { Push, Pop, Copy };

// push: lhs -> rhs[0]^pushFlags      (pushFlags head-first, prepended)
// pop:  lhs^popFlag -> rhs           (tail of the flag copies to rhs nonterminals)
// copy: lhs -> rhs                   (whole flag copies to rhs nonterminals)
struct IgProd {
    PKind kind = PKind::Copy;
    Sym lhs = -1;
    Sym popFlag = -1;
    std::vector<Sym> pushFlags;
    std::vector<Sym> rhs;
};

// Enumeration guidance attached by the grammar constructions in this library.
// Purely advisory lower-bound information: it never adds or removes words,
// it only lets the bounded search discard sentential forms whose guaranteed
// eventual terminal yield already exceeds the length bound.  Not serialized.
struct IgEnumHints {
    // For a nonterminal X occurring with flag string ref, the eventual yield
    // is at least sum over chargers Z of the finite part of minyield(Z, ref),
    // plus base.  Chargers are push-free symbols, so their bound is exact.
    struct Charge {
        std::vector<Sym> chargers;
        int base = 0;
    };
    std::map<Sym, Charge> charges;
    // (checkSym, triggerFlag): once a charged nonterminal's flag contains
    // triggerFlag, checkSym's scan over that flag is decidable; if the scan
    // cannot complete (minyield infinite) the whole form is dead.
    std::vector<std::pair<Sym, Sym>> validators;

    bool empty() const { return charges.empty() && validators.empty(); }
};

struct Ig {
    SymbolTable syms;
    Sym start = -1;
    Sym endFlag = -1;
    std::vector<IgProd> prods;
    IgEnumHints hints;

    bool is_terminal(Sym s) const { return syms.kind(s) == SymbolKind::Terminal; }
    bool is_nonterminal(Sym s) const { return syms.kind(s) == SymbolKind::Nonterminal; }
    bool is_flag(Sym s) const { return syms.kind(s) == SymbolKind::Flag; }
};

inline void validate(const Ig& g) {
    if (g.start < 0 || !g.is_nonterminal(g.start)) throw ValidationError("indexed: start symbol missing or not a nonterminal");
    if (g.endFlag < 0 || !g.is_flag(g.endFlag)) throw ValidationError("indexed: end-of-flag marker missing");
    for (const auto& p : g.prods) {
        if (!g.is_nonterminal(p.lhs)) throw ValidationError("indexed: production lhs is not a nonterminal");
        switch (p.kind) {
            case PKind::Push:
                if (p.rhs.size() != 1 || !g.is_nonterminal(p.rhs[0]))
                    throw ValidationError("indexed: push production must have a single nonterminal body");
                if (p.pushFlags.empty()) throw ValidationError("indexed: push production with empty flag string");
                for (Sym f : p.pushFlags)
                    if (!g.is_flag(f)) throw ValidationError("indexed: pushed symbol is not a flag");
                break;
            case PKind::Pop:
                if (p.popFlag < 0 || !g.is_flag(p.popFlag)) throw ValidationError("indexed: pop production without a flag");
                for (Sym s : p.rhs)
                    if (g.is_flag(s)) throw ValidationError("indexed: flag symbol in production body");
                break;
            case PKind::Copy:
                for (Sym s : p.rhs)
                    if (g.is_flag(s)) throw ValidationError("indexed: flag symbol in production body");
                break;
        }
    }
}

// Embeds a CFG as an indexed grammar over the trivial flag set {$}: every
// production becomes a copy-production, so flags are carried but never used.
inline Ig cfg_as_indexed(const Cfg& g) {
    validate(g);
    Ig out;
    std::unordered_map<Sym, Sym> remap;
    for (Sym s = 0; s < static_cast<Sym>(g.syms.size()); ++s)
        remap[s] = out.syms.intern(g.syms.name(s), g.syms.kind(s));
    out.endFlag = out.syms.intern("$", SymbolKind::Flag);
    out.start = remap.at(g.start);
    for (const auto& p : g.prods) {
        IgProd q;
        q.kind = PKind::Copy;
        q.lhs = remap.at(p.lhs);
        for (Sym s : p.rhs) q.rhs.push_back(remap.at(s));
        out.prods.push_back(std::move(q));
    }
    validate(out);
    return out;
}

// ---------------------------------------------------------------------------
// Nondeterministic finite automata

struct Nfa {
    std::vector<std::string> states;
    std::unordered_map<std::string, int> stateIndex;
    std::vector<std::string> alphabet;  // terminal names, sorted on validate
    struct Tr {
        int from = -1;
        int to = -1;
        std::string label;  // empty = epsilon move
    };
    std::vector<Tr> trans;
    int start = -1;
    std::set<int> accepts;

    int add_state(const std::string& name) {
        auto it = stateIndex.find(name);
        if (it != stateIndex.end()) return it->second;
        check_symbol_name(name);
        int id = static_cast<int>(states.size());
        states.push_back(name);
        stateIndex.emplace(name, id);
        return id;
    }
};

inline void validate(const Nfa& m) {
    if (m.start < 0 || m.start >= static_cast<int>(m.states.size())) throw ValidationError("nfa: start state missing");
    for (int q : m.accepts)
        if (q < 0 || q >= static_cast<int>(m.states.size())) throw ValidationError("nfa: accept state out of range");
    for (const auto& t : m.trans) {
        if (t.from < 0 || t.from >= static_cast<int>(m.states.size()) || t.to < 0 || t.to >= static_cast<int>(m.states.size()))
            throw ValidationError("nfa: transition endpoint out of range");
        if (!t.label.empty() && std::find(m.alphabet.begin(), m.alphabet.end(), t.label) == m.alphabet.end())
            throw ValidationError("nfa: transition label `" + t.label + "` not in alphabet");
    }
}

}  // namespace permlang
