#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "permlang/grammar.hpp"
#include "permlang/symbols.hpp"

namespace permlang {

namespace detail {

// Intern a generated name, refusing to alias anything already present.
inline Sym fresh_symbol(SymbolTable& syms, const std::string& name, SymbolKind kind) {
    if (syms.contains(name))
        throw ValidationError("generated symbol name '" + name + "' collides with an existing symbol");
    return syms.intern(name, kind);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Chomsky normal form.

struct CnfResult {
    Cfg grammar;
    bool hadEpsilon = false;  // the input derived the empty word (dropped here)
};

inline CnfResult cfg_to_cnf(const Cfg& g) {
    validate(g);
    Cfg work;
    work.syms = g.syms;
    work.start = g.start;
    work.prods = g.prods;

    // Separate terminals out of long bodies, sharing one carrier per terminal.
    std::map<Sym, Sym> carrier;
    auto carrier_of = [&](Sym t) {
        auto it = carrier.find(t);
        if (it != carrier.end()) return it->second;
        Sym c = detail::fresh_symbol(work.syms, "_nf.t." + work.syms.name(t), SymbolKind::Nonterminal);
        work.prods.push_back({c, {t}});
        carrier.emplace(t, c);
        return c;
    };
    size_t fixed = work.prods.size();
    for (size_t i = 0; i < fixed; ++i) {
        auto& p = work.prods[i];
        if (p.rhs.size() < 2) continue;
        for (auto& x : p.rhs)
            if (work.syms.kind(x) == SymbolKind::Terminal) x = carrier_of(x);
    }

    // Binarize long bodies.
    int binCounter = 0;
    std::vector<CfgProd> bin;
    for (const auto& p : work.prods) {
        if (p.rhs.size() <= 2) {
            bin.push_back(p);
            continue;
        }
        Sym lhs = p.lhs;
        for (size_t i = 0; i + 2 < p.rhs.size(); ++i) {
            Sym rest = detail::fresh_symbol(work.syms, "_nf.b" + std::to_string(binCounter++),
                                            SymbolKind::Nonterminal);
            bin.push_back({lhs, {p.rhs[i], rest}});
            lhs = rest;
        }
        bin.push_back({lhs, {p.rhs[p.rhs.size() - 2], p.rhs[p.rhs.size() - 1]}});
    }
    work.prods = std::move(bin);

    // Empty-word elimination: expand every nullable position.
    std::set<Sym> nullable;
    {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& p : work.prods) {
                if (nullable.count(p.lhs)) continue;
                bool all = true;
                for (Sym x : p.rhs)
                    if (work.syms.kind(x) == SymbolKind::Terminal || !nullable.count(x)) {
                        all = false;
                        break;
                    }
                if (all) {
                    nullable.insert(p.lhs);
                    changed = true;
                }
            }
        }
    }
    bool hadEpsilon = nullable.count(work.start) > 0;
    std::set<std::pair<Sym, std::vector<Sym>>> delSet;
    for (const auto& p : work.prods) {
        size_t k = p.rhs.size();
        for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
            std::vector<Sym> rhs;
            bool valid = true;
            for (size_t i = 0; i < k; ++i) {
                if (mask & (1u << i)) {
                    if (work.syms.kind(p.rhs[i]) == SymbolKind::Terminal || !nullable.count(p.rhs[i])) {
                        valid = false;
                        break;
                    }
                } else {
                    rhs.push_back(p.rhs[i]);
                }
            }
            if (valid && !rhs.empty()) delSet.insert({p.lhs, rhs});
        }
    }

    // Unit elimination over the nonterminal chain graph.
    std::map<Sym, std::set<Sym>> unitSucc;
    for (const auto& [lhs, rhs] : delSet)
        if (rhs.size() == 1 && work.syms.kind(rhs[0]) == SymbolKind::Nonterminal) unitSucc[lhs].insert(rhs[0]);
    std::set<std::pair<Sym, std::vector<Sym>>> finalSet;
    for (Sym a : work.syms.of_kind(SymbolKind::Nonterminal)) {
        std::set<Sym> reach{a};
        std::deque<Sym> bfs{a};
        while (!bfs.empty()) {
            Sym cur = bfs.front();
            bfs.pop_front();
            auto it = unitSucc.find(cur);
            if (it == unitSucc.end()) continue;
            for (Sym nx : it->second)
                if (reach.insert(nx).second) bfs.push_back(nx);
        }
        for (const auto& [lhs, rhs] : delSet) {
            if (!reach.count(lhs)) continue;
            if (rhs.size() == 1 && work.syms.kind(rhs[0]) == SymbolKind::Nonterminal) continue;
            finalSet.insert({a, rhs});
        }
    }

    // Drop productions that mention symbols unable to terminate or unreachable
    // from the start, then rebuild the table around what survived.
    std::set<Sym> generating;
    {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& [lhs, rhs] : finalSet) {
                if (generating.count(lhs)) continue;
                bool all = true;
                for (Sym x : rhs)
                    if (work.syms.kind(x) == SymbolKind::Nonterminal && !generating.count(x)) {
                        all = false;
                        break;
                    }
                if (all) {
                    generating.insert(lhs);
                    changed = true;
                }
            }
        }
    }
    std::set<Sym> reachable{work.start};
    {
        std::deque<Sym> bfs{work.start};
        while (!bfs.empty()) {
            Sym cur = bfs.front();
            bfs.pop_front();
            for (const auto& [lhs, rhs] : finalSet) {
                if (lhs != cur || !generating.count(lhs)) continue;
                bool all = true;
                for (Sym x : rhs)
                    if (work.syms.kind(x) == SymbolKind::Nonterminal && !generating.count(x)) all = false;
                if (!all) continue;
                for (Sym x : rhs)
                    if (work.syms.kind(x) == SymbolKind::Nonterminal && reachable.insert(x).second)
                        bfs.push_back(x);
            }
        }
    }

    CnfResult res;
    res.hadEpsilon = hadEpsilon;
    Cfg& out = res.grammar;
    std::set<Sym> live;
    live.insert(work.start);
    for (const auto& [lhs, rhs] : finalSet) {
        if (!generating.count(lhs) || !reachable.count(lhs)) continue;
        bool keep = true;
        for (Sym x : rhs)
            if (work.syms.kind(x) == SymbolKind::Nonterminal && (!generating.count(x) || !reachable.count(x)))
                keep = false;
        if (!keep) continue;
        live.insert(lhs);
        for (Sym x : rhs) live.insert(x);
    }
    std::map<Sym, Sym> remap;
    for (Sym s = 0; s < static_cast<Sym>(work.syms.size()); ++s) {
        if (!live.count(s)) continue;
        remap[s] = out.syms.intern(work.syms.name(s), work.syms.kind(s));
    }
    out.start = remap.at(work.start);
    for (const auto& [lhs, rhs] : finalSet) {
        if (!remap.count(lhs)) continue;
        bool keep = true;
        std::vector<Sym> nr;
        for (Sym x : rhs) {
            if (!remap.count(x)) {
                keep = false;
                break;
            }
            nr.push_back(remap.at(x));
        }
        if (keep) out.prods.push_back({remap.at(lhs), std::move(nr)});
    }
    out.cnf = true;
    validate(out);
    return res;
}

// ---------------------------------------------------------------------------
// Indexed-grammar normal form: a fresh start symbol appearing in no body, and
// every production shaped A -> B^f (one flag), A^f -> B, A -> B C, or A -> a,
// with the end flag never pushed.

inline bool is_ig_normal_form(const Ig& g) {
    validate(g);
    for (const auto& p : g.prods) {
        for (Sym x : p.rhs)
            if (x == g.start) return false;
        switch (p.kind) {
            case PKind::Push:
                if (p.pushFlags.size() != 1 || p.rhs.size() != 1 || !g.is_nonterminal(p.rhs[0])) return false;
                if (p.pushFlags[0] == g.endFlag) return false;
                break;
            case PKind::Pop:
                if (p.rhs.size() != 1 || !g.is_nonterminal(p.rhs[0])) return false;
                break;
            case PKind::Copy:
                if (p.rhs.size() == 1 && g.is_terminal(p.rhs[0])) break;
                if (p.rhs.size() == 2 && g.is_nonterminal(p.rhs[0]) && g.is_nonterminal(p.rhs[1])) break;
                return false;
        }
    }
    return true;
}

struct IgNormalFormResult {
    Ig grammar;
    bool hadEpsilon = false;  // the input start had an empty copy body (dropped here)
};

inline IgNormalFormResult ig_to_normal_form(const Ig& g) {
    validate(g);
    IgNormalFormResult res;
    Ig& out = res.grammar;
    out.syms = g.syms;
    out.endFlag = g.endFlag;

    std::vector<IgProd> work;
    for (const auto& p : g.prods) {
        if (p.kind == PKind::Push) {
            for (Sym f : p.pushFlags)
                if (f == g.endFlag)
                    throw ValidationError("the end flag '" + g.syms.name(g.endFlag) + "' must not be pushed");
        }
        if (p.rhs.empty()) {
            if (p.kind == PKind::Pop)
                throw EpsilonProductionError("pop production with empty body cannot be normalized");
            if (p.kind == PKind::Copy && p.lhs == g.start) {
                res.hadEpsilon = true;
                continue;
            }
            throw EpsilonProductionError("empty body on a symbol other than the start cannot be normalized");
        }
        work.push_back(p);
    }

    Sym s0 = detail::fresh_symbol(out.syms, "_nf.start", SymbolKind::Nonterminal);
    work.push_back({PKind::Copy, s0, -1, {}, {g.start}});
    out.start = s0;

    // Split multi-flag pushes into chains of single-flag pushes.  The last
    // flag of the list lies deepest, so it is pushed first.
    int pushCounter = 0;
    {
        std::vector<IgProd> next;
        for (const auto& p : work) {
            if (p.kind != PKind::Push || p.pushFlags.size() <= 1) {
                next.push_back(p);
                continue;
            }
            Sym lhs = p.lhs;
            for (size_t i = p.pushFlags.size(); i > 1; --i) {
                Sym mid = detail::fresh_symbol(out.syms, "_nf.p" + std::to_string(pushCounter++),
                                               SymbolKind::Nonterminal);
                next.push_back({PKind::Push, lhs, -1, {p.pushFlags[i - 1]}, {mid}});
                lhs = mid;
            }
            next.push_back({PKind::Push, lhs, -1, {p.pushFlags[0]}, {p.rhs[0]}});
        }
        work = std::move(next);
    }

    // Route pop bodies through a dedicated nonterminal when they are not a
    // single nonterminal already.
    int popCounter = 0;
    {
        std::vector<IgProd> next;
        for (const auto& p : work) {
            if (p.kind != PKind::Pop || (p.rhs.size() == 1 && out.syms.kind(p.rhs[0]) == SymbolKind::Nonterminal)) {
                next.push_back(p);
                continue;
            }
            Sym v = detail::fresh_symbol(out.syms, "_nf.v" + std::to_string(popCounter++),
                                         SymbolKind::Nonterminal);
            next.push_back({PKind::Pop, p.lhs, p.popFlag, {}, {v}});
            next.push_back({PKind::Copy, v, -1, {}, p.rhs});
        }
        work = std::move(next);
    }

    // Copy bodies: separate terminals, then binarize.
    std::map<Sym, Sym> carrier;
    auto carrier_of = [&](Sym t) {
        auto it = carrier.find(t);
        if (it != carrier.end()) return it->second;
        Sym c = detail::fresh_symbol(out.syms, "_nf.t." + out.syms.name(t), SymbolKind::Nonterminal);
        carrier.emplace(t, c);
        return c;
    };
    {
        std::vector<IgProd> next;
        std::set<Sym> carriersEmitted;
        for (const auto& p : work) {
            if (p.kind != PKind::Copy || p.rhs.size() < 2) {
                next.push_back(p);
                continue;
            }
            IgProd q = p;
            for (auto& x : q.rhs)
                if (out.syms.kind(x) == SymbolKind::Terminal) {
                    Sym c = carrier_of(x);
                    if (carriersEmitted.insert(c).second) next.push_back({PKind::Copy, c, -1, {}, {x}});
                    x = c;
                }
            next.push_back(std::move(q));
        }
        work = std::move(next);
    }
    int binCounter = 0;
    {
        std::vector<IgProd> next;
        for (const auto& p : work) {
            if (p.kind != PKind::Copy || p.rhs.size() <= 2) {
                next.push_back(p);
                continue;
            }
            Sym lhs = p.lhs;
            for (size_t i = 0; i + 2 < p.rhs.size(); ++i) {
                Sym rest = detail::fresh_symbol(out.syms, "_nf.b" + std::to_string(binCounter++),
                                                SymbolKind::Nonterminal);
                next.push_back({PKind::Copy, lhs, -1, {}, {p.rhs[i], rest}});
                lhs = rest;
            }
            next.push_back({PKind::Copy, lhs, -1, {}, {p.rhs[p.rhs.size() - 2], p.rhs[p.rhs.size() - 1]}});
        }
        work = std::move(next);
    }

    // Fold flagless unit copies A -> B: A inherits B's other productions.
    std::map<Sym, std::set<Sym>> unitSucc;
    for (const auto& p : work)
        if (p.kind == PKind::Copy && p.rhs.size() == 1 && out.syms.kind(p.rhs[0]) == SymbolKind::Nonterminal)
            unitSucc[p.lhs].insert(p.rhs[0]);
    auto prod_key = [&](const IgProd& p) {
        std::string k = std::to_string(static_cast<int>(p.kind)) + "|" + std::to_string(p.lhs) + "|" +
                        std::to_string(p.popFlag) + "|";
        for (Sym f : p.pushFlags) k += std::to_string(f) + ",";
        k += "|";
        for (Sym x : p.rhs) k += std::to_string(x) + ",";
        return k;
    };
    std::set<std::string> emitted;
    for (Sym a : out.syms.of_kind(SymbolKind::Nonterminal)) {
        std::set<Sym> reach{a};
        std::deque<Sym> bfs{a};
        while (!bfs.empty()) {
            Sym cur = bfs.front();
            bfs.pop_front();
            auto it = unitSucc.find(cur);
            if (it == unitSucc.end()) continue;
            for (Sym nx : it->second)
                if (reach.insert(nx).second) bfs.push_back(nx);
        }
        for (const auto& p : work) {
            if (!reach.count(p.lhs)) continue;
            if (p.kind == PKind::Copy && p.rhs.size() == 1 && out.syms.kind(p.rhs[0]) == SymbolKind::Nonterminal)
                continue;
            IgProd q = p;
            q.lhs = a;
            if (emitted.insert(prod_key(q)).second) out.prods.push_back(std::move(q));
        }
    }

    validate(out);
    return res;
}

}  // namespace permlang
