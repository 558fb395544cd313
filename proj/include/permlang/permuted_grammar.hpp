#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "permlang/grammar.hpp"
#include "permlang/normal_form.hpp"
#include "permlang/permutation.hpp"
#include "permlang/symbols.hpp"
#include "permlang/tree_shape.hpp"

namespace permlang {

// ---------------------------------------------------------------------------
// Indexed grammar for one tree shape: all words w_{tau(1)}...w_{tau(ell)}
// where w_1...w_ell is in L(g), parts 2..ell are non-empty, and the ell-1
// part boundaries induce this shape inside some derivation tree of g.
//
// Phase 1 walks the derivation tree edge by edge in the shape's edge order,
// recording everything in the flag string: per edge, the guessed entry
// nonterminal (B.al), the subtrees deferred left or right of the walk (A.L,
// A.R), the edge terminator (A.om at an inner junction, a.om at a leaf), and
// a closing marker #i.  Phase 2 splits into one scanner per outline entry,
// concatenated in permuted order; each scanner skips to its edge marker,
// replays its side of that edge's section, and spawns a deferred-subtree
// symbol {A}.t for every matching deferment, which clears the rest of the
// flag and derives A with the original productions.  Check symbols verify at
// every junction that the two guessed child entries and the recorded
// terminator form a production of g.
inline Ig shape_grammar(const Cfg& g, const TreeShape& shape, const Permutation& tau) {
    validate(g);
    validate(tau);
    if (!g.cnf || !is_cnf_grammar(g))
        throw NotCnfError("shape construction requires a grammar in Chomsky normal form");
    int ell = shape.leaf_count() + 1;
    if (tau.degree() != ell)
        throw DegreeMismatchError("permutation degree " + std::to_string(tau.degree()) +
                                  " does not match shape part count " + std::to_string(ell));

    EdgeOrder ord = order_edges(shape);
    Outline ol = outline(shape, ord);
    std::vector<BranchPoint> bps = branch_points(shape, ord);
    int edgeN = ord.edgeCount;
    int inner = ord.innerCount;

    std::vector<Sym> origNts = g.syms.of_kind(SymbolKind::Nonterminal);
    std::vector<Sym> origTs = g.syms.of_kind(SymbolKind::Terminal);
    struct BinProd {
        Sym a, b, c;
    };
    struct TermProd {
        Sym a, t;
    };
    std::vector<BinProd> binProds;
    std::vector<TermProd> termProds;
    for (const auto& p : g.prods) {
        if (p.rhs.size() == 2) binProds.push_back({p.lhs, p.rhs[0], p.rhs[1]});
        else termProds.push_back({p.lhs, p.rhs[0]});
    }

    Ig out;
    std::vector<Sym> tmap(g.syms.size(), -1), nmap(g.syms.size(), -1);
    for (Sym t : origTs) tmap[static_cast<size_t>(t)] = out.syms.intern(g.syms.name(t), SymbolKind::Terminal);
    for (Sym a : origNts) nmap[static_cast<size_t>(a)] = out.syms.intern(g.syms.name(a), SymbolKind::Nonterminal);

    // Flags.
    Sym dollar = out.syms.intern("$", SymbolKind::Flag);
    out.endFlag = dollar;
    std::vector<Sym> alFlag(g.syms.size(), -1), omFlag(g.syms.size(), -1), lFlag(g.syms.size(), -1),
        rFlag(g.syms.size(), -1), tomFlag(g.syms.size(), -1);
    for (Sym a : origNts) {
        const std::string& nm = g.syms.name(a);
        alFlag[static_cast<size_t>(a)] = detail::fresh_symbol(out.syms, nm + ".al", SymbolKind::Flag);
        omFlag[static_cast<size_t>(a)] = detail::fresh_symbol(out.syms, nm + ".om", SymbolKind::Flag);
        lFlag[static_cast<size_t>(a)] = detail::fresh_symbol(out.syms, nm + ".L", SymbolKind::Flag);
        rFlag[static_cast<size_t>(a)] = detail::fresh_symbol(out.syms, nm + ".R", SymbolKind::Flag);
    }
    for (Sym t : origTs)
        tomFlag[static_cast<size_t>(t)] = detail::fresh_symbol(out.syms, g.syms.name(t) + ".om", SymbolKind::Flag);
    std::vector<Sym> hashFlag(static_cast<size_t>(edgeN) + 1, -1);
    for (int i = 1; i <= edgeN; ++i)
        hashFlag[static_cast<size_t>(i)] = detail::fresh_symbol(out.syms, "#" + std::to_string(i), SymbolKind::Flag);

    // Walker, scanner, and check nonterminals.
    Sym start0 = detail::fresh_symbol(out.syms, "_start", SymbolKind::Nonterminal);
    std::vector<std::vector<Sym>> aE(g.syms.size(), std::vector<Sym>(static_cast<size_t>(edgeN) + 1, -1));
    for (Sym a : origNts)
        for (int i = 1; i <= edgeN; ++i)
            aE[static_cast<size_t>(a)][static_cast<size_t>(i)] = detail::fresh_symbol(
                out.syms, g.syms.name(a) + "@e" + std::to_string(i), SymbolKind::Nonterminal);
    Sym m0 = detail::fresh_symbol(out.syms, "_M", SymbolKind::Nonterminal);
    Sym mf = detail::fresh_symbol(out.syms, "_Mf", SymbolKind::Nonterminal);
    std::vector<std::vector<Sym>> mfij(static_cast<size_t>(ell) + 1), mij(static_cast<size_t>(ell) + 1);
    for (int i = 1; i <= ell; ++i) {
        size_t k = ol.segments[static_cast<size_t>(i - 1)].size();
        mfij[static_cast<size_t>(i)].assign(k + 1, -1);
        mij[static_cast<size_t>(i)].assign(k + 1, -1);
        for (size_t j = 1; j <= k; ++j) {
            std::string suffix = std::to_string(i) + "." + std::to_string(j);
            mfij[static_cast<size_t>(i)][j] = detail::fresh_symbol(out.syms, "_Mf." + suffix,
                                                                   SymbolKind::Nonterminal);
            mij[static_cast<size_t>(i)][j] = detail::fresh_symbol(out.syms, "_M." + suffix,
                                                                  SymbolKind::Nonterminal);
        }
    }
    std::vector<Sym> tilde(g.syms.size(), -1);
    for (Sym a : origNts)
        tilde[static_cast<size_t>(a)] = detail::fresh_symbol(out.syms, g.syms.name(a) + ".t",
                                                             SymbolKind::Nonterminal);
    struct ChkFamily {
        Sym seekHi, atHi;
        std::map<Sym, Sym> seekLo, atLo;
        std::map<std::pair<Sym, Sym>, Sym> seekP, atP;
    };
    std::vector<ChkFamily> chk(bps.size());
    for (size_t b = 0; b < bps.size(); ++b) {
        std::string stem = "_chk" + std::to_string(b + 1);
        chk[b].seekHi = detail::fresh_symbol(out.syms, stem, SymbolKind::Nonterminal);
        chk[b].atHi = detail::fresh_symbol(out.syms, stem + "!", SymbolKind::Nonterminal);
        for (Sym d : origNts) {
            std::string stemD = stem + "." + g.syms.name(d);
            chk[b].seekLo[d] = detail::fresh_symbol(out.syms, stemD, SymbolKind::Nonterminal);
            chk[b].atLo[d] = detail::fresh_symbol(out.syms, stemD + "!", SymbolKind::Nonterminal);
            for (Sym e : origNts) {
                std::string stemDE = stemD + "." + g.syms.name(e);
                chk[b].seekP[{d, e}] = detail::fresh_symbol(out.syms, stemDE, SymbolKind::Nonterminal);
                chk[b].atP[{d, e}] = detail::fresh_symbol(out.syms, stemDE + "!", SymbolKind::Nonterminal);
            }
        }
    }

    std::vector<Sym> allFlags = out.syms.of_kind(SymbolKind::Flag);
    std::set<Sym> alSet;
    for (Sym a : origNts) alSet.insert(alFlag[static_cast<size_t>(a)]);

    // A symbol that skips every flag except one, then takes its transition.
    auto f_ready = [&](Sym who, Sym keep, Sym to) {
        for (Sym f : allFlags) {
            if (f == keep) continue;
            out.prods.push_back({PKind::Pop, who, f, {}, {who}});
        }
        out.prods.push_back({PKind::Pop, who, keep, {}, {to}});
    };
    // A symbol that skips every non-entry flag, branching on the entry flag.
    auto al_ready = [&](Sym who, const std::function<Sym(Sym)>& target) {
        for (Sym f : allFlags) {
            if (alSet.count(f)) continue;
            out.prods.push_back({PKind::Pop, who, f, {}, {who}});
        }
        for (Sym d : origNts)
            out.prods.push_back({PKind::Pop, who, alFlag[static_cast<size_t>(d)], {}, {target(d)}});
    };

    out.start = start0;
    Sym gs = g.start;
    out.prods.push_back(
        {PKind::Push, start0, -1, {alFlag[static_cast<size_t>(gs)]}, {aE[static_cast<size_t>(gs)][1]}});

    // Walking one edge: continue into either child, deferring the other.
    for (int i = 1; i <= edgeN; ++i)
        for (const auto& bp : binProds) {
            out.prods.push_back({PKind::Push, aE[static_cast<size_t>(bp.a)][static_cast<size_t>(i)], -1,
                                 {rFlag[static_cast<size_t>(bp.c)]},
                                 {aE[static_cast<size_t>(bp.b)][static_cast<size_t>(i)]}});
            out.prods.push_back({PKind::Push, aE[static_cast<size_t>(bp.a)][static_cast<size_t>(i)], -1,
                                 {lFlag[static_cast<size_t>(bp.b)]},
                                 {aE[static_cast<size_t>(bp.c)][static_cast<size_t>(i)]}});
        }
    // Closing an inner edge at a junction nonterminal.
    for (int i = 1; i <= inner; ++i)
        for (Sym a : origNts)
            for (Sym b : origNts)
                out.prods.push_back({PKind::Push, aE[static_cast<size_t>(a)][static_cast<size_t>(i)], -1,
                                     {alFlag[static_cast<size_t>(b)], hashFlag[static_cast<size_t>(i)],
                                      omFlag[static_cast<size_t>(a)]},
                                     {aE[static_cast<size_t>(b)][static_cast<size_t>(i + 1)]}});
    // Closing a leaf edge at its boundary terminal.
    for (int i = inner + 1; i < edgeN; ++i)
        for (const auto& tp : termProds)
            for (Sym b : origNts)
                out.prods.push_back({PKind::Push, aE[static_cast<size_t>(tp.a)][static_cast<size_t>(i)], -1,
                                     {alFlag[static_cast<size_t>(b)], hashFlag[static_cast<size_t>(i)],
                                      tomFlag[static_cast<size_t>(tp.t)]},
                                     {aE[static_cast<size_t>(b)][static_cast<size_t>(i + 1)]}});
    // Closing the last edge hands over to the unpacking phase.
    for (const auto& tp : termProds)
        out.prods.push_back({PKind::Push, aE[static_cast<size_t>(tp.a)][static_cast<size_t>(edgeN)], -1,
                             {hashFlag[static_cast<size_t>(edgeN)], tomFlag[static_cast<size_t>(tp.t)]},
                             {m0}});

    // Unpacking root: scanners in permuted order plus one check per junction.
    {
        std::vector<Sym> body{mf};
        for (size_t b = 0; b < bps.size(); ++b) body.push_back(chk[b].seekHi);
        out.prods.push_back({PKind::Copy, m0, -1, {}, std::move(body)});
    }
    {
        std::vector<Sym> body;
        for (int s = 1; s <= ell; ++s) {
            int part = tau(s);
            for (size_t j = 1; j < mfij[static_cast<size_t>(part)].size(); ++j)
                body.push_back(mfij[static_cast<size_t>(part)][j]);
        }
        out.prods.push_back({PKind::Copy, mf, -1, {}, std::move(body)});
    }

    // Junction checks: read the entry symbols of both child edges (the
    // higher-numbered edge's section lies nearer the flag head) and accept
    // on a matching production's terminator.
    for (size_t b = 0; b < bps.size(); ++b) {
        int hi = std::max(bps[b].left, bps[b].right);
        int lo = std::min(bps[b].left, bps[b].right);
        bool leftIsHi = bps[b].left > bps[b].right;
        f_ready(chk[b].seekHi, hashFlag[static_cast<size_t>(hi)], chk[b].atHi);
        al_ready(chk[b].atHi, [&](Sym d) { return chk[b].seekLo.at(d); });
        for (Sym d : origNts) {
            f_ready(chk[b].seekLo.at(d), hashFlag[static_cast<size_t>(lo)], chk[b].atLo.at(d));
            al_ready(chk[b].atLo.at(d), [&](Sym e) { return chk[b].seekP.at({d, e}); });
            for (Sym e : origNts)
                f_ready(chk[b].seekP.at({d, e}), hashFlag[static_cast<size_t>(bps[b].parent)],
                        chk[b].atP.at({d, e}));
        }
        for (const auto& bp : binProds) {
            Sym d = leftIsHi ? bp.b : bp.c;
            Sym e = leftIsHi ? bp.c : bp.b;
            out.prods.push_back(
                {PKind::Pop, chk[b].atP.at({d, e}), omFlag[static_cast<size_t>(bp.a)], {}, {}});
        }
    }

    // Scanners: skip to the entry's edge marker, then replay that section.
    for (int i = 1; i <= ell; ++i) {
        const auto& seg = ol.segments[static_cast<size_t>(i - 1)];
        for (size_t j = 1; j <= seg.size(); ++j) {
            const OutlineEntry& entry = seg[j - 1];
            Sym seek = mfij[static_cast<size_t>(i)][j];
            Sym scan = mij[static_cast<size_t>(i)][j];
            f_ready(seek, hashFlag[static_cast<size_t>(entry.edge)], scan);
            bool right = entry.rightSide;
            for (Sym t : origTs) {
                std::vector<Sym> body =
                    right ? std::vector<Sym>{tmap[static_cast<size_t>(t)], scan} : std::vector<Sym>{scan};
                out.prods.push_back({PKind::Pop, scan, tomFlag[static_cast<size_t>(t)], {}, std::move(body)});
            }
            for (Sym a : origNts) {
                out.prods.push_back({PKind::Pop, scan, omFlag[static_cast<size_t>(a)], {}, {scan}});
                std::vector<Sym> lbody = !right ? std::vector<Sym>{scan, tilde[static_cast<size_t>(a)]}
                                                : std::vector<Sym>{scan};
                out.prods.push_back({PKind::Pop, scan, lFlag[static_cast<size_t>(a)], {}, std::move(lbody)});
                std::vector<Sym> rbody = right ? std::vector<Sym>{tilde[static_cast<size_t>(a)], scan}
                                               : std::vector<Sym>{scan};
                out.prods.push_back({PKind::Pop, scan, rFlag[static_cast<size_t>(a)], {}, std::move(rbody)});
                out.prods.push_back({PKind::Pop, scan, alFlag[static_cast<size_t>(a)], {}, {}});
            }
        }
    }

    // Deferred subtrees clear the remaining flag and derive from the
    // original grammar.
    for (Sym a : origNts) f_ready(tilde[static_cast<size_t>(a)], dollar, nmap[static_cast<size_t>(a)]);
    for (const auto& p : g.prods) {
        std::vector<Sym> body;
        for (Sym x : p.rhs)
            body.push_back(g.syms.kind(x) == SymbolKind::Terminal ? tmap[static_cast<size_t>(x)]
                                                                  : nmap[static_cast<size_t>(x)]);
        out.prods.push_back({PKind::Copy, nmap[static_cast<size_t>(p.lhs)], -1, {}, std::move(body)});
    }

    // Enumeration guidance: the walker's yield is bounded below by what the
    // already-written flag sections will emit plus one letter per leaf edge
    // still open; junction checks become decidable as soon as the later
    // child edge closes.
    for (int i = 1; i <= edgeN; ++i) {
        IgEnumHints::Charge charge;
        for (int pi = 1; pi <= ell; ++pi) {
            const auto& seg = ol.segments[static_cast<size_t>(pi - 1)];
            for (size_t j = 1; j <= seg.size(); ++j) {
                int e = seg[j - 1].edge;
                if (e <= i - 1) charge.chargers.push_back(mfij[static_cast<size_t>(pi)][j]);
                else if (e == i) charge.chargers.push_back(mij[static_cast<size_t>(pi)][j]);
            }
        }
        charge.base = (i <= inner) ? (ell - 1) : (edgeN - i + 1);
        for (Sym a : origNts)
            out.hints.charges[aE[static_cast<size_t>(a)][static_cast<size_t>(i)]] = charge;
    }
    out.hints.charges[start0] = IgEnumHints::Charge{{}, ell - 1};
    for (size_t b = 0; b < bps.size(); ++b)
        out.hints.validators.push_back(
            {chk[b].seekHi, hashFlag[static_cast<size_t>(std::max(bps[b].left, bps[b].right))]});

    validate(out);
    return out;
}

// ---------------------------------------------------------------------------
// Debug view of a phase-2 flag string: one section per edge, highest first.

struct FlagSection {
    int edge = 0;
    Sym omega = -1;
    std::vector<Sym> defers;
    Sym alpha = -1;
};

inline std::vector<FlagSection> decode_flag(const Ig& g, const std::vector<Sym>& flag, const TreeShape& shape,
                                            const EdgeOrder& ord) {
    auto nameOf = [&](size_t idx) { return g.syms.name(flag[idx]); };
    auto fail = [](const std::string& why) -> void { throw MalformedFlagError(why); };
    (void)shape;
    std::vector<FlagSection> out;
    size_t i = 0;
    int expect = ord.edgeCount;
    while (expect >= 1) {
        if (i >= flag.size() || nameOf(i)[0] != '#') fail("expected edge marker #" + std::to_string(expect));
        int edge = std::stoi(nameOf(i).substr(1));
        if (edge != expect) fail("edge markers out of order: saw #" + std::to_string(edge));
        FlagSection sec;
        sec.edge = edge;
        ++i;
        if (i >= flag.size() || !nameOf(i).ends_with(".om")) fail("expected a terminator flag after the marker");
        std::string base = nameOf(i).substr(0, nameOf(i).size() - 3);
        bool terminalOmega = g.syms.contains(base) && g.syms.kind(g.syms.id_of(base)) == SymbolKind::Terminal;
        if (edge <= ord.innerCount && terminalOmega) fail("inner edge terminated by a letter flag");
        if (edge > ord.innerCount && !terminalOmega) fail("leaf edge not terminated by a letter flag");
        sec.omega = flag[i];
        ++i;
        while (i < flag.size() && (nameOf(i).ends_with(".L") || nameOf(i).ends_with(".R"))) {
            sec.defers.push_back(flag[i]);
            ++i;
        }
        if (i >= flag.size() || !nameOf(i).ends_with(".al")) fail("section lacks its entry flag");
        sec.alpha = flag[i];
        ++i;
        out.push_back(std::move(sec));
        --expect;
    }
    if (i + 1 != flag.size() || flag[i] != g.endFlag) fail("flag does not finish with the end flag");
    return out;
}

// ---------------------------------------------------------------------------
// Disjoint union: components renamed apart (terminals and the end flag
// shared), one start alternative per component.

inline Ig ig_union(const std::vector<Ig>& parts) {
    if (parts.empty()) throw ValidationError("union of an empty grammar list");
    Ig out;
    out.endFlag = out.syms.intern("$", SymbolKind::Flag);
    out.start = detail::fresh_symbol(out.syms, "_u.start", SymbolKind::Nonterminal);
    int startBase = -1;
    for (size_t idx = 0; idx < parts.size(); ++idx) {
        const Ig& part = parts[idx];
        std::string prefix = "u" + std::to_string(idx) + ".";
        std::vector<Sym> remap(part.syms.size(), -1);
        for (Sym s = 0; s < static_cast<Sym>(part.syms.size()); ++s) {
            switch (part.syms.kind(s)) {
                case SymbolKind::Terminal:
                    remap[static_cast<size_t>(s)] = out.syms.intern(part.syms.name(s), SymbolKind::Terminal);
                    break;
                case SymbolKind::Nonterminal:
                    remap[static_cast<size_t>(s)] =
                        detail::fresh_symbol(out.syms, prefix + part.syms.name(s), SymbolKind::Nonterminal);
                    break;
                case SymbolKind::Flag:
                    remap[static_cast<size_t>(s)] =
                        (s == part.endFlag)
                            ? out.endFlag
                            : detail::fresh_symbol(out.syms, prefix + part.syms.name(s), SymbolKind::Flag);
                    break;
            }
        }
        for (const auto& p : part.prods) {
            IgProd q;
            q.kind = p.kind;
            q.lhs = remap[static_cast<size_t>(p.lhs)];
            q.popFlag = p.popFlag < 0 ? -1 : remap[static_cast<size_t>(p.popFlag)];
            for (Sym f : p.pushFlags) q.pushFlags.push_back(remap[static_cast<size_t>(f)]);
            for (Sym x : p.rhs) q.rhs.push_back(remap[static_cast<size_t>(x)]);
            out.prods.push_back(std::move(q));
        }
        for (const auto& [sym, charge] : part.hints.charges) {
            IgEnumHints::Charge c;
            c.base = charge.base;
            for (Sym z : charge.chargers) c.chargers.push_back(remap[static_cast<size_t>(z)]);
            out.hints.charges[remap[static_cast<size_t>(sym)]] = std::move(c);
        }
        for (const auto& [sym, trig] : part.hints.validators)
            out.hints.validators.push_back({remap[static_cast<size_t>(sym)], remap[static_cast<size_t>(trig)]});
        auto ch = part.hints.charges.find(part.start);
        int partBase =
            (ch != part.hints.charges.end() && ch->second.chargers.empty()) ? ch->second.base : 0;
        startBase = (startBase < 0) ? partBase : std::min(startBase, partBase);
        out.prods.push_back({PKind::Copy, out.start, -1, {}, {remap[static_cast<size_t>(part.start)]}});
    }
    if (startBase > 0) out.hints.charges[out.start] = IgEnumHints::Charge{{}, startBase};
    validate(out);
    return out;
}

namespace detail {

// Empty-word component used by the sigma and C^k assemblies.
inline Ig epsilon_grammar() {
    Ig eps;
    eps.endFlag = eps.syms.intern("$", SymbolKind::Flag);
    eps.start = eps.syms.intern("_eps.start", SymbolKind::Nonterminal);
    eps.prods.push_back({PKind::Copy, eps.start, -1, {}, {}});
    return eps;
}

inline Ig l_tau_cnf(const Cfg& cnf, const Permutation& tau) {
    int ell = tau.degree();
    if (ell == 1) return cfg_as_indexed(cnf);
    if (ell == 2) return shape_grammar(cnf, single_edge_shape(), tau);
    std::vector<Ig> parts;
    for (const auto& shape : enumerate_shapes(ell - 1)) parts.push_back(shape_grammar(cnf, shape, tau));
    return ig_union(parts);
}

}  // namespace detail

// Grammar for {w_{tau(1)}...w_{tau(ell)} : w_1...w_ell in L(g), w_i nonempty
// for i >= 2}: the union of the shape construction over all shapes.
inline Ig l_tau_grammar(const Cfg& g, const Permutation& tau) {
    return detail::l_tau_cnf(cfg_to_cnf(g).grammar, tau);
}

// Grammar for the sigma-permutation closure: the union over all subpatterns,
// with the empty word restored when g derives it.
inline Ig sigma_grammar(const Cfg& g, const Permutation& sigma) {
    CnfResult cnf = cfg_to_cnf(g);
    std::vector<Ig> parts;
    for (const Permutation& tau : subpatterns(sigma)) parts.push_back(detail::l_tau_cnf(cnf.grammar, tau));
    if (cnf.hadEpsilon) parts.push_back(detail::epsilon_grammar());
    return ig_union(parts);
}

// Grammar for the k-bounded permutation closure: all permutations of all
// degrees up to k.
inline Ig ck_grammar(const Cfg& g, int k) {
    if (k < 1) throw ValidationError("permutation closure degree must be at least 1");
    CnfResult cnf = cfg_to_cnf(g);
    std::vector<Ig> parts;
    for (int ell = 1; ell <= k; ++ell)
        for (const Permutation& tau : all_permutations(ell)) parts.push_back(detail::l_tau_cnf(cnf.grammar, tau));
    if (cnf.hadEpsilon) parts.push_back(detail::epsilon_grammar());
    return ig_union(parts);
}

}  // namespace permlang
