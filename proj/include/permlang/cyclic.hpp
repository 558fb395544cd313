#pragma once

#include <string>
#include <vector>

#include "permlang/grammar.hpp"
#include "permlang/normal_form.hpp"
#include "permlang/symbols.hpp"

namespace permlang {

// Grammar for all rotations {w2 w1 : w1 w2 in L(g)} of a normal-form indexed
// grammar.  A guess component reproduces a flag string for the derivation
// node that emits the first letter of w2; hat companions of the original
// nonterminals then climb from that node back to the start symbol, replaying
// pushes as pops and pops as pushes and emitting every subtree hanging off
// the climb path on the correct side.  The climb closes by popping the end
// flag at the hatted start symbol.  That final pop inspects only the head of
// the flag string, so a guess may carry unconsumed flags below the end flag;
// such surplus is threaded untouched through the climb and discarded at the
// close, which is exactly what admits rotation points inside subderivations
// that start below a popped end flag.
inline Ig cyc_grammar(const Ig& g) {
    if (!is_ig_normal_form(g))
        throw NotNormalFormError("rotation construction requires a grammar in normal form");
    Ig out;
    out.syms = g.syms;
    out.endFlag = g.endFlag;
    out.prods = g.prods;

    std::vector<Sym> nts = g.syms.of_kind(SymbolKind::Nonterminal);
    std::vector<Sym> hat(g.syms.size(), -1);
    for (Sym a : nts)
        hat[static_cast<size_t>(a)] = detail::fresh_symbol(out.syms, "_h_" + g.syms.name(a),
                                                           SymbolKind::Nonterminal);
    Sym start2 = detail::fresh_symbol(out.syms, "_cyc.start", SymbolKind::Nonterminal);
    Sym guess = detail::fresh_symbol(out.syms, "_cyc.guess", SymbolKind::Nonterminal);
    out.start = start2;

    out.prods.push_back({PKind::Copy, start2, -1, {}, {g.start}});
    out.prods.push_back({PKind::Copy, start2, -1, {}, {guess}});
    // Climb finished: the head of the start symbol's flag string is the end
    // flag; anything below is an unconsumed guess surplus and is dropped.
    out.prods.push_back({PKind::Pop, hat[static_cast<size_t>(g.start)], g.endFlag, {}, {}});

    // Guessed strings are arbitrary stacks over the non-end flags on top of
    // the end flag.  Strings with an interior end flag never occur in a
    // normal-form derivation, so guessing one could only reproduce a node
    // string via its surplus-free prefix that a shorter guess already covers.
    for (Sym f : g.syms.of_kind(SymbolKind::Flag)) {
        if (f == g.endFlag) continue;
        out.prods.push_back({PKind::Push, guess, -1, {f}, {guess}});
    }

    for (const auto& p : g.prods) {
        switch (p.kind) {
            case PKind::Copy:
                if (p.rhs.size() == 1) {
                    // A -> a: the rotation may start at this letter.
                    out.prods.push_back({PKind::Copy, guess, -1, {}, {p.rhs[0], hat[static_cast<size_t>(p.lhs)]}});
                } else {
                    // A -> B C: climbing out of B emits C behind the climb,
                    // climbing out of C emits B after the loop closes.
                    out.prods.push_back({PKind::Copy, hat[static_cast<size_t>(p.rhs[0])], -1, {},
                                         {p.rhs[1], hat[static_cast<size_t>(p.lhs)]}});
                    out.prods.push_back({PKind::Copy, hat[static_cast<size_t>(p.rhs[1])], -1, {},
                                         {hat[static_cast<size_t>(p.lhs)], p.rhs[0]}});
                }
                break;
            case PKind::Push:
                // A -> B^f: climbing out of B removes the flag it was given.
                out.prods.push_back({PKind::Pop, hat[static_cast<size_t>(p.rhs[0])], p.pushFlags[0], {},
                                     {hat[static_cast<size_t>(p.lhs)]}});
                break;
            case PKind::Pop:
                // A^f -> B: climbing out of B restores the removed flag.
                out.prods.push_back({PKind::Push, hat[static_cast<size_t>(p.rhs[0])], -1, {p.popFlag},
                                     {hat[static_cast<size_t>(p.lhs)]}});
                break;
        }
    }

    validate(out);
    return out;
}

}  // namespace permlang
