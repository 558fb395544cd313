#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "permlang/grammar.hpp"
#include "permlang/symbols.hpp"

namespace permlang {

using AnyGrammar = std::variant<Cfg, Ig, Nfa>;

namespace detail {

// A token that is `#` alone, or `#` followed by a non-digit, opens a comment
// running to the end of the line.  `#` followed by digits is a flag name.
inline bool is_comment_token(const std::string& t) {
    if (t.empty() || t[0] != '#') return false;
    if (t.size() == 1) return true;
    return !std::isdigit(static_cast<unsigned char>(t[1]));
}

inline std::vector<std::string> tokenize_line(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) {
        if (is_comment_token(tok)) break;
        out.push_back(tok);
    }
    return out;
}

struct RawLine {
    int number = 0;
    std::vector<std::string> tokens;
};

inline std::vector<RawLine> raw_lines(const std::string& text) {
    std::vector<RawLine> out;
    std::istringstream is(text);
    std::string line;
    int n = 0;
    while (std::getline(is, line)) {
        ++n;
        auto toks = tokenize_line(line);
        if (!toks.empty()) out.push_back({n, std::move(toks)});
    }
    return out;
}

// Splits `B^f` into (B, f).  Exactly one caret, both sides non-empty.
inline std::pair<std::string, std::string> split_caret(const std::string& tok, int line) {
    auto pos = tok.find('^');
    if (pos == std::string::npos || pos == 0 || pos + 1 == tok.size() || tok.find('^', pos + 1) != std::string::npos)
        throw ParseError("malformed `^` in token `" + tok + "`", line);
    return {tok.substr(0, pos), tok.substr(pos + 1)};
}

inline bool has_caret(const std::string& tok) { return tok.find('^') != std::string::npos; }

struct RawProduction {
    int line = 0;
    std::string lhs;
    std::vector<std::vector<std::string>> alternatives;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Parsing

inline AnyGrammar parse_grammar(const std::string& text) {
    using namespace detail;
    auto lines = raw_lines(text);
    if (lines.empty()) throw ParseError("empty grammar text");

    std::string type;
    std::string start;
    std::vector<std::string> declFlags, declTerminals, declNonterminals, declStates, declAccept;
    bool haveTerminals = false, haveNonterminals = false, haveAccept = false, haveStates = false;
    std::vector<RawProduction> productions;
    struct RawTransition {
        int line;
        std::string from, label, to;
    };
    std::vector<RawTransition> transitions;

    for (const auto& rl : lines) {
        const auto& t = rl.tokens;
        const std::string& head = t[0];
        if (head.size() > 1 && head.back() == ':') {
            std::string key = head.substr(0, head.size() - 1);
            std::vector<std::string> vals(t.begin() + 1, t.end());
            if (key == "type") {
                if (vals.size() != 1) throw ParseError("`type:` expects one value", rl.number);
                type = vals[0];
            } else if (key == "start") {
                if (vals.size() != 1) throw ParseError("`start:` expects one value", rl.number);
                start = vals[0];
            } else if (key == "flags") {
                declFlags.insert(declFlags.end(), vals.begin(), vals.end());
            } else if (key == "terminals") {
                haveTerminals = true;
                declTerminals.insert(declTerminals.end(), vals.begin(), vals.end());
            } else if (key == "nonterminals") {
                haveNonterminals = true;
                declNonterminals.insert(declNonterminals.end(), vals.begin(), vals.end());
            } else if (key == "states") {
                haveStates = true;
                declStates.insert(declStates.end(), vals.begin(), vals.end());
            } else if (key == "accept") {
                haveAccept = true;
                declAccept.insert(declAccept.end(), vals.begin(), vals.end());
            } else {
                throw ParseError("unknown directive `" + key + ":`", rl.number);
            }
            continue;
        }
        auto arrow = std::find(t.begin(), t.end(), "->");
        if (arrow == t.end()) throw ParseError("expected a directive or a line containing `->`", rl.number);
        size_t arrowIdx = static_cast<size_t>(arrow - t.begin());
        if (arrowIdx == 2 && type == "nfa") {
            if (t.size() != 4) throw ParseError("nfa transition must be `state label -> state`", rl.number);
            transitions.push_back({rl.number, t[0], t[1], t[3]});
            continue;
        }
        if (arrowIdx != 1) throw ParseError("expected exactly one token before `->`", rl.number);
        RawProduction rp;
        rp.line = rl.number;
        rp.lhs = t[0];
        std::vector<std::string> alt;
        for (size_t i = 2; i < t.size(); ++i) {
            if (t[i] == "|") {
                rp.alternatives.push_back(alt);
                alt.clear();
            } else {
                alt.push_back(t[i]);
            }
        }
        rp.alternatives.push_back(alt);
        for (const auto& a : rp.alternatives)
            if (a.empty()) throw ParseError("empty alternative (use `eps` for the empty word)", rl.number);
        productions.push_back(std::move(rp));
    }

    if (type.empty()) throw ParseError("missing `type:` line");
    if (type != "cfg" && type != "indexed" && type != "nfa")
        throw ParseError("unknown type `" + type + "` (expected cfg, indexed, or nfa)");

    if (type == "nfa") {
        Nfa m;
        if (start.empty()) throw ParseError("nfa: missing `start:` line");
        if (!haveAccept) throw ParseError("nfa: missing `accept:` line");
        for (const auto& s : declStates) m.add_state(s);
        m.start = m.add_state(start);
        for (const auto& s : declAccept) m.accepts.insert(m.add_state(s));
        std::set<std::string> alpha;
        for (const auto& tr : transitions) {
            if (haveStates && !m.stateIndex.count(tr.from)) throw ParseError("undeclared state `" + tr.from + "`", tr.line);
            if (haveStates && !m.stateIndex.count(tr.to)) throw ParseError("undeclared state `" + tr.to + "`", tr.line);
            int from = m.add_state(tr.from);
            int to = m.add_state(tr.to);
            Nfa::Tr out;
            out.from = from;
            out.to = to;
            if (tr.label != "eps") {
                out.label = tr.label;
                alpha.insert(tr.label);
            }
            m.trans.push_back(out);
        }
        m.alphabet.assign(alpha.begin(), alpha.end());
        validate(m);
        return m;
    }

    if (start.empty()) throw ParseError("missing `start:` line");

    if (type == "cfg") {
        // Nonterminals: explicit declaration, otherwise all lhs symbols plus start.
        std::set<std::string> nts;
        if (haveNonterminals) nts.insert(declNonterminals.begin(), declNonterminals.end());
        else {
            for (const auto& p : productions) nts.insert(p.lhs);
            nts.insert(start);
        }
        std::set<std::string> terms(declTerminals.begin(), declTerminals.end());
        Cfg g;
        std::vector<std::string> ntOrder(nts.begin(), nts.end());
        for (const auto& s : ntOrder) g.syms.intern(s, SymbolKind::Nonterminal);
        for (const auto& s : declTerminals) g.syms.intern(s, SymbolKind::Terminal);
        if (!nts.count(start)) throw ParseError("start symbol `" + start + "` is not a nonterminal");
        g.start = g.syms.id_of(start);
        for (const auto& p : productions) {
            if (!nts.count(p.lhs)) throw ParseError("production lhs `" + p.lhs + "` is declared a terminal; declare symbols explicitly", p.line);
            for (const auto& alt : p.alternatives) {
                CfgProd cp;
                cp.lhs = g.syms.id_of(p.lhs);
                if (!(alt.size() == 1 && alt[0] == "eps")) {
                    for (const auto& tok : alt) {
                        if (detail::has_caret(tok)) throw ParseError("stray `^` in cfg production", p.line);
                        if (tok == "eps") throw ParseError("`eps` must stand alone", p.line);
                        if (nts.count(tok)) cp.rhs.push_back(g.syms.id_of(tok));
                        else if (haveTerminals && !terms.count(tok))
                            throw ParseError("undeclared symbol `" + tok + "`; declare symbols explicitly", p.line);
                        else cp.rhs.push_back(g.syms.intern(tok, SymbolKind::Terminal));
                    }
                }
                g.prods.push_back(std::move(cp));
            }
        }
        validate(g);
        g.cnf = is_cnf_grammar(g);
        return g;
    }

    // type == "indexed"
    std::set<std::string> flagNames(declFlags.begin(), declFlags.end());
    flagNames.insert("$");
    std::set<std::string> nts;
    if (haveNonterminals) nts.insert(declNonterminals.begin(), declNonterminals.end());
    else {
        for (const auto& p : productions) {
            auto lhs = detail::has_caret(p.lhs) ? detail::split_caret(p.lhs, p.line).first : p.lhs;
            nts.insert(lhs);
            for (const auto& alt : p.alternatives)
                if (!alt.empty() && detail::has_caret(alt[0]))
                    nts.insert(detail::split_caret(alt[0], p.line).first);
        }
        nts.insert(start);
    }
    for (const auto& f : flagNames)
        if (nts.count(f)) throw ParseError("symbol `" + f + "` declared both flag and nonterminal");

    Ig g;
    for (const auto& s : nts) g.syms.intern(s, SymbolKind::Nonterminal);
    g.endFlag = g.syms.intern("$", SymbolKind::Flag);
    for (const auto& f : flagNames)
        g.syms.intern(f, SymbolKind::Flag);
    for (const auto& s : declTerminals) g.syms.intern(s, SymbolKind::Terminal);
    if (!nts.count(start)) throw ParseError("start symbol `" + start + "` is not a nonterminal");
    g.start = g.syms.id_of(start);
    std::set<std::string> terms(declTerminals.begin(), declTerminals.end());

    auto body_symbol = [&](const std::string& tok, int line) -> Sym {
        if (detail::has_caret(tok)) throw ParseError("stray `^` in production body", line);
        if (tok == "eps") throw ParseError("`eps` must stand alone", line);
        if (nts.count(tok)) return g.syms.id_of(tok);
        if (flagNames.count(tok)) throw ParseError("flag `" + tok + "` used in a production body", line);
        if (haveTerminals && !terms.count(tok))
            throw ParseError("undeclared symbol `" + tok + "`; declare symbols explicitly", line);
        return g.syms.intern(tok, SymbolKind::Terminal);
    };

    for (const auto& p : productions) {
        bool lhsPop = detail::has_caret(p.lhs);
        std::string lhsBase = p.lhs;
        std::string lhsFlag;
        if (lhsPop) std::tie(lhsBase, lhsFlag) = detail::split_caret(p.lhs, p.line);
        if (!nts.count(lhsBase)) throw ParseError("production lhs `" + lhsBase + "` is not a nonterminal; declare symbols explicitly", p.line);
        if (lhsPop && !flagNames.count(lhsFlag)) throw ParseError("undeclared flag `" + lhsFlag + "` (declare with `flags:`)", p.line);
        for (const auto& alt : p.alternatives) {
            IgProd q;
            q.lhs = g.syms.id_of(lhsBase);
            if (lhsPop) {
                q.kind = PKind::Pop;
                q.popFlag = g.syms.id_of(lhsFlag);
                if (!(alt.size() == 1 && alt[0] == "eps"))
                    for (const auto& tok : alt) q.rhs.push_back(body_symbol(tok, p.line));
            } else if (detail::has_caret(alt[0])) {
                q.kind = PKind::Push;
                auto [base, firstFlag] = detail::split_caret(alt[0], p.line);
                if (!nts.count(base)) throw ParseError("push target `" + base + "` is not a nonterminal", p.line);
                q.rhs.push_back(g.syms.id_of(base));
                std::vector<std::string> fs{firstFlag};
                fs.insert(fs.end(), alt.begin() + 1, alt.end());
                for (const auto& f : fs) {
                    if (!flagNames.count(f)) throw ParseError("undeclared flag `" + f + "` (declare with `flags:`)", p.line);
                    q.pushFlags.push_back(g.syms.id_of(f));
                }
            } else {
                q.kind = PKind::Copy;
                if (!(alt.size() == 1 && alt[0] == "eps"))
                    for (const auto& tok : alt) q.rhs.push_back(body_symbol(tok, p.line));
            }
            g.prods.push_back(std::move(q));
        }
    }
    validate(g);
    return g;
}

// ---------------------------------------------------------------------------
// Serialization (canonical: sorted declarations, one production per line,
// productions sorted by rendered text)

inline std::string render_production(const Cfg& g, const CfgProd& p) {
    std::string s = g.syms.name(p.lhs) + " ->";
    if (p.rhs.empty()) return s + " eps";
    for (Sym x : p.rhs) s += " " + g.syms.name(x);
    return s;
}

inline std::string render_production(const Ig& g, const IgProd& p) {
    std::string s = g.syms.name(p.lhs);
    if (p.kind == PKind::Pop) s += "^" + g.syms.name(p.popFlag);
    s += " ->";
    if (p.kind == PKind::Push) {
        s += " " + g.syms.name(p.rhs[0]) + "^" + g.syms.name(p.pushFlags[0]);
        for (size_t i = 1; i < p.pushFlags.size(); ++i) s += " " + g.syms.name(p.pushFlags[i]);
        return s;
    }
    if (p.rhs.empty()) return s + " eps";
    for (Sym x : p.rhs) s += " " + g.syms.name(x);
    return s;
}

namespace detail {

inline std::string join_sorted(std::vector<std::string> items) {
    std::sort(items.begin(), items.end());
    std::string s;
    for (const auto& i : items) s += " " + i;
    return s;
}

template <typename G, typename P>
inline void append_sorted_productions(std::string& out, const G& g, const std::vector<P>& prods) {
    std::vector<std::string> lines;
    lines.reserve(prods.size());
    for (const auto& p : prods) lines.push_back(render_production(g, p));
    std::sort(lines.begin(), lines.end());
    for (const auto& l : lines) out += l + "\n";
}

}  // namespace detail

inline std::string serialize_grammar(const Cfg& g) {
    std::string out = "type: cfg\n";
    out += "start: " + g.syms.name(g.start) + "\n";
    std::vector<std::string> nts, ts;
    for (Sym s = 0; s < static_cast<Sym>(g.syms.size()); ++s) {
        if (g.syms.kind(s) == SymbolKind::Nonterminal) nts.push_back(g.syms.name(s));
        if (g.syms.kind(s) == SymbolKind::Terminal) ts.push_back(g.syms.name(s));
    }
    out += "nonterminals:" + detail::join_sorted(nts) + "\n";
    out += "terminals:" + detail::join_sorted(ts) + "\n";
    detail::append_sorted_productions(out, g, g.prods);
    return out;
}

inline std::string serialize_grammar(const Ig& g) {
    std::string out = "type: indexed\n";
    out += "start: " + g.syms.name(g.start) + "\n";
    std::vector<std::string> nts, ts, fs;
    for (Sym s = 0; s < static_cast<Sym>(g.syms.size()); ++s) {
        if (g.syms.kind(s) == SymbolKind::Nonterminal) nts.push_back(g.syms.name(s));
        if (g.syms.kind(s) == SymbolKind::Terminal) ts.push_back(g.syms.name(s));
        if (g.syms.kind(s) == SymbolKind::Flag && s != g.endFlag) fs.push_back(g.syms.name(s));
    }
    out += "flags:" + detail::join_sorted(fs) + "\n";
    out += "nonterminals:" + detail::join_sorted(nts) + "\n";
    out += "terminals:" + detail::join_sorted(ts) + "\n";
    detail::append_sorted_productions(out, g, g.prods);
    return out;
}

inline std::string serialize_grammar(const Nfa& m) {
    std::string out = "type: nfa\n";
    out += "start: " + m.states[static_cast<size_t>(m.start)] + "\n";
    out += "states:" + detail::join_sorted(m.states) + "\n";
    std::vector<std::string> acc;
    for (int q : m.accepts) acc.push_back(m.states[static_cast<size_t>(q)]);
    out += "accept:" + detail::join_sorted(acc) + "\n";
    std::vector<std::string> lines;
    for (const auto& t : m.trans)
        lines.push_back(m.states[static_cast<size_t>(t.from)] + " " + (t.label.empty() ? "eps" : t.label) +
                        " -> " + m.states[static_cast<size_t>(t.to)]);
    std::sort(lines.begin(), lines.end());
    lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
    for (const auto& l : lines) out += l + "\n";
    return out;
}

inline std::string serialize_grammar(const AnyGrammar& g) {
    return std::visit([](const auto& x) { return serialize_grammar(x); }, g);
}

inline AnyGrammar load_grammar(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_grammar(ss.str());
}

inline void save_text(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw PermlangError("cannot write file: " + path);
    f << text;
}

}  // namespace permlang
