#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "permlang/grammar.hpp"
#include "permlang/symbols.hpp"

namespace permlang {

// Search budget for indexed-grammar enumeration.  The word-length bound is a
// separate parameter of enumerate_ig.  maxFlagDepth and maxFormLen shape the
// searched derivation space: forms beyond them are not explored, and the
// exhaustive verdict certifies exhaustion of that shaped space.  Only
// maxStates can cut the search short (exhaustive = false).
struct Budget {
    int maxFlagDepth = 64;
    int maxFormLen = 48;
    long long maxStates = 5'000'000;
};

struct DerivationStep {
    int prod = -1;  // index into Ig::prods
    int pos = -1;   // item index of the rewritten nonterminal
};
using DerivationWitness = std::vector<DerivationStep>;

struct EnumResult {
    LanguageSample sample;
    std::map<Word, DerivationWitness> witnesses;
    long long statesExplored = 0;
};

// ---------------------------------------------------------------------------
// CFG enumeration: least fixpoint over per-nonterminal word sets.

inline LanguageSample enumerate_cfg(const Cfg& g, int n) {
    validate(g);
    std::map<Sym, std::set<Word, ShortlexLess>> sets;
    for (Sym s = 0; s < static_cast<Sym>(g.syms.size()); ++s)
        if (g.is_nonterminal(s)) sets[s] = {};
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& p : g.prods) {
            std::set<Word, ShortlexLess> partial{Word{}};
            for (Sym x : p.rhs) {
                std::set<Word, ShortlexLess> next;
                if (g.is_terminal(x)) {
                    for (const auto& w : partial) {
                        if (static_cast<int>(w.size()) + 1 > n) continue;
                        Word e = w;
                        e.push_back(g.syms.name(x));
                        next.insert(std::move(e));
                    }
                } else {
                    for (const auto& w : partial)
                        for (const auto& v : sets[x]) {
                            if (static_cast<int>(w.size() + v.size()) > n) continue;
                            Word e = w;
                            e.insert(e.end(), v.begin(), v.end());
                            next.insert(std::move(e));
                        }
                }
                partial = std::move(next);
                if (partial.empty()) break;
            }
            for (const auto& w : partial)
                if (sets[p.lhs].insert(w).second) changed = true;
        }
    }
    LanguageSample out;
    out.bound = n;
    out.exhaustive = true;
    out.words = sets[g.start];
    return out;
}

// ---------------------------------------------------------------------------
// NFA enumeration: breadth-first search over (state, word) pairs.

inline LanguageSample enumerate_nfa(const Nfa& m, int n) {
    validate(m);
    std::vector<std::vector<const Nfa::Tr*>> byFrom(m.states.size());
    for (const auto& t : m.trans) byFrom[static_cast<size_t>(t.from)].push_back(&t);
    std::set<std::pair<int, Word>> visited;
    std::deque<std::pair<int, Word>> queue;
    queue.push_back({m.start, {}});
    visited.insert(queue.front());
    LanguageSample out;
    out.bound = n;
    out.exhaustive = true;
    while (!queue.empty()) {
        auto [q, w] = queue.front();
        queue.pop_front();
        if (m.accepts.count(q)) out.words.insert(w);
        for (const auto* t : byFrom[static_cast<size_t>(q)]) {
            Word w2 = w;
            if (!t->label.empty()) {
                if (static_cast<int>(w.size()) + 1 > n) continue;
                w2.push_back(t->label);
            }
            std::pair<int, Word> next{t->to, std::move(w2)};
            if (visited.insert(next).second) queue.push_back(std::move(next));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Independent membership checks, used to cross-examine the enumerators.

inline bool cyk_accepts(const Cfg& g, const Word& w) {
    if (!g.cnf) throw NotCnfError("cyk_accepts requires a grammar in Chomsky normal form");
    int n = static_cast<int>(w.size());
    if (n == 0) return false;
    std::vector<Sym> letters;
    for (const auto& t : w) {
        if (!g.syms.contains(t) || g.syms.kind(g.syms.id_of(t)) != SymbolKind::Terminal) return false;
        letters.push_back(g.syms.id_of(t));
    }
    // table[i][l] = set of nonterminals deriving w[i..i+l)
    std::vector<std::vector<std::set<Sym>>> table(static_cast<size_t>(n),
                                                  std::vector<std::set<Sym>>(static_cast<size_t>(n + 1)));
    for (int i = 0; i < n; ++i)
        for (const auto& p : g.prods)
            if (p.rhs.size() == 1 && p.rhs[0] == letters[static_cast<size_t>(i)])
                table[static_cast<size_t>(i)][1].insert(p.lhs);
    for (int l = 2; l <= n; ++l)
        for (int i = 0; i + l <= n; ++i)
            for (int split = 1; split < l; ++split)
                for (const auto& p : g.prods) {
                    if (p.rhs.size() != 2) continue;
                    if (table[static_cast<size_t>(i)][static_cast<size_t>(split)].count(p.rhs[0]) &&
                        table[static_cast<size_t>(i + split)][static_cast<size_t>(l - split)].count(p.rhs[1]))
                        table[static_cast<size_t>(i)][static_cast<size_t>(l)].insert(p.lhs);
                }
    return table[0][static_cast<size_t>(n)].count(g.start) > 0;
}

inline bool nfa_accepts(const Nfa& m, const Word& w) {
    std::vector<std::vector<const Nfa::Tr*>> byFrom(m.states.size());
    for (const auto& t : m.trans) byFrom[static_cast<size_t>(t.from)].push_back(&t);
    auto closure = [&](std::set<int> qs) {
        std::deque<int> stack(qs.begin(), qs.end());
        while (!stack.empty()) {
            int q = stack.front();
            stack.pop_front();
            for (const auto* t : byFrom[static_cast<size_t>(q)])
                if (t->label.empty() && qs.insert(t->to).second) stack.push_back(t->to);
        }
        return qs;
    };
    std::set<int> cur = closure({m.start});
    for (const auto& a : w) {
        std::set<int> next;
        for (int q : cur)
            for (const auto* t : byFrom[static_cast<size_t>(q)])
                if (t->label == a) next.insert(t->to);
        cur = closure(std::move(next));
        if (cur.empty()) return false;
    }
    for (int q : cur)
        if (m.accepts.count(q)) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Indexed-grammar enumeration engine.

namespace detail {

constexpr int kInfYield = 1 << 20;

// Hash-consed flag strings.  Ref 0 is the empty string.
class FlagPool {
public:
    FlagPool() { cells_.push_back({-1, 0, 0}); }
    int empty_ref() const { return 0; }
    int cons(Sym f, int tail) {
        std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(f)) << 32) |
                            static_cast<std::uint32_t>(tail);
        auto it = intern_.find(key);
        if (it != intern_.end()) return it->second;
        int ref = static_cast<int>(cells_.size());
        cells_.push_back({f, tail, cells_[static_cast<size_t>(tail)].len + 1});
        intern_.emplace(key, ref);
        return ref;
    }
    Sym head(int r) const { return cells_[static_cast<size_t>(r)].head; }
    int tail(int r) const { return cells_[static_cast<size_t>(r)].tail; }
    int len(int r) const { return cells_[static_cast<size_t>(r)].len; }
    bool contains(int r, Sym f) const {
        for (; r != 0; r = tail(r))
            if (head(r) == f) return true;
        return false;
    }
    std::vector<Sym> to_vector(int r) const {
        std::vector<Sym> out;
        for (; r != 0; r = tail(r)) out.push_back(head(r));
        return out;
    }

private:
    struct Cell {
        Sym head;
        int tail;
        int len;
    };
    std::vector<Cell> cells_;
    std::unordered_map<std::uint64_t, int> intern_;
};

// Lower bounds on eventual terminal yield, used to discard sentential forms
// that can no longer finish within the length bound.
//
//  - mu(A): flag-blind minimum (pops treated as always applicable).  A sound
//    bound for every derivation regardless of flags.
//  - lb(A, ref): minimum over derivations from A^ref whose flag strings stay
//    within maxFlagDepth; a branch that would cross the cap contributes
//    infinity, i.e. "dead within the searched space".  Push recursion is
//    limited by per-query budgets; budget overflow falls back to the mu
//    floor (still sound).
class YieldAnalysis {
public:
    YieldAnalysis(const Ig& g, FlagPool& pool, const std::vector<std::vector<int>>& prodsByLhs, int maxFlagDepth)
        : g_(g), pool_(pool), prodsByLhs_(prodsByLhs), maxFlagDepth_(maxFlagDepth) {
        compute_mu();
        compute_pushfree();
    }

    int mu(Sym s) const { return mu_[static_cast<size_t>(s)]; }
    bool pushfree(Sym s) const { return pushfree_[static_cast<size_t>(s)]; }

    int lb(Sym s, int ref) {
        auto key = node_key(s, ref);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        solve(s, ref);
        return memo_.at(key);
    }

private:
    static std::uint64_t node_key(Sym s, int ref) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(s)) << 32) | static_cast<std::uint32_t>(ref);
    }

    void compute_mu() {
        mu_.assign(g_.syms.size(), kInfYield);
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& p : g_.prods) {
                int sum = 0;
                for (Sym x : p.rhs) {
                    if (g_.is_terminal(x)) sum += 1;
                    else sum += mu_[static_cast<size_t>(x)];
                    if (sum >= kInfYield) {
                        sum = kInfYield;
                        break;
                    }
                }
                if (sum < mu_[static_cast<size_t>(p.lhs)]) {
                    mu_[static_cast<size_t>(p.lhs)] = sum;
                    changed = true;
                }
            }
        }
    }

    void compute_pushfree() {
        size_t n = g_.syms.size();
        std::vector<std::vector<Sym>> succ(n);
        std::vector<bool> hasPush(n, false);
        for (const auto& p : g_.prods) {
            if (p.kind == PKind::Push) hasPush[static_cast<size_t>(p.lhs)] = true;
            for (Sym x : p.rhs)
                if (g_.is_nonterminal(x)) succ[static_cast<size_t>(p.lhs)].push_back(x);
        }
        pushfree_.assign(n, true);
        for (Sym s = 0; s < static_cast<Sym>(n); ++s) {
            if (!g_.is_nonterminal(s)) continue;
            std::vector<Sym> stack{s};
            std::vector<bool> seen(n, false);
            seen[static_cast<size_t>(s)] = true;
            bool found = false;
            while (!stack.empty() && !found) {
                Sym cur = stack.back();
                stack.pop_back();
                if (hasPush[static_cast<size_t>(cur)]) found = true;
                for (Sym nx : succ[static_cast<size_t>(cur)])
                    if (!seen[static_cast<size_t>(nx)]) {
                        seen[static_cast<size_t>(nx)] = true;
                        stack.push_back(nx);
                    }
            }
            pushfree_[static_cast<size_t>(s)] = !found;
        }
    }

    struct Alt {
        int base = 0;           // terminals plus folded memoized deps; kInfYield if blocked
        std::vector<int> deps;  // indices of in-closure nodes
    };
    struct Node {
        Sym sym;
        int ref;
        std::vector<Alt> alts;
    };

    void solve(Sym s0, int ref0) {
        std::vector<Node> nodes;
        std::unordered_map<std::uint64_t, int> idx;
        std::deque<int> work;
        int pushBudget = 1024;
        const int nodeBudget = 16384;

        auto get_node = [&](Sym s, int ref) -> int {
            auto key = node_key(s, ref);
            auto mit = memo_.find(key);
            if (mit != memo_.end()) return -1;  // folded by caller
            auto it = idx.find(key);
            if (it != idx.end()) return it->second;
            if (static_cast<int>(nodes.size()) >= nodeBudget) return -2;  // floor by caller
            int id = static_cast<int>(nodes.size());
            nodes.push_back({s, ref, {}});
            idx.emplace(key, id);
            work.push_back(id);
            return id;
        };
        get_node(s0, ref0);

        auto add_dep = [&](Alt& alt, Sym s, int ref) {
            if (alt.base >= kInfYield) return;
            int id = get_node(s, ref);
            if (id == -1) {
                int v = memo_.at(node_key(s, ref));
                alt.base = v >= kInfYield ? kInfYield : alt.base + v;
            } else if (id == -2) {
                int v = mu_[static_cast<size_t>(s)];
                alt.base = (v >= kInfYield || alt.base + v >= kInfYield) ? kInfYield : alt.base + v;
            } else {
                alt.deps.push_back(id);
            }
        };

        while (!work.empty()) {
            int id = work.front();
            work.pop_front();
            Sym sym = nodes[static_cast<size_t>(id)].sym;
            int ref = nodes[static_cast<size_t>(id)].ref;
            std::vector<Alt> alts;
            for (int pi : prodsByLhs_[static_cast<size_t>(sym)]) {
                const IgProd& p = g_.prods[static_cast<size_t>(pi)];
                Alt alt;
                if (p.kind == PKind::Push) {
                    int nref = ref;
                    for (auto it = p.pushFlags.rbegin(); it != p.pushFlags.rend(); ++it) nref = pool_.cons(*it, nref);
                    if (pool_.len(nref) > maxFlagDepth_) {
                        alt.base = kInfYield;
                    } else if (--pushBudget < 0) {
                        int v = mu_[static_cast<size_t>(p.rhs[0])];
                        alt.base = v >= kInfYield ? kInfYield : v;
                    } else {
                        add_dep(alt, p.rhs[0], nref);
                    }
                } else {
                    int bodyRef = ref;
                    if (p.kind == PKind::Pop) {
                        if (ref == 0 || pool_.head(ref) != p.popFlag) continue;
                        bodyRef = pool_.tail(ref);
                    }
                    for (Sym x : p.rhs) {
                        if (g_.is_terminal(x)) alt.base += 1;
                        else add_dep(alt, x, bodyRef);
                    }
                }
                alts.push_back(std::move(alt));
            }
            nodes[static_cast<size_t>(id)].alts = std::move(alts);
        }

        // Least yields by downward iteration from infinity; minimal
        // derivations revisit no (symbol, flag) node, so |nodes| rounds
        // reach the fixpoint.
        std::vector<int> val(nodes.size(), kInfYield);
        for (size_t round = 0; round <= nodes.size(); ++round) {
            bool changed = false;
            for (size_t i = 0; i < nodes.size(); ++i) {
                for (const auto& alt : nodes[i].alts) {
                    if (alt.base >= kInfYield) continue;
                    long long sum = alt.base;
                    for (int d : alt.deps) {
                        sum += val[static_cast<size_t>(d)];
                        if (sum >= kInfYield) break;
                    }
                    if (sum < val[i]) {
                        val[i] = static_cast<int>(sum);
                        changed = true;
                    }
                }
            }
            if (!changed) break;
        }

        for (size_t i = 0; i < nodes.size(); ++i)
            memo_.emplace(node_key(nodes[i].sym, nodes[i].ref), val[i]);
    }

    const Ig& g_;
    FlagPool& pool_;
    const std::vector<std::vector<int>>& prodsByLhs_;
    int maxFlagDepth_;
    std::vector<int> mu_;
    std::vector<bool> pushfree_;
    std::unordered_map<std::uint64_t, int> memo_;
};

}  // namespace detail

inline EnumResult enumerate_ig(const Ig& g, int n, const Budget& b = {});

// Re-derives a word by applying witness steps from the start configuration.
// Deliberately independent of the search engine: plain vectors, no pooling.
inline Word replay_witness(const Ig& g, const DerivationWitness& wit) {
    struct It {
        Sym sym;
        std::vector<Sym> flags;
    };
    std::vector<It> form{{g.start, {g.endFlag}}};
    for (const auto& step : wit) {
        if (step.prod < 0 || step.prod >= static_cast<int>(g.prods.size()))
            throw ValidationError("witness replay: production index out of range");
        const IgProd& p = g.prods[static_cast<size_t>(step.prod)];
        if (step.pos < 0 || step.pos >= static_cast<int>(form.size()))
            throw ValidationError("witness replay: position out of range");
        It cur = form[static_cast<size_t>(step.pos)];
        if (!g.is_nonterminal(cur.sym) || cur.sym != p.lhs)
            throw ValidationError("witness replay: production does not match the symbol at its position");
        std::vector<It> body;
        switch (p.kind) {
            case PKind::Push: {
                std::vector<Sym> nf = p.pushFlags;
                nf.insert(nf.end(), cur.flags.begin(), cur.flags.end());
                body.push_back({p.rhs[0], std::move(nf)});
                break;
            }
            case PKind::Pop: {
                if (cur.flags.empty() || cur.flags.front() != p.popFlag)
                    throw ValidationError("witness replay: pop production does not match the flag head");
                std::vector<Sym> tail(cur.flags.begin() + 1, cur.flags.end());
                for (Sym x : p.rhs)
                    body.push_back({x, g.is_nonterminal(x) ? tail : std::vector<Sym>{}});
                break;
            }
            case PKind::Copy:
                for (Sym x : p.rhs)
                    body.push_back({x, g.is_nonterminal(x) ? cur.flags : std::vector<Sym>{}});
                break;
        }
        form.erase(form.begin() + step.pos);
        form.insert(form.begin() + step.pos, body.begin(), body.end());
    }
    Word w;
    for (const auto& it : form) {
        if (!g.is_terminal(it.sym)) throw ValidationError("witness replay: derivation did not terminate");
        w.push_back(g.syms.name(it.sym));
    }
    return w;
}

inline EnumResult enumerate_ig(const Ig& g, int n, const Budget& b) {
    validate(g);
    using detail::kInfYield;

    std::vector<std::vector<int>> prodsByLhs(g.syms.size());
    for (size_t i = 0; i < g.prods.size(); ++i)
        prodsByLhs[static_cast<size_t>(g.prods[i].lhs)].push_back(static_cast<int>(i));

    detail::FlagPool pool;
    detail::YieldAnalysis ya(g, pool, prodsByLhs, b.maxFlagDepth);

    struct Item {
        Sym sym;
        int flags;  // pool ref; 0 for terminals
        bool operator==(const Item& o) const { return sym == o.sym && flags == o.flags; }
    };
    struct Meta {
        int offset;
        int len;
        int termCount;
        int parent;
        int prod;
        int pos;
    };
    std::vector<Item> store;
    std::vector<Meta> forms;

    auto items_of = [&](int f) {
        return std::pair<const Item*, const Item*>(store.data() + forms[static_cast<size_t>(f)].offset,
                                                   store.data() + forms[static_cast<size_t>(f)].offset +
                                                       forms[static_cast<size_t>(f)].len);
    };
    struct FormHash {
        const std::vector<Item>* store;
        const std::vector<Meta>* forms;
        size_t operator()(int f) const {
            const Meta& m = (*forms)[static_cast<size_t>(f)];
            std::uint64_t h = 1469598103934665603ull;
            for (int i = 0; i < m.len; ++i) {
                const Item& it = (*store)[static_cast<size_t>(m.offset + i)];
                h = (h ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(it.sym))) * 1099511628211ull;
                h = (h ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(it.flags))) * 1099511628211ull;
            }
            return static_cast<size_t>(h);
        }
    };
    struct FormEq {
        const std::vector<Item>* store;
        const std::vector<Meta>* forms;
        bool operator()(int a, int b) const {
            const Meta& ma = (*forms)[static_cast<size_t>(a)];
            const Meta& mb = (*forms)[static_cast<size_t>(b)];
            if (ma.len != mb.len) return false;
            for (int i = 0; i < ma.len; ++i)
                if (!((*store)[static_cast<size_t>(ma.offset + i)] == (*store)[static_cast<size_t>(mb.offset + i)]))
                    return false;
            return true;
        }
    };
    std::unordered_set<int, FormHash, FormEq> seen(64, FormHash{&store, &forms}, FormEq{&store, &forms});

    EnumResult res;
    res.sample.bound = n;
    bool statesOverflow = false;

    // Yield bound of one nonterminal occurrence.  Charged symbols use their
    // construction-supplied bound; push-free symbols get the exact analysis;
    // the rest get the best available floor.
    std::unordered_map<std::uint64_t, int> hintCache;
    auto component_bound = [&](Sym s, int ref) -> int {
        auto ch = g.hints.charges.find(s);
        if (ch != g.hints.charges.end()) {
            if (ya.mu(s) >= kInfYield) return kInfYield;
            std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(s)) << 32) |
                                static_cast<std::uint32_t>(ref);
            auto it = hintCache.find(key);
            if (it != hintCache.end()) return it->second;
            int sum = ch->second.base;
            for (Sym z : ch->second.chargers) {
                int v = ya.lb(z, ref);
                if (v < kInfYield) sum += v;
            }
            hintCache.emplace(key, sum);
            return sum;
        }
        int v = ya.lb(s, ref);
        if (v >= kInfYield) return kInfYield;
        int m = ya.mu(s);
        return v > m ? v : m;
    };

    // Dead-skeleton validators: cached verdict per flag string.
    std::unordered_map<int, bool> validatorDead;
    auto flag_dead = [&](int ref) -> bool {
        if (g.hints.validators.empty()) return false;
        auto it = validatorDead.find(ref);
        if (it != validatorDead.end()) return it->second;
        bool dead = false;
        for (const auto& [chk, trig] : g.hints.validators) {
            if (!pool.contains(ref, trig)) continue;
            if (ya.lb(chk, ref) >= kInfYield) {
                dead = true;
                break;
            }
        }
        validatorDead.emplace(ref, dead);
        return dead;
    };

    // Tentatively appends a candidate form; returns false when it is a
    // duplicate or pruned.  On success the form stays and is enqueued.
    std::deque<int> queue;
    auto offer = [&](std::vector<Item>&& items, int termCount, int parent, int prodIdx, int pos) {
        if (termCount > n) return;
        bool allTerminal = true;
        for (const auto& it : items)
            if (g.is_nonterminal(it.sym)) {
                allTerminal = false;
                break;
            }
        if (allTerminal) {
            Word w;
            for (const auto& it : items) w.push_back(g.syms.name(it.sym));
            if (res.sample.words.insert(w).second) {
                DerivationWitness wit;
                wit.push_back({prodIdx, pos});
                for (int f = parent; f >= 0 && forms[static_cast<size_t>(f)].prod >= 0;
                     f = forms[static_cast<size_t>(f)].parent)
                    wit.push_back({forms[static_cast<size_t>(f)].prod, forms[static_cast<size_t>(f)].pos});
                std::reverse(wit.begin(), wit.end());
                res.witnesses.emplace(std::move(w), std::move(wit));
            }
            return;
        }
        if (static_cast<int>(items.size()) > b.maxFormLen) return;
        int offset = static_cast<int>(store.size());
        store.insert(store.end(), items.begin(), items.end());
        forms.push_back({offset, static_cast<int>(items.size()), termCount, parent, prodIdx, pos});
        int id = static_cast<int>(forms.size()) - 1;
        if (!seen.insert(id).second) {
            store.resize(static_cast<size_t>(offset));
            forms.pop_back();
            return;
        }
        long long total = termCount;
        for (const auto& it : items) {
            if (!g.is_nonterminal(it.sym)) continue;
            int c = component_bound(it.sym, it.flags);
            if (c >= kInfYield) return;  // dead within the searched space; stays in `seen`
            total += c;
            if (total > n) return;
            if (g.hints.charges.count(it.sym) && flag_dead(it.flags)) return;
        }
        queue.push_back(id);
    };

    {
        std::vector<Item> init{{g.start, pool.cons(g.endFlag, pool.empty_ref())}};
        offer(std::move(init), 0, -1, -1, -1);
    }

    while (!queue.empty()) {
        if (res.statesExplored >= b.maxStates) {
            statesOverflow = true;
            break;
        }
        int f = queue.front();
        queue.pop_front();
        ++res.statesExplored;
        auto [begin, end] = items_of(f);
        int leftmost = -1;
        for (const Item* it = begin; it != end; ++it)
            if (g.is_nonterminal(it->sym)) {
                leftmost = static_cast<int>(it - begin);
                break;
            }
        // Forms in the queue always contain a nonterminal.
        Item cur = begin[leftmost];
        int flen = static_cast<int>(end - begin);
        int tc = forms[static_cast<size_t>(f)].termCount;
        for (int pi : prodsByLhs[static_cast<size_t>(cur.sym)]) {
            const IgProd& p = g.prods[static_cast<size_t>(pi)];
            std::vector<Item> body;
            int addTerms = 0;
            if (p.kind == PKind::Push) {
                int nref = cur.flags;
                for (auto it = p.pushFlags.rbegin(); it != p.pushFlags.rend(); ++it) nref = pool.cons(*it, nref);
                if (pool.len(nref) > b.maxFlagDepth) continue;
                body.push_back({p.rhs[0], nref});
            } else {
                int bodyRef = cur.flags;
                if (p.kind == PKind::Pop) {
                    if (cur.flags == 0 || pool.head(cur.flags) != p.popFlag) continue;
                    bodyRef = pool.tail(cur.flags);
                }
                for (Sym x : p.rhs) {
                    if (g.is_terminal(x)) {
                        body.push_back({x, 0});
                        ++addTerms;
                    } else {
                        body.push_back({x, bodyRef});
                    }
                }
            }
            std::vector<Item> items;
            items.reserve(static_cast<size_t>(flen) - 1 + body.size());
            items.insert(items.end(), begin, begin + leftmost);
            items.insert(items.end(), body.begin(), body.end());
            items.insert(items.end(), begin + leftmost + 1, end);
            // `begin`/`end` may dangle after store growth inside offer; copy first.
            offer(std::move(items), tc + addTerms, f, pi, leftmost);
            auto span = items_of(f);
            begin = span.first;
            end = span.second;
        }
    }

    res.sample.exhaustive = queue.empty() && !statesOverflow;
    return res;
}

}  // namespace permlang
