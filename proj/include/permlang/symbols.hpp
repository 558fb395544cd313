#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace permlang {

struct PermlangError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : PermlangError {
    int line = 0;
    ParseError(const std::string& msg, int line_no = 0)
        : PermlangError(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
          line(line_no) {}
};

struct ValidationError : PermlangError {
    using PermlangError::PermlangError;
};

struct BoundMismatchError : PermlangError {
    using PermlangError::PermlangError;
};

struct NotCnfError : PermlangError {
    using PermlangError::PermlangError;
};

struct NotNormalFormError : PermlangError {
    using PermlangError::PermlangError;
};

struct EpsilonProductionError : PermlangError {
    using PermlangError::PermlangError;
};

struct MalformedFlagError : PermlangError {
    using PermlangError::PermlangError;
};

struct DegreeMismatchError : PermlangError {
    using PermlangError::PermlangError;
};

using Sym = std::int32_t;

enum class SymbolKind { Terminal, Nonterminal, Flag };

inline const char* kind_name(SymbolKind k) {
    switch (k) {
        case SymbolKind::Terminal: return "terminal";
        case SymbolKind::Nonterminal: return "nonterminal";
        case SymbolKind::Flag: return "flag";
    }
    return "?";
}

// Token legality for symbol names.  `$` is admitted only as the end-of-flag
// marker; a bare `#` (or `#` followed by a non-digit) opens a comment in the
// text format, while `#<digits>` is a legal flag name.
inline bool is_reserved_token(const std::string& s) {
    if (s == "->" || s == "|" || s == "^" || s == "eps") return true;
    if (s == "#") return true;
    if (s.size() > 1 && s[0] == '#' && !std::isdigit(static_cast<unsigned char>(s[1]))) return true;
    return false;
}

inline void check_symbol_name(const std::string& s, bool allow_dollar = false) {
    if (s.empty()) throw ValidationError("empty symbol name");
    if (s == "$" && !allow_dollar) throw ValidationError("`$` is reserved for the end-of-flag marker");
    if (s != "$" && is_reserved_token(s)) throw ValidationError("reserved token used as symbol name: `" + s + "`");
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c)) || !std::isprint(static_cast<unsigned char>(c)))
            throw ValidationError("symbol name contains whitespace or unprintable character: `" + s + "`");
    }
}

// Interning table shared by one grammar.  Terminal, nonterminal and flag
// name sets must stay mutually disjoint, so a name maps to exactly one kind.
class SymbolTable {
public:
    Sym intern(const std::string& name, SymbolKind kind) {
        auto it = index_.find(name);
        if (it != index_.end()) {
            if (kinds_[static_cast<size_t>(it->second)] != kind)
                throw ValidationError("symbol `" + name + "` used both as " +
                                      kind_name(kinds_[static_cast<size_t>(it->second)]) + " and " + kind_name(kind));
            return it->second;
        }
        check_symbol_name(name, kind == SymbolKind::Flag);
        Sym id = static_cast<Sym>(names_.size());
        names_.push_back(name);
        kinds_.push_back(kind);
        index_.emplace(name, id);
        return id;
    }

    bool contains(const std::string& name) const { return index_.count(name) > 0; }

    Sym id_of(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw ValidationError("unknown symbol `" + name + "`");
        return it->second;
    }

    const std::string& name(Sym s) const { return names_.at(static_cast<size_t>(s)); }
    SymbolKind kind(Sym s) const { return kinds_.at(static_cast<size_t>(s)); }
    size_t size() const { return names_.size(); }

    std::vector<Sym> of_kind(SymbolKind k) const {
        std::vector<Sym> out;
        for (size_t i = 0; i < kinds_.size(); ++i)
            if (kinds_[i] == k) out.push_back(static_cast<Sym>(i));
        return out;
    }

private:
    std::vector<std::string> names_;
    std::vector<SymbolKind> kinds_;
    std::unordered_map<std::string, Sym> index_;
};

// A word is a sequence of terminal names.  Names (not ids) so that samples
// from different grammars compare directly.
using Word = std::vector<std::string>;

struct ShortlexLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

inline std::string word_to_string(const Word& w) {
    if (w.empty()) return "eps";
    bool all_single = std::all_of(w.begin(), w.end(), [](const std::string& t) { return t.size() == 1; });
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i && !all_single) out += ' ';
        out += w[i];
    }
    return out;
}

// Finite word set exhaustive up to `bound` unless a search budget truncated
// it (then exhaustive = false and the set is only a subset).
struct LanguageSample {
    std::set<Word, ShortlexLess> words;
    int bound = 0;
    bool exhaustive = true;

    bool contains(const Word& w) const { return words.count(w) > 0; }
};

struct SampleDiff {
    std::vector<Word> missing;   // in a, not in b
    std::vector<Word> extra;     // in b, not in a
    std::vector<std::string> advisory;

    bool equal() const { return missing.empty() && extra.empty() && advisory.empty(); }

    std::string to_string() const {
        std::ostringstream os;
        if (equal()) return "equal";
        for (const auto& w : missing) os << "missing: " << word_to_string(w) << "\n";
        for (const auto& w : extra) os << "extra: " << word_to_string(w) << "\n";
        for (const auto& a : advisory) os << "advisory: " << a << "\n";
        return os.str();
    }
};

inline SampleDiff samples_equal(const LanguageSample& a, const LanguageSample& b) {
    if (a.bound != b.bound)
        throw BoundMismatchError("sample bounds differ: " + std::to_string(a.bound) + " vs " + std::to_string(b.bound));
    SampleDiff d;
    for (const auto& w : a.words)
        if (!b.words.count(w)) d.missing.push_back(w);
    for (const auto& w : b.words)
        if (!a.words.count(w)) d.extra.push_back(w);
    if (!a.exhaustive || !b.exhaustive)
        d.advisory.push_back("comparison advisory: a sample is non-exhaustive (budget truncated)");
    return d;
}

}  // namespace permlang
