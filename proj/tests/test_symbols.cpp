#include <catch2/catch_amalgamated.hpp>

#include "permlang/symbols.hpp"

using namespace permlang;

TEST_CASE("symbol table interns names once per kind") {
    SymbolTable t;
    Sym a = t.intern("a", SymbolKind::Terminal);
    CHECK(t.intern("a", SymbolKind::Terminal) == a);
    CHECK(t.size() == 1);
    CHECK(t.name(a) == "a");
    CHECK(t.kind(a) == SymbolKind::Terminal);
    CHECK(t.contains("a"));
    CHECK_FALSE(t.contains("b"));
    CHECK(t.id_of("a") == a);
    CHECK_THROWS_AS(t.id_of("b"), ValidationError);
}

TEST_CASE("kind collisions are rejected") {
    SymbolTable t;
    t.intern("S", SymbolKind::Nonterminal);
    CHECK_THROWS_AS(t.intern("S", SymbolKind::Terminal), ValidationError);
    CHECK_THROWS_AS(t.intern("S", SymbolKind::Flag), ValidationError);
}

TEST_CASE("symbol names are checked") {
    SymbolTable t;
    CHECK_THROWS_AS(t.intern("", SymbolKind::Terminal), ValidationError);
    CHECK_THROWS_AS(t.intern("a b", SymbolKind::Terminal), ValidationError);
    CHECK_THROWS_AS(t.intern("->", SymbolKind::Terminal), ValidationError);
    CHECK_THROWS_AS(t.intern("|", SymbolKind::Nonterminal), ValidationError);
    CHECK_THROWS_AS(t.intern("eps", SymbolKind::Terminal), ValidationError);
    // `$` is the reserved end-of-flag marker: flag-only.
    CHECK_THROWS_AS(t.intern("$", SymbolKind::Terminal), ValidationError);
    CHECK_NOTHROW(t.intern("$", SymbolKind::Flag));
    // `#` alone or with a non-digit opens a comment; `#3` is a legal flag.
    CHECK(is_reserved_token("#"));
    CHECK(is_reserved_token("#x"));
    CHECK_FALSE(is_reserved_token("#3"));
    CHECK_NOTHROW(t.intern("#3", SymbolKind::Flag));
}

TEST_CASE("shortlex orders by length first") {
    std::set<Word, ShortlexLess> s;
    s.insert({"b"});
    s.insert({"a", "a"});
    s.insert({"a"});
    s.insert(Word{});
    std::vector<Word> got(s.begin(), s.end());
    std::vector<Word> want{{}, {"a"}, {"b"}, {"a", "a"}};
    CHECK(got == want);
}

TEST_CASE("word rendering") {
    CHECK(word_to_string({}) == "eps");
    CHECK(word_to_string({"a", "b"}) == "ab");
    CHECK(word_to_string({"aa", "b"}) == "aa b");
}

TEST_CASE("sample comparison reports missing and extra words") {
    LanguageSample a, b;
    a.bound = b.bound = 3;
    a.words = {{"a"}, {"b"}};
    b.words = {{"b"}, {"c"}};
    SampleDiff d = samples_equal(a, b);
    CHECK(d.missing == std::vector<Word>{{"a"}});
    CHECK(d.extra == std::vector<Word>{{"c"}});
    CHECK_FALSE(d.equal());

    b.words = a.words;
    CHECK(samples_equal(a, b).equal());

    b.bound = 4;
    CHECK_THROWS_AS(samples_equal(a, b), BoundMismatchError);

    b.bound = 3;
    b.exhaustive = false;
    SampleDiff partial = samples_equal(a, b);
    CHECK(partial.missing.empty());
    CHECK(partial.extra.empty());
    CHECK_FALSE(partial.advisory.empty());
    CHECK_FALSE(partial.equal());
}
