#include <catch2/catch_amalgamated.hpp>

#include "permlang/oracles.hpp"

using namespace permlang;

namespace {

LanguageSample sample(std::vector<Word> words, int bound) {
    LanguageSample s;
    s.bound = bound;
    s.words.insert(words.begin(), words.end());
    return s;
}

Permutation perm(std::vector<int> v) { return Permutation{std::move(v)}; }

std::set<Word, ShortlexLess> words(std::vector<Word> w) { return {w.begin(), w.end()}; }

}  // namespace

TEST_CASE("split enumeration counts") {
    int strict = 0, relaxed = 0;
    Word w{"a", "b", "c", "d"};
    detail::for_each_split(w, 2, false, [&](const std::vector<Word>&) { ++strict; });
    detail::for_each_split(w, 2, true, [&](const std::vector<Word>&) { ++relaxed; });
    CHECK(strict == 3);   // cut after 1, 2, 3
    CHECK(relaxed == 4);  // plus the empty first part
    int none = 0;
    detail::for_each_split(Word{"a"}, 3, false, [&](const std::vector<Word>&) { ++none; });
    CHECK(none == 0);  // too short for three non-empty parts
}

TEST_CASE("single-word swap oracle") {
    auto s = sample({{"a", "b", "c"}}, 3);
    auto strict = oracle_ltau(s, perm({2, 1}), false);
    CHECK(strict.words == words({{"b", "c", "a"}, {"c", "a", "b"}}));
    auto relaxed = oracle_ltau(s, perm({2, 1}), true);
    CHECK(relaxed.words == words({{"a", "b", "c"}, {"b", "c", "a"}, {"c", "a", "b"}}));
}

TEST_CASE("degree-three pattern on the single word abc") {
    auto s = sample({{"a", "b", "c"}}, 3);
    auto got = oracle_ltau(s, perm({3, 1, 2}), true);
    CHECK(got.words == words({{"b", "c", "a"}, {"c", "a", "b"}}));
}

TEST_CASE("closure oracle includes the word itself and epsilon handling") {
    auto s = sample({{}, {"a", "b"}}, 2);
    auto got = oracle_sigma(s, perm({2, 1}));
    CHECK(got.words == words({{}, {"a", "b"}, {"b", "a"}}));

    // Without epsilon in the input, it does not appear in the closure.
    auto s2 = sample({{"a", "b"}}, 2);
    CHECK_FALSE(oracle_sigma(s2, perm({2, 1})).contains({}));
}

TEST_CASE("rotation oracle") {
    auto s = sample({{"a", "b", "c"}}, 3);
    auto got = oracle_cyc(s);
    CHECK(got.words == words({{"a", "b", "c"}, {"b", "c", "a"}, {"c", "a", "b"}}));
    // Degree-two closure is exactly the cyclic closure.
    CHECK(oracle_sigma(s, perm({2, 1})).words == got.words);
}

TEST_CASE("bounded-degree closure oracle") {
    auto s = sample({{"a", "b", "c"}}, 3);
    auto got = oracle_ck(s, 3);
    CHECK(got.words.size() == 6);  // all arrangements of a, b, c
    CHECK(got.contains({"c", "b", "a"}));
    CHECK(oracle_ck(s, 1).words == s.words);
    CHECK_THROWS_AS(oracle_ck(s, 0), ValidationError);
}

TEST_CASE("oracles propagate bound and exhaustiveness") {
    auto s = sample({{"a"}}, 5);
    s.exhaustive = false;
    CHECK(oracle_cyc(s).bound == 5);
    CHECK_FALSE(oracle_cyc(s).exhaustive);
    CHECK_FALSE(oracle_sigma(s, perm({1})).exhaustive);
}
