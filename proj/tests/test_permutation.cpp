#include <catch2/catch_amalgamated.hpp>

#include "permlang/permutation.hpp"

using namespace permlang;

namespace {
Permutation perm(std::vector<int> v) { return Permutation{std::move(v)}; }
}  // namespace

TEST_CASE("permutation validation") {
    CHECK_NOTHROW(validate(perm({1})));
    CHECK_NOTHROW(validate(perm({2, 3, 1})));
    CHECK_THROWS_AS(validate(perm({})), ValidationError);
    CHECK_THROWS_AS(validate(perm({0, 1})), ValidationError);
    CHECK_THROWS_AS(validate(perm({1, 1})), ValidationError);
    CHECK_THROWS_AS(validate(perm({1, 3})), ValidationError);
}

TEST_CASE("one-based application") {
    Permutation t = perm({2, 3, 1});
    CHECK(t.degree() == 3);
    CHECK(t(1) == 2);
    CHECK(t(2) == 3);
    CHECK(t(3) == 1);
}

TEST_CASE("parse and format round-trip") {
    CHECK(format_permutation(perm({2, 3, 1})) == "2,3,1");
    CHECK(parse_permutation("2,3,1") == perm({2, 3, 1}));
    CHECK(parse_permutation("1") == identity_permutation(1));
    CHECK_THROWS_AS(parse_permutation(""), ParseError);
    CHECK_THROWS_AS(parse_permutation("2,"), ParseError);
    CHECK_THROWS_AS(parse_permutation("a,b"), ParseError);
    CHECK_THROWS_AS(parse_permutation("1,3"), ValidationError);
}

TEST_CASE("all permutations of a degree") {
    CHECK(all_permutations(1).size() == 1);
    CHECK(all_permutations(2).size() == 2);
    CHECK(all_permutations(3).size() == 6);
    CHECK(all_permutations(4).size() == 24);
    CHECK_THROWS_AS(all_permutations(0), ValidationError);
}

TEST_CASE("subpatterns delete entries and renumber order-isomorphically") {
    auto subs = subpatterns(perm({2, 1}));
    std::set<Permutation> want{perm({1}), perm({2, 1})};
    CHECK(subs == want);

    subs = subpatterns(perm({2, 3, 1}));
    want = {perm({1}), perm({1, 2}), perm({2, 1}), perm({2, 3, 1})};
    CHECK(subs == want);

    // The identity's subpatterns are exactly the smaller identities.
    subs = subpatterns(identity_permutation(3));
    want = {identity_permutation(1), identity_permutation(2), identity_permutation(3)};
    CHECK(subs == want);
}
