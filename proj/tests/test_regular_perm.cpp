#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "permlang/enumerate.hpp"
#include "permlang/nfa_permute.hpp"
#include "permlang/oracles.hpp"
#include "permlang/text_format.hpp"
#include "permlang/verify.hpp"

using namespace permlang;

namespace {

Nfa nfa(const char* text) { return std::get<Nfa>(parse_grammar(text)); }
Permutation perm(std::vector<int> v) { return Permutation{std::move(v)}; }

}  // namespace

TEST_CASE("single-accept normalization always appends a fresh sink") {
    Nfa m = nfa(fixtures::kNfaAbStar);
    Nfa s = nfa_single_accept(m);
    CHECK(s.states.size() == m.states.size() + 1);
    CHECK(s.accepts.size() == 1);
    CHECK(enumerate_nfa(s, 6).words == enumerate_nfa(m, 6).words);

    // Also on an input that is already single-accept but not sink-like.
    Nfa two;
    two.add_state("p");
    two.add_state("q");
    two.alphabet = {"a"};
    two.trans.push_back({0, 1, "a"});
    two.trans.push_back({1, 1, "a"});
    two.start = 0;
    two.accepts = {1};
    Nfa s2 = nfa_single_accept(two);
    CHECK(s2.states.size() == 3);
    CHECK(s2.accepts.size() == 1);
    CHECK(enumerate_nfa(s2, 5).words == enumerate_nfa(two, 5).words);
}

TEST_CASE("degree one returns the normalized automaton") {
    Nfa m = nfa(fixtures::kNfaAbStar);
    Nfa out = sigma_nfa(m, perm({1}));
    CHECK(out.accepts.size() == 1);
    CHECK(enumerate_nfa(out, 6).words == enumerate_nfa(m, 6).words);
}

TEST_CASE("swap on (ab)* matches the closure oracle") {
    Nfa m = nfa(fixtures::kNfaAbStar);
    Nfa out = sigma_nfa(m, perm({2, 1}));
    auto got = enumerate_nfa(out, 6);
    auto want = oracle_sigma(enumerate_nfa(m, 6), perm({2, 1}));
    CHECK(got.words == want.words);
    // ba from splitting ab; babab is not a rotation of any (ab)^n prefix pair.
    CHECK(got.contains({"b", "a"}));
    CHECK(got.contains({}));
}

TEST_CASE("swap is the rotation closure at every bound") {
    Nfa m = nfa(fixtures::kNfaAbStar);
    Nfa out = sigma_nfa(m, perm({2, 1}));
    for (int n = 0; n <= 6; ++n)
        CHECK(enumerate_nfa(out, n).words == oracle_cyc(enumerate_nfa(m, n)).words);
}

TEST_CASE("all degree <= 3 permutations on (ab)* match the closure oracle") {
    Nfa m = nfa(fixtures::kNfaAbStar);
    for (int d = 1; d <= 3; ++d)
        for (const Permutation& s : all_permutations(d)) {
            VerifyReport r = verify_regperm(m, s, 6);
            INFO("permutation " << format_permutation(s));
            CHECK(r.equal());
        }
}

TEST_CASE("copies are wired in permuted order") {
    // L = {ab}; sigma = (2,1) closure contains ab and ba only.
    Nfa m;
    m.add_state("s");
    m.add_state("t");
    m.add_state("u");
    m.alphabet = {"a", "b"};
    m.trans.push_back({0, 1, "a"});
    m.trans.push_back({1, 2, "b"});
    m.start = 0;
    m.accepts = {2};
    auto got = enumerate_nfa(sigma_nfa(m, perm({2, 1})), 4);
    std::set<Word, ShortlexLess> want{{"a", "b"}, {"b", "a"}};
    CHECK(got.words == want);
}

TEST_CASE("random automata are deterministic per seed") {
    std::mt19937 rng1(7), rng2(7);
    for (int i = 0; i < 5; ++i) {
        Nfa a = random_nfa(rng1);
        Nfa b = random_nfa(rng2);
        CHECK(a.states == b.states);
        CHECK(a.accepts == b.accepts);
        REQUIRE(a.trans.size() == b.trans.size());
        for (size_t j = 0; j < a.trans.size(); ++j) {
            CHECK(a.trans[j].from == b.trans[j].from);
            CHECK(a.trans[j].to == b.trans[j].to);
            CHECK(a.trans[j].label == b.trans[j].label);
        }
    }
}

TEST_CASE("seeded sweep smoke test") {
    auto reports = fuzz_regperm(1, 3, 2, 5);
    CHECK(reports.size() == 3 * 3);  // three automata, permutations (1), (1,2), (2,1)
    for (const auto& r : reports) {
        INFO(r.construction);
        CHECK(r.equal());
    }
}
