#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "causaljam/bitword.hpp"
#include "causaljam/rng.hpp"
#include "causaljam/transcript.hpp"

using namespace causaljam;

namespace {

BitWord random_word(std::size_t n, Rng& rng) {
    BitWord w(n);
    for (std::size_t i = 0; i < n; ++i) w.set_bit(i, rng.bernoulli(0.5));
    return w;
}

}  // namespace

TEST_CASE("hamming distance basic values") {
    CHECK(hamming_distance(BitWord::from_string("0000"), BitWord::from_string("0000")) == 0);
    CHECK(hamming_distance(BitWord::from_string("0000"), BitWord::from_string("1111")) == 4);
    CHECK(hamming_distance(BitWord::from_string("1010"), BitWord::from_string("0110")) == 2);
}

TEST_CASE("hamming distance rejects length mismatch") {
    CHECK_THROWS_AS(hamming_distance(BitWord(3), BitWord(4)), std::invalid_argument);
    CHECK_THROWS_AS(BitWord(3) ^ BitWord(4), std::invalid_argument);
}

TEST_CASE("xor basic values") {
    CHECK((BitWord::from_string("1010") ^ BitWord::from_string("0000")) == BitWord::from_string("1010"));
    CHECK((BitWord::from_string("1010") ^ BitWord::from_string("1010")) == BitWord::from_string("0000"));
    CHECK((BitWord::from_string("1100") ^ BitWord::from_string("0110")) == BitWord::from_string("1010"));
}

TEST_CASE("split produces prefix and suffix") {
    auto [head, tail] = split(BitWord::from_string("101101"), 3);
    CHECK(head == BitWord::from_string("101"));
    CHECK(tail == BitWord::from_string("101"));

    auto [h0, t0] = split(BitWord::from_string("1010"), 0);
    CHECK(h0.size() == 0);
    CHECK(t0 == BitWord::from_string("1010"));

    auto [h4, t4] = split(BitWord::from_string("1010"), 4);
    CHECK(h4 == BitWord::from_string("1010"));
    CHECK(t4.size() == 0);

    CHECK_THROWS_AS(split(BitWord(4), 5), std::out_of_range);
}

TEST_CASE("distance equals weight of xor") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng.below(130);
        const BitWord a = random_word(n, rng);
        const BitWord b = random_word(n, rng);
        CHECK(hamming_distance(a, b) == (a ^ b).weight());
        CHECK(hamming_distance(a, b) == hamming_distance(b, a));
    }
}

TEST_CASE("triangle inequality") {
    Rng rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng.below(80);
        const BitWord a = random_word(n, rng);
        const BitWord b = random_word(n, rng);
        const BitWord c = random_word(n, rng);
        CHECK(hamming_distance(a, c) <= hamming_distance(a, b) + hamming_distance(b, c));
    }
}

TEST_CASE("split then concat round-trips for every cut point") {
    Rng rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng.below(100);
        const BitWord w = random_word(n, rng);
        for (std::size_t ell = 0; ell <= n; ++ell) {
            auto [head, tail] = split(w, ell);
            CHECK(concat(head, tail) == w);
        }
    }
}

TEST_CASE("prefix distance matches split-based computation") {
    Rng rng(14);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng.below(130);
        const BitWord w = random_word(n, rng);
        const std::size_t ell = rng.below(n + 1);
        const BitWord y1 = random_word(ell, rng);
        CHECK(hamming_distance_prefix(w, y1) == hamming_distance(prefix(w, ell), y1));
    }
}

TEST_CASE("string round trip and weight") {
    const BitWord w = BitWord::from_string("0110100");
    CHECK(w.to_string() == "0110100");
    CHECK(w.weight() == 3);
    CHECK(BitWord::ones(70).weight() == 70);
    CHECK_THROWS_AS(BitWord::from_string("01x"), std::invalid_argument);
}

TEST_CASE("transcript validity catches broken records") {
    AttackTranscript t;
    t.x = BitWord::from_string("1010");
    t.e = BitWord::from_string("0110");
    t.y = t.x ^ t.e;
    t.budget_used = 2;
    CHECK_NOTHROW(check_transcript(t, 2, 0));

    SUBCASE("budget overrun") { CHECK_THROWS_AS(check_transcript(t, 1, 0), std::logic_error); }
    SUBCASE("output mismatch") {
        t.y.flip_bit(0);
        CHECK_THROWS_AS(check_transcript(t, 2, 0), std::logic_error);
    }
    SUBCASE("wrong flip count") {
        t.budget_used = 1;
        CHECK_THROWS_AS(check_transcript(t, 2, 0), std::logic_error);
    }
    SUBCASE("babble shape") {
        t.has_push = true;
        t.ell = 2;
        t.gamma = {0, 3};  // second flip outside phase 1
        CHECK_THROWS_AS(check_transcript(t, 2, 2), std::logic_error);
    }
}
