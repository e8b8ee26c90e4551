#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "causaljam/adversary.hpp"
#include "causaljam/bounds.hpp"
#include "causaljam/verify.hpp"

using namespace causaljam;

namespace {

BitWord random_word(std::size_t n, Rng& rng) {
    BitWord w(n);
    for (std::size_t i = 0; i < n; ++i) w.set_bit(i, rng.bernoulli(0.5));
    return w;
}

std::vector<int> feed(CausalAdversary& adv, const Codebook& cb, const BitWord& x, std::uint64_t seed) {
    adv.reset(cb, seed);
    std::vector<int> e(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) e[i] = adv.observe_and_decide(i, x.bit(i) ? 1 : 0);
    adv.finalize();
    return e;
}

AdversaryConfig config(double p, double pbar, double eps) {
    AdversaryConfig cfg;
    cfg.p = p;
    cfg.pbar = pbar;
    cfg.epsilon = eps;
    return cfg;
}

}  // namespace

TEST_CASE("configuration validation") {
    CHECK_NOTHROW(config(0.2, 0.05, 0.05).validate());
    CHECK_NOTHROW(config(0.2, 0.2, 0.05).validate());  // degenerate mimic mode
    CHECK_THROWS_AS(config(0.2, 0.3, 0.05).validate(), ConfigError);
    CHECK_THROWS_AS(config(0.2, 0.1, 0.2).validate(), ConfigError);   // eps == 2(p - pbar)
    CHECK_THROWS_AS(config(0.2, 0.1, 0.25).validate(), ConfigError);  // eps too large
    CHECK_THROWS_AS(config(1.2, 0.1, 0.05).validate(), ConfigError);
    CHECK_THROWS_AS(config(0.2, 0.05, 0.0).validate(), ConfigError);

    AdversaryConfig bad_q = config(0.2, 0.05, 0.05);
    bad_q.mimic_q = 0.3;
    CHECK_THROWS_AS(bad_q.validate(), ConfigError);
}

TEST_CASE("integer resolution rules") {
    const auto res = config(0.2, optimal_pbar(0.2), 0.05).resolve(48);
    CHECK(res.budget == 9);        // floor(0.2 * 48)
    CHECK(res.babble_flips == 1);  // floor(0.02368... * 48)
    CHECK(res.ell == 15);          // round((alpha + eps/2) * 48)
    CHECK(res.push_budget() == 8);
    CHECK(res.alpha == doctest::Approx(1.0 - 4.0 * (0.2 - optimal_pbar(0.2))));

    // Negative alpha clamps the phase-1 length down to the flip count.
    const auto clamped = config(0.5, 1.0 / 6.0 + 1e-9, 0.1).resolve(6);
    CHECK(clamped.budget == 3);
    CHECK(clamped.babble_flips == 1);
    CHECK(clamped.ell == 1);
}

TEST_CASE("subset sampling is uniform over all k-subsets") {
    Rng rng(2024);
    std::map<std::vector<std::uint32_t>, int> counts;
    const int draws = 30000;
    for (int i = 0; i < draws; ++i) ++counts[rng.subset(5, 2)];
    CHECK(counts.size() == 10);
    const double expected = draws / 10.0;
    const double five_sigma = 5.0 * std::sqrt(draws * 0.1 * 0.9);
    for (const auto& [subset, count] : counts) {
        CHECK(std::abs(count - expected) < five_sigma);
    }
}

TEST_CASE("babble phase flips exactly the drawn positions") {
    const Codebook cb = symmetry_fixture_deterministic().codebook;
    auto adv = make_adversary(StrategyKind::babble_push, config(0.35, 0.17, 0.05));
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto e = feed(*adv, cb, cb.encode({1, 1}), seed);
        const auto& t = adv->trace();
        CHECK(t.ell == 2);
        CHECK(t.gamma.size() == 1);  // floor(0.17 * 6)
        std::size_t phase1_flips = 0;
        for (std::size_t i = 0; i < t.ell; ++i) {
            const bool in_gamma = std::find(t.gamma.begin(), t.gamma.end(), i) != t.gamma.end();
            CHECK(e[i] == (in_gamma ? 1 : 0));
            phase1_flips += e[i];
        }
        CHECK(phase1_flips == 1);
    }
}

TEST_CASE("candidate pool by direct enumeration") {
    std::vector<std::vector<BitWord>> words;
    words.push_back({BitWord::from_string("0000")});
    words.push_back({BitWord::from_string("1100")});
    const Codebook cb(4, Codebook::Kind::deterministic, std::move(words));

    const auto both = build_pool(cb, BitWord::from_string("01"), 1);
    CHECK(both.size() == 2);  // both prefixes 00 and 11 are at distance 1 from 01

    const auto exact = build_pool(cb, BitWord::from_string("00"), 0);
    REQUIRE(exact.size() == 1);
    CHECK(exact[0] == MessagePair{1, 1});

    const auto none = build_pool(cb, BitWord::from_string("01"), 0);
    CHECK(none.empty());
}

TEST_CASE("true pair is always in the pool during real trials") {
    const Codebook cb = make_random_code(16, 8, 31);
    auto adv = make_adversary(StrategyKind::babble_push, config(0.25, 0.1, 0.05));
    Rng pick(5);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const MessagePair alice = cb.pair_at(pick.below(cb.num_pairs()));
        const BitWord x = cb.encode(alice);
        const auto e = feed(*adv, cb, x, seed);
        const auto& t = adv->trace();
        BitWord y1(t.ell);
        for (std::size_t i = 0; i < t.ell; ++i) y1.set_bit(i, (x.bit(i) ? 1 : 0) ^ e[i]);
        const auto pool = build_pool(cb, y1, adv->config().resolve(16).babble_flips);
        CHECK(std::find(pool.begin(), pool.end(), alice) != pool.end());
        CHECK(pool.size() == t.b_size);
    }
}

TEST_CASE("push target selection is uniform") {
    std::vector<MessagePair> pool{{1, 1}};
    Rng rng(9);
    CHECK(select_push_target(pool, rng) == MessagePair{1, 1});

    pool = {{1, 1}, {2, 1}};
    std::map<std::uint32_t, int> counts;
    for (int i = 0; i < 10000; ++i) ++counts[select_push_target(pool, rng).u];
    CHECK(std::abs(counts[1] - 5000) < 250);  // 5 sigma

    pool = {{1, 1}, {1, 2}, {2, 1}, {2, 2}};
    std::map<std::pair<std::uint32_t, std::uint32_t>, int> counts4;
    for (int i = 0; i < 20000; ++i) {
        const auto pick = select_push_target(pool, rng);
        ++counts4[{pick.u, pick.r}];
    }
    for (const auto& [key, count] : counts4) CHECK(std::abs(count - 5000) < 306);  // 5 sigma

    std::vector<MessagePair> empty;
    CHECK_THROWS_AS(select_push_target(empty, rng), std::logic_error);
}

TEST_CASE("push phase: fair coins on disagreements, budget truncation") {
    // Two codewords agreeing on position 0 and differing at positions 1, 2.
    const Codebook cb = make_two_word_suffix_code(6, 1, 2);

    SUBCASE("ample budget: intended weight is binomial(d, 1/2)") {
        auto adv = make_adversary(StrategyKind::babble_push, config(0.5, 0.17, 0.1));
        CHECK(adv->config().resolve(6).push_budget() == 2);
        std::map<std::size_t, int> weight_counts;
        int pushes = 0;
        for (std::uint64_t seed = 0; seed < 4000; ++seed) {
            feed(*adv, cb, cb.encode({1, 1}), seed);
            const auto& t = adv->trace();
            if (t.calvin.u != 2) continue;  // pushes toward itself: no disagreements
            REQUIRE(t.push_positions.size() == 2);
            CHECK(t.truncated == false);
            ++weight_counts[t.intended_weight()];
            ++pushes;
        }
        CHECK(pushes > 1500);
        CHECK(std::abs(weight_counts[1] - pushes * 0.5) < 5.0 * std::sqrt(pushes * 0.25));
        CHECK(std::abs(weight_counts[0] - pushes * 0.25) < 5.0 * std::sqrt(pushes * 0.1875));
    }

    SUBCASE("tight budget: second intended flip is suppressed") {
        // budget floor(0.4*6) = 2, one spent on babble, one left for the push.
        auto adv = make_adversary(StrategyKind::babble_push, config(0.4, 0.17, 0.1));
        CHECK(adv->config().resolve(6).push_budget() == 1);
        bool saw_truncation = false;
        for (std::uint64_t seed = 0; seed < 400 && !saw_truncation; ++seed) {
            const auto e = feed(*adv, cb, cb.encode({1, 1}), seed);
            const auto& t = adv->trace();
            if (t.calvin.u != 2 || t.intended_weight() != 2) continue;
            saw_truncation = true;
            CHECK(t.truncated);
            CHECK(e[t.push_positions[0]] == 1);  // first coin emitted
            CHECK(e[t.push_positions[1]] == 0);  // second suppressed by the cap
        }
        CHECK(saw_truncation);
    }
}

TEST_CASE("babble exactness: phase-1 flip count is exact in every trial") {
    const Codebook cb = make_random_code(20, 16, 3);
    auto adv = make_adversary(StrategyKind::babble_push, config(0.3, 0.12, 0.05));
    const auto res = adv->config().resolve(20);
    Rng pick(6);
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const BitWord x = cb.encode(cb.pair_at(pick.below(cb.num_pairs())));
        const auto e = feed(*adv, cb, x, seed);
        std::size_t phase1 = 0;
        std::size_t total = 0;
        for (std::size_t i = 0; i < 20; ++i) {
            total += e[i];
            if (i < res.ell) phase1 += e[i];
        }
        CHECK(phase1 == res.babble_flips);
        CHECK(total <= res.budget);
    }
}

TEST_CASE("channel mimic strategy") {
    const Codebook cb = make_random_code(256, 4, 8);

    SUBCASE("zero crossover never flips") {
        AdversaryConfig cfg = config(0.2, 0.2, 0.05);
        cfg.mimic_q = 0.0;
        auto adv = make_adversary(StrategyKind::bsc_mimic, cfg);
        Rng source(77);
        const auto e = feed(*adv, cb, random_word(256, source), 5);
        for (int ei : e) CHECK(ei == 0);
    }

    SUBCASE("budget cap always holds and is rarely hit for q well below p") {
        AdversaryConfig cfg = config(0.2, 0.2, 0.05);
        cfg.mimic_q = 0.12;
        auto adv = make_adversary(StrategyKind::bsc_mimic, cfg);
        const std::size_t budget = cfg.resolve(256).budget;
        Rng source(78);
        int cap_events = 0;
        for (std::uint64_t seed = 0; seed < 500; ++seed) {
            const auto e = feed(*adv, cb, random_word(256, source), seed);
            std::size_t flips = 0;
            for (int ei : e) flips += ei;
            CHECK(flips <= budget);
            if (adv->trace().truncated) ++cap_events;
        }
        CHECK(cap_events < 5);
    }

    SUBCASE("empirical flip rate approaches q") {
        AdversaryConfig cfg = config(0.5, 0.5, 0.05);
        cfg.mimic_q = 0.25;
        auto adv = make_adversary(StrategyKind::bsc_mimic, cfg);
        Rng source(79);
        std::size_t flips = 0;
        const int trials = 200;
        for (std::uint64_t seed = 0; seed < trials; ++seed) {
            for (int ei : feed(*adv, cb, random_word(256, source), seed)) flips += ei;
        }
        const double rate = static_cast<double>(flips) / (256.0 * trials);
        CHECK(std::abs(rate - 0.25) < 0.01);
    }
}

TEST_CASE("passive strategy never flips") {
    const Codebook cb = make_random_code(32, 4, 12);
    auto adv = make_adversary(StrategyKind::passive, config(0.2, 0.1, 0.05));
    Rng source(80);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto e = feed(*adv, cb, random_word(32, source), seed);
        for (int ei : e) CHECK(ei == 0);
        CHECK(adv->trace().budget_used == 0);
    }
}

TEST_CASE("pbar == p routes babble-push to the mimic strategy") {
    auto adv = make_adversary(StrategyKind::babble_push, config(0.2, 0.2, 0.05));
    CHECK(adv->name() == "bsc-mimic");
    auto real = make_adversary(StrategyKind::babble_push, config(0.2, 0.1, 0.05));
    CHECK(real->name() == "babble-push");
}

TEST_CASE("causality: equal prefixes give equal outputs") {
    const Codebook cb = make_random_code(24, 16, 44);
    const std::size_t n = 24;
    for (const StrategyKind kind :
         {StrategyKind::babble_push, StrategyKind::bsc_mimic, StrategyKind::passive}) {
        auto adv = make_adversary(kind, config(0.25, 0.1, 0.05));
        Rng rng(445);
        for (int probe = 0; probe < 300; ++probe) {
            const std::uint64_t seed = rng.next_u64();
            const std::size_t k = rng.below(n + 1);
            // Start from a real codeword so phase-2 state stays in contract,
            // then rewrite the suffix arbitrarily.
            BitWord x = cb.encode(cb.pair_at(rng.below(cb.num_pairs())));
            BitWord xt = x;
            for (std::size_t i = k; i < n; ++i) xt.set_bit(i, rng.bernoulli(0.5));
            const auto e1 = feed(*adv, cb, x, seed);
            const auto e2 = feed(*adv, cb, xt, seed);
            for (std::size_t i = 0; i < k; ++i) REQUIRE(e1[i] == e2[i]);
        }
    }
}
