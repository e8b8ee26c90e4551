#include "causaljam/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace causaljam {

void AdversaryConfig::validate() const {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("config: require 0 <= p <= 1");
    if (!(pbar >= 0.0 && pbar <= p)) throw ConfigError("config: require 0 <= pbar <= p");
    if (!(epsilon > 0.0)) throw ConfigError("config: require epsilon > 0");
    if (pbar < p && !(epsilon < 2.0 * (p - pbar))) {
        throw ConfigError("config: require epsilon < 2*(p - pbar) when pbar < p");
    }
    if (mimic_q && !(*mimic_q >= 0.0 && *mimic_q <= p)) {
        throw ConfigError("config: require 0 <= mimic_q <= p");
    }
}

AdversaryConfig::Resolved AdversaryConfig::resolve(std::size_t n) const {
    if (n == 0) throw ConfigError("config: block length must be positive");
    validate();
    Resolved r;
    r.n = n;
    r.budget = static_cast<std::size_t>(std::floor(p * static_cast<double>(n)));
    r.babble_flips = static_cast<std::size_t>(std::floor(pbar * static_cast<double>(n)));
    r.alpha = 1.0 - 4.0 * (p - pbar);
    const double raw = std::round((r.alpha + epsilon / 2.0) * static_cast<double>(n));
    const auto lo = static_cast<double>(r.babble_flips);
    const auto hi = static_cast<double>(n);
    r.ell = static_cast<std::size_t>(std::clamp(raw, lo, hi));
    return r;
}

std::string_view strategy_name(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::babble_push: return "babble-push";
        case StrategyKind::bsc_mimic: return "bsc-mimic";
        case StrategyKind::passive: return "passive";
    }
    throw std::logic_error("unknown strategy kind");
}

StrategyKind parse_strategy(std::string_view name) {
    if (name == "babble-push") return StrategyKind::babble_push;
    if (name == "bsc-mimic") return StrategyKind::bsc_mimic;
    if (name == "passive") return StrategyKind::passive;
    throw ConfigError("unknown strategy '" + std::string(name) + "' (expected babble-push, bsc-mimic or passive)");
}

std::vector<MessagePair> build_pool(const Codebook& cb, const BitWord& y1, std::size_t babble_flips) {
    std::vector<MessagePair> pool;
    for (std::size_t f = 0; f < cb.num_pairs(); ++f) {
        const MessagePair pair = cb.pair_at(f);
        if (hamming_distance_prefix(cb.encode(pair), y1) == babble_flips) pool.push_back(pair);
    }
    return pool;
}

MessagePair select_push_target(const std::vector<MessagePair>& pool, Rng& rng) {
    if (pool.empty()) throw std::logic_error("select_push_target: empty candidate pool");
    return pool[static_cast<std::size_t>(rng.below(pool.size()))];
}

namespace {

/// Two-phase attack. Phase 1 flips a uniformly random babble_flips-subset
/// of the first ell positions. Phase 2 picks, uniformly from the pairs whose
/// codeword prefix is at distance exactly babble_flips from the observed
/// phase-1 output, an alternative codeword, then flips a fair coin on every
/// position where the transmission disagrees with it. Coins are materialized
/// in full (the intended error); emission stops at the budget cap.
class BabblePushAdversary final : public CausalAdversary {
public:
    explicit BabblePushAdversary(const AdversaryConfig& cfg) : cfg_(cfg), rng_(0) {
        cfg_.validate();
        if (!(cfg_.pbar < cfg_.p)) {
            throw ConfigError("babble-push: requires pbar < p (pbar == p is the mimic mode)");
        }
    }

    void reset(const Codebook& cb, std::uint64_t trial_seed) override {
        cb_ = &cb;
        res_ = cfg_.resolve(cb.block_length());
        rng_ = Rng(trial_seed);
        t_ = AttackTranscript{};
        t_.has_push = true;
        t_.ell = res_.ell;
        t_.gamma = rng_.subset(static_cast<std::uint32_t>(res_.ell),
                               static_cast<std::uint32_t>(res_.babble_flips));
        in_gamma_.assign(res_.ell, 0);
        for (auto g : t_.gamma) in_gamma_[g] = 1;
        y1_ = BitWord(res_.ell);
        target_ = nullptr;
        flips_done_ = 0;
        selected_ = false;
        next_pos_ = 0;
    }

    int observe_and_decide(std::size_t i, int x_bit) override {
        if (i != next_pos_ || i >= res_.n) throw std::logic_error("babble-push: positions must arrive in order");
        ++next_pos_;
        if (i < res_.ell) return babble_step(i, x_bit);
        if (!selected_) select_target();
        return push_step(i, x_bit);
    }

    void finalize() override {
        // Degenerate ell == n leaves no push positions; still record the
        // selection so the transcript carries the candidate pool.
        if (!selected_) select_target();
    }

    const AttackTranscript& trace() const override { return t_; }
    const AdversaryConfig& config() const override { return cfg_; }
    std::string_view name() const override { return strategy_name(StrategyKind::babble_push); }

private:
    int babble_step(std::size_t i, int x_bit) {
        const int e = in_gamma_[i];
        y1_.set_bit(i, (x_bit ^ e) != 0);
        if (e) ++flips_done_;
        return e;
    }

    void select_target() {
        const auto pool = build_pool(*cb_, y1_, res_.babble_flips);
        t_.b_size = pool.size();
        // A transmission of an actual codeword always leaves the sender's
        // pair in the pool. An empty pool can only arise from a
        // non-codeword input (e.g. replay probes); give up jamming then.
        if (!pool.empty()) {
            t_.calvin = select_push_target(pool, rng_);
            target_ = &cb_->encode(t_.calvin);
        }
        selected_ = true;
    }

    int push_step(std::size_t i, int x_bit) {
        if (target_ == nullptr) return 0;
        const int target_bit = target_->bit(i) ? 1 : 0;
        if (target_bit == x_bit) return 0;
        t_.push_positions.push_back(static_cast<std::uint32_t>(i));
        const std::uint8_t coin = rng_.bernoulli(0.5) ? 1 : 0;
        t_.intended.push_back(coin);
        if (coin && flips_done_ >= res_.budget) {
            t_.truncated = true;
            return 0;
        }
        if (coin) ++flips_done_;
        return coin;
    }

    AdversaryConfig cfg_;
    AdversaryConfig::Resolved res_;
    const Codebook* cb_ = nullptr;
    const BitWord* target_ = nullptr;
    Rng rng_;
    AttackTranscript t_;
    std::vector<std::uint8_t> in_gamma_;
    BitWord y1_;
    std::size_t flips_done_ = 0;
    std::size_t next_pos_ = 0;
    bool selected_ = false;
};

/// Memoryless jamming: flip each bit independently with probability q,
/// suppressing flips once the budget cap is reached.
class BscMimicAdversary final : public CausalAdversary {
public:
    explicit BscMimicAdversary(const AdversaryConfig& cfg) : cfg_(cfg), rng_(0) {
        cfg_.validate();
        q_ = cfg_.mimic_q.value_or(cfg_.p);
    }

    void reset(const Codebook& cb, std::uint64_t trial_seed) override {
        res_ = cfg_.resolve(cb.block_length());
        rng_ = Rng(trial_seed);
        t_ = AttackTranscript{};
        flips_done_ = 0;
    }

    int observe_and_decide(std::size_t, int) override {
        const bool want = rng_.bernoulli(q_);
        if (!want) return 0;
        if (flips_done_ >= res_.budget) {
            t_.truncated = true;
            return 0;
        }
        ++flips_done_;
        return 1;
    }

    const AttackTranscript& trace() const override { return t_; }
    const AdversaryConfig& config() const override { return cfg_; }
    std::string_view name() const override { return strategy_name(StrategyKind::bsc_mimic); }

private:
    AdversaryConfig cfg_;
    AdversaryConfig::Resolved res_;
    Rng rng_;
    AttackTranscript t_;
    double q_ = 0.0;
    std::size_t flips_done_ = 0;
};

class PassiveAdversary final : public CausalAdversary {
public:
    explicit PassiveAdversary(const AdversaryConfig& cfg) : cfg_(cfg) { cfg_.validate(); }

    void reset(const Codebook&, std::uint64_t) override { t_ = AttackTranscript{}; }
    int observe_and_decide(std::size_t, int) override { return 0; }
    const AttackTranscript& trace() const override { return t_; }
    const AdversaryConfig& config() const override { return cfg_; }
    std::string_view name() const override { return strategy_name(StrategyKind::passive); }

private:
    AdversaryConfig cfg_;
    AttackTranscript t_;
};

}  // namespace

std::unique_ptr<CausalAdversary> make_adversary(StrategyKind kind, const AdversaryConfig& cfg) {
    cfg.validate();
    switch (kind) {
        case StrategyKind::babble_push:
            if (cfg.pbar == cfg.p) {
                AdversaryConfig mimic = cfg;
                if (!mimic.mimic_q) mimic.mimic_q = cfg.p;
                return std::make_unique<BscMimicAdversary>(mimic);
            }
            return std::make_unique<BabblePushAdversary>(cfg);
        case StrategyKind::bsc_mimic:
            return std::make_unique<BscMimicAdversary>(cfg);
        case StrategyKind::passive:
            return std::make_unique<PassiveAdversary>(cfg);
    }
    throw std::logic_error("unknown strategy kind");
}

}  // namespace causaljam
