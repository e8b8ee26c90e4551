#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "causaljam/codebook.hpp"
#include "causaljam/rng.hpp"
#include "causaljam/transcript.hpp"

namespace causaljam {

/// Thrown when a jammer configuration violates its standing assumptions;
/// the message names the violated constraint.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Jammer parameters. Fractions are resolved to integers per block length
/// with fixed rounding rules:
///   budget       = floor(p * n)
///   babble_flips = floor(pbar * n)
///   ell          = round((alpha + eps/2) * n) clamped into [babble_flips, n]
/// where alpha = 1 - 4(p - pbar).
struct AdversaryConfig {
    double p = 0.0;        ///< budget fraction
    double pbar = 0.0;     ///< babble fraction, <= p
    double epsilon = 0.0;  ///< slack parameter, > 0
    std::optional<double> mimic_q;  ///< crossover for the mimic strategy; defaults to p

    struct Resolved {
        std::size_t n = 0;
        std::size_t budget = 0;
        std::size_t babble_flips = 0;
        std::size_t ell = 0;
        double alpha = 0.0;
        std::size_t push_budget() const { return budget - babble_flips; }
    };

    /// Throws ConfigError unless 0 <= pbar <= p <= 1, epsilon > 0, and
    /// epsilon < 2(p - pbar) whenever pbar < p. pbar == p is the degenerate
    /// channel-mimic mode and skips the epsilon constraint.
    void validate() const;

    Resolved resolve(std::size_t n) const;
};

/// Causal jammer contract. The harness reveals codeword bits one at a time
/// in increasing position order, so decisions structurally depend only on
/// the prefix seen so far, the strategy's own randomness, and the public
/// codebook. Instances serve one trial between reset() calls.
class CausalAdversary {
public:
    virtual ~CausalAdversary() = default;

    virtual void reset(const Codebook& cb, std::uint64_t trial_seed) = 0;

    /// Called once per position i = 0..n-1 in order; returns e_i.
    virtual int observe_and_decide(std::size_t i, int x_bit) = 0;

    /// Called after the final position; lets a strategy finish bookkeeping
    /// (e.g. a push phase that the block length left empty).
    virtual void finalize() {}

    /// Per-trial details for the transcript, valid after the full pass.
    virtual const AttackTranscript& trace() const = 0;

    virtual const AdversaryConfig& config() const = 0;
    virtual std::string_view name() const = 0;
};

enum class StrategyKind { babble_push, bsc_mimic, passive };

std::string_view strategy_name(StrategyKind kind);
StrategyKind parse_strategy(std::string_view name);

/// Build a strategy instance. A babble_push request with pbar == p routes
/// to the channel-mimic strategy with crossover p, the degenerate mode for
/// which the two-phase structure collapses.
std::unique_ptr<CausalAdversary> make_adversary(StrategyKind kind, const AdversaryConfig& cfg);

/// All (u, r) whose codeword prefix of length y1.size() lies at Hamming
/// distance exactly babble_flips from y1. When y1 arose from a babble phase
/// the transmitted pair is always a member.
std::vector<MessagePair> build_pool(const Codebook& cb, const BitWord& y1, std::size_t babble_flips);

/// Uniform draw from a nonempty candidate pool.
MessagePair select_push_target(const std::vector<MessagePair>& pool, Rng& rng);

}  // namespace causaljam
