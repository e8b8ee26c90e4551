#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "causaljam/adversary.hpp"
#include "causaljam/codebook.hpp"
#include "causaljam/transcript.hpp"

namespace causaljam {

struct DecoderConfig {
    /// Search radius for the decoder; defaults to the adversary budget.
    std::optional<std::size_t> radius;
};

/// Aggregated Monte Carlo counters. All fields are integer sums, so merging
/// partial stats is commutative and the result is independent of how trials
/// were scheduled across workers.
struct TrialStats {
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;

    std::uint64_t e0 = 0;
    std::uint64_t e2 = 0;
    std::uint64_t e3 = 0;
    std::uint64_t e4 = 0;
    std::uint64_t e234 = 0;
    std::uint64_t errors_given_e234 = 0;

    std::uint64_t budget_exhausted = 0;  ///< trials where the cap suppressed an intended flip
    std::uint64_t budget_used_sum = 0;

    std::uint64_t pool_trials = 0;  ///< trials carrying a candidate pool (babble/push only)
    std::uint64_t pool_min = 0;
    std::uint64_t pool_max = 0;
    std::uint64_t pool_sum = 0;

    std::uint64_t gamma_qualifying = 0;  ///< ordered candidate pairs with distinct messages within push distance
    std::uint64_t gamma_pairs = 0;       ///< all ordered candidate pairs examined

    void merge(const TrialStats& other);

    double error_rate() const { return trials ? static_cast<double>(errors) / static_cast<double>(trials) : 0.0; }
    double error_rate_given_e234() const {
        return e234 ? static_cast<double>(errors_given_e234) / static_cast<double>(e234) : 0.0;
    }
    double mean_budget_used() const {
        return trials ? static_cast<double>(budget_used_sum) / static_cast<double>(trials) : 0.0;
    }
    double pool_mean() const {
        return pool_trials ? static_cast<double>(pool_sum) / static_cast<double>(pool_trials) : 0.0;
    }
    double gamma_estimate() const {
        return gamma_pairs ? static_cast<double>(gamma_qualifying) / static_cast<double>(gamma_pairs) : 0.0;
    }
};

/// Stable column order for the flat CSV row form of TrialStats.
std::string trial_stats_csv_header();
std::string trial_stats_csv_row(const TrialStats& s);

/// Flags for one completed transcript. Only babble/push transcripts carry
/// events; everything is false otherwise.
EventFlags compute_events(const AttackTranscript& t, const Codebook& cb, const AdversaryConfig& cfg);

/// One full transmission: draw (u, r) uniformly, stream the codeword through
/// the jammer bit by bit, decode, flag events, and validate the transcript.
AttackTranscript run_trial(const Codebook& cb, CausalAdversary& adv, const DecoderConfig& dec,
                           std::uint64_t trial_seed);

struct MonteCarloOptions {
    std::size_t workers = 1;
    bool with_gamma = true;              ///< accumulate the candidate-pair diagnostic
    std::size_t gamma_pool_cap = 10000;  ///< skip the diagnostic for larger pools
    std::vector<AttackTranscript>* transcript_sink = nullptr;  ///< optional per-trial dump, trial order
};

/// Independent trials with per-trial seeds derived from the master seed;
/// the result is identical for any worker count.
TrialStats monte_carlo(const Codebook& cb, StrategyKind kind, const AdversaryConfig& cfg,
                       const DecoderConfig& dec, std::uint64_t trials, std::uint64_t master_seed,
                       const MonteCarloOptions& opt = {});

/// Exact fraction of ordered candidate-pool pairs with distinct messages
/// and suffix distance strictly below the push threshold.
double gamma_diagnostic(const Codebook& cb, const BitWord& y1, const AdversaryConfig& cfg,
                        std::size_t pool_cap = 10000);

struct GammaCounts {
    std::uint64_t qualifying = 0;
    std::uint64_t total = 0;
};
GammaCounts gamma_counts(const Codebook& cb, const BitWord& y1, const AdversaryConfig& cfg,
                         std::size_t pool_cap = 10000);

struct PoolSizeStats {
    std::uint64_t trials = 0;
    std::size_t min_size = 0;
    std::size_t max_size = 0;
    double mean_size = 0.0;
    double fraction_large = 0.0;  ///< fraction of trials with pool size >= 2^(eps*n/4) / 2
};

/// Distribution of the candidate-pool size over simulated babble phases of a
/// deterministic codebook.
PoolSizeStats pool_size_diagnostic(const Codebook& cb, const AdversaryConfig& cfg,
                                   std::uint64_t trials, std::uint64_t seed);

struct SymmetryOptions {
    bool restrict_to_window = true;  ///< only outputs whose intended weight lies in the e4 window
    std::size_t max_pairs = 4;
    std::size_t max_block = 12;
};

struct SymmetryReport {
    bool ok = true;
    std::uint64_t y1_count = 0;
    std::uint64_t tuples_checked = 0;
    std::uint64_t outputs_checked = 0;
    std::string violation;  ///< empty when ok
};

/// Exhaustive check, by integer counting over the full coin space, that the
/// channel output distribution conditioned on (y1, sender pair, selected
/// pair) is symmetric under swapping the two pairs, for every in-scope tuple
/// and every output reachable without budget truncation.
SymmetryReport exact_symmetry_check(const Codebook& cb, const AdversaryConfig& cfg,
                                    const SymmetryOptions& opt = {});

}  // namespace causaljam
