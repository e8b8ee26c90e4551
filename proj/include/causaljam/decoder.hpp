#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "causaljam/codebook.hpp"
#include "causaljam/rng.hpp"

namespace causaljam {

/// Minimum-distance decoding with forced decision: return the message of
/// the nearest codeword, breaking ties across distinct messages uniformly
/// at random. `radius` bounds the search window; when no codeword falls
/// inside it the globally nearest codeword's message is returned anyway.
std::uint32_t min_distance_decode(const Codebook& cb, const BitWord& y, std::size_t radius, Rng& rng);

struct PosteriorEntropy {
    double bits = 0.0;
    bool empty_pool = false;  ///< no candidate had the required prefix distance
};

/// Exact entropy of the message marginal of the uniform distribution on the
/// candidate pool for phase-1 output y1 (all pairs whose codeword prefix is
/// at distance exactly babble_flips). Empty pool yields 0, flagged.
PosteriorEntropy posterior_message_entropy(const Codebook& cb, const BitWord& y1, std::size_t babble_flips);

/// Lower bound max(0, (lambda - 1 - log2 m) / log_support)^(m-1) on the
/// probability that m i.i.d. draws from any distribution with entropy at
/// least lambda over a support of size 2^log_support are pairwise distinct.
double sampling_lemma_bound(double lambda, std::size_t m, double log_support);

/// Exact probability that m i.i.d. draws from the given distribution are
/// pairwise distinct: m! * e_m(p), summed over all size-m index subsets.
/// Feasibility limits: support <= 64, m <= 4.
double distinct_draw_probability(const std::vector<double>& probs, std::size_t m);

}  // namespace causaljam
