#include "causaljam/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "causaljam/bounds.hpp"

namespace causaljam {

std::uint32_t min_distance_decode(const Codebook& cb, const BitWord& y, std::size_t radius, Rng& rng) {
    if (cb.num_pairs() == 0) throw std::invalid_argument("min_distance_decode: empty codebook");
    std::size_t best = SIZE_MAX;
    std::vector<std::uint32_t> best_messages;
    for (std::size_t f = 0; f < cb.num_pairs(); ++f) {
        const MessagePair pair = cb.pair_at(f);
        const std::size_t d = hamming_distance(cb.encode(pair), y);
        if (d < best) {
            best = d;
            best_messages.clear();
        }
        if (d == best && std::find(best_messages.begin(), best_messages.end(), pair.u) == best_messages.end()) {
            best_messages.push_back(pair.u);
        }
    }
    (void)radius;  // forced decision: the nearest message wins whether or not it lies inside the radius
    if (best_messages.size() == 1) return best_messages.front();
    return best_messages[static_cast<std::size_t>(rng.below(best_messages.size()))];
}

PosteriorEntropy posterior_message_entropy(const Codebook& cb, const BitWord& y1, std::size_t babble_flips) {
    std::map<std::uint32_t, std::size_t> multiplicity;
    std::size_t total = 0;
    for (std::size_t f = 0; f < cb.num_pairs(); ++f) {
        const MessagePair pair = cb.pair_at(f);
        if (hamming_distance_prefix(cb.encode(pair), y1) == babble_flips) {
            ++multiplicity[pair.u];
            ++total;
        }
    }
    if (total == 0) return {0.0, true};
    std::vector<double> probs;
    probs.reserve(multiplicity.size());
    for (const auto& [u, count] : multiplicity) {
        probs.push_back(static_cast<double>(count) / static_cast<double>(total));
    }
    return {distribution_entropy(probs), false};
}

double sampling_lemma_bound(double lambda, std::size_t m, double log_support) {
    if (m < 1) throw std::invalid_argument("sampling_lemma_bound: m must be at least 1");
    if (!(log_support > 0.0)) throw std::invalid_argument("sampling_lemma_bound: log_support must be positive");
    const double base = std::max(0.0, (lambda - 1.0 - std::log2(static_cast<double>(m))) / log_support);
    return std::pow(base, static_cast<double>(m - 1));
}

namespace {

// Sum of products of probabilities over all size-m index subsets.
double elementary_symmetric(const std::vector<double>& probs, std::size_t m) {
    // e[k] after processing each probability; O(support * m).
    std::vector<double> e(m + 1, 0.0);
    e[0] = 1.0;
    for (double q : probs) {
        for (std::size_t k = std::min(m, e.size() - 1); k >= 1; --k) {
            e[k] += e[k - 1] * q;
        }
    }
    return e[m];
}

}  // namespace

double distinct_draw_probability(const std::vector<double>& probs, std::size_t m) {
    if (probs.size() > 64 || m > 4 || m < 1) {
        throw std::invalid_argument("distinct_draw_probability: support <= 64 and 1 <= m <= 4");
    }
    double total = 0.0;
    for (double q : probs) {
        if (q < 0.0) throw std::invalid_argument("distinct_draw_probability: negative probability");
        total += q;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("distinct_draw_probability: probabilities must sum to 1");
    }
    double factorial = 1.0;
    for (std::size_t k = 2; k <= m; ++k) factorial *= static_cast<double>(k);
    return factorial * elementary_symmetric(probs, m);
}

}  // namespace causaljam
