#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "causaljam/bitword.hpp"
#include "causaljam/transcript.hpp"

namespace causaljam {

/// Shared code known to sender, receiver and jammer. Every message u in
/// [1, M] owns the same number N of codewords x(u, r), r in [1, N]; the
/// joint law on (u, r) is uniform over all M*N pairs. N == 1 with globally
/// distinct codewords is the deterministic kind.
class Codebook {
public:
    enum class Kind { deterministic, stochastic };

    Codebook(std::size_t n, Kind kind, std::vector<std::vector<BitWord>> words_per_message);

    std::size_t block_length() const { return n_; }
    std::size_t num_messages() const { return words_.size(); }
    std::size_t spread() const { return words_.empty() ? 0 : words_.front().size(); }
    std::size_t num_pairs() const { return num_messages() * spread(); }
    Kind kind() const { return kind_; }

    /// log2(M) / n.
    double rate() const;

    const BitWord& encode(MessagePair pair) const;

    /// Pair for a flat index in [0, num_pairs()), ordered (u-major, r-minor).
    MessagePair pair_at(std::size_t flat) const;

    /// Text format: header "n M kind", then one "u r bitstring" line per
    /// pair with 1-based indices. store() emits canonical (u, r) order and
    /// load(store(cb)) reproduces the codebook exactly.
    static Codebook load(std::istream& in);
    void store(std::ostream& out) const;
    static Codebook load_file(const std::string& path);
    void store_file(const std::string& path) const;

    bool operator==(const Codebook& other) const;

private:
    std::size_t n_;
    Kind kind_;
    std::vector<std::vector<BitWord>> words_;
};

/// M distinct codewords drawn uniformly at random; deterministic kind,
/// reproducible from the seed. Requires M <= 2^n.
Codebook make_random_code(std::size_t n, std::size_t num_messages, std::uint64_t seed);

/// The two-word code {all-zeros, all-ones}; minimum distance n.
Codebook make_repetition_code(std::size_t n);

/// Stochastic code: per message, `spread` distinct codewords within Hamming
/// distance `radius` of a random center. Pairs are uniformly weighted.
Codebook make_stochastic_cloud(std::size_t n, std::size_t num_messages, std::size_t spread,
                               std::size_t radius, std::uint64_t seed);

}  // namespace causaljam
