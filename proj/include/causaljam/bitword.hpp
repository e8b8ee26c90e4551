#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace causaljam {

/// Fixed-length binary vector, bit-packed into 64-bit limbs.
/// The length is set at construction and never changes; all positionwise
/// operations require equal lengths and throw otherwise. Unused high bits of
/// the last limb are kept zero so equality and popcounts work limb-wise.
class BitWord {
public:
    BitWord() = default;
    explicit BitWord(std::size_t n) : nbits_(n), limbs_((n + 63) / 64, 0) {}

    static BitWord zeros(std::size_t n) { return BitWord(n); }
    static BitWord ones(std::size_t n);
    static BitWord from_string(std::string_view s);

    std::size_t size() const { return nbits_; }

    bool bit(std::size_t i) const;
    void set_bit(std::size_t i, bool value);
    void flip_bit(std::size_t i);

    /// Number of ones.
    std::size_t weight() const;

    std::string to_string() const;

    bool operator==(const BitWord& other) const = default;
    bool operator<(const BitWord& other) const;

    friend BitWord operator^(const BitWord& a, const BitWord& b);

private:
    void check_index(std::size_t i) const;

    std::size_t nbits_ = 0;
    std::vector<std::uint64_t> limbs_;

    friend std::size_t hamming_distance(const BitWord&, const BitWord&);
    friend std::size_t hamming_distance_prefix(const BitWord&, const BitWord&);
};

/// Number of positions where a and b differ. Lengths must match.
std::size_t hamming_distance(const BitWord& a, const BitWord& b);

/// Distance between `prefix` and the first prefix.size() bits of `w`.
std::size_t hamming_distance_prefix(const BitWord& w, const BitWord& prefix);

/// (first ell bits, remaining n-ell bits); concat() round-trips.
std::pair<BitWord, BitWord> split(const BitWord& w, std::size_t ell);

BitWord concat(const BitWord& a, const BitWord& b);

/// First ell bits of w.
BitWord prefix(const BitWord& w, std::size_t ell);

}  // namespace causaljam
