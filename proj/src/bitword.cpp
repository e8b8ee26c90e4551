#include "causaljam/bitword.hpp"

#include <bit>
#include <stdexcept>

namespace causaljam {

namespace {

std::uint64_t tail_mask(std::size_t nbits) {
    const std::size_t rem = nbits % 64;
    return rem == 0 ? ~0ULL : (1ULL << rem) - 1;
}

void check_same_length(const BitWord& a, const BitWord& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("BitWord: length mismatch (" + std::to_string(a.size()) +
                                    " vs " + std::to_string(b.size()) + ")");
    }
}

}  // namespace

BitWord BitWord::ones(std::size_t n) {
    BitWord w(n);
    for (auto& limb : w.limbs_) limb = ~0ULL;
    if (!w.limbs_.empty()) w.limbs_.back() &= tail_mask(n);
    return w;
}

BitWord BitWord::from_string(std::string_view s) {
    BitWord w(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1') {
            w.set_bit(i, true);
        } else if (s[i] != '0') {
            throw std::invalid_argument("BitWord::from_string: expected '0' or '1'");
        }
    }
    return w;
}

void BitWord::check_index(std::size_t i) const {
    if (i >= nbits_) throw std::out_of_range("BitWord: bit index out of range");
}

bool BitWord::bit(std::size_t i) const {
    check_index(i);
    return (limbs_[i / 64] >> (i % 64)) & 1ULL;
}

void BitWord::set_bit(std::size_t i, bool value) {
    check_index(i);
    const std::uint64_t mask = 1ULL << (i % 64);
    if (value) {
        limbs_[i / 64] |= mask;
    } else {
        limbs_[i / 64] &= ~mask;
    }
}

void BitWord::flip_bit(std::size_t i) {
    check_index(i);
    limbs_[i / 64] ^= 1ULL << (i % 64);
}

std::size_t BitWord::weight() const {
    std::size_t total = 0;
    for (const auto limb : limbs_) total += static_cast<std::size_t>(std::popcount(limb));
    return total;
}

std::string BitWord::to_string() const {
    std::string s(nbits_, '0');
    for (std::size_t i = 0; i < nbits_; ++i) {
        if (bit(i)) s[i] = '1';
    }
    return s;
}

bool BitWord::operator<(const BitWord& other) const {
    if (nbits_ != other.nbits_) return nbits_ < other.nbits_;
    return limbs_ < other.limbs_;
}

BitWord operator^(const BitWord& a, const BitWord& b) {
    check_same_length(a, b);
    BitWord out = a;
    for (std::size_t i = 0; i < out.limbs_.size(); ++i) out.limbs_[i] ^= b.limbs_[i];
    return out;
}

std::size_t hamming_distance(const BitWord& a, const BitWord& b) {
    check_same_length(a, b);
    std::size_t total = 0;
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
        total += static_cast<std::size_t>(std::popcount(a.limbs_[i] ^ b.limbs_[i]));
    }
    return total;
}

std::size_t hamming_distance_prefix(const BitWord& w, const BitWord& prefix) {
    const std::size_t ell = prefix.size();
    if (ell > w.size()) throw std::invalid_argument("hamming_distance_prefix: prefix longer than word");
    std::size_t total = 0;
    const std::size_t full = ell / 64;
    for (std::size_t i = 0; i < full; ++i) {
        total += static_cast<std::size_t>(std::popcount(w.limbs_[i] ^ prefix.limbs_[i]));
    }
    const std::size_t rem = ell % 64;
    if (rem != 0) {
        const std::uint64_t mask = (1ULL << rem) - 1;
        total += static_cast<std::size_t>(std::popcount((w.limbs_[full] ^ prefix.limbs_[full]) & mask));
    }
    return total;
}

std::pair<BitWord, BitWord> split(const BitWord& w, std::size_t ell) {
    if (ell > w.size()) throw std::out_of_range("split: prefix length exceeds word length");
    BitWord head(ell);
    BitWord tail(w.size() - ell);
    for (std::size_t i = 0; i < ell; ++i) head.set_bit(i, w.bit(i));
    for (std::size_t i = ell; i < w.size(); ++i) tail.set_bit(i - ell, w.bit(i));
    return {std::move(head), std::move(tail)};
}

BitWord concat(const BitWord& a, const BitWord& b) {
    BitWord out(a.size() + b.size());
    for (std::size_t i = 0; i < a.size(); ++i) out.set_bit(i, a.bit(i));
    for (std::size_t i = 0; i < b.size(); ++i) out.set_bit(a.size() + i, b.bit(i));
    return out;
}

BitWord prefix(const BitWord& w, std::size_t ell) { return split(w, ell).first; }

}  // namespace causaljam
