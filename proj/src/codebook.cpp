#include "causaljam/codebook.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "causaljam/rng.hpp"

namespace causaljam {

namespace {

bool fits_in_word_count(std::size_t n, std::size_t count) {
    // count <= 2^n, without overflowing the shift for large n.
    if (n >= 64) return true;
    return count <= (1ULL << n);
}

BitWord random_word(std::size_t n, Rng& rng) {
    BitWord w(n);
    for (std::size_t i = 0; i < n; i += 64) {
        std::uint64_t bits = rng.next_u64();
        for (std::size_t j = i; j < std::min(n, i + 64); ++j) {
            w.set_bit(j, bits & 1ULL);
            bits >>= 1;
        }
    }
    return w;
}

}  // namespace

Codebook::Codebook(std::size_t n, Kind kind, std::vector<std::vector<BitWord>> words_per_message)
    : n_(n), kind_(kind), words_(std::move(words_per_message)) {
    if (words_.empty()) throw std::invalid_argument("Codebook: no messages");
    const std::size_t spread = words_.front().size();
    if (spread == 0) throw std::invalid_argument("Codebook: empty codeword list");
    for (const auto& list : words_) {
        if (list.size() != spread) {
            throw std::invalid_argument("Codebook: unequal codeword counts break the uniform (u, r) law");
        }
        for (const auto& w : list) {
            if (w.size() != n_) throw std::invalid_argument("Codebook: codeword length mismatch");
        }
    }
    if (kind_ == Kind::deterministic) {
        if (spread != 1) throw std::invalid_argument("Codebook: deterministic kind requires one codeword per message");
        std::set<BitWord> seen;
        for (const auto& list : words_) {
            if (!seen.insert(list.front()).second) {
                throw std::invalid_argument("Codebook: deterministic kind requires distinct codewords");
            }
        }
    }
}

double Codebook::rate() const {
    return std::log2(static_cast<double>(num_messages())) / static_cast<double>(n_);
}

const BitWord& Codebook::encode(MessagePair pair) const {
    if (pair.u < 1 || pair.u > num_messages() || pair.r < 1 || pair.r > spread()) {
        throw std::out_of_range("Codebook::encode: pair out of range");
    }
    return words_[pair.u - 1][pair.r - 1];
}

MessagePair Codebook::pair_at(std::size_t flat) const {
    if (flat >= num_pairs()) throw std::out_of_range("Codebook::pair_at: index out of range");
    const std::size_t s = spread();
    return MessagePair{static_cast<std::uint32_t>(flat / s + 1), static_cast<std::uint32_t>(flat % s + 1)};
}

bool Codebook::operator==(const Codebook& other) const {
    return n_ == other.n_ && kind_ == other.kind_ && words_ == other.words_;
}

Codebook Codebook::load(std::istream& in) {
    std::size_t n = 0;
    std::size_t m = 0;
    std::string kind_word;
    if (!(in >> n >> m >> kind_word)) throw std::runtime_error("Codebook::load: bad header, expected 'n M kind'");
    Kind kind;
    if (kind_word == "deterministic") {
        kind = Kind::deterministic;
    } else if (kind_word == "stochastic") {
        kind = Kind::stochastic;
    } else {
        throw std::runtime_error("Codebook::load: unknown kind '" + kind_word + "'");
    }
    if (m == 0) throw std::runtime_error("Codebook::load: M must be positive");

    std::vector<std::vector<BitWord>> words(m);
    std::size_t u = 0;
    std::size_t r = 0;
    std::string bits;
    while (in >> u >> r >> bits) {
        if (u < 1 || u > m) throw std::runtime_error("Codebook::load: message index out of range");
        if (bits.size() != n) throw std::runtime_error("Codebook::load: bitstring length != n");
        auto& list = words[u - 1];
        if (r != list.size() + 1) {
            throw std::runtime_error("Codebook::load: randomness indices must be 1..N in order per message");
        }
        list.push_back(BitWord::from_string(bits));
    }
    return Codebook(n, kind, std::move(words));
}

void Codebook::store(std::ostream& out) const {
    out << n_ << ' ' << num_messages() << ' '
        << (kind_ == Kind::deterministic ? "deterministic" : "stochastic") << '\n';
    for (std::size_t u = 0; u < words_.size(); ++u) {
        for (std::size_t r = 0; r < words_[u].size(); ++r) {
            out << (u + 1) << ' ' << (r + 1) << ' ' << words_[u][r].to_string() << '\n';
        }
    }
}

Codebook Codebook::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("Codebook::load_file: cannot open " + path);
    return load(in);
}

void Codebook::store_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("Codebook::store_file: cannot open " + path);
    store(out);
}

Codebook make_random_code(std::size_t n, std::size_t num_messages, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("make_random_code: n must be positive");
    if (!fits_in_word_count(n, num_messages)) {
        throw std::invalid_argument("make_random_code: more messages than words of length n");
    }
    Rng rng(seed);
    std::vector<std::vector<BitWord>> words;
    words.reserve(num_messages);

    const bool dense = n <= 20 && num_messages * 2 >= (1ULL << n);
    if (dense) {
        // Dense request: enumerate the full space and take a random prefix of
        // a partial shuffle instead of rejection sampling.
        std::vector<std::uint64_t> all(1ULL << n);
        std::iota(all.begin(), all.end(), 0ULL);
        for (std::size_t i = 0; i < num_messages; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.below(all.size() - i));
            std::swap(all[i], all[j]);
            BitWord w(n);
            for (std::size_t b = 0; b < n; ++b) w.set_bit(b, (all[i] >> b) & 1ULL);
            words.push_back({std::move(w)});
        }
    } else {
        std::set<BitWord> seen;
        while (words.size() < num_messages) {
            BitWord w = random_word(n, rng);
            if (seen.insert(w).second) words.push_back({std::move(w)});
        }
    }
    return Codebook(n, Codebook::Kind::deterministic, std::move(words));
}

Codebook make_repetition_code(std::size_t n) {
    if (n == 0) throw std::invalid_argument("make_repetition_code: n must be positive");
    std::vector<std::vector<BitWord>> words;
    words.push_back({BitWord::zeros(n)});
    words.push_back({BitWord::ones(n)});
    return Codebook(n, Codebook::Kind::deterministic, std::move(words));
}

namespace {

double log2_ball_size(std::size_t n, std::size_t radius) {
    double total = 0.0;
    double binom = 1.0;  // C(n, 0)
    for (std::size_t i = 0; i <= radius && i <= n; ++i) {
        if (i > 0) binom = binom * static_cast<double>(n - i + 1) / static_cast<double>(i);
        total += binom;
        if (total > 1e18) return 60.0;
    }
    return std::log2(total);
}

}  // namespace

Codebook make_stochastic_cloud(std::size_t n, std::size_t num_messages, std::size_t spread,
                               std::size_t radius, std::uint64_t seed) {
    if (n == 0 || num_messages == 0 || spread == 0) {
        throw std::invalid_argument("make_stochastic_cloud: zero-sized parameter");
    }
    if (!fits_in_word_count(n, num_messages * spread)) {
        throw std::invalid_argument("make_stochastic_cloud: M*spread exceeds 2^n");
    }
    if (std::log2(static_cast<double>(spread)) > log2_ball_size(n, radius)) {
        throw std::invalid_argument("make_stochastic_cloud: spread exceeds the Hamming ball size");
    }
    Rng rng(seed);
    std::vector<std::vector<BitWord>> words(num_messages);
    for (auto& list : words) {
        const BitWord center = random_word(n, rng);
        std::set<BitWord> seen;
        while (list.size() < spread) {
            // Uniform word in the ball: weight by shell size, then a uniform
            // subset of positions to flip.
            BitWord w = center;
            const std::size_t dist = [&] {
                double total = 0.0;
                double binom = 1.0;
                std::vector<double> shell;
                for (std::size_t i = 0; i <= radius && i <= n; ++i) {
                    if (i > 0) binom = binom * static_cast<double>(n - i + 1) / static_cast<double>(i);
                    shell.push_back(binom);
                    total += binom;
                }
                double pick = rng.unit() * total;
                for (std::size_t i = 0; i < shell.size(); ++i) {
                    if (pick < shell[i]) return i;
                    pick -= shell[i];
                }
                return shell.size() - 1;
            }();
            for (auto pos : rng.subset(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(dist))) {
                w.flip_bit(pos);
            }
            if (seen.insert(w).second) list.push_back(std::move(w));
        }
    }
    const auto kind = spread == 1 ? Codebook::Kind::deterministic : Codebook::Kind::stochastic;
    if (kind == Codebook::Kind::deterministic) {
        // spread == 1 degenerates to a deterministic code; centers may still
        // collide, so retry the whole draw until the words are distinct.
        std::set<BitWord> seen;
        bool distinct = true;
        for (const auto& list : words) distinct = distinct && seen.insert(list.front()).second;
        if (!distinct) return make_stochastic_cloud(n, num_messages, spread, radius, seed + 0x9e3779b9ULL);
    }
    return Codebook(n, kind, std::move(words));
}

}  // namespace causaljam
