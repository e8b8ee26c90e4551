#pragma once

#include <cstdint>
#include <vector>

#include "causaljam/bitword.hpp"

namespace causaljam {

/// Message index plus encoder-randomness index, both 1-based (0 marks
/// "unset"). Valid ranges are owned by the codebook the pair refers to.
struct MessagePair {
    std::uint32_t u = 0;
    std::uint32_t r = 0;

    bool valid() const { return u >= 1 && r >= 1; }
    bool operator==(const MessagePair&) const = default;
};

/// Analysis events evaluated on each attack trial.
///   e0: posterior message entropy given the phase-1 output is at least n*eps/4
///   e2: the pushed-toward message differs from the transmitted one
///   e3: the two codeword suffixes are within the push-distance threshold
///   e4: the intended flip weight falls in the window around half the
///       suffix disagreement count
struct EventFlags {
    bool e0 = false;
    bool e2 = false;
    bool e3 = false;
    bool e4 = false;

    bool e234() const { return e2 && e3 && e4; }
};

/// Full record of one simulated transmission.
///
/// Positions are 0-based throughout. For strategies without a babble/push
/// structure, `has_push` is false and ell/gamma/calvin/intended are unset.
struct AttackTranscript {
    BitWord x;  ///< transmitted codeword
    BitWord e;  ///< error vector actually applied
    BitWord y;  ///< channel output, x ^ e

    MessagePair alice;  ///< transmitted (u, r)

    bool has_push = false;
    std::size_t ell = 0;                         ///< phase-1 length
    std::vector<std::uint32_t> gamma;            ///< babble flip positions, sorted, subset of [0, ell)
    MessagePair calvin;                          ///< selected push target (u', r')
    std::size_t b_size = 0;                      ///< size of the candidate pool the target was drawn from
    std::vector<std::uint32_t> push_positions;   ///< suffix positions where x and x' disagree
    std::vector<std::uint8_t> intended;          ///< intended flip per push position (the full coin record)
    bool truncated = false;                      ///< an intended flip was suppressed by the budget cap

    std::size_t budget_used = 0;
    EventFlags events;

    std::uint32_t decoded = 0;  ///< decoder's message output (1-based)
    bool decode_error = false;

    std::size_t suffix_disagreements() const { return push_positions.size(); }

    std::size_t intended_weight() const {
        std::size_t w = 0;
        for (auto b : intended) w += b;
        return w;
    }
};

/// Structural validity: y = x ^ e, the budget cap was respected, and (for
/// babble/push strategies) gamma has exactly the configured size inside
/// [0, ell). Throws std::logic_error on violation; called on every trial.
void check_transcript(const AttackTranscript& t, std::size_t budget, std::size_t babble_flips);

}  // namespace causaljam
