#include "causaljam/transcript.hpp"

#include <stdexcept>
#include <string>

namespace causaljam {

void check_transcript(const AttackTranscript& t, std::size_t budget, std::size_t babble_flips) {
    if (t.x.size() != t.e.size() || t.x.size() != t.y.size()) {
        throw std::logic_error("transcript: x, e, y lengths differ");
    }
    if (!((t.x ^ t.e) == t.y)) throw std::logic_error("transcript: y != x ^ e");
    if (t.e.weight() != t.budget_used) throw std::logic_error("transcript: budget_used != weight(e)");
    if (t.budget_used > budget) {
        throw std::logic_error("transcript: budget violated (" + std::to_string(t.budget_used) + " > " +
                               std::to_string(budget) + ")");
    }
    if (t.has_push) {
        if (t.gamma.size() != babble_flips) {
            throw std::logic_error("transcript: babble flip count != configured babble_flips");
        }
        for (auto g : t.gamma) {
            if (g >= t.ell) throw std::logic_error("transcript: babble flip outside phase 1");
        }
        if (t.intended.size() != t.push_positions.size()) {
            throw std::logic_error("transcript: intended error length != disagreement count");
        }
    }
}

}  // namespace causaljam
