#pragma once

#include <string>
#include <vector>

#include "causaljam/adversary.hpp"
#include "causaljam/codebook.hpp"

namespace causaljam {

struct PropertyResult {
    std::string suite;
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Grid-search oracle for the closed-form minimizer: min over pbar in
/// [0, p] on a uniform grid of the given step, endpoint included.
double grid_min_bound(double p, double step);

/// Closed form vs. grid search, root/cubic identities, derivative signs,
/// curve dominance and the departure threshold.
std::vector<PropertyResult> verify_bounds();

/// Pairing-bound formula against the exhaustive maximum-code-size search.
std::vector<PropertyResult> verify_plotkin();

/// Distinct-draw lower bound against exact enumeration on random
/// distributions.
std::vector<PropertyResult> verify_lemma1();

/// Exhaustive conditional-symmetry checks on tiny built-in instances.
std::vector<PropertyResult> verify_symmetry();

/// Runs one of {bounds, plotkin, lemma1, symmetry, all}.
std::vector<PropertyResult> run_verify_suite(const std::string& suite);

/// Built-in tiny instances used by the symmetry suite and shipped as
/// fixture files for the test suite.
struct SymmetryFixture {
    Codebook codebook;
    AdversaryConfig config;
};
SymmetryFixture symmetry_fixture_deterministic();  // n = 6, two codewords
SymmetryFixture symmetry_fixture_stochastic();     // n = 8, two messages x two codewords

/// Two-message code whose codewords agree on [0, ell) and differ in exactly
/// d suffix positions; the standard crafted instance for forced
/// symmetrization.
Codebook make_two_word_suffix_code(std::size_t n, std::size_t ell, std::size_t d);

}  // namespace causaljam
