#include "causaljam/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace causaljam {

namespace {

// A hair of slack for arguments computed through floating point.
constexpr double kDomainSlack = 1e-12;

void check_unit_interval(double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::domain_error(std::string(name) + " must lie in [0, 1]");
    }
}

void check_pbar_p(double p, double pbar) {
    if (!(pbar >= -kDomainSlack && pbar <= p + kDomainSlack && p <= 0.25 + kDomainSlack)) {
        throw std::domain_error("require 0 <= pbar <= p <= 1/4");
    }
}

}  // namespace

double binary_entropy(double x) {
    check_unit_interval(x, "entropy argument");
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double distribution_entropy(const std::vector<double>& probs) {
    double h = 0.0;
    for (double q : probs) {
        if (q < 0.0) throw std::domain_error("distribution entries must be nonnegative");
        if (q > 0.0) h -= q * std::log2(q);
    }
    return h;
}

double alpha(double p, double pbar) {
    check_pbar_p(p, pbar);
    return 1.0 - 4.0 * (p - pbar);
}

double bound_at(double p, double pbar) {
    const double a = alpha(p, pbar);
    if (a <= 0.0) return 0.0;  // only reachable at the p = 1/4, pbar = 0 corner
    const double ratio = std::min(1.0, pbar / a);
    return a * (1.0 - binary_entropy(ratio));
}

double objective_derivative(double p, double x) {
    if (!(x >= 0.0 && x <= p && p < 0.25)) {
        throw std::domain_error("objective_derivative: require 0 <= x <= p < 1/4");
    }
    if (x == 0.0) return -std::numeric_limits<double>::infinity();
    const double b = 1.0 - 4.0 * p;
    return 4.0 + std::log2(x * std::pow(b + 3.0 * x, 3) / std::pow(b + 4.0 * x, 4));
}

double a0_constant() {
    const double s = 24.0 * std::sqrt(33.0);
    return (11.0 + std::cbrt(1592.0 + s) + std::cbrt(1592.0 - s)) / 3.0;
}

double optimal_pbar(double p) {
    if (!(p >= 0.0 && p <= 0.25 + kDomainSlack)) {
        throw std::domain_error("optimal_pbar: require 0 <= p <= 1/4");
    }
    return std::min(p, (1.0 - 4.0 * p) / (a0_constant() - 3.0));
}

double capacity_upper(double p) {
    if (!(p >= 0.0 && p <= 0.5 + kDomainSlack)) {
        throw std::domain_error("capacity_upper: require 0 <= p <= 1/2");
    }
    if (p > 0.25) return 0.0;
    return bound_at(p, optimal_pbar(p));
}

std::uint64_t plotkin_max(std::uint64_t n, std::uint64_t d) {
    if (2 * d <= n) {
        throw std::domain_error("plotkin_max: requires minimum distance d > n/2");
    }
    return (2 * d) / (2 * d - n);
}

namespace {

// Depth-first max-clique over candidate words, all pairwise distances >= d.
// `chosen_plus_zero` counts the implicit all-zeros codeword.
void extend_code(const std::vector<std::uint32_t>& candidates, std::uint64_t n,
                 std::uint64_t d, std::size_t chosen_plus_zero, std::uint64_t& best) {
    best = std::max<std::uint64_t>(best, chosen_plus_zero);
    if (chosen_plus_zero + candidates.size() <= best) return;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const std::uint32_t w = candidates[i];
        std::vector<std::uint32_t> next;
        next.reserve(candidates.size() - i);
        for (std::size_t j = i + 1; j < candidates.size(); ++j) {
            if (static_cast<std::uint64_t>(std::popcount(w ^ candidates[j])) >= d) {
                next.push_back(candidates[j]);
            }
        }
        extend_code(next, n, d, chosen_plus_zero + 1, best);
        if (chosen_plus_zero + 1 + (candidates.size() - i - 1) <= best) break;
    }
}

}  // namespace

std::uint64_t brute_force_max_code(std::uint64_t n, std::uint64_t d) {
    if (n > 12) throw std::domain_error("brute_force_max_code: n > 12 is infeasible");
    if (n == 0 || d == 0 || d > n) throw std::domain_error("brute_force_max_code: require 1 <= d <= n");
    // Translating a code by one of its words preserves all distances, so the
    // maximum is attained by a code containing the all-zeros word; every
    // other word then has weight >= d.
    std::vector<std::uint32_t> candidates;
    for (std::uint32_t w = 1; w < (1u << n); ++w) {
        if (static_cast<std::uint64_t>(std::popcount(w)) >= d) candidates.push_back(w);
    }
    std::uint64_t best = 1;
    extend_code(candidates, n, d, 1, best);
    return best;
}

BoundPoint bound_point(double p) {
    BoundPoint pt;
    pt.p = p;
    pt.bsc = 1.0 - binary_entropy(p);
    pt.gv = std::max(0.0, 1.0 - binary_entropy(std::min(1.0, 2.0 * p)));
    if (p > 0.25) {
        pt.pbar_star = 0.0;
        pt.alpha_star = 0.0;
        pt.c_upper = 0.0;
    } else {
        pt.pbar_star = optimal_pbar(p);
        pt.alpha_star = std::max(0.0, alpha(p, pt.pbar_star));
        pt.c_upper = capacity_upper(p);
    }
    return pt;
}

std::vector<BoundPoint> bound_curve(const std::vector<double>& p_grid) {
    std::vector<BoundPoint> out;
    out.reserve(p_grid.size());
    for (double p : p_grid) out.push_back(bound_point(p));
    return out;
}

}  // namespace causaljam
