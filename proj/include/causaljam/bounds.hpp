#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace causaljam {

/// One point of the bound-comparison curve.
struct BoundPoint {
    double p = 0;          ///< adversary flip fraction
    double pbar_star = 0;  ///< minimizing babble fraction
    double alpha_star = 0; ///< alpha(p, pbar_star), clamped to 0 above p = 1/4
    double c_upper = 0;    ///< capacity upper bound, bits/use
    double bsc = 0;        ///< 1 - H(p)
    double gv = 0;         ///< max(0, 1 - H(2p))
};

/// Binary entropy in bits; H(0) = H(1) = 0 by continuity. Domain [0, 1].
double binary_entropy(double x);

/// Entropy in bits of an explicit finite distribution (entries must be
/// nonnegative; zero entries contribute nothing).
double distribution_entropy(const std::vector<double>& probs);

/// alpha(p, pbar) = 1 - 4(p - pbar). Domain 0 <= pbar <= p <= 1/4.
double alpha(double p, double pbar);

/// Inner objective alpha * (1 - H(pbar / alpha)); 0 at alpha = 0 by
/// continuity. Domain 0 <= pbar <= p <= 1/4.
double bound_at(double p, double pbar);

/// Derivative of the objective in pbar: 4 + log2(x(1-4p+3x)^3 / (1-4p+4x)^4).
/// Returns -infinity at x = 0. Domain 0 <= x <= p < 1/4.
double objective_derivative(double p, double x);

/// Real root of a^3 - 11a^2 - 5a - 1, about 11.4445; governs the
/// closed-form minimizer.
double a0_constant();

/// Minimizing babble fraction: min{p, (1-4p)/(a0-3)}. Domain [0, 1/4].
double optimal_pbar(double p);

/// The capacity upper bound: the minimized objective for p <= 1/4, zero
/// beyond. Domain [0, 1/2].
double capacity_upper(double p);

/// Largest codebook size permitted by the pairing bound for minimum
/// distance d > n/2: floor(2d / (2d - n)). Throws if d <= n/2.
std::uint64_t plotkin_max(std::uint64_t n, std::uint64_t d);

/// Exact maximum size of a binary code of length n and minimum distance
/// >= d, by exhaustive search. Refuses n > 12.
std::uint64_t brute_force_max_code(std::uint64_t n, std::uint64_t d);

/// Evaluate the bound plus comparison curves on a grid of p values in
/// [0, 1/2].
std::vector<BoundPoint> bound_curve(const std::vector<double>& p_grid);

BoundPoint bound_point(double p);

}  // namespace causaljam
