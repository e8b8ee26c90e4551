#include "causaljam/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "causaljam/bounds.hpp"
#include "causaljam/decoder.hpp"
#include "causaljam/harness.hpp"
#include "causaljam/rng.hpp"

namespace causaljam {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

PropertyResult result(const std::string& suite, const std::string& name, bool pass,
                      const std::string& detail) {
    return {suite, name, pass, detail};
}

}  // namespace

double grid_min_bound(double p, double step) {
    double best = bound_at(p, p);  // pbar = p endpoint
    const auto steps = static_cast<std::size_t>(std::floor(p / step));
    for (std::size_t k = 0; k <= steps; ++k) {
        best = std::min(best, bound_at(p, static_cast<double>(k) * step));
    }
    return best;
}

std::vector<PropertyResult> verify_bounds() {
    const char* suite = "bounds";
    std::vector<PropertyResult> out;
    const double a0 = a0_constant();

    out.push_back(result(suite, "a0_value", std::abs(a0 - 11.4445) <= 1e-4, "a0 = " + fmt(a0)));

    const double cubic = a0 * a0 * a0 - 11.0 * a0 * a0 - 5.0 * a0 - 1.0;
    out.push_back(result(suite, "a0_cubic_root", std::abs(cubic) <= 1e-9, "residual = " + fmt(cubic)));

    {
        // Closed form against the grid oracle, 200 uniformly spaced p.
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const double p = 0.25 * static_cast<double>(i) / 199.0;
            worst = std::max(worst, std::abs(capacity_upper(p) - grid_min_bound(p, 1e-6)));
        }
        out.push_back(result(suite, "closed_form_vs_grid", worst <= 1e-6, "max |closed - grid| = " + fmt(worst)));
    }

    {
        // Grid agreement for the minimizer itself.
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const double p = 0.25 * static_cast<double>(i) / 199.0;
            const double step = 1e-6;
            double best_val = bound_at(p, p);
            double best_pbar = p;
            const auto steps = static_cast<std::size_t>(std::floor(p / step));
            for (std::size_t k = 0; k <= steps; ++k) {
                const double pbar = static_cast<double>(k) * step;
                const double v = bound_at(p, pbar);
                if (v < best_val) {
                    best_val = v;
                    best_pbar = pbar;
                }
            }
            worst = std::max(worst, std::abs(optimal_pbar(p) - best_pbar));
        }
        out.push_back(result(suite, "optimal_pbar_vs_grid", worst <= 1e-5, "max |closed - grid| = " + fmt(worst)));
    }

    {
        const double boundary = 1.0 / (a0 + 1.0);
        double worst = 0.0;
        for (int i = 1; i <= 100; ++i) {
            const double p = boundary + (0.25 - boundary) * static_cast<double>(i) / 101.0;
            const double pbar = optimal_pbar(p);
            const double ratio = pbar / alpha(p, pbar);
            worst = std::max(worst, std::abs(ratio - boundary));
        }
        out.push_back(result(suite, "interior_ratio", worst <= 1e-9, "max |ratio - 1/(a0+1)| = " + fmt(worst)));
    }

    {
        // The objective decreases up to the interior root and increases after.
        bool ok = true;
        std::string detail = "signs correct at all samples";
        for (int pi = 1; pi <= 24 && ok; ++pi) {
            const double p = 0.01 * static_cast<double>(pi);
            const double root = (1.0 - 4.0 * p) / (a0 - 3.0);
            const double below_end = std::min(root, p);
            for (int k = 1; k <= 1000 && ok; ++k) {
                const double x = below_end * static_cast<double>(k) / 1001.0;
                if (x <= 0.0) continue;
                if (!(objective_derivative(p, x) < 0.0)) {
                    ok = false;
                    detail = "nonnegative derivative below root at p=" + fmt(p) + " x=" + fmt(x);
                }
            }
            if (root < p) {
                for (int k = 1; k <= 100 && ok; ++k) {
                    const double x = std::min(p, root + (p - root) * static_cast<double>(k) / 100.0);
                    if (!(objective_derivative(p, x) > 0.0)) {
                        ok = false;
                        detail = "nonpositive derivative above root at p=" + fmt(p) + " x=" + fmt(x);
                    }
                }
                const double at_root = objective_derivative(p, root);
                if (std::abs(at_root) > 1e-9) {
                    ok = false;
                    detail = "derivative at closed-form root = " + fmt(at_root);
                }
            }
        }
        out.push_back(result(suite, "derivative_signs", ok, detail));
    }

    {
        // Largest p with c_upper equal to the memoryless-channel curve
        // within 1e-9, located by bisection.
        double lo = 0.0;
        double hi = 0.25;
        auto equal_here = [](double p) { return (1.0 - binary_entropy(p)) - capacity_upper(p) <= 1e-9; };
        for (int it = 0; it < 80; ++it) {
            const double mid = (lo + hi) / 2.0;
            if (equal_here(mid)) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        const bool pass = lo >= 0.0800 && lo <= 0.0807;
        out.push_back(result(suite, "departure_threshold", pass, "threshold = " + fmt(lo)));
    }

    {
        bool ok = true;
        double worst = 0.0;
        for (int i = 0; i <= 200; ++i) {
            const double p = 0.5 * static_cast<double>(i) / 200.0;
            const double excess = capacity_upper(p) - (1.0 - binary_entropy(p));
            worst = std::max(worst, excess);
            ok = ok && excess <= 1e-12;
        }
        out.push_back(result(suite, "never_above_bsc", ok, "max excess = " + fmt(worst)));
    }

    {
        bool ok = true;
        double worst = 0.0;
        for (int i = 0; i <= 200; ++i) {
            const double p = 0.25 * static_cast<double>(i) / 200.0;
            const double gv = std::max(0.0, 1.0 - binary_entropy(2.0 * p));
            const double deficit = gv - capacity_upper(p);
            worst = std::max(worst, deficit);
            ok = ok && deficit <= 1e-9;
        }
        out.push_back(result(suite, "never_below_gv", ok, "max deficit = " + fmt(worst)));
    }

    {
        // Below the regime boundary the minimizer is pbar = p and the bound
        // must evaluate to exactly 1 - H(p) through the same path.
        bool ok = true;
        const double boundary = 1.0 / (a0 + 1.0);
        for (int i = 0; i <= 100; ++i) {
            const double p = boundary * static_cast<double>(i) / 100.0;
            if (capacity_upper(p) != 1.0 - binary_entropy(p)) ok = false;
        }
        out.push_back(result(suite, "bsc_regime_exact", ok, "pbar = p regime matches 1 - H(p) bitwise"));
    }

    {
        bool ok = true;
        double prev = 2.0;
        for (int i = 0; i <= 200; ++i) {
            const double p = 0.5 * static_cast<double>(i) / 200.0;
            const double c = capacity_upper(p);
            if (c > prev + 1e-12) ok = false;
            prev = c;
        }
        out.push_back(result(suite, "curve_monotone", ok, "c_upper nonincreasing on [0, 1/2]"));
    }

    return out;
}

std::vector<PropertyResult> verify_plotkin() {
    const char* suite = "plotkin";
    std::vector<PropertyResult> out;

    {
        const bool ok = plotkin_max(2, 2) == 2 && plotkin_max(4, 3) == 3 && plotkin_max(5, 4) == 2;
        out.push_back(result(suite, "formula_examples", ok, "(2,2)->2 (4,3)->3 (5,4)->2"));
    }

    {
        bool ok = true;
        bool equality_seen = false;
        std::string detail;
        for (std::uint64_t n = 2; n <= 10 && ok; ++n) {
            for (std::uint64_t d = n / 2 + 1; d <= n && ok; ++d) {
                const std::uint64_t cap = plotkin_max(n, d);
                const std::uint64_t exact = brute_force_max_code(n, d);
                if (cap < exact) {
                    ok = false;
                    detail = "violated at n=" + std::to_string(n) + " d=" + std::to_string(d);
                }
                if (cap == exact) equality_seen = true;
            }
        }
        if (ok) {
            detail = equality_seen ? "bound dominates exhaustive search; tight somewhere"
                                   : "bound dominates but never tight";
            ok = equality_seen;
        }
        out.push_back(result(suite, "dominates_exhaustive", ok, detail));
    }

    {
        const bool ok = brute_force_max_code(2, 2) == 2 && plotkin_max(2, 2) == 2;
        out.push_back(result(suite, "tight_at_2_2", ok, "A(2,2) = 2 meets the formula"));
    }

    {
        bool threw = false;
        try {
            plotkin_max(6, 3);
        } catch (const std::domain_error&) {
            threw = true;
        }
        out.push_back(result(suite, "inapplicable_signalled", threw, "d <= n/2 rejected"));
    }

    {
        bool ok = brute_force_max_code(3, 3) == 2 && brute_force_max_code(4, 3) == 2;
        for (std::uint64_t n = 1; n <= 6; ++n) {
            ok = ok && brute_force_max_code(n, 1) == (1ULL << n);
        }
        out.push_back(result(suite, "exhaustive_examples", ok, "A(3,3)=2 A(4,3)=2 A(n,1)=2^n"));
    }

    return out;
}

std::vector<PropertyResult> verify_lemma1() {
    const char* suite = "lemma1";
    std::vector<PropertyResult> out;

    {
        const double two = distinct_draw_probability({0.5, 0.5}, 2);
        const double four = distinct_draw_probability({0.25, 0.25, 0.25, 0.25}, 2);
        const bool ok = std::abs(two - 0.5) <= 1e-12 && std::abs(four - 0.75) <= 1e-12;
        out.push_back(result(suite, "exact_examples", ok, "uniform2 m=2 -> 0.5, uniform4 m=2 -> 0.75"));
    }

    {
        const bool ok = sampling_lemma_bound(4.0, 1, 4.0) == 1.0 &&
                        std::abs(sampling_lemma_bound(4.0, 2, 4.0) - 0.5) <= 1e-12;
        out.push_back(result(suite, "bound_examples", ok, "m=1 -> 1, (4,2,4) -> 0.5"));
    }

    {
        // 100 random distributions on supports up to 16, m in {2, 3}; the
        // exact all-distinct probability must dominate the entropy bound for
        // the ambient support size 16.
        Rng rng(20260810);
        bool ok = true;
        double worst_margin = 1.0;
        std::string detail;
        for (int trial = 0; trial < 100 && ok; ++trial) {
            const auto support = static_cast<std::size_t>(2 + rng.below(15));  // 2..16
            std::vector<double> probs(support);
            double total = 0.0;
            for (auto& q : probs) {
                q = rng.unit() + 1e-6;
                total += q;
            }
            for (auto& q : probs) q /= total;
            const std::size_t m = 2 + static_cast<std::size_t>(rng.below(2));  // 2..3
            const double exact = distinct_draw_probability(probs, m);
            const double bound = sampling_lemma_bound(distribution_entropy(probs), m, 4.0);
            worst_margin = std::min(worst_margin, exact - bound);
            if (exact + 1e-12 < bound) {
                ok = false;
                detail = "bound exceeded exact value: exact=" + fmt(exact) + " bound=" + fmt(bound);
            }
        }
        if (ok) detail = "min margin over 100 draws = " + fmt(worst_margin);
        out.push_back(result(suite, "bound_dominated_by_exact", ok, detail));
    }

    return out;
}

Codebook make_two_word_suffix_code(std::size_t n, std::size_t ell, std::size_t d) {
    if (ell + d > n) throw std::invalid_argument("make_two_word_suffix_code: ell + d exceeds n");
    BitWord second(n);
    for (std::size_t i = 0; i < d; ++i) second.set_bit(ell + i, true);
    std::vector<std::vector<BitWord>> words;
    words.push_back({BitWord::zeros(n)});
    words.push_back({second});
    return Codebook(n, Codebook::Kind::deterministic, std::move(words));
}

SymmetryFixture symmetry_fixture_deterministic() {
    std::vector<std::vector<BitWord>> words;
    words.push_back({BitWord::from_string("000000")});
    words.push_back({BitWord::from_string("110011")});
    Codebook cb(6, Codebook::Kind::deterministic, std::move(words));
    AdversaryConfig cfg;
    cfg.p = 0.35;
    cfg.pbar = 0.17;
    cfg.epsilon = 0.05;
    return {std::move(cb), cfg};
}

SymmetryFixture symmetry_fixture_stochastic() {
    std::vector<std::vector<BitWord>> words;
    words.push_back({BitWord::from_string("00000000"), BitWord::from_string("00000011")});
    words.push_back({BitWord::from_string("00000101"), BitWord::from_string("00000110")});
    Codebook cb(8, Codebook::Kind::stochastic, std::move(words));
    AdversaryConfig cfg;
    cfg.p = 0.3;
    cfg.pbar = 0.15;
    cfg.epsilon = 0.05;
    return {std::move(cb), cfg};
}

std::vector<PropertyResult> verify_symmetry() {
    const char* suite = "symmetry";
    std::vector<PropertyResult> out;

    {
        const auto fixture = symmetry_fixture_deterministic();
        const auto report = exact_symmetry_check(fixture.codebook, fixture.config);
        const bool ok = report.ok && report.tuples_checked > 0;
        out.push_back(result(suite, "deterministic_fixture", ok,
                             ok ? "tuples=" + std::to_string(report.tuples_checked) +
                                      " outputs=" + std::to_string(report.outputs_checked)
                                : report.violation));
    }

    {
        const auto fixture = symmetry_fixture_stochastic();
        const auto report = exact_symmetry_check(fixture.codebook, fixture.config);
        const bool ok = report.ok && report.tuples_checked > 0;
        out.push_back(result(suite, "stochastic_fixture", ok,
                             ok ? "tuples=" + std::to_string(report.tuples_checked) +
                                      " outputs=" + std::to_string(report.outputs_checked)
                                : report.violation));
    }

    {
        // One message only: no distinct-message tuples, vacuously symmetric.
        std::vector<std::vector<BitWord>> words;
        words.push_back({BitWord::from_string("000000")});
        Codebook cb(6, Codebook::Kind::deterministic, std::move(words));
        AdversaryConfig cfg;
        cfg.p = 0.35;
        cfg.pbar = 0.17;
        cfg.epsilon = 0.05;
        const auto report = exact_symmetry_check(cb, cfg);
        const bool ok = report.ok && report.tuples_checked == 0;
        out.push_back(result(suite, "single_codeword_vacuous", ok, "no tuples in scope"));
    }

    {
        // With enough push budget for every coin pattern, symmetry holds for
        // every reachable output, not just the windowed ones.
        Codebook cb = make_two_word_suffix_code(6, 1, 2);
        AdversaryConfig cfg;
        cfg.p = 0.5;
        cfg.pbar = 1.0 / 6.0 + 1e-9;
        cfg.epsilon = 0.1;
        SymmetryOptions opt;
        opt.restrict_to_window = false;
        const auto report = exact_symmetry_check(cb, cfg, opt);
        const bool ok = report.ok && report.tuples_checked > 0 && report.outputs_checked > 0;
        out.push_back(result(suite, "full_support_symmetry", ok,
                             ok ? "outputs=" + std::to_string(report.outputs_checked) : report.violation));
    }

    return out;
}

std::vector<PropertyResult> run_verify_suite(const std::string& suite) {
    if (suite == "bounds") return verify_bounds();
    if (suite == "plotkin") return verify_plotkin();
    if (suite == "lemma1") return verify_lemma1();
    if (suite == "symmetry") return verify_symmetry();
    if (suite == "all") {
        std::vector<PropertyResult> out = verify_bounds();
        for (auto&& r : verify_plotkin()) out.push_back(std::move(r));
        for (auto&& r : verify_lemma1()) out.push_back(std::move(r));
        for (auto&& r : verify_symmetry()) out.push_back(std::move(r));
        return out;
    }
    throw std::invalid_argument("unknown verify suite '" + suite +
                                "' (expected bounds, plotkin, lemma1, symmetry or all)");
}

}  // namespace causaljam
