#include "causaljam/harness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "causaljam/decoder.hpp"
#include "causaljam/rng.hpp"

namespace causaljam {

namespace {

constexpr std::size_t kMaxExactPosteriorPairs = 1u << 16;

// Distinct seed streams per trial so the sender, the jammer and the decoder
// tie-break never share draws.
enum SeedStream : std::uint64_t { kAlice = 1, kAdversary = 2, kDecoder = 3, kGamma = 4 };

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

void TrialStats::merge(const TrialStats& other) {
    trials += other.trials;
    errors += other.errors;
    e0 += other.e0;
    e2 += other.e2;
    e3 += other.e3;
    e4 += other.e4;
    e234 += other.e234;
    errors_given_e234 += other.errors_given_e234;
    budget_exhausted += other.budget_exhausted;
    budget_used_sum += other.budget_used_sum;
    if (other.pool_trials > 0) {
        if (pool_trials == 0) {
            pool_min = other.pool_min;
            pool_max = other.pool_max;
        } else {
            pool_min = std::min(pool_min, other.pool_min);
            pool_max = std::max(pool_max, other.pool_max);
        }
    }
    pool_trials += other.pool_trials;
    pool_sum += other.pool_sum;
    gamma_qualifying += other.gamma_qualifying;
    gamma_pairs += other.gamma_pairs;
}

std::string trial_stats_csv_header() {
    return "trials,errors,error_rate,e0,e2,e3,e4,e234,errors_given_e234,error_rate_given_e234,"
           "budget_exhausted,mean_budget_used,gamma_estimate,pool_min,pool_mean,pool_max";
}

std::string trial_stats_csv_row(const TrialStats& s) {
    std::string row;
    row += std::to_string(s.trials);
    row += ',' + std::to_string(s.errors);
    row += ',' + format_number(s.error_rate());
    row += ',' + std::to_string(s.e0);
    row += ',' + std::to_string(s.e2);
    row += ',' + std::to_string(s.e3);
    row += ',' + std::to_string(s.e4);
    row += ',' + std::to_string(s.e234);
    row += ',' + std::to_string(s.errors_given_e234);
    row += ',' + format_number(s.error_rate_given_e234());
    row += ',' + std::to_string(s.budget_exhausted);
    row += ',' + format_number(s.mean_budget_used());
    row += ',' + format_number(s.gamma_estimate());
    row += ',' + std::to_string(s.pool_min);
    row += ',' + format_number(s.pool_mean());
    row += ',' + std::to_string(s.pool_max);
    return row;
}

EventFlags compute_events(const AttackTranscript& t, const Codebook& cb, const AdversaryConfig& cfg) {
    EventFlags flags;
    if (!t.has_push) return flags;
    const auto res = cfg.resolve(t.x.size());
    const double n = static_cast<double>(res.n);

    if (cb.num_pairs() <= kMaxExactPosteriorPairs) {
        const auto posterior = posterior_message_entropy(cb, prefix(t.y, t.ell), res.babble_flips);
        flags.e0 = !posterior.empty_pool && posterior.bits >= n * cfg.epsilon / 4.0;
    }

    flags.e2 = t.calvin.valid() && t.calvin.u != t.alice.u;

    const double d = static_cast<double>(t.suffix_disagreements());
    flags.e3 = d <= 2.0 * (cfg.p - cfg.pbar) * n - cfg.epsilon * n / 8.0;

    // Open window around half the disagreement count; at d == 0 the window
    // still contains the forced weight 0.
    const double w = static_cast<double>(t.intended_weight());
    const double half = d / 2.0;
    const double radius = cfg.epsilon * n / 16.0;
    flags.e4 = w > half - radius && w < half + radius;
    return flags;
}

AttackTranscript run_trial(const Codebook& cb, CausalAdversary& adv, const DecoderConfig& dec,
                           std::uint64_t trial_seed) {
    const AdversaryConfig& cfg = adv.config();
    const auto res = cfg.resolve(cb.block_length());

    Rng alice_rng(derive_seed(trial_seed, kAlice));
    const MessagePair alice = cb.pair_at(static_cast<std::size_t>(alice_rng.below(cb.num_pairs())));
    const BitWord& x = cb.encode(alice);

    adv.reset(cb, derive_seed(trial_seed, kAdversary));
    BitWord e(res.n);
    std::size_t flips = 0;
    for (std::size_t i = 0; i < res.n; ++i) {
        const int ei = adv.observe_and_decide(i, x.bit(i) ? 1 : 0);
        if (ei != 0) {
            e.set_bit(i, true);
            ++flips;
            if (flips > res.budget) throw std::logic_error("run_trial: adversary exceeded its budget");
        }
    }
    adv.finalize();

    AttackTranscript t = adv.trace();
    t.x = x;
    t.e = e;
    t.y = x ^ e;
    t.alice = alice;
    t.budget_used = flips;

    Rng decode_rng(derive_seed(trial_seed, kDecoder));
    const std::size_t radius = dec.radius.value_or(res.budget);
    t.decoded = min_distance_decode(cb, t.y, radius, decode_rng);
    t.decode_error = t.decoded != alice.u;

    t.events = compute_events(t, cb, cfg);
    check_transcript(t, res.budget, t.has_push ? res.babble_flips : t.gamma.size());
    return t;
}

namespace {

TrialStats stats_for_trial(const AttackTranscript& t, const Codebook& cb, const AdversaryConfig& cfg,
                           const MonteCarloOptions& opt) {
    TrialStats s;
    s.trials = 1;
    s.errors = t.decode_error ? 1 : 0;
    s.e0 = t.events.e0;
    s.e2 = t.events.e2;
    s.e3 = t.events.e3;
    s.e4 = t.events.e4;
    s.e234 = t.events.e234();
    s.errors_given_e234 = (t.events.e234() && t.decode_error) ? 1 : 0;
    s.budget_exhausted = t.truncated ? 1 : 0;
    s.budget_used_sum = t.budget_used;
    if (t.has_push) {
        s.pool_trials = 1;
        s.pool_min = s.pool_max = s.pool_sum = t.b_size;
        if (opt.with_gamma && t.b_size <= opt.gamma_pool_cap) {
            const auto g = gamma_counts(cb, prefix(t.y, t.ell), cfg, opt.gamma_pool_cap);
            s.gamma_qualifying = g.qualifying;
            s.gamma_pairs = g.total;
        }
    }
    return s;
}

}  // namespace

TrialStats monte_carlo(const Codebook& cb, StrategyKind kind, const AdversaryConfig& cfg,
                       const DecoderConfig& dec, std::uint64_t trials, std::uint64_t master_seed,
                       const MonteCarloOptions& opt) {
    if (trials < 1) throw std::invalid_argument("monte_carlo: trials must be positive");
    cfg.validate();

    std::vector<TrialStats> per_trial(trials);
    if (opt.transcript_sink) opt.transcript_sink->assign(trials, AttackTranscript{});

    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(opt.workers, trials));
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto run_range = [&](std::uint64_t lo, std::uint64_t hi) {
        try {
            auto adv = make_adversary(kind, cfg);
            for (std::uint64_t i = lo; i < hi; ++i) {
                AttackTranscript t = run_trial(cb, *adv, dec, derive_seed(master_seed, i));
                per_trial[i] = stats_for_trial(t, cb, cfg, opt);
                if (opt.transcript_sink) (*opt.transcript_sink)[i] = std::move(t);
            }
        } catch (...) {
            std::scoped_lock lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };

    if (workers == 1) {
        run_range(0, trials);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (trials + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::uint64_t lo = w * chunk;
            const std::uint64_t hi = std::min<std::uint64_t>(trials, lo + chunk);
            if (lo < hi) pool.emplace_back(run_range, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    TrialStats total;
    for (const auto& s : per_trial) total.merge(s);
    return total;
}

GammaCounts gamma_counts(const Codebook& cb, const BitWord& y1, const AdversaryConfig& cfg,
                         std::size_t pool_cap) {
    const auto res = cfg.resolve(cb.block_length());
    const auto pool = build_pool(cb, y1, res.babble_flips);
    if (pool.size() > pool_cap) throw std::invalid_argument("gamma: candidate pool too large");
    const double threshold =
        2.0 * (cfg.p - cfg.pbar) * static_cast<double>(res.n) - cfg.epsilon * static_cast<double>(res.n) / 8.0;

    std::vector<BitWord> suffixes;
    suffixes.reserve(pool.size());
    for (const auto& pair : pool) suffixes.push_back(split(cb.encode(pair), res.ell).second);

    GammaCounts g;
    g.total = static_cast<std::uint64_t>(pool.size()) * static_cast<std::uint64_t>(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
        for (std::size_t j = 0; j < pool.size(); ++j) {
            if (pool[i].u == pool[j].u) continue;
            if (static_cast<double>(hamming_distance(suffixes[i], suffixes[j])) < threshold) ++g.qualifying;
        }
    }
    return g;
}

double gamma_diagnostic(const Codebook& cb, const BitWord& y1, const AdversaryConfig& cfg,
                        std::size_t pool_cap) {
    const auto g = gamma_counts(cb, y1, cfg, pool_cap);
    return g.total ? static_cast<double>(g.qualifying) / static_cast<double>(g.total) : 0.0;
}

PoolSizeStats pool_size_diagnostic(const Codebook& cb, const AdversaryConfig& cfg,
                                   std::uint64_t trials, std::uint64_t seed) {
    if (cb.kind() != Codebook::Kind::deterministic) {
        throw std::invalid_argument("pool_size_diagnostic: requires a deterministic codebook");
    }
    const auto res = cfg.resolve(cb.block_length());
    const double large = std::exp2(cfg.epsilon * static_cast<double>(res.n) / 4.0) / 2.0;

    PoolSizeStats out;
    out.trials = trials;
    std::uint64_t sum = 0;
    std::uint64_t large_count = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        Rng rng(derive_seed(seed, i));
        const MessagePair pair = cb.pair_at(static_cast<std::size_t>(rng.below(cb.num_pairs())));
        BitWord y1 = prefix(cb.encode(pair), res.ell);
        for (auto g : rng.subset(static_cast<std::uint32_t>(res.ell),
                                 static_cast<std::uint32_t>(res.babble_flips))) {
            y1.flip_bit(g);
        }
        const std::size_t size = build_pool(cb, y1, res.babble_flips).size();
        if (i == 0) {
            out.min_size = out.max_size = size;
        } else {
            out.min_size = std::min(out.min_size, size);
            out.max_size = std::max(out.max_size, size);
        }
        sum += size;
        if (static_cast<double>(size) >= large) ++large_count;
    }
    if (trials > 0) {
        out.mean_size = static_cast<double>(sum) / static_cast<double>(trials);
        out.fraction_large = static_cast<double>(large_count) / static_cast<double>(trials);
    }
    return out;
}

namespace {

// All k-subsets of [0, l), visited in lexicographic order.
template <typename Fn>
void for_each_subset(std::size_t l, std::size_t k, Fn&& fn) {
    std::vector<std::uint32_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = static_cast<std::uint32_t>(i);
    while (true) {
        fn(pick);
        if (k == 0) return;
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == l - k + i - 1) --i;
        if (i == 0) return;
        ++pick[i - 1];
        for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
}

}  // namespace

SymmetryReport exact_symmetry_check(const Codebook& cb, const AdversaryConfig& cfg,
                                    const SymmetryOptions& opt) {
    const std::size_t n = cb.block_length();
    if (n > opt.max_block || cb.num_pairs() > opt.max_pairs) {
        throw std::invalid_argument("exact_symmetry_check: instance too large to enumerate");
    }
    const auto res = cfg.resolve(n);
    const std::size_t remaining = res.push_budget();
    const double nd = static_cast<double>(n);
    const double e3_threshold = 2.0 * (cfg.p - cfg.pbar) * nd - cfg.epsilon * nd / 8.0;
    const double window_radius = cfg.epsilon * nd / 16.0;

    // Phase-1 outputs reachable from some sender pair with some flip set.
    std::set<BitWord> reachable_y1;
    for (std::size_t f = 0; f < cb.num_pairs(); ++f) {
        const BitWord x1 = prefix(cb.encode(cb.pair_at(f)), res.ell);
        for_each_subset(res.ell, res.babble_flips, [&](const std::vector<std::uint32_t>& gamma) {
            BitWord y1 = x1;
            for (auto g : gamma) y1.flip_bit(g);
            reachable_y1.insert(y1);
        });
    }

    SymmetryReport report;
    report.y1_count = reachable_y1.size();

    for (const BitWord& y1 : reachable_y1) {
        const auto pool = build_pool(cb, y1, res.babble_flips);
        const auto posterior = posterior_message_entropy(cb, y1, res.babble_flips);
        const bool e0 = !posterior.empty_pool && posterior.bits >= nd * cfg.epsilon / 4.0;
        if (!e0) continue;

        for (std::size_t ia = 0; ia < pool.size(); ++ia) {
            for (std::size_t ib = 0; ib < pool.size(); ++ib) {
                if (ia == ib) continue;
                const MessagePair a = pool[ia];
                const MessagePair b = pool[ib];
                if (a.u == b.u) continue;  // distinct-message tuples only

                const BitWord xa2 = split(cb.encode(a), res.ell).second;
                const BitWord xb2 = split(cb.encode(b), res.ell).second;
                const std::size_t d = hamming_distance(xa2, xb2);
                if (static_cast<double>(d) > e3_threshold) continue;
                ++report.tuples_checked;

                const double half = static_cast<double>(d) / 2.0;
                for (std::uint64_t mask = 0; mask < (1ULL << d); ++mask) {
                    const auto wt = static_cast<std::size_t>(std::popcount(mask));
                    const double w = static_cast<double>(wt);
                    const bool in_window = w > half - window_radius && w < half + window_radius;
                    const bool forward_ok = wt <= remaining;
                    if (opt.restrict_to_window && !in_window) continue;
                    if (!forward_ok) continue;
                    ++report.outputs_checked;

                    // Intended coins are fair and independent, so both
                    // conditionals assign 2^-d to this output; equality
                    // reduces to the swapped side also emitting it in full.
                    const std::size_t reverse_wt = d - wt;
                    const bool reverse_ok = reverse_wt <= remaining;
                    const double rw = static_cast<double>(reverse_wt);
                    const bool reverse_in_window = rw > half - window_radius && rw < half + window_radius;
                    if (opt.restrict_to_window && in_window != reverse_in_window) {
                        report.ok = false;
                        report.violation = "window not symmetric under coin complement";
                        return report;
                    }
                    if (!reverse_ok) {
                        report.ok = false;
                        report.violation =
                            "output reachable from (" + std::to_string(a.u) + "," + std::to_string(a.r) +
                            ") but truncated from (" + std::to_string(b.u) + "," + std::to_string(b.r) + ")";
                        return report;
                    }
                }
            }
        }
    }
    return report;
}

}  // namespace causaljam
