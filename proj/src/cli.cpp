#include "causaljam/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "causaljam/bounds.hpp"
#include "causaljam/harness.hpp"
#include "causaljam/verify.hpp"

namespace causaljam {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

/// CSV goes to the named file, or to standard output for "-".
class Output {
public:
    explicit Output(const std::string& path) {
        if (path == "-") {
            os_ = &std::cout;
        } else {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open output file " + path);
            os_ = &file_;
        }
    }
    std::ostream& stream() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_ = nullptr;
};

struct AttackOptions {
    std::size_t n = 32;
    std::size_t messages = 0;
    double rate = -1.0;
    std::string code = "random";
    std::string code_file;
    std::size_t spread = 2;
    std::size_t cloud_radius = 1;
    std::uint64_t code_seed = 1;
    std::string strategy = "babble-push";
    double p = 0.1;
    std::string pbar = "auto";
    double epsilon = 0.05;
    double mimic_q = -1.0;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 1;
    std::size_t workers = 1;
    long long radius = -1;
    std::string out = "-";
    std::string transcripts;
};

void add_attack_options(CLI::App* cmd, AttackOptions& o) {
    cmd->add_option("--n", o.n, "block length");
    cmd->add_option("--messages", o.messages, "number of messages M");
    cmd->add_option("--rate", o.rate, "rate R; converted to M = ceil(2^(R n))");
    cmd->add_option("--code", o.code, "codebook kind: random, repetition, cloud, file")
        ->check(CLI::IsMember({"random", "repetition", "cloud", "file"}));
    cmd->add_option("--code-file", o.code_file, "codebook text file (for --code file)");
    cmd->add_option("--spread", o.spread, "codewords per message (cloud)");
    cmd->add_option("--cloud-radius", o.cloud_radius, "Hamming radius around cloud centers");
    cmd->add_option("--code-seed", o.code_seed, "seed for codebook construction");
    cmd->add_option("--strategy", o.strategy, "babble-push, bsc-mimic or passive");
    cmd->add_option("--p", o.p, "adversary flip budget fraction");
    cmd->add_option("--pbar", o.pbar, "babble fraction, or 'auto' for the bound minimizer");
    cmd->add_option("--epsilon", o.epsilon, "slack parameter");
    cmd->add_option("--mimic-q", o.mimic_q, "crossover for bsc-mimic (default p)");
    cmd->add_option("--trials", o.trials, "number of Monte Carlo trials");
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_option("--workers", o.workers, "parallel trial workers");
    cmd->add_option("--radius", o.radius, "decoder search radius (default: the flip budget)");
    cmd->add_option("--out", o.out, "output CSV path, '-' for stdout");
    cmd->add_option("--transcripts", o.transcripts, "optional per-trial transcript CSV path");
    cmd->set_config("--config", "", "plain key=value configuration file; flags win on conflict");
}

std::size_t messages_for(const AttackOptions& o) {
    if (o.rate >= 0.0) {
        const double m = std::ceil(std::exp2(o.rate * static_cast<double>(o.n)));
        if (!(m >= 1.0) || m > 9e15) throw ConfigError("config: rate yields an unusable message count");
        return static_cast<std::size_t>(m);
    }
    return o.messages > 0 ? o.messages : 16;
}

Codebook build_codebook(const AttackOptions& o) {
    if (o.code == "repetition") return make_repetition_code(o.n);
    if (o.code == "cloud") return make_stochastic_cloud(o.n, messages_for(o), o.spread, o.cloud_radius, o.code_seed);
    if (o.code == "file") {
        if (o.code_file.empty()) throw ConfigError("config: --code file requires --code-file");
        return Codebook::load_file(o.code_file);
    }
    return make_random_code(o.n, messages_for(o), o.code_seed);
}

AdversaryConfig adversary_config(const AttackOptions& o) {
    AdversaryConfig cfg;
    cfg.p = o.p;
    if (o.pbar == "auto") {
        cfg.pbar = o.p <= 0.25 ? optimal_pbar(o.p) : 0.0;
    } else {
        try {
            std::size_t pos = 0;
            cfg.pbar = std::stod(o.pbar, &pos);
            if (pos != o.pbar.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw ConfigError("config: --pbar expects a number or 'auto'");
        }
    }
    cfg.epsilon = o.epsilon;
    if (o.mimic_q >= 0.0) cfg.mimic_q = o.mimic_q;
    cfg.validate();
    return cfg;
}

void write_transcripts(const std::string& path, const std::vector<AttackTranscript>& transcripts) {
    Output out(path);
    out.stream() << "trial,u,r,u_prime,r_prime,ell,pool_size,budget_used,truncated,"
                    "e0,e2,e3,e4,suffix_disagreements,intended_weight,decoded,error,x,e,y\n";
    for (std::size_t i = 0; i < transcripts.size(); ++i) {
        const auto& t = transcripts[i];
        out.stream() << i << ',' << t.alice.u << ',' << t.alice.r << ',' << t.calvin.u << ','
                     << t.calvin.r << ',' << t.ell << ',' << t.b_size << ',' << t.budget_used << ','
                     << (t.truncated ? 1 : 0) << ',' << (t.events.e0 ? 1 : 0) << ','
                     << (t.events.e2 ? 1 : 0) << ',' << (t.events.e3 ? 1 : 0) << ','
                     << (t.events.e4 ? 1 : 0) << ',' << t.suffix_disagreements() << ','
                     << t.intended_weight() << ',' << t.decoded << ',' << (t.decode_error ? 1 : 0)
                     << ',' << t.x.to_string() << ',' << t.e.to_string() << ',' << t.y.to_string()
                     << '\n';
    }
}

TrialStats run_attack(const AttackOptions& o, const Codebook& cb, const AdversaryConfig& cfg) {
    MonteCarloOptions mc;
    mc.workers = o.workers;
    std::vector<AttackTranscript> transcripts;
    if (!o.transcripts.empty()) mc.transcript_sink = &transcripts;

    DecoderConfig dec;
    if (o.radius >= 0) dec.radius = static_cast<std::size_t>(o.radius);

    const TrialStats stats =
        monte_carlo(cb, parse_strategy(o.strategy), cfg, dec, o.trials, o.seed, mc);
    if (!o.transcripts.empty()) write_transcripts(o.transcripts, transcripts);
    return stats;
}

int cmd_bounds(double p_min, double p_max, double step, const std::string& out_path) {
    if (!(p_min >= 0.0 && p_min <= p_max && p_max <= 0.5)) {
        throw ConfigError("config: require 0 <= p-min <= p-max <= 0.5");
    }
    if (!(step > 0.0)) throw ConfigError("config: require step > 0");
    Output out(out_path);
    out.stream() << "p,pbar_star,alpha,c_upper,bsc,gv\n";
    const auto count = static_cast<std::size_t>(std::floor((p_max - p_min) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) {
        const double p = p_min + static_cast<double>(i) * step;
        const BoundPoint pt = bound_point(std::min(p, 0.5));
        out.stream() << fmt(pt.p) << ',' << fmt(pt.pbar_star) << ',' << fmt(pt.alpha_star) << ','
                     << fmt(pt.c_upper) << ',' << fmt(pt.bsc) << ',' << fmt(pt.gv) << '\n';
    }
    return 0;
}

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> values;
    if (spec.find(':') != std::string::npos) {
        double start = 0;
        double step = 0;
        double stop = 0;
        char c1 = 0;
        char c2 = 0;
        std::istringstream in(spec);
        if (!(in >> start >> c1 >> step >> c2 >> stop) || c1 != ':' || c2 != ':' || step <= 0.0 ||
            stop < start) {
            throw ConfigError("config: grid expects start:step:stop or comma-separated values");
        }
        const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        for (std::size_t i = 0; i < count; ++i) values.push_back(start + static_cast<double>(i) * step);
    } else {
        std::istringstream in(spec);
        std::string item;
        while (std::getline(in, item, ',')) {
            if (!item.empty()) values.push_back(std::stod(item));
        }
    }
    if (values.empty()) throw ConfigError("config: empty grid");
    return values;
}

int cmd_sweep(const AttackOptions& base, const std::string& vary, const std::string& grid_spec) {
    const auto grid = parse_grid(grid_spec);
    Output out(base.out);
    out.stream() << vary << ',' << trial_stats_csv_header() << '\n';
    for (const double value : grid) {
        AttackOptions o = base;
        o.out = "-";
        if (vary == "p") {
            o.p = value;
        } else if (vary == "rate") {
            o.rate = value;
        } else {
            throw ConfigError("config: --vary must be p or rate");
        }
        const Codebook cb = build_codebook(o);
        const AdversaryConfig cfg = adversary_config(o);
        const TrialStats stats = run_attack(o, cb, cfg);
        out.stream() << fmt(value) << ',' << trial_stats_csv_row(stats) << '\n';
    }
    return 0;
}

int cmd_verify(const std::string& suite, const std::string& out_path) {
    const auto results = run_verify_suite(suite);
    std::unique_ptr<Output> csv;
    if (!out_path.empty()) {
        csv = std::make_unique<Output>(out_path);
        csv->stream() << "suite,property,pass,detail\n";
    }
    bool all_pass = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.suite << '/' << r.name << ": " << r.detail
                  << '\n';
        if (csv) {
            std::string detail = r.detail;
            for (auto& ch : detail) {
                if (ch == ',') ch = ';';
            }
            csv->stream() << r.suite << ',' << r.name << ',' << (r.pass ? 1 : 0) << ',' << detail << '\n';
        }
        all_pass = all_pass && r.pass;
    }
    std::cout << (all_pass ? "all properties passed" : "some properties FAILED") << '\n';
    return all_pass ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Causal jamming simulator and capacity bound calculator"};
    app.require_subcommand(1);

    // bounds
    double p_min = 0.0;
    double p_max = 0.5;
    double step = 0.005;
    std::string bounds_out = "-";
    auto* bounds_cmd = app.add_subcommand("bounds", "emit the bound-comparison curve as CSV");
    bounds_cmd->add_option("--p-min", p_min, "lowest flip fraction");
    bounds_cmd->add_option("--p-max", p_max, "highest flip fraction");
    bounds_cmd->add_option("--step", step, "grid step");
    bounds_cmd->add_option("--out", bounds_out, "output CSV path, '-' for stdout");

    // attack
    AttackOptions attack;
    auto* attack_cmd = app.add_subcommand("attack", "run a jamming campaign and emit summary CSV");
    add_attack_options(attack_cmd, attack);

    // sweep
    AttackOptions sweep = attack;
    std::string vary = "p";
    std::string grid_spec;
    auto* sweep_cmd = app.add_subcommand("sweep", "run attack campaigns over a parameter grid");
    add_attack_options(sweep_cmd, sweep);
    sweep_cmd->add_option("--vary", vary, "varied parameter: p or rate")
        ->check(CLI::IsMember({"p", "rate"}));
    sweep_cmd->add_option("--grid", grid_spec, "start:step:stop or comma-separated values")->required();

    // verify
    std::string suite = "all";
    std::string verify_out;
    auto* verify_cmd = app.add_subcommand("verify", "run the oracle suites and report pass/fail");
    verify_cmd->add_option("--suite", suite, "bounds, plotkin, lemma1, symmetry or all")
        ->check(CLI::IsMember({"bounds", "plotkin", "lemma1", "symmetry", "all"}));
    verify_cmd->add_option("--out", verify_out, "optional machine-readable CSV path");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (bounds_cmd->parsed()) return cmd_bounds(p_min, p_max, step, bounds_out);
        if (attack_cmd->parsed()) {
            const Codebook cb = build_codebook(attack);
            const AdversaryConfig cfg = adversary_config(attack);
            const TrialStats stats = run_attack(attack, cb, cfg);
            Output out(attack.out);
            out.stream() << trial_stats_csv_header() << '\n' << trial_stats_csv_row(stats) << '\n';
            return 0;
        }
        if (sweep_cmd->parsed()) return cmd_sweep(sweep, vary, grid_spec);
        if (verify_cmd->parsed()) return cmd_verify(suite, verify_out);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

}  // namespace causaljam
