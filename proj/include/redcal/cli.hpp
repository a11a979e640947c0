#pragma once

// In-process command-line frontend. Every subcommand writes line-oriented
// text followed by one JSON trailer line, and returns the process exit code.

#include "redcal/coding.hpp"
#include "redcal/error.hpp"
#include "redcal/gadgets.hpp"
#include "redcal/instances.hpp"
#include "redcal/lowdeg.hpp"
#include "redcal/measure.hpp"
#include "redcal/pipeline.hpp"
#include "redcal/rng.hpp"
#include "redcal/sat_clique.hpp"
#include "redcal/xor_sat.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace redcal::cli {

enum ExitCode : int { ok = 0, check_failed = 1, usage = 2, bad_input = 3 };

struct Constants {
    double c1 = 1.0;
    double c2 = 0.25;
    double c = 0.125;
    double eta = 0.125;
    double zeta = 0.0625;
    double alpha = 0.25;
    double theta = 0.5;
};

struct RunConfig {
    std::string subcommand;
    int n = 50;
    std::uint64_t m = 200;
    std::uint64_t trials = 50;
    std::uint64_t seed = 20250918;
    std::string input = "-";
    std::string output = "-";
    Constants constants;
};

namespace detail {

inline std::string read_input(const std::string& path, std::istream& in) {
    std::ostringstream buf;
    if (path == "-") {
        buf << in.rdbuf();
    } else {
        std::ifstream f(path);
        if (!f) throw Error("cannot open input '" + path + "'");
        buf << f.rdbuf();
    }
    return buf.str();
}

/// Writes `text` to the output path, or to the report stream for "-".
inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw Error("cannot open output '" + path + "'");
    f << text;
}

// Instance data on stdout stays parseable; its trailer goes to the error stream.
inline std::ostream& data_trailer_stream(const std::string& path, std::ostream& out, std::ostream& err) {
    return path == "-" ? err : out;
}

inline void trailer(std::ostream& out, const std::string& sub, bool pass, nlohmann::json extra = nlohmann::json::object()) {
    extra["subcommand"] = sub;
    extra["status"] = pass ? "ok" : "fail";
    out << extra.dump() << '\n';
}

inline std::string fmt(double v, int precision = 6) {
    std::ostringstream s;
    s << std::setprecision(precision) << v;
    return s.str();
}

/// Outcome of one named check; `failure` describes the first failing item.
struct CheckResult {
    bool pass = true;
    std::string failure;
};

inline CheckResult check_truth_tables() {
    for (bool b : {false, true}) {
        const auto table = block_truth_table(b);
        int allowed = 0;
        for (unsigned row = 0; row < 8; ++row) {
            const bool parity = (std::popcount(row) & 1) != 0;
            const bool allow = table[row] == BlockStatus::allow;
            allowed += allow ? 1 : 0;
            if (allow != (parity == b))
                return {false, "truth table: parity " + std::to_string(b) + " row " + std::to_string(row)};
        }
        if (allowed != 4) return {false, "count: parity " + std::to_string(b) + " allows " + std::to_string(allowed)};
    }
    return {};
}

inline CheckResult check_forward(int n, std::uint64_t m, std::uint64_t trials, std::uint64_t seed) {
    for (std::uint64_t j = 0; j < trials; ++j) {
        const auto plant = random_assignment(n, SplitMix64::derive(seed, 2 * j));
        const auto inst = random_xor_instance(n, m, SplitMix64::derive(seed, 2 * j + 1), plant);
        const auto f = translate(inst);
        const std::string tag = "forward trial " + std::to_string(j);
        if (f.clauses.size() != 4 * inst.constraints.size() || f.n != inst.n) return {false, tag + ": size law"};
        if (!satisfies(inst, plant)) return {false, tag + ": plant violates XOR instance"};
        if (!satisfies(f, plant)) return {false, tag + ": plant violates CNF"};
        if (invert(f) != inst) return {false, tag + ": inverse mismatch"};
    }
    return {};
}

/// x1^x2^x3 = 0, x3^x4^x5 = 0, x1^x5^x6 = 0, x2^x4^x6 = 1: every variable
/// occurs twice, so the left sides sum to 0 while the parities sum to 1.
inline XorInstance inconsistent_core() { return {6, {{1, 2, 3, false}, {3, 4, 5, false}, {1, 5, 6, false}, {2, 4, 6, true}}}; }

inline CheckResult check_reverse() {
    const auto core = inconsistent_core();
    if (solve_gf2(core)) return {false, "reverse: core is consistent over F2"};
    if (brute_force_sat(translate(core))) return {false, "reverse: CNF of inconsistent core is satisfiable"};
    return {};
}

inline Clause shuffled_literals(Clause c, SplitMix64& rng) {
    for (int i = 2; i > 0; --i) std::swap(c[static_cast<std::size_t>(i)], c[rng.below(static_cast<std::uint64_t>(i) + 1)]);
    return c;
}

/// Canonical-ID invariance under renaming, clause shuffling and literal
/// permutation, plus rejection of single-literal corruptions.
inline CheckResult check_blockid(std::uint64_t trials, std::uint64_t seed, std::size_t& corruptions_rejected) {
    constexpr int n = 12;
    corruptions_rejected = 0;
    for (std::uint64_t j = 0; j < trials; ++j) {
        SplitMix64 rng(SplitMix64::derive(seed, j));
        const auto t = unrank_triple(n, rng.below(choose3(n)));
        const bool b = rng.bit();
        const auto block = translate(XorInstance{n, {{t[0], t[1], t[2], b}}}).clauses;
        const std::string tag = "block trial " + std::to_string(j);

        std::vector<int> perm(n + 1);
        for (int v = 0; v <= n; ++v) perm[static_cast<std::size_t>(v)] = v;
        for (int v = n; v > 1; --v) std::swap(perm[static_cast<std::size_t>(v)], perm[1 + rng.below(static_cast<std::uint64_t>(v))]);
        auto rename = [&](Literal l) { return l < 0 ? -perm[static_cast<std::size_t>(-l)] : perm[static_cast<std::size_t>(l)]; };

        std::vector<Clause> moved;
        for (const auto& c : block) moved.push_back(shuffled_literals({rename(c[0]), rename(c[1]), rename(c[2])}, rng));
        for (std::size_t i = moved.size() - 1; i > 0; --i) std::swap(moved[i], moved[rng.below(i + 1)]);

        std::array<int, 3> expected{perm[static_cast<std::size_t>(t[0])], perm[static_cast<std::size_t>(t[1])],
                                    perm[static_cast<std::size_t>(t[2])]};
        std::sort(expected.begin(), expected.end());
        try {
            const auto id = canonical_block_id(moved);
            if (id.triple != expected || id.parity != b) return {false, tag + ": identifier changed under relabeling"};
            const auto base = canonical_block_id(block);
            if (base.canonical_list != id.canonical_list)
                return {false, tag + ": canonical list changed"};
        } catch (const NotInImageError&) {
            return {false, tag + ": relabeled block rejected"};
        }

        // One literal in one clause: flip its sign on even trials, replace its
        // variable by one outside the triple on odd trials.
        auto bad = moved;
        auto& clause = bad[rng.below(4)];
        auto& lit = clause[rng.below(3)];
        if (j % 2 == 0) {
            lit = -lit;
        } else {
            int v = 1;
            while (std::find(expected.begin(), expected.end(), v) != expected.end()) ++v;
            lit = lit < 0 ? -v : v;
        }
        try {
            (void)canonical_block_id(bad);
            return {false, tag + ": corrupted block accepted"};
        } catch (const NotInImageError&) {
            ++corruptions_rejected;
        }
    }
    return {};
}

} // namespace detail

/// Runs one subcommand. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"reduction calculus toolkit"};
    app.name("redcal");
    app.require_subcommand(1, 1);
    app.set_config("--config", "", "TOML/INI file with option values");
    RunConfig cfg;
    auto& k = cfg.constants;
    auto add_constants = [&](CLI::App* sub) {
        sub->add_option("--const.c1", k.c1, "amplification constant c1")->capture_default_str();
        sub->add_option("--const.c2", k.c2, "concrete degree constant c2")->capture_default_str();
        sub->add_option("--const.c", k.c, "degree scale c in k = floor(c log2 n)")->capture_default_str();
        sub->add_option("--const.eta", k.eta, "threshold exponent eta")->capture_default_str();
        sub->add_option("--const.zeta", k.zeta, "structure degree factor zeta")->capture_default_str();
        sub->add_option("--const.alpha", k.alpha, "bias floor alpha")->capture_default_str();
        sub->add_option("--const.theta", k.theta, "noise rate theta")->capture_default_str();
    };
    auto add_io = [&](CLI::App* sub) {
        sub->add_option("-i,--input", cfg.input, "input path, - for stdin")->capture_default_str();
        sub->add_option("-o,--output", cfg.output, "output path, - for stdout")->capture_default_str();
    };

    auto* translate_cmd = app.add_subcommand("translate", "XOR instance -> CNF");
    add_io(translate_cmd);
    auto* invert_cmd = app.add_subcommand("invert", "CNF image -> XOR instance");
    add_io(invert_cmd);
    auto* clique_cmd = app.add_subcommand("reduce-clique", "CNF -> literal-conflict graph");
    add_io(clique_cmd);

    auto* xorsat_cmd = app.add_subcommand("check-xorsat", "truth-table, forward and reverse checks");
    xorsat_cmd->add_option("--n", cfg.n, "number of variables")->capture_default_str();
    xorsat_cmd->add_option("--m", cfg.m, "number of XOR constraints")->capture_default_str();
    xorsat_cmd->add_option("--trials", cfg.trials, "planted trials")->capture_default_str();
    xorsat_cmd->add_option("--seed", cfg.seed, "base seed")->capture_default_str();

    std::uint64_t blockid_trials = 200;
    auto* blockid_cmd = app.add_subcommand("check-blockid", "canonical block identifier checks");
    blockid_cmd->add_option("--trials", blockid_trials, "blocks to test")->capture_default_str();
    blockid_cmd->add_option("--seed", cfg.seed, "base seed")->capture_default_str();

    std::string u_path;
    int degree = 2;
    double bias = 0.5;
    auto* disc_cmd = app.add_subcommand("discrepancy", "low-degree discrepancy of a distribution");
    disc_cmd->add_option("-i,--input", cfg.input, "distribution mu ('hex prob' lines), - for stdin")->capture_default_str();
    disc_cmd->add_option("--against", u_path, "reference distribution; default is the product proxy");
    disc_cmd->add_option("--n", cfg.n, "cube dimension")->required();
    disc_cmd->add_option("--k", degree, "degree")->capture_default_str();
    disc_cmd->add_option("--bias", bias, "proxy bias p for every coordinate")->capture_default_str();
    add_constants(disc_cmd);

    std::string group = "row-swap";
    std::string gadget_path;
    auto* gadget_cmd = app.add_subcommand("gadgets", "interface classification and gadget ANF");
    gadget_cmd->add_option("--group", group, "output-mixing group")->check(CLI::IsMember({"row-swap", "gl2"}))->capture_default_str();
    gadget_cmd->add_option("-i,--input", gadget_path, "gadget table ('abc s1 s2' lines) to decompose");

    double eps = 0.1;
    std::uint64_t N = 1024;
    double poly_a = 1.0;
    bool xor_arrow = false;
    auto* pipe_cmd = app.add_subcommand("pipeline", "canonical E1-E4 run and loss ledger");
    pipe_cmd->add_option("--eps", eps, "advantage eps in (0, 1/2)")->capture_default_str();
    pipe_cmd->add_option("--N", N, "instance bitlength")->capture_default_str();
    pipe_cmd->add_option("--seed", cfg.seed, "base seed")->capture_default_str();
    pipe_cmd->add_option("--const.a", poly_a, "condenser polylog exponent")->capture_default_str();
    pipe_cmd->add_flag("--xor-to-sat", xor_arrow, "insert the XOR->SAT arrow upstream");
    add_constants(pipe_cmd);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ExitCode::ok : ExitCode::usage;
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();
    const std::string& sub = cfg.subcommand;

    try {
        if (sub == "translate") {
            const auto inst = parse_xor(detail::read_input(cfg.input, in));
            const auto f = translate(inst);
            detail::write_output(cfg.output, serialize_cnf(f), out);
            detail::trailer(detail::data_trailer_stream(cfg.output, out, err), sub, true, {{"variables", f.n}, {"clauses", f.clauses.size()}});
            return ExitCode::ok;
        }
        if (sub == "invert") {
            const auto f = parse_cnf(detail::read_input(cfg.input, in));
            try {
                const auto inst = invert(f);
                detail::write_output(cfg.output, serialize_xor(inst), out);
                detail::trailer(detail::data_trailer_stream(cfg.output, out, err), sub, true, {{"constraints", inst.constraints.size()}});
                return ExitCode::ok;
            } catch (const NotInImageError& e) {
                out << "[FAIL] " << e.what() << '\n';
                detail::trailer(out, sub, false, {{"triple", e.triple()}});
                return ExitCode::check_failed;
            }
        }
        if (sub == "reduce-clique") {
            const auto f = parse_cnf(detail::read_input(cfg.input, in));
            const auto g = reduce_to_clique(f);
            const auto a = size_account(g);
            detail::write_output(cfg.output, serialize_graph(g), out);
            detail::trailer(detail::data_trailer_stream(cfg.output, out, err), sub, true,
                            {{"clauses", a.clauses}, {"vertices", a.vertices}, {"edges", a.edges},
                             {"edge_bound", a.edge_bound}, {"vertex_factor", a.vertex_factor}, {"edge_fill", a.edge_fill}});
            return ExitCode::ok;
        }
        if (sub == "check-xorsat") {
            auto r = detail::check_truth_tables();
            if (r.pass) out << "[OK] Truth-table & count checks passed (each block has exactly 4 satisfying assignments).\n";
            if (r.pass) {
                r = detail::check_forward(cfg.n, cfg.m, cfg.trials, cfg.seed);
                if (r.pass)
                    out << "[OK] Forward check: " << cfg.trials
                        << " planted XOR instances => CNF satisfied by planted solutions.\n";
            }
            if (r.pass) {
                r = detail::check_reverse();
                if (r.pass) out << "[OK] Reverse check: inconsistent XOR core => CNF is UNSAT (brute force on support).\n";
            }
            if (r.pass) out << "All checks passed.\n";
            else out << "[FAIL] " << r.failure << '\n';
            nlohmann::json extra{{"n", cfg.n}, {"m", cfg.m}, {"trials", cfg.trials}, {"seed", cfg.seed}};
            if (!r.pass) extra["first_failure"] = r.failure;
            detail::trailer(out, sub, r.pass, extra);
            return r.pass ? ExitCode::ok : ExitCode::check_failed;
        }
        if (sub == "check-blockid") {
            std::size_t rejected = 0;
            const auto r = detail::check_blockid(blockid_trials, cfg.seed, rejected);
            if (r.pass) {
                out << "[OK] Canonical IDs invariant under renaming, clause shuffling and literal permutation ("
                    << blockid_trials << " blocks).\n";
                out << "[OK] Single-literal corruptions rejected (" << rejected << "/" << blockid_trials << ").\n";
                out << "All checks passed.\n";
            } else {
                out << "[FAIL] " << r.failure << '\n';
            }
            nlohmann::json extra{{"trials", blockid_trials}, {"seed", cfg.seed}, {"corruptions_rejected", rejected}};
            if (!r.pass) extra["first_failure"] = r.failure;
            detail::trailer(out, sub, r.pass, extra);
            return r.pass ? ExitCode::ok : ExitCode::check_failed;
        }
        if (sub == "discrepancy") {
            const auto proxy = ProductProxy(std::vector<double>(static_cast<std::size_t>(cfg.n), bias), k.alpha);
            const auto mu = parse_distribution(detail::read_input(cfg.input, in));
            const auto u = u_path.empty() ? proxy.distribution() : parse_distribution(detail::read_input(u_path, in));
            const int kk = std::min(degree, cfg.n);
            const double delta = delta_k_exact(mu, u, proxy, kk);
            const double tv = tv_distance(mu, u);
            nlohmann::json extra{{"n", cfg.n}, {"k", kk}, {"delta_k", delta}, {"tv", tv}};
            out << "delta_k " << detail::fmt(delta, 10) << '\n';
            out << "two_tv " << detail::fmt(2 * tv, 10) << '\n';
            if (u_path.empty()) {
                const auto s = spectrum(mu, proxy, kk);
                const auto w = witness_polynomial(s, proxy);
                const auto smoothed = noise_apply(w.polynomial, k.theta);
                double smoothed_adv = 0;
                for (const auto& [S, c] : smoothed.coeffs) smoothed_adv += c * s.entries.at(S);
                out << "spectral_norm " << detail::fmt(s.norm(), 10) << '\n';
                out << "witness_advantage " << detail::fmt(w.advantage, 10) << '\n';
                out << "smoothed_witness_advantage " << detail::fmt(smoothed_adv, 10) << '\n';
                extra["spectral_norm"] = s.norm();
                extra["witness_advantage"] = w.advantage;
            }
            const auto rep = dichotomy_report(std::max(2, cfg.n), delta, {k.c, k.eta, k.zeta});
            out << "dichotomy " << to_string(rep.branch) << " k=" << rep.k << " threshold=" << detail::fmt(rep.threshold)
                << '\n';
            extra["branch"] = to_string(rep.branch);
            detail::trailer(out, sub, true, extra);
            return ExitCode::ok;
        }
        if (sub == "gadgets") {
            const auto grp = group == "gl2" ? MixingGroup::full_gl2 : MixingGroup::row_swap;
            const auto cls = enumerate_interfaces(grp);
            const auto& reps = interface_representatives();
            auto row = [](std::uint8_t r) {
                return std::string{static_cast<char>('0' + ((r >> 2) & 1)), static_cast<char>('0' + ((r >> 1) & 1)),
                                   static_cast<char>('0' + (r & 1))};
            };
            for (std::size_t i = 0; i < cls.admissible.size(); ++i) {
                const auto& A = cls.admissible[i];
                const auto& R = reps[static_cast<std::size_t>(cls.class_of[i] - 1)];
                out << "matrix [" << row(A.rows[0]) << ";" << row(A.rows[1]) << "] class " << cls.class_of[i]
                    << " representative [" << row(R.rows[0]) << ";" << row(R.rows[1]) << "]\n";
            }
            std::size_t parity_pairs = 0;
            bool shared = true;
            for (unsigned s1 = 0; s1 < 256; ++s1)
                for (unsigned s2 = 0; s2 < 256; ++s2) {
                    const auto g = anf_decompose(static_cast<Table8>(s1), static_cast<Table8>(s2));
                    if (!g.parity_preserving) continue;
                    ++parity_pairs;
                    shared = shared && g.core[0] == g.core[1];
                }
            out << "interfaces " << cls.admissible.size() << " classes " << cls.class_count << " group " << group << '\n';
            out << "shared core " << (shared ? "holds" : "FAILS") << " on " << parity_pairs << " parity-preserving pairs\n";
            nlohmann::json extra{{"interfaces", cls.admissible.size()}, {"classes", cls.class_count},
                                 {"parity_pairs", parity_pairs}, {"shared_core", shared}};
            if (!gadget_path.empty()) {
                const auto g = parse_gadget(detail::read_input(gadget_path, in));
                out << "gadget parity_preserving " << (g.parity_preserving ? 1 : 0) << " alpha " << g.alpha[0] << g.alpha[1]
                    << " beta " << row(g.beta[0]) << ";" << row(g.beta[1]) << " core_mask " << int(g.core[0]) << ","
                    << int(g.core[1]) << '\n';
                extra["gadget_parity_preserving"] = g.parity_preserving;
            }
            const bool pass = shared && cls.admissible.size() == 6 && cls.class_count == 3;
            detail::trailer(out, sub, pass, extra);
            return pass ? ExitCode::ok : ExitCode::check_failed;
        }
        if (sub == "pipeline") {
            CanonicalParams cp;
            cp.eps = eps;
            cp.N = N;
            cp.c1 = k.c1;
            cp.a = poly_a;
            cp.seed = cfg.seed;
            cp.xor_to_sat = xor_arrow;
            const auto run = canonical_run(cp);
            out << "t " << run.t << '\n';
            for (const auto& r : run.ledger.rows)
                out << r.label << " | tv " << (r.tv ? detail::fmt(*r.tv) : std::string("n/a")) << " (" << r.tv_class
                    << ") | size " << detail::fmt(r.size_factor) << " (" << r.size_class << ") | meta " << r.meta_bits
                    << " | " << r.note << '\n';
            out << "total | tv " << detail::fmt(run.totals.tv) << (run.totals.tv_complete ? "" : " (partial)") << " | size "
                << detail::fmt(run.totals.size, 12) << " | meta " << run.totals.meta_bits << '\n';
            detail::trailer(out, sub, true, {{"t", run.t}, {"ledger", to_json(run.ledger)}});
            return ExitCode::ok;
        }
    } catch (const Error& e) {
        out << "[ERROR] " << e.what() << '\n';
        detail::trailer(out, sub, false, {{"error", e.what()}});
        return ExitCode::bad_input;
    }
    return ExitCode::usage;
}

} // namespace redcal::cli
