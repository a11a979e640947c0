#pragma once

// Desk-scale E1-E4 blueprint: direct-product amplification, a binomial-tail
// hardcore window, a seeded F2-linear condenser and the loss ledger.

#include "redcal/coding.hpp"
#include "redcal/error.hpp"
#include "redcal/lowdeg.hpp"
#include "redcal/measure.hpp"
#include "redcal/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace redcal {

// ---------------------------------------------------------------------------
// E1: amplification.

/// t = ceil(c1 eps^-2 ln N).
inline std::uint64_t choose_t(double eps, double N, double c1 = 1.0) {
    if (!(eps > 0.0 && eps < 0.5)) throw ContractError("eps must lie in (0, 1/2)");
    if (!(N >= 2.0)) throw ContractError("N must be at least 2");
    if (!(c1 > 0.0)) throw ContractError("c1 must be positive");
    return static_cast<std::uint64_t>(std::ceil(c1 * std::log(N) / (eps * eps)));
}

/// exp(-2 eps^2 t).
inline double amplification_bound(double eps, double t) { return std::exp(-2.0 * eps * eps * t); }

struct MajorityOutcome {
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;   // trials with S < t/2
    double correct_rate = 0;      // S >= t/2 (ties count as correct)
    double advantage = 0;         // correct_rate - 1/2
    double failure_rate = 0;
};

/// Trial j draws its t indicators from the stream SplitMix64::derive(seed, j),
/// so any partition of the trial range reproduces the same counts.
inline MajorityOutcome majority_experiment(double eps, std::uint64_t t, std::uint64_t trials, std::uint64_t seed) {
    if (trials == 0) throw ContractError("majority experiment needs at least one trial");
    if (!(eps >= 0.0 && eps <= 0.5)) throw ContractError("eps must lie in [0, 1/2]");
    const double p = 0.5 + eps;
    MajorityOutcome out;
    out.trials = trials;
    for (std::uint64_t j = 0; j < trials; ++j) {
        SplitMix64 rng(SplitMix64::derive(seed, j));
        std::uint64_t s = 0;
        for (std::uint64_t i = 0; i < t; ++i) s += rng.uniform() < p ? 1 : 0;
        if (2 * s < t) ++out.failures;
    }
    out.failure_rate = static_cast<double>(out.failures) / static_cast<double>(trials);
    out.correct_rate = 1.0 - out.failure_rate;
    out.advantage = out.correct_rate - 0.5;
    return out;
}

// ---------------------------------------------------------------------------
// E2: hardcore window.

struct HardcoreWindow {
    int blocks = 0;
    int threshold = 0;                          // window: at least `threshold` correct blocks
    double bias = 0;                            // per-block success probability 1/2 + eps
    std::function<bool(Assignment)> predicate;  // bit i = block i correct
    double mass = 0;                            // exact binomial upper tail
    double mass_by_summation = 0;               // same quantity summed over all 2^t outcomes
};

inline double binomial_upper_tail(int t, int threshold, double p) {
    double mass = 0;
    for (int j = std::max(threshold, 0); j <= t; ++j) {
        double c = 1;
        for (int i = 0; i < j; ++i) c = c * (t - i) / (i + 1);
        mass += c * std::pow(p, j) * std::pow(1 - p, t - j);
    }
    return mass;
}

/// Complement of the majority-failure tail over t <= 20 independent blocks.
/// The default threshold is ceil(t/2), i.e. S >= t/2.
inline HardcoreWindow toy_hardcore_select(double eps, int t, std::optional<int> threshold = std::nullopt) {
    if (t < 1 || t > 20) throw CapError("hardcore selection runs on 1..20 explicit blocks");
    if (!(eps >= 0.0 && eps <= 0.5)) throw ContractError("eps must lie in [0, 1/2]");
    HardcoreWindow w;
    w.blocks = t;
    w.threshold = threshold.value_or((t + 1) / 2);
    w.bias = 0.5 + eps;
    const int thr = w.threshold;
    w.predicate = [thr](Assignment x) { return std::popcount(x) >= thr; };
    w.mass = binomial_upper_tail(t, thr, w.bias);
    for (Assignment x = 0; x < (Assignment{1} << t); ++x) {
        if (!w.predicate(x)) continue;
        const int ones = std::popcount(x);
        w.mass_by_summation += std::pow(w.bias, ones) * std::pow(1 - w.bias, t - ones);
    }
    if (!(w.mass > 0.0)) throw EmptyWindowError("hardcore window has zero mass");
    return w;
}

// ---------------------------------------------------------------------------
// E3: seeded condensation.

struct CondenserParams {
    int m = 0;               // input length
    double N = 2;            // instance bitlength
    double a = 1.0;          // polylog exponent: m' = m * ceil((log2 N)^a)
    int seed_factor = 1;     // s = ceil(log2 N) * seed_factor
    int locality = 3;        // inputs per output

    int polylog_factor() const { return static_cast<int>(std::ceil(std::pow(std::log2(N), a) - 1e-12)); }
    int output_length() const { return m * polylog_factor(); }
    int seed_bits() const { return static_cast<int>(std::ceil(std::log2(N) - 1e-12)) * seed_factor; }
};

class Condenser {
public:
    virtual ~Condenser() = default;
    virtual const CondenserParams& params() const = 0;
    virtual std::vector<bool> apply(const std::vector<bool>& x, std::uint64_t seed) const = 0;
};

/// Output j is the XOR of `locality` distinct inputs chosen by the stream
/// SplitMix64::derive(seed, j). Linear over F2 for every fixed seed.
class ToyCondenser final : public Condenser {
public:
    explicit ToyCondenser(CondenserParams p) : p_(p) {
        if (p_.m < 1) throw ContractError("condenser input length must be positive");
        if (!(p_.N >= 2)) throw ContractError("condenser needs N >= 2");
        if (!(p_.a >= 0)) throw ContractError("polylog exponent must be nonnegative");
        if (p_.seed_factor < 1) throw ContractError("seed factor must be positive");
        if (p_.locality < 1 || p_.locality > p_.m) throw ContractError("locality must lie in [1, m]");
    }

    const CondenserParams& params() const override { return p_; }

    /// Input positions feeding each output.
    std::vector<std::vector<int>> taps(std::uint64_t seed) const {
        check_seed(seed);
        std::vector<std::vector<int>> out(static_cast<std::size_t>(p_.output_length()));
        for (std::size_t j = 0; j < out.size(); ++j) {
            SplitMix64 rng(SplitMix64::derive(seed, j));
            auto& row = out[j];
            while (static_cast<int>(row.size()) < p_.locality) {
                const int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(p_.m)));
                if (std::find(row.begin(), row.end(), v) == row.end()) row.push_back(v);
            }
            std::sort(row.begin(), row.end());
        }
        return out;
    }

    std::vector<bool> apply(const std::vector<bool>& x, std::uint64_t seed) const override {
        if (static_cast<int>(x.size()) != p_.m) throw ContractError("input length does not match condenser parameters");
        const auto rows = taps(seed);
        std::vector<bool> y(rows.size());
        for (std::size_t j = 0; j < rows.size(); ++j) {
            bool b = false;
            for (int v : rows[j]) b = b != x[static_cast<std::size_t>(v)];
            y[j] = b;
        }
        return y;
    }

    /// Bitmask form for m, m' <= 64.
    Assignment apply_mask(Assignment x, std::uint64_t seed) const {
        if (p_.m > 64 || p_.output_length() > 64) throw CapError("mask form needs m, m' <= 64");
        const auto rows = taps(seed);
        Assignment y = 0;
        for (std::size_t j = 0; j < rows.size(); ++j) {
            unsigned b = 0;
            for (int v : rows[j]) b ^= static_cast<unsigned>((x >> v) & 1U);
            if (b) y |= Assignment{1} << j;
        }
        return y;
    }

private:
    void check_seed(std::uint64_t seed) const {
        const int s = p_.seed_bits();
        if (s < 64 && (seed >> s) != 0) throw ContractError("seed exceeds 2^s for the configured seed length");
    }

    CondenserParams p_;
};

struct CondensationReport {
    int k = 0;
    int seeds = 0;
    double input_delta = 0;        // Delta_k(mu, u) on the input cube
    double mean_output_delta = 0;  // average over seeds of Delta_k(C#mu, C#u)
    double max_output_delta = 0;
};

/// Report-only: nothing about the output discrepancy is asserted.
inline CondensationReport measure_condensation(const ToyCondenser& c, const AssignmentDistribution& mu,
                                               const ProductProxy& in_proxy, int k, int seeds) {
    const auto& p = c.params();
    if (in_proxy.n() != p.m) throw ContractError("proxy does not match condenser input length");
    if (p.output_length() > 10) throw CapError("condensation report runs at output length <= 10");
    if (seeds < 1) throw ContractError("need at least one seed");
    CondensationReport r;
    r.k = k;
    r.seeds = seeds;
    const auto u = in_proxy.distribution();
    r.input_delta = delta_k_exact(mu, u, in_proxy, k);
    const auto out_proxy = ProductProxy::uniform(p.output_length());
    const std::uint64_t seed_space = p.seed_bits() >= 64 ? ~0ULL : (1ULL << p.seed_bits());
    for (int s = 0; s < seeds; ++s) {
        const std::uint64_t seed = static_cast<std::uint64_t>(s) % seed_space;
        auto map = [&](Assignment x) { return c.apply_mask(x, seed); };
        const double d = delta_k_exact(pushforward(mu, map), pushforward(u, map), out_proxy, k);
        r.mean_output_delta += d / seeds;
        r.max_output_delta = std::max(r.max_output_delta, d);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Loss ledger.

struct LedgerRow {
    std::string label;
    std::optional<double> tv;  // numeric loss when one is available at desk scale
    std::string tv_class;      // asymptotic class as tabulated, e.g. "o(1)" or "0"
    double size_factor = 1;
    std::string size_class;    // e.g. "x t", "x polylog(N)"
    std::uint64_t meta_bits = 0;
    std::string note;
};

struct LossLedger {
    std::vector<LedgerRow> rows;

    LossLedger& add(LedgerRow row) {
        if (!(row.size_factor > 0)) throw ContractError("size factor must be positive");
        if (row.tv && (*row.tv < 0 || *row.tv > 1)) throw ContractError("tv loss must lie in [0, 1]");
        rows.push_back(std::move(row));
        return *this;
    }
};

struct LedgerTotals {
    double tv = 0;             // sum of numeric tv entries
    bool tv_complete = true;   // false when some row has no numeric tv
    double size = 1;
    std::uint64_t meta_bits = 0;
};

inline LedgerTotals ledger_summary(const LossLedger& ledger) {
    LedgerTotals t;
    for (const auto& r : ledger.rows) {
        if (r.tv) t.tv += *r.tv;
        else t.tv_complete = false;
        t.size *= r.size_factor;
        t.meta_bits += r.meta_bits;
    }
    return t;
}

/// Appends the E4 row: tv 0, size 1, meta = exact delta-coded cost of `indices`.
inline LossLedger fix_indices(LossLedger ledger, const MetaRecord& indices, std::uint64_t N) {
    const auto cost = meta_overhead(indices, N);
    if (!cost.bound_ok) throw RangeError("index record exceeds the meta-overhead bound");
    std::string note = "fixed:";
    for (const auto& f : indices.entries) note += " " + f.label + "=" + std::to_string(f.value);
    ledger.add({"E4 (Parameter fixing)", 0.0, "0", 1.0, "+ meta only", cost.total_bits, note});
    return ledger;
}

struct CanonicalParams {
    double eps = 0.1;
    std::uint64_t N = 1024;
    double c1 = 1.0;
    double a = 1.0;              // condenser polylog exponent
    int seed_factor = 1;
    int locality = 3;
    int condenser_m = 4;         // desk-scale condenser input length
    int hardcore_blocks = 15;    // desk-scale E2 block count (<= 20)
    std::uint64_t seed = 20250918;
    bool xor_to_sat = false;     // insert the XOR->SAT arrow upstream
};

struct CanonicalRun {
    std::uint64_t t = 0;
    std::uint64_t condenser_seed = 0;
    HardcoreWindow window;
    LossLedger ledger;
    LedgerTotals totals;
};

inline CanonicalRun canonical_run(const CanonicalParams& cp = {}) {
    CanonicalRun run;
    const double N = static_cast<double>(cp.N);
    run.t = choose_t(cp.eps, N, cp.c1);
    if (cp.xor_to_sat)
        run.ledger.add({"R_xor->sat", 0.0, "0", 4.0, "x 4", 0, "four clauses per XOR constraint, no new variables"});

    run.ledger.add({"E1 (Direct product)", amplification_bound(cp.eps, static_cast<double>(run.t)), "o(1)",
                    static_cast<double>(run.t), "x t", 0, "tv slot holds the Chernoff tail exp(-2 eps^2 t)"});

    run.window = toy_hardcore_select(cp.eps, cp.hardcore_blocks);
    const auto e2_meta = meta_overhead(MetaRecord{}, cp.N);
    run.ledger.add({"E2 (Hardcore)", 1.0 - run.window.mass, "o(1)", 1.0, "x (1+o(1))", e2_meta.total_bits,
                    "window mass " + std::to_string(run.window.mass) + " over " + std::to_string(cp.hardcore_blocks) +
                        " blocks; advantage target N^-c recorded, not asserted"});

    const ToyCondenser cond({cp.condenser_m, N, cp.a, cp.seed_factor, cp.locality});
    const int s = cond.params().seed_bits();
    run.condenser_seed = s >= 64 ? SplitMix64::derive(cp.seed, 0) : SplitMix64::derive(cp.seed, 0) & ((1ULL << s) - 1);
    run.ledger.add({"E3 (Condensation)", std::nullopt, "o(1)", static_cast<double>(cond.params().polylog_factor()),
                    "x polylog(N)", 0, "low-degree preservation is asymptotic; measured separately, never asserted"});

    MetaRecord indices;
    indices.add("t", run.t).add("threshold", static_cast<std::uint64_t>(run.window.threshold));
    indices.add("seed", run.condenser_seed, {static_cast<std::uint64_t>(cp.seed_factor), 1});
    run.ledger = fix_indices(std::move(run.ledger), indices, cp.N);
    run.totals = ledger_summary(run.ledger);
    return run;
}

inline nlohmann::json to_json(const LossLedger& ledger) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : ledger.rows) {
        rows.push_back({{"label", r.label},
                        {"tv", r.tv ? nlohmann::json(*r.tv) : nlohmann::json(nullptr)},
                        {"tv_class", r.tv_class},
                        {"size_factor", r.size_factor},
                        {"size_class", r.size_class},
                        {"meta_bits", r.meta_bits},
                        {"note", r.note}});
    }
    const auto t = ledger_summary(ledger);
    return {{"rows", rows},
            {"totals", {{"tv", t.tv}, {"tv_complete", t.tv_complete}, {"size", t.size}, {"meta_bits", t.meta_bits}}}};
}

} // namespace redcal
