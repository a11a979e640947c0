// Acceptance suite: one PASS/FAIL line per criterion with its wall-clock budget.

#include "redcal/cli.hpp"
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>

using namespace redcal;
using redcal::testing::random_biases;
using redcal::testing::random_distribution;
using redcal::testing::random_polynomial;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double budget_ms;
    std::function<Outcome()> body;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// XOR instances over n variables with up to m_max distinct triples and all parities.
template <class F>
void for_each_xor(int n, int m_max, F&& f) {
    const auto total = choose3(static_cast<std::uint64_t>(std::max(n, 0)));
    std::vector<std::uint64_t> ranks;
    std::function<void(std::uint64_t)> rec = [&](std::uint64_t start) {
        const std::size_t m = ranks.size();
        for (std::uint64_t bits = 0; bits < (1ULL << m); ++bits) {
            XorInstance inst{n, {}};
            for (std::size_t j = 0; j < m; ++j) {
                const auto t = unrank_triple(n, ranks[j]);
                inst.constraints.push_back({t[0], t[1], t[2], ((bits >> j) & 1) != 0});
            }
            f(inst);
        }
        if (static_cast<int>(m) == m_max) return;
        for (std::uint64_t r = start; r < total; ++r) {
            ranks.push_back(r);
            rec(r + 1);
            ranks.pop_back();
        }
    };
    rec(0);
}

std::string status_string(bool b) {
    std::string s;
    for (auto st : block_truth_table(b)) s += st == BlockStatus::allow ? 'A' : 'F';
    return s;
}

Outcome c01_truth_table() {
    // rows 000..111 of the forbidden-assignment table
    if (status_string(false) != "AFFAFAAF") return fail("parity 0 rows " + status_string(false));
    if (status_string(true) != "FAAFAFFA") return fail("parity 1 rows " + status_string(true));
    for (bool b : {false, true}) {
        const auto t = block_truth_table(b);
        if (std::count(t.begin(), t.end(), BlockStatus::allow) != 4) return fail("allowed count");
    }
    return {true, "both parities: 4/8 allowed, rows match"};
}

Outcome c02_size_laws() {
    SplitMix64 rng(20250918);
    std::size_t graphs = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 3 + static_cast<int>(rng.below(28));
        const std::uint64_t m = rng.below(std::min<std::uint64_t>(choose3(n), 60) + 1);
        const auto inst = random_xor_instance(n, m, rng.next());
        const auto f = translate(inst);
        if (f.clauses.size() != 4 * m || f.n != n) return fail("translate size law at trial " + std::to_string(trial));
        for (const auto& cnf : {f, random_cnf(n, static_cast<std::size_t>(rng.below(40)), rng.next())}) {
            const auto a = size_account(reduce_to_clique(cnf));
            const std::size_t mm = cnf.clauses.size();
            if (a.vertices != 3 * mm || a.edges > 9 * (mm * (mm ? mm - 1 : 0) / 2))
                return fail("clique size law at trial " + std::to_string(trial));
            ++graphs;
        }
    }
    return {true, "1000 translations, " + std::to_string(graphs) + " graphs"};
}

Outcome c03_inverse_identity() {
    std::size_t exhaustive = 0;
    for (int n = 0; n <= 6; ++n) {
        bool ok = true;
        for_each_xor(n, n >= 3 ? 3 : 0, [&](const XorInstance& inst) {
            ok = ok && invert(translate(inst)) == inst;
            ++exhaustive;
        });
        if (!ok) return fail("exhaustive round trip failed at n=" + std::to_string(n));
    }
    for (std::uint64_t j = 0; j < 50; ++j) {
        const auto plant = random_assignment(50, SplitMix64::derive(20250918, 2 * j));
        const auto inst = random_xor_instance(50, 200, SplitMix64::derive(20250918, 2 * j + 1), plant);
        if (invert(translate(inst)) != inst) return fail("planted trial " + std::to_string(j));
    }
    return {true, std::to_string(exhaustive) + " exhaustive instances + 50 planted"};
}

Outcome c04_canonical_id() {
    std::size_t rejected = 0;
    const auto r = cli::detail::check_blockid(200, 20250918, rejected);
    if (!r.pass) return fail(r.failure);
    if (rejected != 200) return fail("only " + std::to_string(rejected) + " corruptions rejected");
    return {true, "200 blocks invariant, 200/200 corruptions rejected"};
}

Outcome c05_sat_clique() {
    std::size_t exhaustive = 0;
    for (int n = 3; n <= 4; ++n) {
        std::vector<Clause> all;
        for (std::uint64_t r = 0; r < choose3(n); ++r) {
            const auto t = unrank_triple(n, r);
            for (int s = 0; s < 8; ++s) all.push_back(make_clause(s & 4 ? -t[0] : t[0], s & 2 ? -t[1] : t[1], s & 1 ? -t[2] : t[2]));
        }
        std::vector<std::size_t> pick;
        std::function<bool(std::size_t)> rec = [&](std::size_t start) {
            CnfFormula f{n, {}};
            for (auto i : pick) f.clauses.push_back(all[i]);
            ++exhaustive;
            if (!check_equivalence(f).equivalent) return false;
            if (pick.size() == 3) return true;
            for (std::size_t i = start; i < all.size(); ++i) {
                pick.push_back(i);
                if (!rec(i + 1)) return false;
                pick.pop_back();
            }
            return true;
        };
        if (!rec(0)) return fail("exhaustive disagreement at n=" + std::to_string(n));
    }
    SplitMix64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 3 + static_cast<int>(rng.below(10));
        const auto f = random_cnf(n, 1 + rng.below(6), rng.next());
        if (!check_equivalence(f).equivalent) return fail("seeded disagreement at trial " + std::to_string(trial));
    }
    return {true, std::to_string(exhaustive) + " exhaustive formulas + 200 seeded"};
}

Outcome c06_tv() {
    SplitMix64 rng(6);
    double worst = -1;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::uint64_t support = 1 + rng.below(16);
        const auto a = random_distribution(rng, support), b = random_distribution(rng, support);
        std::vector<std::uint64_t> table(support);
        const std::uint64_t range = 1 + rng.below(support);
        for (auto& v : table) v = rng.below(range);
        auto f = [&](std::uint64_t x) { return table[x]; };
        const double gap = tv_distance(pushforward(a, f), pushforward(b, f)) - tv_distance(a, b);
        worst = std::max(worst, gap);
        if (gap > 1e-12) return fail("contraction violated at trial " + std::to_string(trial));
    }
    for (std::uint64_t support = 1; support <= 12; ++support)
        for (int trial = 0; trial < 10; ++trial) {
            const auto a = random_distribution(rng, support), b = random_distribution(rng, support);
            double best = 0;
            for (std::uint64_t A = 0; A < (1ULL << support); ++A) {
                double gap = 0;
                for (std::uint64_t x = 0; x < support; ++x)
                    if (A >> x & 1) gap += a(x) - b(x);
                best = std::max(best, std::abs(gap));
            }
            if (std::abs(best - tv_distance(a, b)) > 1e-12) return fail("event supremum mismatch at support " + std::to_string(support));
        }
    return {true, "max TV(f#a,f#b)-TV(a,b) = " + fmt(worst)};
}

Outcome c07_delta_code() {
    for (std::uint64_t t = 1; t <= (1ULL << 20); ++t) {
        const std::uint64_t L = static_cast<std::uint64_t>(std::bit_width(t)) - 1;
        const std::uint64_t closed = L + 2 * (static_cast<std::uint64_t>(std::bit_width(L + 1)) - 1) + 1;
        if (elias_delta_encode(t).length() != closed || elias_delta_length(t) != closed)
            return fail("length mismatch at t=" + std::to_string(t));
    }
    // binary trie over all codewords t <= 2^16
    struct Node {
        int child[2] = {-1, -1};
        bool terminal = false;
    };
    std::vector<Node> trie(1);
    double kraft = 0;
    for (std::uint64_t t = 1; t <= (1ULL << 16); ++t) {
        const auto c = elias_delta_encode(t);
        int at = 0;
        for (bool b : c.bits) {
            if (trie[static_cast<std::size_t>(at)].terminal) return fail("codeword prefixes t=" + std::to_string(t));
            if (trie[static_cast<std::size_t>(at)].child[b] < 0) {
                trie.emplace_back();
                trie[static_cast<std::size_t>(at)].child[b] = static_cast<int>(trie.size()) - 1;
            }
            at = trie[static_cast<std::size_t>(at)].child[b];
        }
        const auto& leaf = trie[static_cast<std::size_t>(at)];
        if (leaf.terminal || leaf.child[0] >= 0 || leaf.child[1] >= 0) return fail("t=" + std::to_string(t) + " is a prefix");
        trie[static_cast<std::size_t>(at)].terminal = true;
        kraft += std::ldexp(1.0, -static_cast<int>(c.length()));
    }
    if (kraft > 1.0) return fail("partial Kraft sum " + fmt(kraft));
    return {true, "lengths exact to 2^20; prefix-free to 2^16, Kraft " + fmt(kraft)};
}

Outcome c08_orthonormal() {
    SplitMix64 rng(8);
    double worst = 0;
    for (int n = 1; n <= 10; ++n) {
        const ProductProxy proxy(random_biases(rng, n, 0.1), 0.1);
        const std::size_t X = std::size_t{1} << n;
        // Phi[S][x] = sqrt(u(x)) chi_S(x); orthonormality is Phi Phi^T = I.
        std::vector<std::vector<double>> phi(X, std::vector<double>(X));
        for (Subset s = 0; s < X; ++s)
            for (Assignment x = 0; x < X; ++x) phi[s][x] = std::sqrt(proxy.probability(x)) * chi_eval(s, x, proxy);
        for (Subset s = 0; s < X; ++s)
            for (Subset t = s; t < X; ++t) {
                double g = 0;
                const auto& a = phi[s];
                const auto& b = phi[t];
                for (std::size_t x = 0; x < X; ++x) g += a[x] * b[x];
                worst = std::max(worst, std::abs(g - (s == t ? 1.0 : 0.0)));
            }
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<double> f(X);
            for (auto& v : f) v = 2 * rng.uniform() - 1;
            double direct = 0;
            for (Assignment x = 0; x < X; ++x) direct += proxy.probability(x) * f[x] * f[x];
            const auto c = walsh_transform(f, proxy);
            double coef = 0;
            for (double v : c) coef += v * v;
            worst = std::max(worst, std::abs(coef - direct));
        }
        if (worst > 1e-10) return fail("deviation " + fmt(worst) + " at n=" + std::to_string(n));
    }
    return {true, "max deviation " + fmt(worst)};
}

Outcome c09_discrepancy() {
    SplitMix64 rng(9);
    double worst_tv = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + trial % 8;
        const ProductProxy proxy(random_biases(rng, n, 0.2), 0.2);
        const auto mu = random_distribution(rng, Assignment{1} << n, 0.3);
        const auto u = trial % 2 ? proxy.distribution() : random_distribution(rng, Assignment{1} << n, 0.3);
        const std::string tag = " at trial " + std::to_string(trial);
        if (std::abs(delta_k_exact(mu, u, proxy, 0)) > 1e-9) return fail("Delta_0 != 0" + tag);
        double prev = 0;
        for (int k = 1; k <= n; ++k) {
            const double d = delta_k_exact(mu, u, proxy, k);
            if (d < prev - 1e-9) return fail("not monotone" + tag);
            if (u.entries().size() == proxy.distribution().entries().size() && trial % 2) {
                const auto s = spectrum(mu, proxy, k);
                if (d > s.norm() + 1e-9) return fail("exceeds spectral norm" + tag);
            }
            prev = d;
        }
        worst_tv = std::max(worst_tv, std::abs(prev - 2 * tv_distance(mu, u)));
        if (worst_tv > 1e-6) return fail("Delta_n != 2 TV" + tag);
    }
    return {true, "max |Delta_n - 2TV| = " + fmt(worst_tv)};
}

Outcome c10_noise() {
    SplitMix64 rng(10);
    double worst = -1;
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(10));
        const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        const double theta = rng.uniform();
        const auto p = random_polynomial(rng, n, k, 0.5);
        const auto tp = noise_apply(p, theta);
        double diff = 0;
        for (const auto& [s, c] : p.coeffs) diff += (c - tp.coeff(s)) * (c - tp.coeff(s));
        const double gap = std::sqrt(diff) - std::sqrt(1 - std::pow(theta, 2 * k)) * l2_norm(p);
        worst = std::max(worst, gap);
        if (gap > 1e-12) return fail("bound violated at trial " + std::to_string(trial));
    }
    return {true, "max slack " + fmt(worst)};
}

Outcome c11_pseudoexpectation() {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(6));
        const int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(n) + 1));
        std::vector<Rational> b;
        for (int i = 0; i < n; ++i) b.emplace_back(1 + static_cast<long>(rng.below(19)), 20);
        MultilinearPolynomial<Rational> p;
        p.n = n;
        for (Subset t : low_degree_subsets(n, k))
            p.coeffs[t] = Rational(static_cast<long>(rng.below(41)) - 20, 1 + static_cast<long>(rng.below(9)));
        if (pseudoexpectation_eval(p, MomentTable<Rational>{b, k}) != product_expectation(p, b))
            return fail("rational mismatch at trial " + std::to_string(trial));
    }
    double worst = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(8));
        const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        const ProductProxy proxy(random_biases(rng, n, 0.2), 0.2);
        const auto p = random_polynomial(rng, n, k);
        const auto v = evaluate_all(p, proxy);
        double e = 0;
        for (Assignment x = 0; x < v.size(); ++x) e += proxy.probability(x) * v[x];
        worst = std::max(worst, std::abs(pseudoexpectation_eval(p, proxy, k) - e));
    }
    if (worst > 1e-12) return fail("double mode gap " + fmt(worst));
    return {true, "rational gap 0, double gap " + fmt(worst)};
}

Outcome c12_gadgets() {
    std::size_t parity = 0;
    for (unsigned s1 = 0; s1 < 256; ++s1)
        for (unsigned s2 = 0; s2 < 256; ++s2) {
            const auto g = anf_decompose(static_cast<Table8>(s1), static_cast<Table8>(s2));
            if (moebius(g.anf[0]) != s1 || moebius(g.anf[1]) != s2) return fail("ANF reconstruction");
            if (!g.parity_preserving) continue;
            ++parity;
            if (g.core[0] != g.core[1]) return fail("distinct cores at (" + std::to_string(s1) + "," + std::to_string(s2) + ")");
        }
    const auto c = enumerate_interfaces(MixingGroup::row_swap);
    if (c.admissible.size() != 6 || c.class_count != 3) return fail("interface count/classes");
    const auto& reps = interface_representatives();
    for (const auto& R : reps)
        if (std::find(c.admissible.begin(), c.admissible.end(), R) == c.admissible.end()) return fail("representative missing");
    return {true, std::to_string(parity) + " parity pairs share cores; 6 matrices / 3 classes"};
}

Outcome c13_pullbacks(std::vector<std::string>& notes) {
    SplitMix64 rng(13);
    bool affine_degree = true, affine_delta = true, index_ok = true, index_delta = true;
    std::string affine_degree_ce, affine_delta_ce;
    const auto& reps = interface_representatives();
    std::vector<AnfGadget> gadgets;
    for (const auto& A : reps)
        for (bool swap : {false, true})
            for (bool r : {false, true}) {
                Table8 t[2] = {0, 0};
                for (unsigned x = 0; x < 8; ++x)
                    for (int l = 0; l < 2; ++l) {
                        const auto row = A.rows[static_cast<std::size_t>(swap ? 1 - l : l)];
                        if ((std::popcount(row & x) & 1) != r) t[l] |= static_cast<Table8>(1U << x);
                    }
                gadgets.push_back(anf_decompose(t[0], t[1]));
            }
    // affine: two gadget blocks on 6 inputs -> 4 outputs; degree-<=2 tests
    for (const auto& g1 : gadgets)
        for (const auto& g2 : gadgets) {
            const auto w = affine_wiring({{g1, {0, 1, 2}}, {g2, {3, 4, 5}}}, 6);
            const auto in = ProductProxy::uniform(6), out = ProductProxy::uniform(4);
            for (int k = 1; k <= 2; ++k) {
                const auto p = random_polynomial(rng, 4, k);
                const auto r = affine_pullback(p, out, w, in);
                if (r.degree_in > r.degree_out && affine_degree_ce.empty())
                    affine_degree_ce = "deg " + std::to_string(r.degree_out) + " -> " + std::to_string(r.degree_in);
                affine_degree = affine_degree && r.degree_in <= r.degree_out;
            }
        }
    {
        // mu uniform on {b ^ c = 0}: first-order marginals match u, the gadget output b ^ c does not.
        const auto w = affine_wiring({{gadgets[0], {0, 1, 2}}}, 3);
        const auto in = ProductProxy::uniform(3), out = ProductProxy::uniform(2);
        std::vector<std::pair<Assignment, double>> pts;
        for (Assignment x = 0; x < 8; ++x)
            if ((((x >> 1) ^ (x >> 2)) & 1) == 0) pts.emplace_back(x, 1.0);
        const auto mu = AssignmentDistribution::from_weights(pts);
        const auto u = in.distribution();
        auto G = [&](Assignment x) { return w.apply(x); };
        const double lhs = delta_k_exact(pushforward(mu, G), pushforward(u, G), out, 1);
        const double rhs = delta_k_exact(mu, u, in, 1);
        if (lhs > rhs + 1e-8) {
            affine_delta = false;
            affine_delta_ce = "Delta_1 " + fmt(rhs) + " -> " + fmt(lhs);
        }
        for (int trial = 0; trial < 20 && affine_delta; ++trial) {
            const auto m2 = random_distribution(rng, 8, 0.3);
            if (delta_k_exact(pushforward(m2, G), pushforward(u, G), out, 1) > delta_k_exact(m2, u, in, 1) + 1e-8) affine_delta = false;
        }
    }
    // index: 2 blocks on 6 inputs (n <= 8), k <= 2; plus 3 blocks for k = 3 degree law
    {
        const IndexWiring w{6, {{0, 1, 2}, {3, 4, 5}}};
        const ProductProxy out(random_biases(rng, 2, 0.2), 0.2), in(random_biases(rng, 6, 0.2), 0.2);
        for (int trial = 0; trial < 100; ++trial) {
            const int k = 1 + trial % 2;
            const auto r = index_pullback(random_polynomial(rng, 2, k), out, w, in);
            index_ok = index_ok && r.degree_in <= 2 * r.degree_out && r.sup_in <= r.sup_out + 1e-9;
        }
        const IndexWiring w3{9, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}}};
        for (int k = 1; k <= 3; ++k) {
            WalshPolynomial p(3, k);
            p.set((Subset{1} << k) - 1, 1.0);
            const auto r = index_pullback(p, ProductProxy::uniform(3), w3, ProductProxy::uniform(9));
            index_ok = index_ok && r.degree_in <= 2 * k;
        }
        const auto uin = ProductProxy::uniform(6), uout = ProductProxy::uniform(2);
        const auto u = uin.distribution();
        auto G = [&](Assignment x) { return w.apply(x); };
        for (int trial = 0; trial < 20; ++trial) {
            const auto mu = random_distribution(rng, 64, 0.5);
            for (int k = 1; k <= 2; ++k)
                if (delta_k_exact(pushforward(mu, G), pushforward(u, G), uout, k) > delta_k_exact(mu, u, uin, 2 * k) + 1e-8)
                    index_delta = false;
        }
    }
    notes.push_back(std::string("13a affine pullback never increases degree: ") + (affine_degree ? "PASS" : "FAIL (" + affine_degree_ce + ")"));
    notes.push_back(std::string("13b index pullback deg <= 2k and sup non-increasing: ") + (index_ok ? "PASS" : "FAIL"));
    notes.push_back(std::string("13c Delta_k affine monotonicity: ") + (affine_delta ? "PASS" : "FAIL (" + affine_delta_ce + ")"));
    notes.push_back(std::string("13d Delta_k(G#mu,G#u) <= Delta_2k(mu,u) for index: ") + (index_delta ? "PASS" : "FAIL"));
    if (!(affine_degree && affine_delta && index_ok && index_delta))
        return fail("affine laws fail over the reals: a parity of w inputs has multilinear degree w (see notes)");
    return {true, "all pullback laws hold"};
}

Outcome c14_amplification() {
    for (double eps : {0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.49})
        for (double N : {2.0, 16.0, 1024.0, 1e6, 1e12})
            if (amplification_bound(eps, static_cast<double>(choose_t(eps, N, 1))) > 1 / (N * N) * (1 + 1e-12))
                return fail("grid point eps=" + fmt(eps) + " N=" + fmt(N));
    const std::uint64_t trials = 100000;
    const auto r = majority_experiment(0.2, 200, trials, 20250918);
    const double b = amplification_bound(0.2, 200);
    const double limit = b + 3 * std::sqrt(b * (1 - b) / trials);
    if (r.failure_rate > limit) return fail("majority failure rate " + fmt(r.failure_rate) + " > " + fmt(limit));
    return {true, "failure rate " + fmt(r.failure_rate) + " <= " + fmt(limit) + ", advantage " + fmt(r.advantage)};
}

Outcome c15_ledger() {
    const auto run = canonical_run();
    const std::vector<std::string> labels{"E1 (Direct product)", "E2 (Hardcore)", "E3 (Condensation)", "E4 (Parameter fixing)"};
    if (run.ledger.rows.size() != labels.size()) return fail("row count");
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (run.ledger.rows[i].label != labels[i]) return fail("label " + run.ledger.rows[i].label);
    const auto& e4 = run.ledger.rows[3];
    MetaRecord idx;
    idx.add("t", run.t).add("threshold", static_cast<std::uint64_t>(run.window.threshold)).add("seed", run.condenser_seed);
    const auto bits = encode_record(idx).length();
    if (e4.meta_bits != bits || e4.tv != 0.0 || e4.size_factor != 1.0) return fail("E4 row");
    if (run.totals.size != static_cast<double>(run.t) * 10.0) return fail("size total");
    if (run.ledger.rows[1].tv != 1.0 - run.window.mass) return fail("E2 tv");
    CanonicalParams p;
    p.xor_to_sat = true;
    const auto x = canonical_run(p);
    if (x.ledger.rows.front().tv != 0.0 || x.totals.size != 4 * run.totals.size) return fail("XOR->SAT arrow");
    return {true, "4 rows, size x" + fmt(run.totals.size) + ", meta " + std::to_string(run.totals.meta_bits) + " bits"};
}

Outcome c16_protocol() {
    std::istringstream in;
    std::ostringstream out, err;
    const int code = cli::run({"check-xorsat", "--n", "50", "--m", "200", "--trials", "50", "--seed", "20250918"}, in, out, err);
    const std::string expected =
        "[OK] Truth-table & count checks passed (each block has exactly 4 satisfying assignments).\n"
        "[OK] Forward check: 50 planted XOR instances => CNF satisfied by planted solutions.\n"
        "[OK] Reverse check: inconsistent XOR core => CNF is UNSAT (brute force on support).\n"
        "All checks passed.\n";
    if (code != 0) return fail("exit status " + std::to_string(code));
    if (out.str().compare(0, expected.size(), expected) != 0) return fail("report lines differ");
    return {true, "four OK lines, exit 0"};
}

} // namespace

int main() {
    std::vector<std::string> notes;
    const std::vector<Criterion> criteria{
        {1, "truth-table law", 1, c01_truth_table},
        {2, "size laws", 1000, c02_size_laws},
        {3, "inverse identity", 10000, c03_inverse_identity},
        {4, "canonical-ID robustness", 5000, c04_canonical_id},
        {5, "SAT<->clique equivalence", 60000, c05_sat_clique},
        {6, "TV contraction", 10000, c06_tv},
        {7, "delta-code exactness", 30000, c07_delta_code},
        {8, "orthonormality and Parseval", 30000, c08_orthonormal},
        {9, "discrepancy identities", 120000, c09_discrepancy},
        {10, "noise smoothing", 10000, c10_noise},
        {11, "pseudoexpectation alignment", 5000, c11_pseudoexpectation},
        {12, "gadget structure", 10000, c12_gadgets},
        {13, "pullback degree laws", 120000, [&] { return c13_pullbacks(notes); }},
        {14, "amplification", 30000, c14_amplification},
        {15, "ledger totals", 1000, c15_ledger},
        {16, "check-xorsat protocol", 30000, c16_protocol},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = fail(std::string("exception: ") + e.what());
        }
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        if (o.pass && ms > c.budget_ms) o = fail("over budget; " + o.detail);
        failed += o.pass ? 0 : 1;
        std::printf("[%s] %2d %-30s %9.1f ms / %.0f ms  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, ms, c.budget_ms,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    for (const auto& n : notes) std::printf("       %s\n", n.c_str());
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
