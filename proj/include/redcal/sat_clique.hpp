#pragma once

// Karp reduction 3SAT -> CLIQUE with size accounting and brute-force oracles.

#include "redcal/error.hpp"
#include "redcal/instances.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace redcal {

inline bool contradictory(Literal a, Literal b) noexcept { return a == -b; }

/// Vertices (i, l) for every literal l of clause i; (i, l) ~ (j, l') iff
/// i != j and l, l' are not complementary.
inline LiteralGraph reduce_to_clique(const CnfFormula& formula) {
    LiteralGraph g;
    g.block_count = formula.clauses.size();
    g.vertices.reserve(3 * g.block_count);
    g.edges.reserve(9 * (g.block_count * (g.block_count ? g.block_count - 1 : 0) / 2));
    for (std::size_t i = 0; i < formula.clauses.size(); ++i)
        for (Literal l : formula.clauses[i]) g.vertices.push_back({i, l});
    for (std::size_t u = 0; u < g.vertices.size(); ++u)
        for (std::size_t v = u + 1; v < g.vertices.size(); ++v)
            if (g.vertices[u].clause != g.vertices[v].clause &&
                !contradictory(g.vertices[u].literal, g.vertices[v].literal))
                g.edges.emplace_back(u, v);
    return g;
}

struct CliqueSizeAccount {
    std::size_t clauses = 0;
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::size_t edge_bound = 0;   // 9 * C(m, 2)
    double vertex_factor = 0;     // |V| / m
    double edge_fill = 0;         // |E| / edge_bound (0 when the bound is 0)
};

inline CliqueSizeAccount size_account(const LiteralGraph& g) {
    CliqueSizeAccount a;
    a.clauses = g.block_count;
    a.vertices = g.vertices.size();
    a.edges = g.edges.size();
    a.edge_bound = 9 * (g.block_count * (g.block_count - (g.block_count > 0 ? 1 : 0)) / 2);
    a.vertex_factor = g.block_count ? static_cast<double>(a.vertices) / static_cast<double>(g.block_count) : 0.0;
    a.edge_fill = a.edge_bound ? static_cast<double>(a.edges) / static_cast<double>(a.edge_bound) : 0.0;
    return a;
}

struct CliqueResult {
    bool found = false;
    std::vector<std::size_t> witness;  // one vertex id per block when found
};

/// Decides whether the reduction graph has an m-clique by choosing one vertex
/// per block with backtracking. Only valid for graphs whose blocks are
/// independent sets, which holds for every output of reduce_to_clique.
inline CliqueResult has_clique_of_size(const LiteralGraph& graph, std::size_t m, std::size_t cap = 14) {
    if (m != graph.block_count) throw ContractError("clique size must equal the block count");
    if (m > cap) throw CapError("clique search capped at m=" + std::to_string(cap) + ", got m=" + std::to_string(m));
    const std::size_t nv = graph.vertices.size();
    std::vector<std::vector<bool>> adj(nv, std::vector<bool>(nv, false));
    for (auto [a, b] : graph.edges) adj[a][b] = adj[b][a] = true;
    std::vector<std::vector<std::size_t>> blocks(m);
    for (std::size_t v = 0; v < nv; ++v) {
        if (graph.vertices[v].clause >= m) throw ContractError("vertex refers to a missing block");
        blocks[graph.vertices[v].clause].push_back(v);
    }
    CliqueResult res;
    std::vector<std::size_t> chosen;
    chosen.reserve(m);
    auto search = [&](auto&& self, std::size_t block) -> bool {
        if (block == m) return true;
        for (std::size_t v : blocks[block]) {
            bool ok = true;
            for (std::size_t w : chosen)
                if (!adj[v][w]) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            chosen.push_back(v);
            if (self(self, block + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    res.found = search(search, 0);
    if (res.found) res.witness = chosen;
    return res;
}

/// Exhaustive satisfiability; returns the first model in counter order.
inline std::optional<std::vector<bool>> brute_force_sat(const CnfFormula& f, int cap = 20) {
    if (f.n > cap) throw CapError("exhaustive SAT capped at n=" + std::to_string(cap) + ", got n=" + std::to_string(f.n));
    std::vector<bool> x(static_cast<std::size_t>(f.n), false);
    const std::uint64_t limit = 1ULL << f.n;
    for (std::uint64_t a = 0; a < limit; ++a) {
        for (int v = 0; v < f.n; ++v) x[static_cast<std::size_t>(v)] = ((a >> v) & 1U) != 0;
        if (satisfies(f, x)) return x;
    }
    return std::nullopt;
}

/// Partial assignment induced by a clique witness; nullopt if two chosen
/// literals clash.
inline std::optional<std::vector<int>> witness_assignment(const LiteralGraph& g, const std::vector<std::size_t>& witness, int n) {
    std::vector<int> value(static_cast<std::size_t>(n) + 1, -1);
    for (std::size_t v : witness) {
        const Literal l = g.vertices[v].literal;
        const int want = is_negated(l) ? 0 : 1;
        int& slot = value[static_cast<std::size_t>(var_of(l))];
        if (slot != -1 && slot != want) return std::nullopt;
        slot = want;
    }
    return value;
}

struct EquivalenceReport {
    bool satisfiable = false;
    bool clique = false;
    bool equivalent = false;
};

/// Compares the two brute-force oracles on one formula.
inline EquivalenceReport check_equivalence(const CnfFormula& formula, int n_cap = 16, std::size_t m_cap = 14) {
    if (formula.n > n_cap) throw CapError("equivalence check capped at n=" + std::to_string(n_cap));
    if (formula.clauses.size() > m_cap) throw CapError("equivalence check capped at m=" + std::to_string(m_cap));
    EquivalenceReport r;
    r.satisfiable = brute_force_sat(formula, n_cap).has_value();
    const auto g = reduce_to_clique(formula);
    r.clique = has_clique_of_size(g, formula.clauses.size(), m_cap).found;
    r.equivalent = r.satisfiable == r.clique;
    return r;
}

} // namespace redcal
