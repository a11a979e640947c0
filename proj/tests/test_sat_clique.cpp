#include "redcal/sat_clique.hpp"

#include <gtest/gtest.h>

#include <functional>

using namespace redcal;

namespace {

// Oracle clique search over all m-subsets of vertices, independent of block structure.
bool clique_by_subsets(const LiteralGraph& g, std::size_t m) {
    const std::size_t V = g.vertices.size();
    std::set<std::pair<std::size_t, std::size_t>> E(g.edges.begin(), g.edges.end());
    std::vector<std::size_t> pick;
    std::function<bool(std::size_t)> rec = [&](std::size_t start) {
        if (pick.size() == m) return true;
        for (std::size_t v = start; v < V; ++v) {
            bool ok = true;
            for (auto u : pick) ok = ok && E.count({u, v});
            if (!ok) continue;
            pick.push_back(v);
            if (rec(v + 1)) return true;
            pick.pop_back();
        }
        return false;
    };
    return rec(0);
}

} // namespace

TEST(Reduction, VertexAndEdgeCounts) {
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto f = random_cnf(6, 1 + s % 8, s);
        const auto g = reduce_to_clique(f);
        const auto a = size_account(g);
        EXPECT_EQ(a.vertices, 3 * f.clauses.size());
        EXPECT_LE(a.edges, a.edge_bound);
        EXPECT_EQ(a.edge_bound, 9 * f.clauses.size() * (f.clauses.size() - 1) / 2);
    }
}

TEST(Reduction, NoEdgesInsideBlocksOrBetweenComplements) {
    const auto f = random_cnf(5, 6, 3);
    const auto g = reduce_to_clique(f);
    for (auto [u, v] : g.edges) {
        EXPECT_NE(g.vertices[u].clause, g.vertices[v].clause);
        EXPECT_NE(g.vertices[u].literal, -g.vertices[v].literal);
        EXPECT_LT(u, v);
    }
}

TEST(Reduction, TwoComplementaryUnitLikeClauses) {
    const CnfFormula f{3, {make_clause(1, 2, 3), make_clause(-1, -2, -3)}};
    const auto g = reduce_to_clique(f);
    EXPECT_EQ(g.edges.size(), 6u);  // 9 cross pairs minus 3 complementary
}

TEST(Reduction, EmptyFormula) {
    const auto g = reduce_to_clique(CnfFormula{3, {}});
    EXPECT_TRUE(g.vertices.empty());
    EXPECT_TRUE(has_clique_of_size(g, 0).found);
}

TEST(Clique, BacktrackingMatchesSubsetOracle) {
    for (std::uint64_t s = 0; s < 200; ++s) {
        const auto f = random_cnf(3 + s % 3, 1 + s % 5, 1000 + s);
        const auto g = reduce_to_clique(f);
        EXPECT_EQ(has_clique_of_size(g, f.clauses.size()).found, clique_by_subsets(g, f.clauses.size())) << s;
    }
}

TEST(Clique, WitnessYieldsSatisfyingAssignment) {
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto f = random_cnf(6, 5, s);
        const auto g = reduce_to_clique(f);
        const auto r = has_clique_of_size(g, f.clauses.size());
        if (!r.found) continue;
        const auto partial = witness_assignment(g, r.witness, f.n);
        ASSERT_TRUE(partial.has_value());
        std::vector<bool> x(f.n);
        for (int i = 0; i < f.n; ++i) x[i] = (*partial)[i + 1] == 1;
        EXPECT_TRUE(satisfies(f, x));
    }
}

TEST(Equivalence, SeededFormulas) {
    for (std::uint64_t s = 0; s < 60; ++s) {
        const auto f = random_cnf(4 + s % 9, 1 + s % 6, 77 + s);
        EXPECT_TRUE(check_equivalence(f).equivalent) << s;
    }
}

TEST(Equivalence, UnsatisfiableInstanceHasNoClique) {
    // all 8 sign patterns on one triple
    CnfFormula f{3, {}};
    for (int s = 0; s < 8; ++s) f.clauses.push_back(make_clause(s & 4 ? -1 : 1, s & 2 ? -2 : 2, s & 1 ? -3 : 3));
    const auto r = check_equivalence(f);
    EXPECT_FALSE(r.satisfiable);
    EXPECT_FALSE(r.clique);
}

TEST(Caps, Enforced) {
    EXPECT_THROW(brute_force_sat(CnfFormula{21, {}}), CapError);
    EXPECT_THROW(check_equivalence(random_cnf(5, 15, 1)), CapError);
}
