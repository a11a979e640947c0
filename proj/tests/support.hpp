#pragma once

// Seeded generators shared by the unit suites and the acceptance binary.

#include "redcal/lowdeg.hpp"
#include "redcal/measure.hpp"
#include "redcal/rng.hpp"

#include <vector>

namespace redcal::testing {

/// Random distribution over points [0, support) with some zero masses.
inline FiniteDistribution<std::uint64_t> random_distribution(SplitMix64& rng, std::uint64_t support, double zero_rate = 0.2) {
    std::vector<std::pair<std::uint64_t, double>> w;
    for (std::uint64_t x = 0; x < support; ++x) {
        if (rng.uniform() < zero_rate) continue;
        w.emplace_back(x, rng.uniform() + 1e-3);
    }
    if (w.empty()) w.emplace_back(rng.below(support), 1.0);
    return FiniteDistribution<std::uint64_t>::from_weights(w);
}

/// Random exact distribution with small integer weights.
inline FiniteDistribution<std::uint64_t, Rational> random_rational_distribution(SplitMix64& rng, std::uint64_t support) {
    std::vector<std::pair<std::uint64_t, Rational>> w;
    for (std::uint64_t x = 0; x < support; ++x) w.emplace_back(x, Rational(static_cast<long>(rng.below(5))));
    w.emplace_back(rng.below(support), Rational(1));
    return FiniteDistribution<std::uint64_t, Rational>::from_weights(w);
}

inline std::vector<double> random_biases(SplitMix64& rng, int n, double alpha) {
    std::vector<double> p(static_cast<std::size_t>(n));
    for (auto& v : p) v = alpha + (1 - 2 * alpha) * rng.uniform();
    return p;
}

/// Random Walsh polynomial with every |S| <= k coefficient drawn in [-1, 1].
inline WalshPolynomial random_polynomial(SplitMix64& rng, int n, int k, double density = 1.0) {
    WalshPolynomial p(n, k);
    for (Subset s : low_degree_subsets(n, k))
        if (rng.uniform() < density) p.set(s, 2 * rng.uniform() - 1);
    return p;
}

} // namespace redcal::testing
