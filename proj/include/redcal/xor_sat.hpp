#pragma once

// Auxiliary-free 3XOR -> 3SAT translation, canonical block identifiers, the
// linear-time inverse and two independent consistency checkers.

#include "redcal/error.hpp"
#include "redcal/instances.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace redcal {

/// A clause over a sorted triple (x, y, z) is identified by its sign vector:
/// bit 2 set iff x is negated, bit 1 for y, bit 0 for z.
using SignVector = std::uint8_t;

/// Sign vectors of the four clauses emitted for parity b, in emission order.
///   b=1: (x|y|z) (x|~y|~z) (~x|y|~z) (~x|~y|z)
///   b=0: (~x|~y|~z) (x|y|~z) (x|~y|z) (~x|y|z)
inline constexpr std::array<SignVector, 4> parity_template(bool b) noexcept {
    return b ? std::array<SignVector, 4>{0b000, 0b011, 0b101, 0b110}
             : std::array<SignVector, 4>{0b111, 0b001, 0b010, 0b100};
}

inline Clause clause_from_signs(int x, int y, int z, SignVector s) {
    return {(s & 4) ? -x : x, (s & 2) ? -y : y, (s & 1) ? -z : z};
}

inline CnfFormula translate(const XorInstance& instance) {
    CnfFormula f;
    f.n = instance.n;
    f.clauses.reserve(4 * instance.constraints.size());
    for (const auto& c : instance.constraints)
        for (SignVector s : parity_template(c.parity)) f.clauses.push_back(clause_from_signs(c.i, c.j, c.k, s));
    return f;
}

enum class BlockStatus : std::uint8_t { forbid, allow };

/// Status of assignment row r = 4x + 2y + z under the block for parity b,
/// evaluated clause by clause.
inline std::array<BlockStatus, 8> block_truth_table(bool b) {
    std::array<BlockStatus, 8> table{};
    for (unsigned row = 0; row < 8; ++row) {
        const std::vector<bool> x{(row & 4) != 0, (row & 2) != 0, (row & 1) != 0};
        bool ok = true;
        for (SignVector s : parity_template(b)) ok = ok && satisfies(clause_from_signs(1, 2, 3, s), x);
        table[row] = ok ? BlockStatus::allow : BlockStatus::forbid;
    }
    return table;
}

/// A clause group that is not the image of any XOR constraint.
class NotInImageError : public Error {
public:
    NotInImageError(std::array<int, 3> triple, const std::string& why)
        : Error("triple {" + std::to_string(triple[0]) + "," + std::to_string(triple[1]) + "," +
                std::to_string(triple[2]) + "} is not in the image: " + why),
          triple_(triple) {}
    const std::array<int, 3>& triple() const noexcept { return triple_; }

private:
    std::array<int, 3> triple_;
};

struct CanonicalId {
    std::array<int, 3> triple{};
    bool parity = false;
    std::array<SignVector, 4> canonical_list{};  // sorted ascending

    friend bool operator==(const CanonicalId&, const CanonicalId&) = default;
};

namespace detail {
inline std::array<int, 3> support(const Clause& c) { return {var_of(c[0]), var_of(c[1]), var_of(c[2])}; }

inline SignVector signs(const Clause& c) {
    return static_cast<SignVector>((is_negated(c[0]) ? 4 : 0) | (is_negated(c[1]) ? 2 : 0) | (is_negated(c[2]) ? 1 : 0));
}

inline Clause sorted_clause(Clause c) {
    std::sort(c.begin(), c.end(), [](Literal a, Literal b) { return var_of(a) < var_of(b); });
    return c;
}

inline std::array<SignVector, 4> sorted_template(bool b) {
    auto t = parity_template(b);
    std::sort(t.begin(), t.end());
    return t;
}
} // namespace detail

/// Identifies a block from its clauses in any order and with literals in any
/// order inside each clause.
inline CanonicalId canonical_block_id(std::span<const Clause> block) {
    if (block.empty()) throw NotInImageError({0, 0, 0}, "empty block");
    const auto triple = detail::support(detail::sorted_clause(block.front()));
    if (block.size() != 4)
        throw NotInImageError(triple, "expected 4 clauses, found " + std::to_string(block.size()));
    CanonicalId id;
    id.triple = triple;
    for (std::size_t c = 0; c < 4; ++c) {
        const Clause sorted = detail::sorted_clause(block[c]);
        if (detail::support(sorted) != triple) throw NotInImageError(triple, "clause support differs from the block triple");
        id.canonical_list[c] = detail::signs(sorted);
    }
    std::sort(id.canonical_list.begin(), id.canonical_list.end());
    if (id.canonical_list == detail::sorted_template(true)) {
        id.parity = true;
    } else if (id.canonical_list == detail::sorted_template(false)) {
        id.parity = false;
    } else {
        throw NotInImageError(triple, "clause multiset matches neither parity template");
    }
    return id;
}

/// Groups clauses by triple in one pass (first-appearance order) and matches
/// every group against the templates.
inline XorInstance invert(const CnfFormula& formula) {
    struct Group {
        std::array<int, 3> triple;
        std::vector<Clause> clauses;
    };
    std::vector<Group> groups;
    std::unordered_map<std::uint64_t, std::size_t> index;
    index.reserve(formula.clauses.size() / 4 + 1);
    for (const auto& raw : formula.clauses) {
        const Clause c = detail::sorted_clause(raw);
        const auto t = detail::support(c);
        const std::uint64_t key = (static_cast<std::uint64_t>(t[0]) << 42) | (static_cast<std::uint64_t>(t[1]) << 21) |
                                  static_cast<std::uint64_t>(t[2]);
        auto [it, fresh] = index.try_emplace(key, groups.size());
        if (fresh) groups.push_back({t, {}});
        auto& g = groups[it->second];
        if (g.clauses.size() == 4)
            throw NotInImageError(t, "more than 4 clauses on one triple");
        g.clauses.push_back(c);
    }
    XorInstance out;
    out.n = formula.n;
    out.constraints.reserve(groups.size());
    for (const auto& g : groups) {
        const auto id = canonical_block_id(g.clauses);
        out.constraints.push_back({id.triple[0], id.triple[1], id.triple[2], id.parity});
    }
    return out;
}

/// Exhaustive search over 2^n assignments; returns the lexicographically
/// first satisfying assignment (x1 as least significant bit of the counter).
inline std::optional<std::vector<bool>> check_consistency_brute(const XorInstance& instance, int cap = 20) {
    if (instance.n > cap)
        throw CapError("exhaustive consistency check capped at n=" + std::to_string(cap) + ", got n=" + std::to_string(instance.n));
    std::vector<std::uint64_t> masks;
    std::vector<bool> parities;
    for (const auto& c : instance.constraints) {
        masks.push_back((1ULL << (c.i - 1)) | (1ULL << (c.j - 1)) | (1ULL << (c.k - 1)));
        parities.push_back(c.parity);
    }
    const std::uint64_t limit = 1ULL << instance.n;
    for (std::uint64_t x = 0; x < limit; ++x) {
        bool ok = true;
        for (std::size_t r = 0; r < masks.size() && ok; ++r)
            ok = ((std::popcount(x & masks[r]) & 1) != 0) == parities[r];
        if (ok) {
            std::vector<bool> a(static_cast<std::size_t>(instance.n));
            for (int v = 0; v < instance.n; ++v) a[static_cast<std::size_t>(v)] = ((x >> v) & 1U) != 0;
            return a;
        }
    }
    return std::nullopt;
}

/// Gaussian elimination over F2; free variables are set to 0.
inline std::optional<std::vector<bool>> solve_gf2(const XorInstance& instance) {
    const std::size_t n = static_cast<std::size_t>(instance.n);
    const std::size_t words = n / 64 + 1;  // one extra bit column for the parity
    const std::size_t rhs = n;
    std::vector<std::vector<std::uint64_t>> rows;
    rows.reserve(instance.constraints.size());
    auto set = [](std::vector<std::uint64_t>& r, std::size_t bit) { r[bit / 64] ^= 1ULL << (bit % 64); };
    auto get = [](const std::vector<std::uint64_t>& r, std::size_t bit) { return ((r[bit / 64] >> (bit % 64)) & 1U) != 0; };
    for (const auto& c : instance.constraints) {
        std::vector<std::uint64_t> r(words, 0);
        set(r, static_cast<std::size_t>(c.i - 1));
        set(r, static_cast<std::size_t>(c.j - 1));
        set(r, static_cast<std::size_t>(c.k - 1));
        if (c.parity) set(r, rhs);
        rows.push_back(std::move(r));
    }
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
        std::size_t sel = rank;
        while (sel < rows.size() && !get(rows[sel], col)) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[rank], rows[sel]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != rank && get(rows[r], col))
                for (std::size_t w = 0; w < words; ++w) rows[r][w] ^= rows[rank][w];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (std::size_t r = rank; r < rows.size(); ++r)
        if (get(rows[r], rhs)) return std::nullopt;  // 0 = 1
    std::vector<bool> x(n, false);
    for (std::size_t r = 0; r < rank; ++r) x[pivot_col[r]] = get(rows[r], rhs);
    return x;
}

} // namespace redcal
