#pragma once

// 3XOR systems, 3CNF formulas and literal graphs, with their text formats and
// seeded generators.

#include "redcal/error.hpp"
#include "redcal/rng.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace redcal {

/// Signed 1-based variable index, DIMACS style: -3 is the negation of x3.
using Literal = int;

inline int var_of(Literal l) noexcept { return std::abs(l); }
inline bool is_negated(Literal l) noexcept { return l < 0; }

/// Three literals over three distinct variables, sorted by variable index.
using Clause = std::array<Literal, 3>;

/// Sorts literals by variable; rejects repeated variables (which covers
/// tautologies and duplicated literals).
inline Clause make_clause(Literal a, Literal b, Literal c) {
    Clause cl{a, b, c};
    std::sort(cl.begin(), cl.end(), [](Literal x, Literal y) { return var_of(x) < var_of(y); });
    if (var_of(cl[0]) == 0) throw ContractError("literal 0 is not a variable");
    if (var_of(cl[0]) == var_of(cl[1]) || var_of(cl[1]) == var_of(cl[2])) {
        const bool tautology = cl[0] == -cl[1] || cl[1] == -cl[2];
        throw ContractError(tautology ? "tautological clause" : "duplicated literal in clause");
    }
    return cl;
}

struct CnfFormula {
    int n = 0;
    std::vector<Clause> clauses;

    friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

struct XorConstraint {
    int i = 0, j = 0, k = 0;  // 1 <= i < j < k <= n
    bool parity = false;

    std::array<int, 3> triple() const { return {i, j, k}; }
    friend bool operator==(const XorConstraint&, const XorConstraint&) = default;
    friend auto operator<=>(const XorConstraint&, const XorConstraint&) = default;
};

struct XorInstance {
    int n = 0;
    std::vector<XorConstraint> constraints;

    friend bool operator==(const XorInstance&, const XorInstance&) = default;
};

inline bool satisfies(const XorInstance& inst, const std::vector<bool>& x) {
    for (const auto& c : inst.constraints)
        if (((x[c.i - 1] != x[c.j - 1]) != x[c.k - 1]) != c.parity) return false;
    return true;
}

inline bool satisfies(const Clause& cl, const std::vector<bool>& x) {
    for (Literal l : cl)
        if (x[var_of(l) - 1] != is_negated(l)) return true;
    return false;
}

inline bool satisfies(const CnfFormula& f, const std::vector<bool>& x) {
    return std::all_of(f.clauses.begin(), f.clauses.end(), [&](const Clause& c) { return satisfies(c, x); });
}

/// Sorts the triple and checks range and the incidence model (each unordered
/// triple at most once).
inline XorInstance canonicalize(XorInstance inst) {
    if (inst.n < 0) throw ContractError("negative variable count");
    std::set<std::array<int, 3>> seen;
    for (auto& c : inst.constraints) {
        std::array<int, 3> t{c.i, c.j, c.k};
        std::sort(t.begin(), t.end());
        if (t[0] < 1 || t[2] > inst.n) throw RangeError("variable index out of range in XOR constraint");
        if (t[0] == t[1] || t[1] == t[2]) throw ContractError("XOR constraint repeats a variable");
        if (!seen.insert(t).second)
            throw ContractError("incidence model violated: triple {" + std::to_string(t[0]) + "," +
                                std::to_string(t[1]) + "," + std::to_string(t[2]) + "} appears twice");
        c.i = t[0];
        c.j = t[1];
        c.k = t[2];
    }
    return inst;
}

// ---------------------------------------------------------------------------
// Text formats.

namespace detail {

struct LineReader {
    std::istringstream in;
    std::size_t line_no = 0;
    std::string line;

    explicit LineReader(std::string_view text) : in{std::string(text)} {}

    /// Next line that is neither blank nor a 'c' comment.
    bool next() {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            const auto first = line.find_first_not_of(" \t");
            if (first == std::string::npos || line[first] == 'c') continue;
            return true;
        }
        return false;
    }
};

inline std::pair<long, long> parse_header(LineReader& r, std::string_view kind) {
    if (!r.next()) throw ParseError(r.line_no, "missing 'p " + std::string(kind) + "' header");
    std::istringstream hs(r.line);
    std::string p, k;
    long a = -1, b = -1;
    if (!(hs >> p >> k >> a >> b) || p != "p" || k != kind || a < 0 || b < 0)
        throw ParseError(r.line_no, "malformed header, expected 'p " + std::string(kind) + " <a> <b>'");
    std::string extra;
    if (hs >> extra) throw ParseError(r.line_no, "trailing tokens in header");
    return {a, b};
}

} // namespace detail

/// DIMACS CNF with exactly three literals per clause. Clauses may span lines.
inline CnfFormula parse_cnf(std::string_view text) {
    detail::LineReader r(text);
    auto [n, m] = detail::parse_header(r, "cnf");
    CnfFormula f;
    f.n = static_cast<int>(n);
    std::vector<Literal> pending;
    std::size_t clause_line = 0;
    while (r.next()) {
        std::istringstream ls(r.line);
        std::string tok;
        while (ls >> tok) {
            char* end = nullptr;
            const long v = std::strtol(tok.c_str(), &end, 10);
            if (*end != '\0') throw ParseError(r.line_no, "not an integer literal: '" + tok + "'");
            if (pending.empty()) clause_line = r.line_no;
            if (v == 0) {
                if (pending.size() != 3)
                    throw ParseError(clause_line, "clause has " + std::to_string(pending.size()) +
                                                      " literals, expected exactly 3");
                for (Literal l : pending)
                    if (var_of(l) > n) throw ParseError(clause_line, "variable index " + std::to_string(var_of(l)) + " exceeds n=" + std::to_string(n));
                try {
                    f.clauses.push_back(make_clause(pending[0], pending[1], pending[2]));
                } catch (const ContractError& e) {
                    throw ParseError(clause_line, e.what());
                }
                pending.clear();
            } else {
                if (pending.size() == 3)
                    throw ParseError(clause_line, "clause has more than 3 literals");
                pending.push_back(static_cast<Literal>(v));
            }
        }
    }
    if (!pending.empty()) throw ParseError(clause_line, "unterminated clause (missing 0)");
    if (static_cast<long>(f.clauses.size()) != m)
        throw ParseError(r.line_no, "header declares " + std::to_string(m) + " clauses, found " +
                                        std::to_string(f.clauses.size()));
    return f;
}

inline std::string serialize_cnf(const CnfFormula& f) {
    std::ostringstream out;
    out << "p cnf " << f.n << ' ' << f.clauses.size() << '\n';
    for (const auto& c : f.clauses) out << c[0] << ' ' << c[1] << ' ' << c[2] << " 0\n";
    return out.str();
}

/// "p xor n m" header followed by m lines "i j k b".
inline XorInstance parse_xor(std::string_view text) {
    detail::LineReader r(text);
    auto [n, m] = detail::parse_header(r, "xor");
    XorInstance inst;
    inst.n = static_cast<int>(n);
    std::set<std::array<int, 3>> seen;
    while (r.next()) {
        std::istringstream ls(r.line);
        long i, j, k, b;
        if (!(ls >> i >> j >> k >> b)) throw ParseError(r.line_no, "expected 'i j k b'");
        std::string extra;
        if (ls >> extra) throw ParseError(r.line_no, "trailing tokens");
        if (b != 0 && b != 1) throw ParseError(r.line_no, "parity must be 0 or 1");
        std::array<int, 3> t{static_cast<int>(i), static_cast<int>(j), static_cast<int>(k)};
        std::sort(t.begin(), t.end());
        if (t[0] < 1 || t[2] > n) throw ParseError(r.line_no, "variable index out of range");
        if (t[0] == t[1] || t[1] == t[2]) throw ParseError(r.line_no, "constraint repeats a variable");
        if (!seen.insert(t).second) throw ParseError(r.line_no, "duplicate triple violates the incidence model");
        inst.constraints.push_back({t[0], t[1], t[2], b == 1});
    }
    if (static_cast<long>(inst.constraints.size()) != m)
        throw ParseError(r.line_no, "header declares " + std::to_string(m) + " constraints, found " +
                                        std::to_string(inst.constraints.size()));
    return inst;
}

inline std::string serialize_xor(const XorInstance& inst) {
    std::ostringstream out;
    out << "p xor " << inst.n << ' ' << inst.constraints.size() << '\n';
    for (const auto& c : inst.constraints) out << c.i << ' ' << c.j << ' ' << c.k << ' ' << (c.parity ? 1 : 0) << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------
// Literal graphs.

struct GraphVertex {
    std::size_t clause = 0;  // 0-based clause (block) index
    Literal literal = 0;

    friend bool operator==(const GraphVertex&, const GraphVertex&) = default;
};

struct LiteralGraph {
    std::size_t block_count = 0;
    std::vector<GraphVertex> vertices;                        // 3 * block_count, block-major
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // u < v, lexicographic

    friend bool operator==(const LiteralGraph&, const LiteralGraph&) = default;
};

/// DIMACS-like edge format. Vertex labels travel in "c v <id> <clause> <lit>"
/// comment lines, ids 1-based.
inline std::string serialize_graph(const LiteralGraph& g) {
    std::ostringstream out;
    out << "p edge " << g.vertices.size() << ' ' << g.edges.size() << '\n';
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
        out << "c v " << v + 1 << ' ' << g.vertices[v].clause + 1 << ' ' << g.vertices[v].literal << '\n';
    for (auto [a, b] : g.edges) out << "e " << a + 1 << ' ' << b + 1 << '\n';
    return out.str();
}

inline LiteralGraph parse_graph(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    long nv = -1, ne = -1;
    LiteralGraph g;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "p") {
            std::string kind;
            if (!(ls >> kind >> nv >> ne) || kind != "edge" || nv < 0 || ne < 0 || nv % 3 != 0)
                throw ParseError(line_no, "malformed 'p edge' header");
            g.vertices.assign(static_cast<std::size_t>(nv), {});
            g.block_count = static_cast<std::size_t>(nv) / 3;
        } else if (tag == "c") {
            std::string sub;
            if (ls >> sub && sub == "v") {
                long id, clause, lit;
                if (!(ls >> id >> clause >> lit) || id < 1 || id > nv || clause < 1 || lit == 0)
                    throw ParseError(line_no, "malformed vertex label");
                g.vertices[static_cast<std::size_t>(id - 1)] = {static_cast<std::size_t>(clause - 1), static_cast<Literal>(lit)};
            }
        } else if (tag == "e") {
            long a, b;
            if (nv < 0) throw ParseError(line_no, "edge before header");
            if (!(ls >> a >> b) || a < 1 || b < 1 || a > nv || b > nv || a == b)
                throw ParseError(line_no, "malformed edge");
            g.edges.emplace_back(static_cast<std::size_t>(std::min(a, b) - 1), static_cast<std::size_t>(std::max(a, b) - 1));
        } else {
            throw ParseError(line_no, "unknown line tag '" + tag + "'");
        }
    }
    if (nv < 0) throw ParseError(line_no, "missing 'p edge' header");
    if (static_cast<long>(g.edges.size()) != ne) throw ParseError(line_no, "edge count does not match header");
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

// ---------------------------------------------------------------------------
// Seeded generators.

inline std::uint64_t choose3(std::uint64_t n) { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; }

/// The `rank`-th triple (0-based) of {1..n} in lexicographic order.
inline std::array<int, 3> unrank_triple(int n, std::uint64_t rank) {
    std::array<int, 3> t{};
    int next = 1;
    for (int slot = 0; slot < 3; ++slot) {
        for (int v = next;; ++v) {
            const std::uint64_t rest = static_cast<std::uint64_t>(n - v);
            const int need = 2 - slot;
            const std::uint64_t block = need == 2 ? rest * (rest - 1) / 2 : need == 1 ? rest : 1;
            if (rank < block) {
                t[slot] = v;
                next = v + 1;
                break;
            }
            rank -= block;
        }
    }
    return t;
}

inline std::uint64_t rank_triple(int n, std::array<int, 3> t) {
    std::uint64_t rank = 0;
    int next = 1;
    for (int slot = 0; slot < 3; ++slot) {
        const int need = 2 - slot;
        for (int v = next; v < t[slot]; ++v) {
            const std::uint64_t rest = static_cast<std::uint64_t>(n - v);
            rank += need == 2 ? rest * (rest - 1) / 2 : need == 1 ? rest : 1;
        }
        next = t[slot] + 1;
    }
    return rank;
}

/// m distinct triples without replacement. Draw j picks an index r uniformly
/// in [0, C(n,3) - j) into the lexicographic enumeration of the triples not
/// chosen yet. With a plant s every parity is s_i ^ s_j ^ s_k; otherwise
/// each parity is one further draw.
inline XorInstance random_xor_instance(int n, std::uint64_t m, std::uint64_t seed,
                                       const std::optional<std::vector<bool>>& planted = std::nullopt) {
    if (n < 3) throw ContractError("random_xor_instance requires n >= 3");
    const std::uint64_t total = choose3(static_cast<std::uint64_t>(n));
    if (m > total) throw RangeError("m=" + std::to_string(m) + " exceeds C(n,3)=" + std::to_string(total));
    if (planted && planted->size() != static_cast<std::size_t>(n)) throw ContractError("plant length differs from n");
    SplitMix64 rng(seed);
    std::vector<std::uint64_t> chosen;  // sorted ranks
    chosen.reserve(m);
    XorInstance inst;
    inst.n = n;
    inst.constraints.reserve(m);
    for (std::uint64_t j = 0; j < m; ++j) {
        std::uint64_t rank = rng.below(total - j);
        auto it = chosen.begin();
        for (; it != chosen.end() && *it <= rank; ++it) ++rank;
        chosen.insert(it, rank);
        const auto t = unrank_triple(n, rank);
        bool b;
        if (planted) {
            const auto& s = *planted;
            b = (s[t[0] - 1] != s[t[1] - 1]) != s[t[2] - 1];
        } else {
            b = rng.bit();
        }
        inst.constraints.push_back({t[0], t[1], t[2], b});
    }
    return inst;
}

inline std::vector<bool> random_assignment(int n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<bool> s(static_cast<std::size_t>(n));
    for (auto&& b : s) b = rng.bit();
    return s;
}

/// m clauses, each on three distinct variables drawn uniformly, signs uniform.
inline CnfFormula random_cnf(int n, std::size_t m, std::uint64_t seed) {
    if (n < 3) throw ContractError("random_cnf requires n >= 3");
    SplitMix64 rng(seed);
    CnfFormula f;
    f.n = n;
    const std::uint64_t total = choose3(static_cast<std::uint64_t>(n));
    for (std::size_t c = 0; c < m; ++c) {
        const auto t = unrank_triple(n, rng.below(total));
        f.clauses.push_back(make_clause(rng.bit() ? -t[0] : t[0], rng.bit() ? -t[1] : t[1], rng.bit() ? -t[2] : t[2]));
    }
    return f;
}

} // namespace redcal
