#pragma once

// Three-in/two-out parity gadgets over F2: algebraic normal forms, interface
// matrices and their classification, the Index gadget, degree pullbacks and
// switching-path width arithmetic.

#include "redcal/error.hpp"
#include "redcal/lowdeg.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace redcal {

/// Truth table of f : {0,1}^3 -> {0,1}; bit r holds f at row r = 4a + 2b + c.
using Table8 = std::uint8_t;

/// Monomial sets use the same indexing: bit T of the ANF mask is the
/// coefficient of the monomial over variables T (a = 4, b = 2, c = 1).
inline constexpr std::uint8_t kLinearMonomials = 0b0001'0110;  // {c, b, a}
inline constexpr std::uint8_t kConstantMonomial = 0b0000'0001;
inline constexpr std::uint8_t kNonlinearMonomials = 0b1110'1000;  // {bc, ac, ab, abc}

/// Moebius transform over F2. It is its own inverse.
inline std::uint8_t moebius(std::uint8_t table) {
    std::uint8_t f = table;
    for (unsigned bit = 1; bit < 8; bit <<= 1)
        for (unsigned x = 0; x < 8; ++x)
            if (x & bit) f ^= static_cast<std::uint8_t>(((f >> (x ^ bit)) & 1U) << x);
    return f;
}

inline Table8 table_of(bool (*f)(bool, bool, bool)) {
    Table8 t = 0;
    for (unsigned r = 0; r < 8; ++r)
        if (f((r & 4) != 0, (r & 2) != 0, (r & 1) != 0)) t |= static_cast<Table8>(1U << r);
    return t;
}

inline constexpr Table8 kParityTable = 0b1001'0110;  // a ^ b ^ c

struct AnfGadget {
    std::array<Table8, 2> tables{};
    std::array<std::uint8_t, 2> anf{};
    std::array<bool, 2> alpha{};          // constant terms
    std::array<std::uint8_t, 2> beta{};   // linear part as a 3-bit row (a = 4, b = 2, c = 1)
    std::array<std::uint8_t, 2> core{};   // monomials of degree >= 2
    bool parity_preserving = false;       // s1 ^ s2 == a ^ b ^ c on all rows
};

inline std::uint8_t beta_row(std::uint8_t anf) {
    // monomial {a} sits at bit 4, {b} at bit 2, {c} at bit 1
    return static_cast<std::uint8_t>((((anf >> 4) & 1U) << 2) | (((anf >> 2) & 1U) << 1) | ((anf >> 1) & 1U));
}

inline AnfGadget anf_decompose(Table8 s1, Table8 s2) {
    AnfGadget g;
    g.tables = {s1, s2};
    for (int l = 0; l < 2; ++l) {
        g.anf[l] = moebius(g.tables[l]);
        g.alpha[l] = (g.anf[l] & kConstantMonomial) != 0;
        g.beta[l] = beta_row(g.anf[l]);
        g.core[l] = g.anf[l] & kNonlinearMonomials;
    }
    g.parity_preserving = static_cast<Table8>(s1 ^ s2) == kParityTable;
    return g;
}

/// Returns the common nonlinear core of a parity-preserving gadget.
inline std::uint8_t shared_core_check(const AnfGadget& g) {
    if (!g.parity_preserving) throw ContractError("shared core is only defined for parity-preserving gadgets");
    if (g.core[0] != g.core[1]) throw Error("parity-preserving gadget with distinct nonlinear cores");
    return g.core[0];
}

/// Gadget text: 8 lines "abc s1 s2" (e.g. "011 1 0"), rows in any order, each once.
inline AnfGadget parse_gadget(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    Table8 s1 = 0, s2 = 0;
    std::uint8_t seen = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string row;
        int a, b;
        if (!(ls >> row) || row[0] == '#') continue;
        if (row.size() != 3 || row.find_first_not_of("01") != std::string::npos || !(ls >> a >> b) || (a | b) > 1 || a < 0 || b < 0)
            throw ParseError(line_no, "expected 'abc s1 s2' with bits");
        const unsigned r = std::stoul(row, nullptr, 2);
        if (seen & (1U << r)) throw ParseError(line_no, "row " + row + " given twice");
        seen |= static_cast<std::uint8_t>(1U << r);
        if (a) s1 |= static_cast<Table8>(1U << r);
        if (b) s2 |= static_cast<Table8>(1U << r);
    }
    if (seen != 0xFF) throw ParseError(line_no, "gadget table must list all 8 rows");
    return anf_decompose(s1, s2);
}

inline std::string serialize_gadget(const AnfGadget& g) {
    std::ostringstream out;
    for (unsigned r = 0; r < 8; ++r)
        out << ((r >> 2) & 1U) << ((r >> 1) & 1U) << (r & 1U) << ' ' << ((g.tables[0] >> r) & 1U) << ' '
            << ((g.tables[1] >> r) & 1U) << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------
// Interface matrices.

/// Affine part s = A x ^ r of a gadget; rows are 3-bit masks (a = 4, b = 2, c = 1).
struct InterfaceMatrix {
    std::array<std::uint8_t, 2> rows{};
    std::array<bool, 2> offset{};

    bool column_sums_one() const noexcept { return (rows[0] ^ rows[1]) == 0b111; }
    bool offset_balanced() const noexcept { return offset[0] == offset[1]; }
    int rank() const noexcept {
        if (rows[0] == 0 && rows[1] == 0) return 0;
        if (rows[0] == 0 || rows[1] == 0 || rows[0] == rows[1]) return 1;
        return 2;
    }
    bool admissible() const noexcept { return column_sums_one() && rank() == 2; }

    friend bool operator==(const InterfaceMatrix&, const InterfaceMatrix&) = default;
};

inline InterfaceMatrix interface_of(const AnfGadget& g) { return {{g.beta[0], g.beta[1]}, {g.alpha[0], g.alpha[1]}}; }

/// The three displayed representatives with r = 0:
///   A1 = [100; 011], A2 = [010; 101], A3 = [001; 110].
inline const std::array<InterfaceMatrix, 3>& interface_representatives() {
    static const std::array<InterfaceMatrix, 3> reps{{{{0b100, 0b011}, {}}, {{0b010, 0b101}, {}}, {{0b001, 0b110}, {}}}};
    return reps;
}

enum class MixingGroup {
    row_swap,  // {I, swap}: the output mixings that keep 1^T A = (1,1,1)
    full_gl2   // all of GL2(F2)
};

/// The six elements of GL2(F2) as row operations on a 2-row matrix.
inline std::vector<std::array<std::uint8_t, 2>> gl2_orbit(const std::array<std::uint8_t, 2>& r) {
    const std::uint8_t a = r[0], b = r[1];
    const auto ab = static_cast<std::uint8_t>(a ^ b);
    return {{a, b}, {b, a}, {a, ab}, {ab, b}, {b, ab}, {ab, a}};
}

struct InterfaceClassification {
    MixingGroup group = MixingGroup::row_swap;
    std::vector<InterfaceMatrix> admissible;   // offset normalized to 0
    std::vector<int> class_of;                 // 1-based representative index per matrix
    std::vector<std::size_t> orbit_size;       // size of the full group orbit per matrix
    int class_count = 0;
};

/// Enumerates all 2x3 matrices over F2 with column sums (1,1,1) and rank 2
/// and sorts them into orbits of the chosen mixing group.
inline InterfaceClassification enumerate_interfaces(MixingGroup group = MixingGroup::row_swap) {
    InterfaceClassification out;
    out.group = group;
    for (unsigned m = 0; m < 64; ++m) {
        InterfaceMatrix A{{static_cast<std::uint8_t>(m >> 3), static_cast<std::uint8_t>(m & 7U)}, {}};
        if (A.admissible()) out.admissible.push_back(A);
    }
    const auto& reps = interface_representatives();
    std::vector<int> used(reps.size(), 0);
    for (const auto& A : out.admissible) {
        std::vector<std::array<std::uint8_t, 2>> orbit;
        if (group == MixingGroup::row_swap) {
            orbit = {A.rows, {A.rows[1], A.rows[0]}};
        } else {
            orbit = gl2_orbit(A.rows);
        }
        std::sort(orbit.begin(), orbit.end());
        orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
        int cls = 0;
        for (std::size_t i = 0; i < reps.size(); ++i)
            if (std::find(orbit.begin(), orbit.end(), reps[i].rows) != orbit.end()) cls = static_cast<int>(i) + 1;
        if (cls == 0) throw Error("admissible interface outside every representative orbit");
        used[static_cast<std::size_t>(cls - 1)] = 1;
        out.class_of.push_back(cls);
        out.orbit_size.push_back(orbit.size());
    }
    out.class_count = static_cast<int>(std::count(used.begin(), used.end(), 1));
    return out;
}

// ---------------------------------------------------------------------------
// Index gadget and pullbacks.

/// t = (1 ^ u) v0 ^ u v1.
inline bool index_eval(bool u, bool v0, bool v1) noexcept { return ((!u) && v0) != (u && v1); }

/// Disjoint (u, v0, v1) input triples; output j is the Index gadget on block j.
struct IndexWiring {
    int n_in = 0;
    std::vector<std::array<int, 3>> blocks;

    void validate() const {
        std::uint64_t used = 0;
        for (const auto& b : blocks)
            for (int v : b) {
                if (v < 0 || v >= n_in) throw ContractError("wiring refers to a missing input coordinate");
                if (used & (1ULL << v)) throw ContractError("wiring blocks overlap");
                used |= 1ULL << v;
            }
    }

    int n_out() const { return static_cast<int>(blocks.size()); }

    Assignment apply(Assignment x) const {
        Assignment y = 0;
        for (std::size_t j = 0; j < blocks.size(); ++j) {
            const auto& b = blocks[j];
            if (index_eval((x >> b[0]) & 1U, (x >> b[1]) & 1U, (x >> b[2]) & 1U)) y |= Assignment{1} << j;
        }
        return y;
    }
};

/// y = A x ^ r over F2; row j is the input mask feeding output j.
struct AffineWiring {
    int n_in = 0;
    std::vector<std::uint64_t> rows;
    std::uint64_t offset = 0;

    int n_out() const { return static_cast<int>(rows.size()); }

    Assignment apply(Assignment x) const {
        Assignment y = 0;
        for (std::size_t j = 0; j < rows.size(); ++j)
            if (((std::popcount(rows[j] & x) & 1) != 0) != (((offset >> j) & 1U) != 0)) y |= Assignment{1} << j;
        return y;
    }

    int max_row_weight() const {
        int w = 0;
        for (auto r : rows) w = std::max(w, std::popcount(r));
        return w;
    }
};

/// A gadget placed on three input coordinates (a, b, c).
struct GadgetBlock {
    AnfGadget gadget;
    std::array<int, 3> inputs{};
};

/// Blockwise wiring of affine gadgets; outputs 2j, 2j+1 come from block j.
/// Rejects gadgets with a nonlinear core and overlapping blocks.
inline AffineWiring affine_wiring(const std::vector<GadgetBlock>& blocks, int n_in) {
    AffineWiring w;
    w.n_in = n_in;
    std::uint64_t used = 0;
    for (const auto& blk : blocks) {
        if (blk.gadget.core[0] != 0 || blk.gadget.core[1] != 0) throw ContractError("gadget is not affine over F2");
        for (int v : blk.inputs) {
            if (v < 0 || v >= n_in) throw ContractError("wiring refers to a missing input coordinate");
            if (used & (1ULL << v)) throw ContractError("wiring blocks overlap");
            used |= 1ULL << v;
        }
        for (int l = 0; l < 2; ++l) {
            std::uint64_t row = 0;
            const std::uint8_t beta = blk.gadget.beta[l];
            if (beta & 4) row |= 1ULL << blk.inputs[0];
            if (beta & 2) row |= 1ULL << blk.inputs[1];
            if (beta & 1) row |= 1ULL << blk.inputs[2];
            if (blk.gadget.alpha[l]) w.offset |= 1ULL << w.rows.size();
            w.rows.push_back(row);
        }
    }
    return w;
}

struct PullbackResult {
    WalshPolynomial polynomial;  // q = p o G in the input basis
    int degree_out = 0;          // deg p
    int degree_in = 0;           // deg q (real multilinear degree)
    double sup_out = 0;          // sup of |p| over the output cube
    double sup_in = 0;           // sup of |q| over the input cube
};

namespace detail {
template <class Wiring>
PullbackResult pullback(const WalshPolynomial& p, const ProductProxy& out_proxy, const Wiring& wiring, const ProductProxy& in_proxy) {
    if (p.n != wiring.n_out() || out_proxy.n() != p.n) throw ContractError("polynomial does not live on the wiring outputs");
    if (in_proxy.n() != wiring.n_in) throw ContractError("input proxy does not match the wiring");
    const auto out_values = evaluate_all(p, out_proxy);
    std::vector<double> q(std::size_t{1} << wiring.n_in);
    for (Assignment x = 0; x < q.size(); ++x) q[x] = out_values[wiring.apply(x)];
    PullbackResult r;
    r.polynomial = expand(q, in_proxy, 1e-12);
    r.degree_out = p.degree();
    r.degree_in = r.polynomial.degree();
    for (double v : out_values) r.sup_out = std::max(r.sup_out, std::abs(v));
    for (double v : q) r.sup_in = std::max(r.sup_in, std::abs(v));
    return r;
}
} // namespace detail

/// Pullback through disjoint Index blocks. Every output is a real polynomial
/// of degree 2 in its block, so deg q <= 2 deg p and sup |q| <= sup |p|.
inline PullbackResult index_pullback(const WalshPolynomial& p, const ProductProxy& out_proxy, const IndexWiring& wiring,
                                     const ProductProxy& in_proxy) {
    wiring.validate();
    auto r = detail::pullback(p, out_proxy, wiring, in_proxy);
    if (r.degree_in > 2 * r.degree_out) throw Error("index pullback exceeded degree 2k");
    if (r.sup_in > r.sup_out + 1e-9) throw Error("index pullback increased the sup-norm");
    return r;
}

/// Pullback through an affine F2 wiring. The sup-norm never increases; the
/// real degree grows by at most the largest row weight, and is preserved
/// when every row has weight <= 1.
inline PullbackResult affine_pullback(const WalshPolynomial& p, const ProductProxy& out_proxy, const AffineWiring& wiring,
                                      const ProductProxy& in_proxy) {
    for (auto row : wiring.rows)
        if (wiring.n_in < 64 && (row >> wiring.n_in) != 0) throw ContractError("wiring refers to a missing input coordinate");
    auto r = detail::pullback(p, out_proxy, wiring, in_proxy);
    if (r.sup_in > r.sup_out + 1e-9) throw Error("affine pullback increased the sup-norm");
    return r;
}

// ---------------------------------------------------------------------------
// Switching-path arithmetic.

struct SwitchingRound {
    int round = 0;
    double width = 0;   // W_r
    double size = 0;    // M_r
};

struct SwitchingPath {
    double p = 0;                     // m^(-c/d)
    double width = 0;                 // W_d
    double size = 0;                  // M_d
    std::vector<SwitchingRound> trace;  // rounds 0..d
};

/// Iterates W_r = W_{r-1} / p and M_r = p M_{r-1} from W_0 = 1, M_0 = m.
inline SwitchingPath switching_path_widths(double m, int d, double c) {
    if (!(m >= 2)) throw ContractError("switching path needs m >= 2");
    if (d < 1) throw ContractError("switching path needs d >= 1");
    if (!(c > 0.0 && c < 1.0)) throw ContractError("switching exponent c must lie in (0, 1)");
    SwitchingPath path;
    path.p = std::pow(m, -c / d);
    double w = 1.0, s = m;
    path.trace.push_back({0, w, s});
    for (int r = 1; r <= d; ++r) {
        w /= path.p;
        s *= path.p;
        path.trace.push_back({r, w, s});
    }
    path.width = w;
    path.size = s;
    constexpr double rel = 1e-9;
    if (w > std::pow(m, c) * (1 + rel)) throw Error("width exceeded m^c");
    if (s > std::pow(m, 1 - c) * (1 + rel)) throw Error("size exceeded m^(1-c)");
    return path;
}

} // namespace redcal
