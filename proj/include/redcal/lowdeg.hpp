#pragma once

// Biased Walsh analysis over product proxies on {0,1}^n.
//
// Assignments and subsets are bit masks: bit i stands for coordinate i
// (0-based). Exhaustive routines enumerate all 2^n assignments and are capped.

#include "redcal/error.hpp"
#include "redcal/lp.hpp"
#include "redcal/measure.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace redcal {

using Assignment = std::uint64_t;
using Subset = std::uint64_t;
using AssignmentDistribution = FiniteDistribution<Assignment>;

class DegreeError : public ContractError {
public:
    using ContractError::ContractError;
};

inline int subset_size(Subset s) noexcept { return std::popcount(s); }

/// All subsets of [n] with at most k elements, in increasing mask order.
inline std::vector<Subset> low_degree_subsets(int n, int k) {
    std::vector<Subset> out;
    const Subset limit = Subset{1} << n;
    for (Subset s = 0; s < limit; ++s)
        if (subset_size(s) <= k) out.push_back(s);
    return out;
}

/// Independent bits with Pr[x_i = 1] = p_i, each inside [alpha, 1 - alpha].
class ProductProxy {
public:
    ProductProxy(std::vector<double> biases, double alpha) : p_(std::move(biases)), alpha_(alpha) {
        if (!(alpha > 0.0 && alpha < 0.5)) throw ContractError("bias window alpha must lie in (0, 1/2)");
        if (p_.size() > 62) throw CapError("at most 62 coordinates are supported");
        for (double pi : p_)
            if (!(pi >= alpha && pi <= 1.0 - alpha)) throw ContractError("bias outside the window [alpha, 1-alpha]");
        sigma_.reserve(p_.size());
        for (double pi : p_) sigma_.push_back(std::sqrt(pi * (1.0 - pi)));
    }

    static ProductProxy uniform(int n, double bias = 0.5, double alpha = 0.25) {
        return ProductProxy(std::vector<double>(static_cast<std::size_t>(n), bias), std::min(alpha, std::min(bias, 1.0 - bias)));
    }

    int n() const noexcept { return static_cast<int>(p_.size()); }
    double bias(int i) const { return p_[static_cast<std::size_t>(i)]; }
    double alpha() const noexcept { return alpha_; }
    const std::vector<double>& biases() const noexcept { return p_; }

    /// Normalized coordinate (x_i - p_i) / sqrt(p_i (1 - p_i)).
    double z(int i, bool bit) const {
        const auto k = static_cast<std::size_t>(i);
        return ((bit ? 1.0 : 0.0) - p_[k]) / sigma_[k];
    }

    double probability(Assignment x) const {
        double pr = 1.0;
        for (int i = 0; i < n(); ++i) pr *= ((x >> i) & 1U) ? p_[static_cast<std::size_t>(i)] : 1.0 - p_[static_cast<std::size_t>(i)];
        return pr;
    }

    /// E_u[chi_S] by per-coordinate factorization.
    double character_mean(Subset s) const {
        double e = 1.0;
        for (int i = 0; i < n(); ++i)
            if ((s >> i) & 1U) e *= p_[static_cast<std::size_t>(i)] * z(i, true) + (1.0 - p_[static_cast<std::size_t>(i)]) * z(i, false);
        return e;
    }

    AssignmentDistribution distribution(int cap = 20) const {
        if (n() > cap) throw CapError("proxy enumeration capped at n=" + std::to_string(cap));
        std::vector<std::pair<Assignment, double>> w;
        const Assignment limit = Assignment{1} << n();
        w.reserve(limit);
        for (Assignment x = 0; x < limit; ++x) w.emplace_back(x, probability(x));
        return AssignmentDistribution::from_weights(w);
    }

private:
    std::vector<double> p_;
    std::vector<double> sigma_;
    double alpha_;
};

inline double chi_eval(Subset s, Assignment x, const ProductProxy& proxy) {
    double v = 1.0;
    for (int i = 0; i < proxy.n(); ++i)
        if ((s >> i) & 1U) v *= proxy.z(i, ((x >> i) & 1U) != 0);
    return v;
}

/// Multilinear polynomial in the biased character basis.
struct WalshPolynomial {
    int n = 0;
    int degree_bound = 0;
    std::map<Subset, double> coeffs;

    WalshPolynomial() = default;
    WalshPolynomial(int n_, int k, std::map<Subset, double> c = {}) : n(n_), degree_bound(k), coeffs(std::move(c)) {
        for (const auto& [s, v] : coeffs) check(s);
    }

    void set(Subset s, double v) {
        check(s);
        coeffs[s] = v;
    }

    double coeff(Subset s) const {
        auto it = coeffs.find(s);
        return it == coeffs.end() ? 0.0 : it->second;
    }

    /// Largest |S| with |coeff| > tol (0 for the zero polynomial).
    int degree(double tol = 1e-9) const {
        int d = 0;
        for (const auto& [s, v] : coeffs)
            if (std::abs(v) > tol) d = std::max(d, subset_size(s));
        return d;
    }

    double eval(Assignment x, const ProductProxy& proxy) const {
        double v = 0.0;
        for (const auto& [s, c] : coeffs) v += c * chi_eval(s, x, proxy);
        return v;
    }

private:
    void check(Subset s) const {
        if (n < 64 && (s >> n) != 0) throw ContractError("subset refers to a coordinate beyond n");
        if (subset_size(s) > degree_bound) throw DegreeError("subset exceeds the polynomial's degree bound");
    }
};

/// Values of p on every assignment (index = assignment mask).
inline std::vector<double> evaluate_all(const WalshPolynomial& p, const ProductProxy& proxy, int cap = 20) {
    if (proxy.n() != p.n) throw ContractError("proxy and polynomial dimensions differ");
    if (p.n > cap) throw CapError("exhaustive evaluation capped at n=" + std::to_string(cap));
    std::vector<double> v(std::size_t{1} << p.n, 0.0);
    for (const auto& [s, c] : p.coeffs) v[s] = c;
    // Inverse of the per-coordinate butterfly in walsh_transform.
    for (int i = 0; i < p.n; ++i) {
        const std::size_t bit = std::size_t{1} << i;
        const double lo = proxy.z(i, false), hi = proxy.z(i, true);
        for (std::size_t x = 0; x < v.size(); ++x) {
            if (x & bit) continue;
            const double a = v[x], b = v[x | bit];
            v[x] = a + b * lo;
            v[x | bit] = a + b * hi;
        }
    }
    return v;
}

/// Coefficients of the unique expansion of f : {0,1}^n -> R in the biased
/// character basis; f is indexed by assignment mask. O(n 2^n).
inline std::vector<double> walsh_transform(std::vector<double> f, const ProductProxy& proxy) {
    const int n = proxy.n();
    if (f.size() != (std::size_t{1} << n)) throw ContractError("table size must be 2^n");
    for (int i = 0; i < n; ++i) {
        const std::size_t bit = std::size_t{1} << i;
        const double p = proxy.bias(i);
        const double sigma = std::sqrt(p * (1.0 - p));
        for (std::size_t x = 0; x < f.size(); ++x) {
            if (x & bit) continue;
            const double f0 = f[x], f1 = f[x | bit];
            f[x] = (1.0 - p) * f0 + p * f1;
            f[x | bit] = sigma * (f1 - f0);
        }
    }
    return f;
}

/// Full expansion (degree bound n) of a table; coefficients with magnitude
/// at most `drop_below` are omitted.
inline WalshPolynomial expand(const std::vector<double>& f, const ProductProxy& proxy, double drop_below = 0.0) {
    const auto c = walsh_transform(f, proxy);
    WalshPolynomial p(proxy.n(), proxy.n());
    for (Subset s = 0; s < c.size(); ++s)
        if (std::abs(c[s]) > drop_below) p.coeffs[s] = c[s];
    return p;
}

/// ||p||_{2,u} computed from the coefficients (Parseval).
inline double l2_norm(const WalshPolynomial& p) {
    double s = 0.0;
    for (const auto& [S, c] : p.coeffs) s += c * c;
    return std::sqrt(s);
}

inline double sup_norm(const WalshPolynomial& p, const ProductProxy& proxy) {
    double m = 0.0;
    for (double v : evaluate_all(p, proxy)) m = std::max(m, std::abs(v));
    return m;
}

// ---------------------------------------------------------------------------
// Spectrum and discrepancy.

struct Spectrum {
    int n = 0;
    int k = 0;
    std::map<Subset, double> entries;  // every |S| <= k present

    double norm() const {
        double s = 0.0;
        for (const auto& [S, d] : entries) s += d * d;
        return std::sqrt(s);
    }

    bool is_zero(double tol = 1e-12) const {
        for (const auto& [S, d] : entries)
            if (std::abs(d) > tol) return false;
        return true;
    }
};

/// Signed low-degree spectrum E_mu[chi_S] - E_u[chi_S] for |S| <= k.
inline Spectrum spectrum(const AssignmentDistribution& mu, const ProductProxy& proxy, int k, int cap = 14) {
    const int n = proxy.n();
    if (n > cap) throw CapError("spectrum capped at n=" + std::to_string(cap));
    if (k < 0 || k > n) throw ContractError("degree k must lie in [0, n]");
    mu.require_normalized();
    Spectrum out;
    out.n = n;
    out.k = k;
    for (Subset s : low_degree_subsets(n, k)) {
        double e = 0.0;
        for (const auto& [x, p] : mu.entries()) e += p * chi_eval(s, x, proxy);
        out.entries[s] = e - proxy.character_mean(s);
    }
    return out;
}

/// Delta_k(mu, u): best advantage of a degree-<=k test bounded by 1 on the
/// cube. Solved through the dual LP
///   min ||w||_1  s.t.  sum_x w(x) chi_S(x) = sum_x (mu - u)(x) chi_S(x), |S| <= k,
/// whose value equals the primal maximum by LP duality.
inline double delta_k_exact(const AssignmentDistribution& mu, const AssignmentDistribution& u, const ProductProxy& basis,
                            int k, int cap = 12) {
    const int n = basis.n();
    if (n > cap) throw CapError("exact discrepancy capped at n=" + std::to_string(cap));
    if (k < 0) throw ContractError("degree must be nonnegative");
    k = std::min(k, n);
    mu.require_normalized();
    u.require_normalized();
    const Assignment limit = Assignment{1} << n;
    for (const auto* d : {&mu, &u})
        for (const auto& e : d->entries())
            if (e.first >= limit) throw ContractError("assignment outside {0,1}^n");
    std::vector<double> diff(limit, 0.0);
    for (const auto& [x, p] : mu.entries()) diff[x] += p;
    for (const auto& [x, p] : u.entries()) diff[x] -= p;

    const auto subsets = low_degree_subsets(n, k);
    std::vector<std::vector<double>> A(subsets.size(), std::vector<double>(2 * limit, 0.0));
    std::vector<double> b(subsets.size(), 0.0);
    for (std::size_t r = 0; r < subsets.size(); ++r) {
        for (Assignment x = 0; x < limit; ++x) {
            const double chi = chi_eval(subsets[r], x, basis);
            A[r][x] = chi;
            A[r][limit + x] = -chi;
            b[r] += diff[x] * chi;
        }
    }
    const std::vector<double> cost(2 * limit, 1.0);
    const auto res = lp::minimize(A, b, cost);
    if (res.status != lp::Status::optimal) throw Error("discrepancy LP did not reach an optimum");
    return res.value;
}

struct Witness {
    WalshPolynomial polynomial;
    double advantage = 0.0;  // E_mu[p] - E_u[p]
    double sup_before_rescale = 0.0;
    bool degenerate = false;  // all-zero spectrum
};

/// Sign-pattern test sum_S sgn(Delta(S)) chi_S rescaled to sup-norm 1.
inline Witness witness_polynomial(const Spectrum& s, const ProductProxy& proxy, double tol = 1e-12) {
    Witness w;
    w.polynomial = WalshPolynomial(s.n, s.k);
    if (s.is_zero(tol)) {
        w.degenerate = true;
        return w;
    }
    for (const auto& [S, d] : s.entries)
        if (std::abs(d) > tol) w.polynomial.coeffs[S] = d > 0 ? 1.0 : -1.0;
    w.sup_before_rescale = sup_norm(w.polynomial, proxy);
    double adv = 0.0;
    for (auto& [S, c] : w.polynomial.coeffs) {
        c /= w.sup_before_rescale;
        adv += c * s.entries.at(S);
    }
    w.advantage = adv;
    return w;
}

/// Scales the degree-d slice by theta^d.
inline WalshPolynomial noise_apply(WalshPolynomial p, double theta) {
    if (!(theta >= 0.0 && theta <= 1.0)) throw ContractError("noise rate must lie in [0, 1]");
    for (auto& [s, c] : p.coeffs) c *= std::pow(theta, subset_size(s));
    return p;
}

// ---------------------------------------------------------------------------
// Pseudoexpectations from the proxy's moment table.

/// Multilinear polynomial in the monomial basis x^T = prod_{i in T} x_i.
template <class Scalar>
struct MultilinearPolynomial {
    int n = 0;
    std::map<Subset, Scalar> coeffs;

    int degree() const {
        int d = 0;
        for (const auto& [t, c] : coeffs)
            if (c != Scalar(0)) d = std::max(d, subset_size(t));
        return d;
    }

    Scalar eval(Assignment x) const {
        Scalar v(0);
        for (const auto& [t, c] : coeffs)
            if ((x & t) == t) v += c;
        return v;
    }
};

/// Degree-k moment table of a product measure: E[x^T] = prod_{i in T} p_i.
template <class Scalar>
struct MomentTable {
    std::vector<Scalar> biases;
    int k = 0;

    Scalar moment(Subset t) const {
        if (subset_size(t) > k) throw DegreeError("moment of degree above the table's degree");
        Scalar m(1);
        for (std::size_t i = 0; i < biases.size(); ++i)
            if ((t >> i) & 1U) m *= biases[i];
        return m;
    }
};

/// Linear functional defined by the moment table.
template <class Scalar>
Scalar pseudoexpectation_eval(const MultilinearPolynomial<Scalar>& p, const MomentTable<Scalar>& table) {
    if (p.degree() > table.k) throw DegreeError("polynomial degree exceeds the pseudoexpectation degree");
    Scalar e(0);
    for (const auto& [t, c] : p.coeffs) e += c * table.moment(t);
    return e;
}

/// Exact E_u[p] by enumerating the cube under the product measure.
template <class Scalar>
Scalar product_expectation(const MultilinearPolynomial<Scalar>& p, const std::vector<Scalar>& biases) {
    const Assignment limit = Assignment{1} << biases.size();
    Scalar e(0);
    for (Assignment x = 0; x < limit; ++x) {
        Scalar w(1);
        for (std::size_t i = 0; i < biases.size(); ++i) w *= ((x >> i) & 1U) ? biases[i] : Scalar(1) - biases[i];
        e += w * p.eval(x);
    }
    return e;
}

/// Re-expands characters chi_S = prod (x_i - p_i)/sigma_i into monomials.
inline MultilinearPolynomial<double> to_monomials(const WalshPolynomial& p, const ProductProxy& proxy) {
    MultilinearPolynomial<double> out;
    out.n = p.n;
    for (const auto& [s, c] : p.coeffs) {
        double scale = c;
        for (int i = 0; i < p.n; ++i)
            if ((s >> i) & 1U) scale /= std::sqrt(proxy.bias(i) * (1.0 - proxy.bias(i)));
        // Sum over T subset of S of x^T * prod_{i in S\T} (-p_i).
        for (Subset t = s;; t = (t - 1) & s) {
            double term = scale;
            const Subset rest = s & ~t;
            for (int i = 0; i < p.n; ++i)
                if ((rest >> i) & 1U) term *= -proxy.bias(i);
            out.coeffs[t] += term;
            if (t == 0) break;
        }
    }
    return out;
}

inline double pseudoexpectation_eval(const WalshPolynomial& p, const ProductProxy& proxy, int k) {
    if (p.degree(0.0) > k) throw DegreeError("polynomial degree exceeds the pseudoexpectation degree");
    MomentTable<double> table{proxy.biases(), k};
    return pseudoexpectation_eval(to_monomials(p, proxy), table);
}

// ---------------------------------------------------------------------------
// Measurements.

/// ||q||_{4,u} / ||q||_{2,u} for a homogeneous degree-d polynomial; nullopt
/// for the zero polynomial.
inline std::optional<double> hypercontractivity_ratio(const WalshPolynomial& q, const ProductProxy& proxy, int d) {
    for (const auto& [s, c] : q.coeffs)
        if (c != 0.0 && subset_size(s) != d) throw ContractError("polynomial is not homogeneous of the given degree");
    const auto values = evaluate_all(q, proxy);
    double m2 = 0.0, m4 = 0.0;
    for (Assignment x = 0; x < values.size(); ++x) {
        const double w = proxy.probability(x);
        const double v2 = values[x] * values[x];
        m2 += w * v2;
        m4 += w * v2 * v2;
    }
    if (m2 <= 0.0) return std::nullopt;
    return std::pow(m4, 0.25) / std::sqrt(m2);
}

struct DichotomyConstants {
    double c = 0.125;
    double eta = 0.125;
    double zeta = 0.0625;

    /// Values propagated to the composition pipeline (default).
    static DichotomyConstants final_constants() { return {0.125, 0.125, 0.0625}; }
    /// Values used for the concrete numeric degree bound, c = 1/4.
    static DichotomyConstants concrete_choice() { return {0.25, 0.125, 0.0625}; }
};

enum class DichotomyBranch { vanishing, structure };

struct DichotomyReport {
    double n = 0;
    int k = 0;                 // floor(c log2 n)
    double delta = 0;
    double threshold = 0;      // n^-eta
    DichotomyBranch branch = DichotomyBranch::vanishing;
    double degree_bound = 0;   // zeta * k on the structure branch, else 0
};

inline DichotomyReport dichotomy_report(double n, double delta, const DichotomyConstants& constants = {}) {
    if (!(n >= 2)) throw ContractError("dichotomy report requires n >= 2");
    DichotomyReport r;
    r.n = n;
    r.delta = delta;
    r.k = static_cast<int>(std::floor(constants.c * std::log2(n) + 1e-12));
    r.threshold = std::pow(n, -constants.eta);
    r.branch = delta >= r.threshold ? DichotomyBranch::structure : DichotomyBranch::vanishing;
    r.degree_bound = r.branch == DichotomyBranch::structure ? constants.zeta * r.k : 0.0;
    return r;
}

inline const char* to_string(DichotomyBranch b) { return b == DichotomyBranch::structure ? "structure" : "vanishing"; }

/// Pearson correlation of X and Y under probability weights; nullopt when a
/// variance vanishes.
inline std::optional<double> windowed_correlation(std::span<const double> xs, std::span<const double> ys,
                                                  std::span<const double> weights) {
    if (xs.size() != ys.size() || xs.size() != weights.size()) throw ContractError("correlation inputs differ in length");
    double total = 0.0, ex = 0.0, ey = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (weights[i] < 0.0) throw ContractError("negative weight");
        total += weights[i];
        ex += weights[i] * xs[i];
        ey += weights[i] * ys[i];
    }
    if (!(total > 0.0)) throw ContractError("weights have zero total");
    ex /= total;
    ey /= total;
    double cov = 0.0, vx = 0.0, vy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - ex, dy = ys[i] - ey;
        cov += weights[i] * dx * dy;
        vx += weights[i] * dx * dx;
        vy += weights[i] * dy * dy;
    }
    if (vx <= 1e-15 * total || vy <= 1e-15 * total) return std::nullopt;
    return cov / std::sqrt(vx * vy);
}

// ---------------------------------------------------------------------------
// Text format: header "walsh <n> <k>", then "<subset-mask-hex> <coefficient>".

inline std::string serialize_walsh(const WalshPolynomial& p) {
    std::ostringstream out;
    out << "walsh " << p.n << ' ' << p.degree_bound << '\n';
    out.precision(17);
    for (const auto& [s, c] : p.coeffs) out << std::hex << s << std::dec << ' ' << c << '\n';
    return out.str();
}

inline std::string serialize_spectrum(const Spectrum& s) {
    std::ostringstream out;
    out << "walsh " << s.n << ' ' << s.k << '\n';
    out.precision(17);
    for (const auto& [S, d] : s.entries) out << std::hex << S << std::dec << ' ' << d << '\n';
    return out.str();
}

inline WalshPolynomial parse_walsh(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line, tag;
    std::size_t line_no = 0;
    WalshPolynomial p;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first) || first[0] == '#') continue;
        if (!header) {
            int n, k;
            if (first != "walsh" || !(ls >> n >> k) || n < 0 || k < 0) throw ParseError(line_no, "expected 'walsh <n> <k>'");
            p = WalshPolynomial(n, k);
            header = true;
            continue;
        }
        double c;
        if (!(ls >> c)) throw ParseError(line_no, "expected '<mask-hex> <coefficient>'");
        try {
            p.set(std::stoull(first, nullptr, 16), c);
        } catch (const Error& e) {
            throw ParseError(line_no, e.what());
        } catch (const std::exception&) {
            throw ParseError(line_no, "bad subset mask '" + first + "'");
        }
    }
    if (!header) throw ParseError(line_no, "missing 'walsh' header");
    return p;
}

} // namespace redcal
