#pragma once

// Finite distributions: total variation, pushforward, window conditioning and
// transfer of cost certificates along reductions.

#include "redcal/coding.hpp"
#include "redcal/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace redcal {

/// Exact probabilities for oracle tests.
using Rational = boost::multiprecision::cpp_rational;

template <class Prob>
struct ProbTraits {
    static Prob tolerance() { return Prob(1e-12); }
    static Prob abs(const Prob& x) { return x < Prob(0) ? -x : x; }
};

template <>
struct ProbTraits<Rational> {
    static Rational tolerance() { return Rational(0); }
    static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
};

class NormalizationError : public Error {
public:
    using Error::Error;
};

/// Distribution with explicit finite support. Points are kept sorted and
/// distinct; zero-mass points are dropped.
template <class Point, class Prob = double>
class FiniteDistribution {
public:
    using point_type = Point;
    using prob_type = Prob;
    using Entry = std::pair<Point, Prob>;

    FiniteDistribution() = default;

    /// Validates nonnegativity, distinctness and unit mass.
    explicit FiniteDistribution(std::vector<Entry> entries) : entries_(std::move(entries)) {
        std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
        for (std::size_t i = 1; i < entries_.size(); ++i)
            if (!(entries_[i - 1].first < entries_[i].first)) throw ContractError("support points must be distinct");
        Prob total(0);
        for (const auto& [x, p] : entries_) {
            if (p < Prob(0)) throw NormalizationError("negative probability");
            total += p;
        }
        if (ProbTraits<Prob>::abs(total - Prob(1)) > ProbTraits<Prob>::tolerance())
            throw NormalizationError("probabilities do not sum to 1");
        std::erase_if(entries_, [](const Entry& e) { return e.second == Prob(0); });
    }

    /// Normalizes nonnegative weights with positive total; merges repeats.
    static FiniteDistribution from_weights(const std::vector<Entry>& weights) {
        std::map<Point, Prob> acc;
        Prob total(0);
        for (const auto& [x, w] : weights) {
            if (w < Prob(0)) throw NormalizationError("negative weight");
            acc[x] += w;
            total += w;
        }
        if (!(total > Prob(0))) throw NormalizationError("weights have zero total");
        std::vector<Entry> out;
        out.reserve(acc.size());
        for (auto& [x, w] : acc) out.emplace_back(x, Prob(w / total));
        FiniteDistribution d;
        d.entries_ = std::move(out);
        std::erase_if(d.entries_, [](const Entry& e) { return e.second == Prob(0); });
        return d;
    }

    static FiniteDistribution point_mass(const Point& x) { return FiniteDistribution({{x, Prob(1)}}); }

    const std::vector<Entry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }

    Prob operator()(const Point& x) const {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), x,
                                   [](const Entry& e, const Point& p) { return e.first < p; });
        return (it != entries_.end() && !(x < it->first)) ? it->second : Prob(0);
    }

    Prob total_mass() const {
        Prob t(0);
        for (const auto& e : entries_) t += e.second;
        return t;
    }

    /// Re-checks unit mass; guards against hand-built distributions.
    void require_normalized() const {
        if (ProbTraits<Prob>::abs(total_mass() - Prob(1)) > ProbTraits<Prob>::tolerance())
            throw NormalizationError("distribution is not normalized");
    }

    template <class F>
    Prob expect(F&& f) const {
        Prob s(0);
        for (const auto& [x, p] : entries_) s += p * Prob(f(x));
        return s;
    }

private:
    std::vector<Entry> entries_;
};

/// (1/2) * sum_x |a(x) - b(x)| over the union of supports.
template <class Point, class Prob>
Prob tv_distance(const FiniteDistribution<Point, Prob>& a, const FiniteDistribution<Point, Prob>& b) {
    a.require_normalized();
    b.require_normalized();
    const auto& ea = a.entries();
    const auto& eb = b.entries();
    Prob sum(0);
    std::size_t i = 0, j = 0;
    while (i < ea.size() || j < eb.size()) {
        if (j == eb.size() || (i < ea.size() && ea[i].first < eb[j].first)) {
            sum += ea[i++].second;
        } else if (i == ea.size() || eb[j].first < ea[i].first) {
            sum += eb[j++].second;
        } else {
            sum += ProbTraits<Prob>::abs(ea[i++].second - eb[j++].second);
        }
    }
    return sum / Prob(2);
}

template <class Point, class Prob, class F>
auto pushforward(const FiniteDistribution<Point, Prob>& d, F&& f) {
    using Image = std::decay_t<decltype(f(std::declval<const Point&>()))>;
    std::map<Image, Prob> acc;
    for (const auto& [x, p] : d.entries()) acc[f(x)] += p;
    std::vector<std::pair<Image, Prob>> out(acc.begin(), acc.end());
    return FiniteDistribution<Image, Prob>::from_weights(out);
}

template <class Point, class Prob>
struct Conditioned {
    FiniteDistribution<Point, Prob> distribution;
    Prob mass;
};

class EmptyWindowError : public Error {
public:
    using Error::Error;
};

template <class Point, class Prob, class Pred>
Conditioned<Point, Prob> condition_window(const FiniteDistribution<Point, Prob>& d, Pred&& in_window) {
    std::vector<std::pair<Point, Prob>> kept;
    Prob mass(0);
    for (const auto& [x, p] : d.entries())
        if (in_window(x)) {
            kept.emplace_back(x, p);
            mass += p;
        }
    if (!(mass > Prob(0))) throw EmptyWindowError("window has zero mass");
    return {FiniteDistribution<Point, Prob>::from_weights(kept), mass};
}

// ---------------------------------------------------------------------------
// Text format: one "point-hex probability" line per support point.

inline std::string serialize_distribution(const FiniteDistribution<std::uint64_t>& d) {
    std::ostringstream out;
    for (const auto& [x, p] : d.entries())
        out << std::hex << x << std::dec << ' ' << std::setprecision(17) << p << '\n';
    return out.str();
}

inline FiniteDistribution<std::uint64_t> parse_distribution(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::pair<std::uint64_t, double>> entries;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string hex;
        if (!(ls >> hex) || hex[0] == '#') continue;
        double p;
        if (!(ls >> p)) throw ParseError(line_no, "expected '<point-hex> <probability>'");
        std::size_t used = 0;
        std::uint64_t x;
        try {
            x = std::stoull(hex, &used, 16);
        } catch (const std::exception&) {
            throw ParseError(line_no, "bad hex point '" + hex + "'");
        }
        if (used != hex.size()) throw ParseError(line_no, "bad hex point '" + hex + "'");
        entries.emplace_back(x, p);
    }
    try {
        return FiniteDistribution<std::uint64_t>(std::move(entries));
    } catch (const Error& e) {
        throw ParseError(line_no, e.what());
    }
}

// ---------------------------------------------------------------------------
// Cost certificates.

/// A feasible point of the size-aware cost: description length of the
/// (model, preprocessor) pair plus its expected loss.
struct CostCertificate {
    std::uint64_t model_bits = 0;
    double expected_loss = 0.0;

    CostCertificate() = default;
    CostCertificate(std::uint64_t bits, double loss) : model_bits(bits), expected_loss(loss) {
        if (!(loss >= 0.0)) throw ContractError("expected loss must be nonnegative");
    }

    double value() const noexcept { return static_cast<double>(model_bits) + expected_loss; }
};

/// Certificate for the pushed-forward problem: the reduction's meta record is
/// inlined into the description, the loss is unchanged.
inline CostCertificate transfer_certificate(const CostCertificate& cert, const MetaRecord& reduction_meta, std::uint64_t N) {
    const MetaOverhead over = meta_overhead(reduction_meta, N);
    if (!over.bound_ok) throw ContractError("reduction meta record exceeds the meta-overhead bound");
    return {cert.model_bits + over.total_bits, cert.expected_loss};
}

} // namespace redcal
