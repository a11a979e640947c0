#pragma once

// Elias-delta integer codes and meta-overhead accounting.

#include "redcal/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace redcal {

/// An ordered bit string. Bits are stored most-significant first in the order
/// they are emitted.
struct BitCode {
    std::vector<bool> bits;

    std::size_t length() const noexcept { return bits.size(); }

    void append(const BitCode& other) { bits.insert(bits.end(), other.bits.begin(), other.bits.end()); }

    /// True iff this is a (not necessarily proper) prefix of `other`.
    bool is_prefix_of(const BitCode& other) const noexcept {
        return bits.size() <= other.bits.size() &&
               std::equal(bits.begin(), bits.end(), other.bits.begin());
    }

    friend bool operator==(const BitCode&, const BitCode&) = default;
};

namespace detail {
inline std::uint64_t floor_log2(std::uint64_t t) noexcept { return 63U - std::countl_zero(t); }

inline void put_binary(BitCode& out, std::uint64_t value, unsigned width) {
    for (unsigned i = width; i-- > 0;) out.bits.push_back(((value >> i) & 1U) != 0);
}
} // namespace detail

/// Closed-form Elias-delta length in bits of t >= 1.
inline std::uint64_t elias_delta_length(std::uint64_t t) {
    if (t == 0) throw RangeError("elias-delta is undefined for 0; encode max{1,t} with a flag bit");
    const std::uint64_t l = detail::floor_log2(t);
    return l + 2 * detail::floor_log2(1 + l) + 1;
}

/// Elias-delta codeword of t >= 1: the bit length of t in Elias-gamma,
/// followed by t without its leading one.
inline BitCode elias_delta_encode(std::uint64_t t) {
    if (t == 0) throw RangeError("elias-delta is undefined for 0; encode max{1,t} with a flag bit");
    const auto len = static_cast<unsigned>(detail::floor_log2(t)) + 1;  // bit length of t
    const auto len_bits = static_cast<unsigned>(detail::floor_log2(len)) + 1;
    BitCode out;
    out.bits.reserve(elias_delta_length(t));
    out.bits.insert(out.bits.end(), len_bits - 1, false);
    detail::put_binary(out, len, len_bits);
    detail::put_binary(out, t, len - 1);
    return out;
}

struct DeltaDecoded {
    std::uint64_t value;
    std::size_t consumed;
};

/// Decodes one codeword starting at `offset` of any indexable bit sequence
/// (`std::vector<bool>`, `std::span<const bool>`, ...). Throws DecodeError on
/// a truncated or malformed prefix.
template <class Bits>
DeltaDecoded elias_delta_decode(const Bits& stream, std::size_t offset = 0) {
    std::size_t pos = offset;
    auto read = [&](const char* what) -> bool {
        if (pos >= stream.size()) throw DecodeError(pos, std::string("truncated codeword while reading ") + what);
        return static_cast<bool>(stream[pos++]);
    };
    unsigned zeros = 0;
    while (!read("length prefix")) {
        if (++zeros > 6) throw DecodeError(pos - 1, "length prefix longer than any 64-bit value needs");
    }
    std::uint64_t len = 1;
    for (unsigned i = 0; i < zeros; ++i) len = (len << 1) | (read("length field") ? 1U : 0U);
    if (len > 64) throw DecodeError(offset, "encoded bit length exceeds 64");
    std::uint64_t value = 1;
    for (std::uint64_t i = 1; i < len; ++i) value = (value << 1) | (read("payload") ? 1U : 0U);
    return {value, pos - offset};
}

inline DeltaDecoded elias_delta_decode(const BitCode& code, std::size_t offset = 0) {
    return elias_delta_decode(code.bits, offset);
}

// ---------------------------------------------------------------------------
// Byte layout: [pad][payload...], payload MSB-first, trailing pad zero bits.

inline std::vector<std::uint8_t> pack_bits(const BitCode& code) {
    const std::size_t nbytes = (code.length() + 7) / 8;
    std::vector<std::uint8_t> out(1 + nbytes, 0);
    out[0] = static_cast<std::uint8_t>(nbytes * 8 - code.length());
    for (std::size_t i = 0; i < code.length(); ++i)
        if (code.bits[i]) out[1 + i / 8] |= static_cast<std::uint8_t>(0x80U >> (i % 8));
    return out;
}

inline BitCode unpack_bits(std::span<const std::uint8_t> bytes) {
    if (bytes.empty()) throw DecodeError(0, "missing pad header byte");
    const unsigned pad = bytes[0];
    const std::size_t payload = bytes.size() - 1;
    if (pad > 7 || (payload == 0 && pad != 0)) throw DecodeError(0, "invalid pad length " + std::to_string(pad));
    BitCode out;
    const std::size_t nbits = payload * 8 - pad;
    out.bits.reserve(nbits);
    for (std::size_t i = 0; i < payload * 8; ++i) {
        const bool bit = (bytes[1 + i / 8] & (0x80U >> (i % 8))) != 0;
        if (i < nbits) {
            out.bits.push_back(bit);
        } else if (bit) {
            throw DecodeError(8 + i, "nonzero padding bit");
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Meta records.

/// Nonnegative rational range exponent k = num/den; a field with exponent k
/// ranges over [0, N^k].
struct RangeExponent {
    std::uint64_t num = 1;
    std::uint64_t den = 1;

    double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
};

struct MetaField {
    std::string label;
    std::uint64_t value = 0;
    RangeExponent k;
};

struct MetaRecord {
    std::vector<MetaField> entries;

    MetaRecord& add(std::string label, std::uint64_t value, RangeExponent k = {}) {
        entries.push_back({std::move(label), value, k});
        return *this;
    }
};

/// value <= N^(num/den), decided exactly as value^den <= N^num.
inline bool within_range(std::uint64_t value, std::uint64_t N, RangeExponent k) {
    if (k.den == 0) throw ContractError("range exponent with zero denominator");
    using boost::multiprecision::cpp_int;
    return boost::multiprecision::pow(cpp_int(value), static_cast<unsigned>(k.den)) <=
           boost::multiprecision::pow(cpp_int(N), static_cast<unsigned>(k.num));
}

/// Self-delimiting record layout: delta(m+1), then for every field
/// delta(max{1,t}) followed by one flag bit (= t) only when max{1,t} == 1.
inline BitCode encode_record(const MetaRecord& record) {
    BitCode out = elias_delta_encode(record.entries.size() + 1);
    for (const auto& f : record.entries) {
        out.append(elias_delta_encode(std::max<std::uint64_t>(1, f.value)));
        if (f.value <= 1) out.bits.push_back(f.value == 1);
    }
    return out;
}

inline std::vector<std::uint64_t> decode_record(const BitCode& code) {
    const std::vector<bool>& view = code.bits;
    auto [count, used] = elias_delta_decode(view, 0);
    std::size_t pos = used;
    std::vector<std::uint64_t> values;
    values.reserve(count - 1);
    for (std::uint64_t i = 0; i + 1 < count; ++i) {
        auto [v, n] = elias_delta_decode(view, pos);
        pos += n;
        if (v == 1) {
            if (pos >= view.size()) throw DecodeError(pos, "missing zero/one flag bit");
            v = view[pos++] ? 1 : 0;
        }
        values.push_back(v);
    }
    if (pos != view.size()) throw DecodeError(pos, "trailing bits after record");
    return values;
}

struct FieldOverhead {
    std::string label;
    std::uint64_t length = 0;  // elias_delta_length(max{1,t})
    double tight_bound = 0;    // k log2 N + 2 log2 log2 N + 3
    double coarse_bound = 0;   // (k+1) log2 N
    bool tight_ok = false;
    bool coarse_ok = false;
};

struct MetaOverhead {
    std::uint64_t total_bits = 0;  // field_bits + flag_bits + tag_bits
    std::uint64_t field_bits = 0;
    std::uint64_t flag_bits = 0;
    std::uint64_t tag_bits = 0;
    bool bound_ok = true;   // every field within the tight bound
    bool coarse_ok = true;  // every field within the coarse bound
    std::vector<FieldOverhead> fields;
};

/// Exact bit cost of `encode_record(record)` plus per-field bound checks at
/// instance length N. Bound checking requires N >= 16.
inline MetaOverhead meta_overhead(const MetaRecord& record, std::uint64_t N, bool check_bounds = true) {
    if (N == 0) throw ContractError("instance length N must be positive");
    if (check_bounds && N < 16) throw ContractError("bound checking requires N >= 16");
    MetaOverhead out;
    out.tag_bits = elias_delta_length(record.entries.size() + 1);
    const double log_n = std::log2(static_cast<double>(N));
    for (const auto& f : record.entries) {
        if (!within_range(f.value, N, f.k))
            throw RangeError("meta field '" + f.label + "' value " + std::to_string(f.value) +
                             " exceeds N^k");
        FieldOverhead fo;
        fo.label = f.label;
        fo.length = elias_delta_length(std::max<std::uint64_t>(1, f.value));
        out.field_bits += fo.length;
        if (f.value <= 1) ++out.flag_bits;
        if (check_bounds) {
            const double k = f.k.value();
            fo.tight_bound = k * log_n + 2.0 * std::log2(log_n) + 3.0;
            fo.coarse_bound = (k + 1.0) * log_n;
            fo.tight_ok = static_cast<double>(fo.length) <= fo.tight_bound;
            fo.coarse_ok = static_cast<double>(fo.length) <= fo.coarse_bound;
            out.bound_ok = out.bound_ok && fo.tight_ok;
            out.coarse_ok = out.coarse_ok && fo.coarse_ok;
        }
        out.fields.push_back(std::move(fo));
    }
    out.total_bits = out.field_bits + out.flag_bits + out.tag_bits;
    return out;
}

} // namespace redcal
