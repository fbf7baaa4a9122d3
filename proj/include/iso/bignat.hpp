#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "iso/error.hpp"

namespace iso {

// Non-negative by convention; signed backing keeps subtraction well defined.
using BigNat = boost::multiprecision::cpp_int;

inline std::size_t bit_length(const BigNat& x) {
    if (x <= 0) return 0;
    return boost::multiprecision::msb(x) + 1;
}

inline BigNat pow2(std::size_t e) {
    BigNat r = 1;
    r <<= e;
    return r;
}

inline std::string to_decimal(const BigNat& x) { return x.str(); }

inline BigNat parse_bignat(const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw PreconditionError("not a natural number: '" + s + "'");
    return BigNat(s);
}

inline bool fits_u64(const BigNat& x) { return x >= 0 && bit_length(x) <= 64; }

inline std::uint64_t to_u64(const BigNat& x) {
    if (!fits_u64(x)) throw PreconditionError("value does not fit in 64 bits");
    return x.convert_to<std::uint64_t>();
}

// smallest L with 2^L >= n; 0 for n <= 1
inline unsigned ceil_log2(std::uint64_t n) {
    unsigned L = 0;
    while (L < 64 && (std::uint64_t{1} << L) < n) ++L;
    return L;
}

} // namespace iso
