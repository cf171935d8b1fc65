#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cylattice {

// All lattice arithmetic is exact: arbitrary-precision integers and
// rationals, never floating point.
using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;

inline std::string to_string(const Int& v) { return v.get_str(); }

inline std::string to_string(const IntVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i].get_str();
    }
    s += ")";
    return s;
}

inline bool fits_int64(const Int& v) {
    return v.fits_slong_p() || (sizeof(long) == 8 && v >= Int(INT64_MIN) && v <= Int(INT64_MAX));
}

// Checked narrowing for the hot integer loops (enumeration, scans).
inline std::int64_t to_int64(const Int& v) {
    if (!fits_int64(v))
        throw std::overflow_error("integer too large for 64-bit fast path: " + v.get_str());
    return static_cast<std::int64_t>(v.get_si());
}

} // namespace cylattice
