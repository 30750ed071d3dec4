#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace nex {

/// Exact rational scalar used everywhere. All comparisons and sign tests are exact;
/// there is no floating point anywhere in the core.
using Rat = mpq_class;

/// 2^k for any integer k (k may be negative).
Rat pow2(long k);

/// num/den in canonical form (mpq_class's two-argument constructor does not reduce).
inline Rat make_rat(long num, long den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Parse an exact rational. Accepts "p/q", plain integers, and decimal/scientific
/// literals ("0.25", "1e-6", "-3.5e2"), all converted exactly.
Rat parse_rational(const std::string& text);

/// Serialize as "p/q" (lowercase, no spaces) with integer shorthand when q = 1.
std::string rat_str(const Rat& value);

inline Rat rat_abs(const Rat& value) { return value < 0 ? Rat(-value) : value; }

} // namespace nex
