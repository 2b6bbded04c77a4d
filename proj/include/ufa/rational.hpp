#pragma once

#include <gmpxx.h>

#include <string>

namespace ufa {

/// Exact arbitrary-precision rational. Arithmetic keeps the canonical form
/// (positive denominator, gcd 1); construction from raw parts must go through
/// rat() which canonicalizes.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Serialises as "p/q", with "/q" omitted when the denominator is 1.
inline std::string rat_str(const Rational& r) { return r.get_str(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

}  // namespace ufa
