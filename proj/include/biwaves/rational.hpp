#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace biwaves {

// Exact coefficient type. All series coefficients in this library are
// arbitrary-precision rationals so that high-order recursions carry no
// rounding drift.
using Rational = mpq_class;

inline Rational make_rational(long long num, long long den = 1) {
    Rational r(static_cast<long>(num), static_cast<long>(den));
    r.canonicalize();
    return r;
}

inline double to_double(const Rational& r) { return r.get_d(); }

inline std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace biwaves
