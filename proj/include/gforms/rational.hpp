#pragma once
// Exact rational scalars used for expression coefficients.

#include <gmpxx.h>

#include <string>

namespace gforms {

using Rational = mpq_class;

/// Build a canonicalized rational n/d.
inline Rational rat(long n, long d = 1) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

/// Render as "n" or "n/d".
inline std::string rat_str(const Rational& q) { return q.get_str(); }

inline double rat_double(const Rational& q) { return q.get_d(); }

}  // namespace gforms
