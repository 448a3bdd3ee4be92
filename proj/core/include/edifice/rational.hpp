#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace edifice {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Rat rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p", "p/q" or a plain decimal integer with optional sign.
Rat rat_from_string(const std::string& s);

/// Renders as "p" or "p/q" (no whitespace, canonical form).
std::string rat_to_string(const Rat& q);

inline int sign_of(const Rat& q) { return sgn(q); }

/// Largest square divisor pulled out of n >= 0: n = square * rest with rest
/// square-free. Returns {sqrt(square), rest}.
std::pair<Int, Int> squarefree_split(const Int& n);

/// True if q is an exact s-th power in the rationals; on success root is set.
bool rational_root(const Rat& q, unsigned long s, Rat& root);

/// The simplest rational (smallest denominator, then smallest numerator) in
/// the open interval (lo, hi). Requires lo < hi.
Rat simplest_between(const Rat& lo, const Rat& hi);

}  // namespace edifice
