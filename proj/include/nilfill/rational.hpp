#pragma once

// Exact integer / rational arithmetic used throughout the library.
// Thin helpers over GMP's C++ classes; everything stays canonical
// (lowest terms, positive denominator), which mpq arithmetic preserves.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace nilfill {

using Int = mpz_class;
using Rational = mpq_class;
using QVec = std::vector<Rational>;

inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational rat(const Int& num, const Int& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& s);

// Canonical text form: "p" if integral, else "p/q".
std::string to_string(const Rational& q);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// Nearest integer with ties resolved to the even candidate.
Int round_half_even(const Rational& q);

// Floor of the quotient as an integer.
Int floor_div(const Int& a, const Int& b);

Rational pow_rational(const Rational& base, long exp);
Int pow_int(const Int& base, unsigned long exp);

// Smallest multiple of 1/256 whose n-th power is >= q (q >= 0).
// Used to report homogeneous-norm bounds without floating point.
Rational root_upper_bound(const Rational& q, unsigned n);

// Exact comparison |a|^(1/m) vs |b|^(1/n) done via cross powers.
// Returns -1, 0, or 1.
int compare_roots(const Rational& a, unsigned m, const Rational& b, unsigned n);

std::string join_rationals(const QVec& v, char sep = ',');

}  // namespace nilfill
