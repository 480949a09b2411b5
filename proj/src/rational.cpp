#include "nilfill/rational.hpp"

#include <stdexcept>

namespace nilfill {

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rational q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational literal: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  return q.get_str();
}

Int round_half_even(const Rational& q) {
  Int fl = floor_div(q.get_num(), q.get_den());
  Rational frac = q - Rational(fl);
  if (frac < rat(1, 2)) return fl;
  if (frac > rat(1, 2)) return fl + 1;
  return (fl % 2 == 0) ? fl : fl + 1;
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Rational pow_rational(const Rational& base, long exp) {
  if (exp == 0) return 1;
  if (exp < 0) {
    if (base == 0) throw std::domain_error("0^negative");
    return 1 / pow_rational(base, -exp);
  }
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), (unsigned long)exp);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), (unsigned long)exp);
  return out;  // powers of a canonical fraction stay canonical
}

Int pow_int(const Int& base, unsigned long exp) {
  Int out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

Rational root_upper_bound(const Rational& q, unsigned n) {
  if (q < 0) throw std::domain_error("root of negative value");
  if (n == 0) throw std::domain_error("zeroth root");
  if (q == 0) return 0;
  if (n == 1) return q;
  // binary search over k/256
  Int lo = 0, hi = 1;
  auto ge = [&](const Int& k) {
    return pow_rational(rat(k, Int(256)), (long)n) >= q;
  };
  while (!ge(hi)) hi *= 2;
  while (lo + 1 < hi) {
    Int mid = (lo + hi) / 2;
    if (ge(mid)) hi = mid; else lo = mid;
  }
  return rat(hi, Int(256));
}

int compare_roots(const Rational& a, unsigned m, const Rational& b, unsigned n) {
  Rational pa = pow_rational(abs(a), (long)n);
  Rational pb = pow_rational(abs(b), (long)m);
  return cmp(pa, pb);
}

std::string join_rationals(const QVec& v, char sep) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i].get_str();
  }
  return out;
}

}  // namespace nilfill
