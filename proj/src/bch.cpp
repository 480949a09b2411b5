#include "nilfill/bch.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace nilfill {
namespace {

// Free associative polynomials over Q in two symbols, truncated beyond a
// fixed total degree.  Monomials are bit strings; a polynomial maps each
// monomial to its coefficient.
using Mono = std::vector<std::uint8_t>;
using Poly = std::map<Mono, Rational>;

void add_term(Poly& p, const Mono& m, const Rational& c) {
  if (c == 0) return;
  auto it = p.find(m);
  if (it == p.end()) {
    p.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

Poly mul(const Poly& a, const Poly& b, unsigned cap) {
  Poly out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      if (ma.size() + mb.size() > cap) continue;
      Mono m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      add_term(out, m, ca * cb);
    }
  }
  return out;
}

void add_into(Poly& a, const Poly& b, const Rational& scale) {
  for (const auto& [m, c] : b) add_term(a, m, scale * c);
}

// log(1 + u) for u with zero constant term, truncated beyond `cap`.
Poly log1p(const Poly& u, unsigned cap) {
  Poly out;
  Poly pw{{Mono{}, rat(1)}};
  Rational sign(1);
  for (unsigned n = 1; n <= cap; ++n) {
    pw = mul(pw, u, cap);
    add_into(out, pw, sign / n);
    sign = -sign;
  }
  return out;
}

Poly exp_gen(std::uint8_t sym, unsigned cap) {
  Poly out;
  Mono m;
  Rational c(1);
  for (unsigned n = 0; n <= cap; ++n) {
    add_term(out, m, c);
    m.push_back(sym);
    c /= static_cast<long>(n + 1);
  }
  return out;
}

}  // namespace

BCHSeries::BCHSeries(unsigned degree_cap) : cap_(degree_cap) {
  if (degree_cap < 1 || degree_cap > kMaxBCHClass)
    throw std::invalid_argument("bch series degree cap out of range");
  by_degree_.resize(degree_cap + 1);

  Poly prod = mul(exp_gen(0, cap_), exp_gen(1, cap_), cap_);
  add_term(prod, Mono{}, rat(-1));  // now exp(X)exp(Y) - 1
  Poly lg = log1p(prod, cap_);

  // Dynkin's projection: replace each word by its left-normed bracketing
  // divided by the degree.  Words whose first two letters agree bracket to
  // zero; a word starting YX... equals minus its XY... flip.
  std::map<Mono, Rational> canon;
  for (const auto& [m, c] : lg) {
    unsigned n = static_cast<unsigned>(m.size());
    if (n < 2) continue;
    if (m[0] == m[1]) continue;
    Mono w = m;
    Rational coeff = c / static_cast<long>(n);
    if (w[0] == 1) {
      std::swap(w[0], w[1]);
      coeff = -coeff;
    }
    auto it = canon.find(w);
    if (it == canon.end()) {
      canon.emplace(std::move(w), coeff);
    } else {
      it->second += coeff;
    }
  }
  for (const auto& [w, c] : canon) {
    if (c == 0) continue;
    by_degree_[w.size()].push_back(BCHTerm{w, c});
    flat_.push_back(BCHTerm{w, c});
  }
}

const std::vector<BCHTerm>& BCHSeries::terms(unsigned d) const {
  if (d < 2 || d > cap_) throw std::out_of_range("bch degree out of range");
  return by_degree_[d];
}

const BCHSeries& bch_series(unsigned degree_cap) {
  static std::mutex mu;
  static std::map<unsigned, BCHSeries> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(degree_cap);
  if (it == cache.end())
    it = cache.emplace(degree_cap, BCHSeries(degree_cap)).first;
  return it->second;
}

QVec bch_combine(const GradedLieAlgebra& alg, const QVec& x, const QVec& y) {
  if (alg.nclass() > kMaxBCHClass)
    throw std::invalid_argument("nilpotency class exceeds supported cap");
  QVec z = add(x, y);
  if (alg.nclass() < 2) return z;
  const BCHSeries& series = bch_series(alg.nclass());
  for (const BCHTerm& t : series.all_terms()) {
    QVec acc = bracket(alg, t.word[0] ? y : x, t.word[1] ? y : x);
    for (size_t i = 2; i < t.word.size(); ++i) {
      if (is_zero(acc)) break;
      acc = bracket(alg, acc, t.word[i] ? y : x);
    }
    if (is_zero(acc)) continue;
    for (size_t i = 0; i < acc.size(); ++i) z[i] += t.c * acc[i];
  }
  return z;
}

}  // namespace nilfill
