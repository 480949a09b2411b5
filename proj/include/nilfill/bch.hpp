#pragma once

#include <cstdint>
#include <vector>

#include "nilfill/algebra.hpp"
#include "nilfill/rational.hpp"

namespace nilfill {

// One summand of the Campbell-Hausdorff series in left-normed form: `word`
// is a string over {0,1} (0 = X, 1 = Y) and stands for the nested bracket
// [...[[w0,w1],w2],...,wn].  Words of length 1 (the X + Y part of the series)
// are kept implicit; every stored term has degree >= 2 and starts with 01 or
// 10 collapsed to a canonical 01 start.
struct BCHTerm {
  std::vector<std::uint8_t> word;
  Rational c;
};

class BCHSeries {
 public:
  explicit BCHSeries(unsigned degree_cap);

  unsigned degree_cap() const { return cap_; }
  // Terms of the given total degree (2 <= d <= degree_cap).
  const std::vector<BCHTerm>& terms(unsigned d) const;
  // All terms of degree 2..degree_cap.
  const std::vector<BCHTerm>& all_terms() const { return flat_; }

 private:
  unsigned cap_;
  std::vector<std::vector<BCHTerm>> by_degree_;
  std::vector<BCHTerm> flat_;
};

constexpr unsigned kMaxBCHClass = 6;

// Cached series for log(exp X exp Y) truncated beyond the given degree.
const BCHSeries& bch_series(unsigned degree_cap);

// log(exp(x) exp(y)) evaluated with the algebra's bracket.
QVec bch_combine(const GradedLieAlgebra& alg, const QVec& x, const QVec& y);

}  // namespace nilfill
