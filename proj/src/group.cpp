#include "nilfill/group.hpp"

#include <sstream>
#include <stdexcept>

#include "nilfill/bch.hpp"

namespace nilfill {

GroupElement::GroupElement(const GradedLieAlgebra& alg, QVec v)
    : alg_(&alg), v_(std::move(v)) {
  if (v_.size() != alg.dim())
    throw std::invalid_argument("coordinate size mismatch");
}

GroupElement GroupElement::identity(const GradedLieAlgebra& alg) {
  return GroupElement(alg, alg.zero());
}

bool GroupElement::is_identity() const { return is_zero(v_); }

bool GroupElement::operator==(const GroupElement& o) const {
  return alg_ == o.alg_ && v_ == o.v_;
}

GroupElement multiply(const GroupElement& a, const GroupElement& b) {
  if (&a.algebra() != &b.algebra())
    throw std::invalid_argument("elements from different groups");
  return GroupElement(a.algebra(),
                      bch_combine(a.algebra(), a.log(), b.log()));
}

GroupElement invert(const GroupElement& a) {
  return GroupElement(a.algebra(), scale(a.log(), Rational(-1)));
}

GroupElement commutator(const GroupElement& a, const GroupElement& b) {
  return multiply(multiply(a, b), multiply(invert(a), invert(b)));
}

GroupElement power(const GroupElement& a, const Int& n) {
  return GroupElement(a.algebra(), scale(a.log(), Rational(n)));
}

GroupElement scale_element(const GroupElement& a, const Rational& t) {
  const GradedLieAlgebra& alg = a.algebra();
  QVec v = a.log();
  for (size_t i = 0; i < v.size(); ++i) v[i] *= pow_rational(t, alg.layer(i));
  return GroupElement(alg, std::move(v));
}

namespace {

// Largest |coordinate| per layer, as (value, layer) pairs, zeros dropped.
std::vector<std::pair<Rational, unsigned>> layer_maxima(
    const GroupElement& a) {
  const GradedLieAlgebra& alg = a.algebra();
  std::vector<Rational> m(alg.nclass() + 1, Rational(0));
  for (size_t i = 0; i < a.log().size(); ++i) {
    Rational v = abs(a.log()[i]);
    if (v > m[alg.layer(i)]) m[alg.layer(i)] = v;
  }
  std::vector<std::pair<Rational, unsigned>> out;
  for (unsigned s = 1; s < m.size(); ++s)
    if (m[s] != 0) out.push_back({m[s], s});
  return out;
}

// Index of the pair with the largest s-th root, -1 if empty.
int champion(const std::vector<std::pair<Rational, unsigned>>& v) {
  if (v.empty()) return -1;
  size_t best = 0;
  for (size_t i = 1; i < v.size(); ++i)
    if (compare_roots(v[i].first, v[i].second, v[best].first,
                      v[best].second) > 0)
      best = i;
  return static_cast<int>(best);
}

}  // namespace

Rational homogeneous_norm(const GroupElement& a) {
  auto m = layer_maxima(a);
  int c = champion(m);
  if (c < 0) return Rational(0);
  return root_upper_bound(m[c].first, m[c].second);
}

int hnorm_compare(const GroupElement& a, const GroupElement& b) {
  auto ma = layer_maxima(a), mb = layer_maxima(b);
  int ca = champion(ma), cb = champion(mb);
  if (ca < 0 && cb < 0) return 0;
  if (ca < 0) return -1;
  if (cb < 0) return 1;
  return compare_roots(ma[ca].first, ma[ca].second, mb[cb].first,
                       mb[cb].second);
}

int hnorm_compare_value(const GroupElement& a, const Rational& bound) {
  auto m = layer_maxima(a);
  int c = champion(m);
  if (c < 0) return bound > 0 ? -1 : 0;
  if (bound < 0) return 1;
  return compare_roots(m[c].first, m[c].second, bound, 1);
}

std::string element_key(const GroupElement& a) {
  return join_rationals(a.log());
}

}  // namespace nilfill
