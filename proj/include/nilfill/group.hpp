#pragma once

#include <string>

#include "nilfill/algebra.hpp"
#include "nilfill/rational.hpp"

namespace nilfill {

// Element of the simply connected nilpotent group attached to a graded
// algebra, stored in exponential coordinates (the logarithm's coordinate
// vector). Products go through the truncated Campbell-Hausdorff series,
// which terminates exactly at the nilpotency class.
class GroupElement {
 public:
  GroupElement(const GradedLieAlgebra& alg, QVec v);
  static GroupElement identity(const GradedLieAlgebra& alg);

  const GradedLieAlgebra& algebra() const { return *alg_; }
  const QVec& log() const { return v_; }
  bool is_identity() const;
  bool operator==(const GroupElement& o) const;
  bool operator!=(const GroupElement& o) const { return !(*this == o); }

 private:
  const GradedLieAlgebra* alg_;
  QVec v_;
};

GroupElement multiply(const GroupElement& a, const GroupElement& b);
GroupElement invert(const GroupElement& a);
GroupElement commutator(const GroupElement& a, const GroupElement& b);
// Integer power: exp(n log a).
GroupElement power(const GroupElement& a, const Int& n);
// Grading automorphism: layer i is scaled by t^i.
GroupElement scale_element(const GroupElement& a, const Rational& t);

// Upper bound for max_i |layer_i|_inf^(1/i), rounded up to the 1/256 grid
// (exact when the root is attained on the grid).
Rational homogeneous_norm(const GroupElement& a);
// Exact three-way comparison of the true homogeneous norms.
int hnorm_compare(const GroupElement& a, const GroupElement& b);
// Exact comparison of norm(a) against a rational bound.
int hnorm_compare_value(const GroupElement& a, const Rational& bound);

// Stable serialization for use as a hash/map key.
std::string element_key(const GroupElement& a);

}  // namespace nilfill
