#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nilfill/algebra.hpp"
#include "nilfill/linalg.hpp"

namespace nilfill {

// Basis element of a free nilpotent algebra: either a generator (leaf >= 0)
// or the bracket of two earlier basis elements.
struct HallBasisElement {
  int leaf = -1;
  size_t left = 0;
  size_t right = 0;
  unsigned weight = 1;
};

struct FreeNilpotent {
  GradedLieAlgebra alg;
  std::vector<HallBasisElement> elements;
};

// Free nilpotent Lie algebra on d generators, truncated beyond class k,
// with a Hall basis of nested brackets.
FreeNilpotent free_nilpotent(size_t d, unsigned k);

// Heisenberg algebra of dimension 2n+1: [x_i, y_i] = z.
GradedLieAlgebra heisenberg(size_t dim);

enum class DivisionKind { complex_numbers, quaternions, octonions };

// Heisenberg-type algebra built from a real division algebra A: layer 1 is
// A itself, layer 2 its imaginary part, and [u, v] = Im(u * conj(v)).
GradedLieAlgebra division_heisenberg(DivisionKind kind);

// Signed multiplication table of the octonions (Cayley-Dickson doubling of
// the quaternions): entry (i, j) holds s * (k + 1) where e_i e_j = s * e_k.
std::vector<std::vector<int>> octonion_table();

// Rank-8 class-3 algebra with layer dims (5, 2, 1): generators a..e,
// [a,b] = [c,d] = f, [b,c] = [d,e] = g, [b,f] = h, [d,g] = -h.
GradedLieAlgebra class3_rank8();

struct CentralProduct {
  GradedLieAlgebra alg;
  size_t copies = 0;
  size_t layer1_per_copy = 0;

  size_t gen_index(size_t copy, size_t i) const {
    return copy * layer1_per_copy + i;
  }
  size_t shared_index(size_t j) const { return copies * layer1_per_copy + j; }
};

// n copies of a class-2 algebra glued along a common layer 2.
CentralProduct central_product_algebra(const GradedLieAlgebra& base, size_t n);

struct CentralQuotient {
  GradedLieAlgebra alg;
  // Maps old coordinates to quotient coordinates; a Lie homomorphism.
  QMatrix projection{0, 0};
  // Old basis indices surviving as the quotient basis, in order.
  std::vector<size_t> kept;
};

// Quotient by the span of central vectors, each supported in a single layer.
// The quotient basis is a subset of the original basis.
CentralQuotient central_quotient(const GradedLieAlgebra& alg,
                                 const std::vector<QVec>& centrals);

// An integer relation between layer-1 basis brackets: sum of
// coeffs[m] * [e_{pairs[m].first}, e_{pairs[m].second}] is zero.
struct PairRelation {
  std::vector<std::pair<size_t, size_t>> pairs;
  std::vector<long> coeffs;
};

// Basis of the relation lattice between layer-1 brackets of a class-2
// algebra, preferring relations touching as few brackets as possible:
// vanishing brackets first, then parallel pairs, then general relations.
std::vector<PairRelation> small_support_relations(const GradedLieAlgebra& alg);

}  // namespace nilfill
