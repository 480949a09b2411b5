#pragma once

#include <vector>

#include "nilfill/algebra.hpp"
#include "nilfill/group.hpp"
#include "nilfill/linalg.hpp"
#include "nilfill/words.hpp"

namespace nilfill {

// One ladder element: its lowest nonzero layer is `layer`, and `row` holds
// its logarithm's coordinates within that layer. `word`, over the original
// generators, evaluates to `element`; the reduction keeps it in sync with
// every row operation.
struct LadderRung {
  GroupElement element;
  QVec row;
  Word word;
};

// Per-layer bases of the group lattice generated by a finite set: layer 1
// comes from Hermite reduction of the generators' layer-1 parts (with the
// integer row operations replayed as group multiplications), deeper layers
// from commutators of earlier rungs plus whatever reduction left behind.
// Requires the rungs to span every layer.
class LatticeBasis {
 public:
  LatticeBasis(const GradedLieAlgebra& alg,
               const std::vector<GroupElement>& gens);

  const GradedLieAlgebra& algebra() const { return *alg_; }
  const std::vector<LadderRung>& ladder(unsigned layer) const {
    return ladders_.at(layer - 1);
  }
  unsigned nclass() const { return static_cast<unsigned>(ladders_.size()); }

 private:
  const GradedLieAlgebra* alg_;
  std::vector<std::vector<LadderRung>> ladders_;
};

// Nearest-digit projection of h onto the t-scaled lattice subgroup: walks the
// layers from 1 up, solves the remaining difference in the layer's ladder,
// rounds each coordinate divided by t^layer to the nearest integer (ties to
// even), and multiplies the scaled rungs in. The result lies in s_t of the
// lattice group and stays within O(t) of h.
GroupElement project_to_scaled_lattice(const GroupElement& h,
                                       const LatticeBasis& basis, long t);

struct CompatibleGenerators {
  std::vector<GroupElement> gens;  // exponentials of the layer-1 parts
  ZMatrix hnf;                     // layer-1 lattice, Hermite form, scaled
  Int denom;                       // true rows are hnf / denom
};

// Replaces each generator by the exponential of its layer-1 part and checks
// that the layer-1 lattice is unchanged.
CompatibleGenerators compatible_lattice_generators(
    const std::vector<GroupElement>& gens);

}  // namespace nilfill
