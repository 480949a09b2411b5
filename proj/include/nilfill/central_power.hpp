#pragma once

#include <cstddef>
#include <vector>

#include "nilfill/presentation.hpp"

namespace nilfill {

struct InterleaveResult {
  Word word;        // [x_1...x_l, y_1...y_l]
  Filling witness;  // fills [x_1,y_1]...[x_l,y_l] * word^-1
};

// Merges the factors [x_j, y_j] into one commutator of the concatenated
// blocks. Distinct factors must use disjoint generators, and every letter
// pair drawn from two different factors must commute by a relator: the
// witness is the letter rearrangement spelled out with those cells, and it
// is verified before returning.
InterleaveResult interleave(const Presentation& pres,
                            const std::vector<RelatorFactor>& factors);

// Rewrites away generators whose logs sit above layer 1. Each one must
// occur exactly once across all relators; that occurrence's relator becomes
// its definition and the generator is substituted out everywhere. Rewritten
// relators that already hold in the free class-2 group on the remaining
// generators are retagged "nilp" and lose their forms. Needs a generator
// map to know the layers.
Presentation inline_central_generators(const Presentation& pres);

// The n-fold central power of a class-2 group: n renamed copies of the base
// generators sharing one center. Emits each base relator per copy ("orig"),
// nilpotency relators per copy ("nilp"), commutation between copies
// ("product"), and identification of matching commutators across copies
// ("center"). Base relators not tagged "nilp" must carry RelatorForms, and
// n must be at least max(2, largest form size). Generators above layer 1
// are inlined first.
Presentation central_power_presentation(const Presentation& base, size_t n);

// One rewrite performed by commutator_form_transform: relator `source` of
// the input presentation is replaced by `replacement`, or dropped when the
// replacement is empty (the relator is derivable from the others). The
// witness fills source * replacement^-1 over the input relators.
struct RelatorRewrite {
  size_t source = 0;
  Word replacement;
  Filling witness;
};

struct CommutatorFormResult {
  Presentation pres;
  std::vector<RelatorRewrite> rewrites;  // one per input relator
};

// Rewrites a central power presentation until every relator is a single
// commutator of products of commuting generators: "center" relators merge
// into one commutator spanning two copies, "nilp" relators are derived from
// the others and dropped, and the copies of each "orig" relator collapse to
// one commutator spread over as many copies as the relator has factors.
// Every rewrite is backed by a filling and verified; failures throw.
CommutatorFormResult commutator_form_transform(const Presentation& pres);

}  // namespace nilfill
