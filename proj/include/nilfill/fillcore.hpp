#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "nilfill/presentation.hpp"
#include "nilfill/words.hpp"

namespace nilfill {

// Filling of c w c^-1 from a filling of w.
Filling conjugate_filling(const Filling& f, const Word& c);

// Filling of w^-1 from a filling of w: reversed cells, flipped signs.
Filling invert_filling(const Filling& f);

void append_filling(Filling& dst, const Filling& src);

// Searches the relators for one matching [u, v] up to swapping the arguments
// and inverting either one, and assembles a filling of the word u v u^-1 v^-1.
// Every returned filling has exactly one cell.
std::optional<Filling> find_commutator_filling(const Presentation& pres,
                                               const Word& u, const Word& v);

// Cache over find_commutator_filling for single-letter pairs.
class SwapTable {
 public:
  explicit SwapTable(const Presentation& pres) : pres_(pres) {}
  // Filling of p q p^-1 q^-1 for letters p, q, or nullopt.
  const std::optional<Filling>& lookup(const Letter& p, const Letter& q) const;

 private:
  const Presentation& pres_;
  mutable std::map<std::pair<std::pair<size_t, int>, std::pair<size_t, int>>,
                   std::optional<Filling>>
      cache_;
};

// Transforms `from` into `to` by adjacent transpositions, where `to` must be
// a rearrangement of `from` that keeps the relative order of letters within
// each class. Each transposition of cross-class letters x y -> y x emits the
// cells of a conjugated filling of [x, y]. The returned cells satisfy
// from = expansion * to in the free group. Throws if the rearrangement is
// impossible or a needed commuting pair has no relator.
Filling sort_by_swaps(const Word& from, const Word& to, const SwapTable& table,
                      const std::function<size_t(const Letter&)>& class_of);

// Classes letters by generator index.
size_t letter_class_by_generator(const Letter& l);

// Fills the word u v u^-1 v^-1 entirely with commuting-pair cells, assuming
// every letter of u commutes with every letter of v by relator.
Filling fill_cross_commutator(const Word& u, const Word& v,
                              const SwapTable& table);

// Given per-block fillings F_i of A_i B_i^-1, assembles a filling F with
// A_1 ... A_n = expansion(F) * B_1 ... B_n in the free group, conjugating
// block i by the target prefix B_1 ... B_{i-1}.
Filling prefix_conjugate_assembly(const std::vector<Filling>& fills,
                                  const std::vector<Word>& targets);

// The t^2 cells x^a y^b [x, y] y^-b x^-a expanding [x^t, y^t], with a
// descending and b ascending, all labelled by the given relator and sign.
// The relator word must equal the commutator word of x and y.
Filling power_commutator_filling(const Word& x, const Word& y, long t,
                                 size_t relator, int sign);

// Two cells filling [expansion(cell), z]: the cell itself followed by its
// z-conjugated inverse.
Filling commutator_with_cell(const Cell& cell, const Word& z);

}  // namespace nilfill
