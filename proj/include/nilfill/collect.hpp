#pragma once

#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "nilfill/fillcore.hpp"
#include "nilfill/fillers.hpp"
#include "nilfill/lattice.hpp"
#include "nilfill/presentation.hpp"

namespace nilfill {

// Search-free filler for identity words over a presentation with a model.
// The word is collected into sorted form (generator letters in index order,
// then lattice-ladder digits layer by layer) through adjacent transpositions.
// Swapping two atoms p q -> q p deposits the commutation defect as ladder
// digits and costs the cells of a fixed certificate filling for that atom
// pair. Certificates are assembled mechanically from free identities: a
// commuting relator where one exists, bilinear expansion of commutator-form
// relators to exchange equal-valued central spellings, and letter-by-letter
// passes of central words across blocks. A sorted spelling of the identity
// cancels outright, so the collected word vanishes and the accumulated cells
// form the filling; after the certificate warm-up every fill is
// deterministic bookkeeping.
class CollectionFiller {
 public:
  CollectionFiller(const Presentation& pres, const LatticeBasis& basis,
                   SearchLimits certificate_limits = {});

  // Filling of w, or nullopt when w does not evaluate to the identity.
  // Throws when a needed certificate cannot be built.
  std::optional<Filling> fill(const Word& w);

  size_t certificates_built() const { return certs_.size(); }

 private:
  struct Atom {
    unsigned layer;  // 1 = generator letter, >1 = ladder rung at that layer
    size_t index;    // generator index or rung index within the layer
    int sign;
    size_t spell = 0;  // spelling index for rung atoms
  };
  using AtomKey = std::tuple<unsigned, size_t, int, size_t>;
  struct Certificate {
    Filling filling;           // fills p q (q p d)^-1
    std::vector<Atom> defect;  // d as unit ladder digits
    size_t moved_spell = 0;    // spelling of p after the swap
  };
  struct Spelling {
    Word word;  // evaluates exactly to the rung element
    std::set<size_t> support;
  };

  Word atom_word(const Atom& a);
  GroupElement atom_value(const Atom& a) const;
  std::vector<Atom> lattice_digits(const GroupElement& e) const;

  const std::vector<Spelling>& spellings(unsigned layer, size_t rung);
  // Filling of S_a * S_b^-1 for two spellings of one rung, or null when the
  // seeds do not connect them.
  const Filling* exchange(unsigned layer, size_t rung, size_t a, size_t b);
  // Filling of S_a^t * S_b^-t.
  std::optional<Filling> exchange_power(unsigned layer, size_t rung, size_t a,
                                        size_t b, int t);
  // Filling of u v u^-1 v^-1 by commuting cells or atomic block passes.
  std::optional<Filling> block_pass(const Word& u, const Word& v);
  // Spelling reachable from `current` able to carry rung^t across the word
  // v, with the filling of [spelling^t, v]; prefers staying put.
  std::optional<std::pair<size_t, Filling>> passing_spelling(
      unsigned layer, size_t rung, size_t current, int t, const Word& v);

  void build_seed_exchanges();
  const Certificate& certificate(const Atom& p, const Atom& q);
  Certificate build_certificate(const Atom& p, const Atom& q);

  const Presentation* pres_;
  const LatticeBasis* basis_;
  SearchLimits cert_lim_;
  std::vector<GroupElement> gens_;
  SwapTable table_;
  bool seeded_ = false;
  std::map<std::pair<unsigned, size_t>, std::vector<Spelling>> spellings_;
  std::map<std::tuple<unsigned, size_t, size_t, size_t>, Filling> exchanges_;
  std::map<std::pair<AtomKey, AtomKey>, Certificate> certs_;
};

}  // namespace nilfill
