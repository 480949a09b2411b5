#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nilfill/fillcore.hpp"
#include "nilfill/presentation.hpp"
#include "nilfill/rational.hpp"

namespace nilfill {

struct FillStats {
  Filling filling;
  // Cells carrying the filled relator itself vs. bookkeeping cells from
  // commuting relators.
  size_t core = 0;
  size_t aux = 0;
  size_t area() const { return filling.area(); }
};

// Fills the t-scaled relator s_t(r) for a relator in single-commutator form
// [x, y]: sorts each scaled block into x^t, y^t and applies the t^2 expansion
// of [x^t, y^t]. Requires commuting relators for the letter pairs inside x
// and inside y (none when x, y are single letters; then area is exactly t^2).
FillStats shuffle_fill(const Presentation& pres, size_t relator, long t);

// Fills s_t of the left-normed iterated commutator [[..[x1,x2],x3]..,xk]
// with exactly t^k cells of that relator plus O(t^k) commuting cells.
// The presentation must contain the iterated commutator itself as a relator
// and commutators of each prefix [x1..xj] with the letters of x1..xj
// (for j < k), plus commuting relators for any multi-letter blocks.
FillStats kfold_shuffle_fill(const Presentation& pres,
                             const std::vector<Word>& xs, long t);

struct SearchLimits {
  size_t max_area = 16;
  size_t max_word_len = 72;
  size_t max_nodes = 4000000;
};

enum class SearchStatus {
  found,       // minimal filling within the word-length bound
  exhausted,   // limits hit before a conclusion
  infeasible,  // commutator content proves no filling exists
};

struct SearchResult {
  SearchStatus status = SearchStatus::exhausted;
  Filling filling;
  size_t nodes = 0;
  size_t area_bound_reached = 0;
};

// Minimal-area filling by iterative-deepening search over relator
// insertions, guided by an exact integer lower bound from the word's
// commutator content. A `found` result is area-minimal among fillings whose
// intermediate words stay within max_word_len.
SearchResult bfs_exact_fill(const Presentation& pres, const Word& w,
                            const SearchLimits& limits = {});

// The content lower bound at the root, if the content system is solvable;
// infeasible roots return nullopt.
std::optional<size_t> content_lower_bound(const Presentation& pres,
                                          const Word& w);

struct DoublingRow {
  unsigned level = 0;  // scale exponent i of the step word u_i
  Int copies;          // how many conjugates of the step filling appear
  Int area_each;       // area of one step filling
  size_t word_len = 0;
};

struct DoublingLedger {
  std::vector<DoublingRow> rows;
  Int base_cells;  // innermost copies of the quotient relator itself
  Int total;       // sum over rows plus base_cells
  std::optional<Filling> filling;  // present when materialized
};

// Fills s_{2^n}(w) in the quotient by w, where w is the relator at index
// `w_relator` and its logarithm sits in layer j: at each halving step the
// identity u_i = s_{2^i}(w) * s_{2^{i-1}}(w)^{-2^j} is filled by `base_fill`
// (a filler over the same presentation, typically ignoring the w relator),
// leaving 2^j copies of the previous stage. Set materialize to build and
// return the concatenated filling; otherwise only the ledger is computed.
DoublingLedger doubling_fill(const Presentation& pres, size_t w_relator,
                             unsigned layer_j, unsigned n,
                             const std::function<Filling(const Word&)>& base_fill,
                             bool materialize);

// Ledger-only variant: step areas come from a model or measurement instead
// of materialized fillings.
DoublingLedger doubling_ledger(const Presentation& pres, size_t w_relator,
                               unsigned layer_j, unsigned n,
                               const std::function<Int(const Word&)>& base_area);

struct GeometricBound {
  Int total;          // sum_{i=0..n} 2^{(n-i)j} * 2^{i a} + 2^{n j}
  std::string dominant;
  Int dominant_value;
};

// Closed-form evaluation of the doubling recursion when each step area is
// modelled as (2^i)^a: reports the exact sum and which regime dominates.
GeometricBound doubling_series_bound(unsigned a, unsigned j, unsigned n);

struct QuotientBound {
  Int sum;               // sum_{i=0..n} 2^{(n-i)j} * 2^{i*alpha}
  std::string dominant;  // "2^(n*alpha)", "n*2^(n*alpha)", or "2^(n*j)"
  Int dominant_value;
};

// Exact partial sum of the two-exponential series behind quotient area
// bounds, with the closed-form term that dominates it: the larger exponent
// wins, and a tie picks up a factor of n.
QuotientBound quotdehn_bound(unsigned alpha, unsigned j, unsigned n);

}  // namespace nilfill
