#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nilfill/collect.hpp"
#include "nilfill/fillers.hpp"
#include "nilfill/lattice.hpp"
#include "nilfill/presentation.hpp"

namespace nilfill {

// Multiscale filler: a null word w is pushed through a pyramid of coarser
// and coarser lattice approximations. Level i projects the prefix path of w
// onto the 2^i-scaled lattice at 2^{k-i}+1 grid points; consecutive grid
// points are joined by short lattice words found by bidirectional search,
// adjacent levels are compared pentagon by pentagon, and each pentagon is
// filled once in the unscaled alphabet and then rescaled, so the area of a
// level-i pentagon is a constant number of scaled relator fillings of size
// about 4^i. Bottom level bigons reconcile w itself with its level-0 trace.
struct MainScaleLimits {
  size_t segment_cap = 8;    // longest segment word searched
  size_t connector_cap = 8;  // longest level-to-level connector word
  // Budget for the one-off swap certificates behind the pentagon filler.
  SearchLimits pentagon{16, 72, 4000000};
  bool materialize = false;
};

struct AnnulusRow {
  unsigned level = 0;  // finer level i of the pair (i, i+1)
  long scale = 1;      // 2^i
  size_t pentagons = 0;
  size_t distinct = 0;  // pentagon words not seen before at any level
  size_t max_word = 0;  // longest pentagon word, in unscaled letters
  Int area;             // scaled cells contributed by this annulus
};

struct MainScaleResult {
  size_t word_len = 0;
  unsigned levels = 0;  // k with 2^k >= |w|
  size_t bigons = 0;
  Int bigon_area;
  std::vector<AnnulusRow> rows;
  Int total_area;
  std::optional<Filling> filling;
};

// Reusable across words: segment searches, pentagon fillings and scaled
// relator fillings are cached, which is what makes scale sweeps cheap.
class MainScaler {
 public:
  explicit MainScaler(const Presentation& pres, MainScaleLimits lim = {});

  MainScaleResult fill(const Word& w);

  // Shortest lattice word for a group element, via bidirectional breadth
  // first search balanced one depth level at a time from both ends; ties go
  // to the lexicographically smallest word. Exposed for tests.
  std::optional<Word> connect(const GroupElement& target, size_t cap);

  // Filling of the t-scaled relator, shuffle-backed and cached.
  const FillStats& relator_filler(size_t relator, long t);

 private:
  struct ConnectEntry {
    std::optional<Word> word;
    size_t depth = 0;  // how far the failed search went
  };

  Filling rescale_filling(const Filling& f, long t, Int& area_out);
  const Filling& pentagon_fill(const Word& p);

  const Presentation* pres_;
  MainScaleLimits lim_;
  std::vector<GroupElement> gens_;
  std::optional<LatticeBasis> basis_;
  std::optional<CollectionFiller> collector_;
  std::map<std::string, ConnectEntry> connect_cache_;
  std::map<std::string, Filling> pentagon_cache_;
  std::map<std::pair<size_t, long>, FillStats> relator_cache_;
};

MainScaleResult mainscale_fill(const Presentation& pres, const Word& w,
                               MainScaleLimits lim = {});

// Area predicted by the construction when one scaled relator filling at
// scale t costs pentagon_area(t): bigon_const * n for the bottom level plus
// pentagon_count_const * 2^{k-(i+1)} * pentagon_area(2^i) per annulus.
Int mainscale_bound(size_t n, const std::function<Int(long)>& pentagon_area,
                    const Int& bigon_const, const Int& pentagon_count_const);

// level,scale,pentagons,distinct,max_word,area rows plus a bigon row.
std::string ledger_csv(const MainScaleResult& r);
std::string ledger_json(const MainScaleResult& r);

}  // namespace nilfill
