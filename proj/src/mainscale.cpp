#include "nilfill/mainscale.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace nilfill {

namespace {

// Canonical letter order: generator index, then positive before negative.
bool word_less(const Word& a, const Word& b) {
  const size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    if (a[i].gen != b[i].gen) return a[i].gen < b[i].gen;
    if (a[i].sign != b[i].sign) return a[i].sign > b[i].sign;
  }
  return a.size() < b.size();
}

std::string word_key(const Word& w) {
  std::string s;
  for (const Letter& l : w) {
    s += std::to_string(l.gen);
    s += l.sign > 0 ? '+' : '-';
  }
  return s;
}

bool cancels(const Letter& a, const Letter& b) {
  return a.gen == b.gen && a.sign == -b.sign;
}

}  // namespace

MainScaler::MainScaler(const Presentation& pres, MainScaleLimits lim)
    : pres_(&pres), lim_(lim) {
  if (!pres.has_model()) {
    throw std::invalid_argument("multiscale filling needs a group model");
  }
  gens_ = pres.gen_elements();
  for (const auto& g : gens_) {
    if (!in_layer(*pres.algebra, g.log(), 1)) {
      throw std::invalid_argument("generators must lie in layer 1");
    }
  }
  basis_.emplace(*pres.algebra, gens_);
  collector_.emplace(pres, *basis_, lim_.pentagon);
}

std::optional<Word> MainScaler::connect(const GroupElement& target,
                                        size_t cap) {
  if (target.is_identity()) return Word{};
  const std::string key = element_key(target);
  auto cached = connect_cache_.find(key);
  if (cached != connect_cache_.end()) {
    const ConnectEntry& e = cached->second;
    if (e.word) {
      if (e.word->size() <= cap) return e.word;
      return std::nullopt;
    }
    if (e.depth >= cap) return std::nullopt;
  }

  // Two balls grown alternately one depth at a time: forward words evaluate
  // to their node, backward words lead from their node to the target. Both
  // frontiers are generated in canonical order, so the first word reaching a
  // node is the smallest, and the first meeting round carries exactly the
  // words of minimal total length.
  struct Side {
    std::map<std::string, Word> seen;
    std::vector<std::pair<GroupElement, Word>> frontier;
    size_t depth = 0;
  };
  Side fwd, bwd;
  const GroupElement id = GroupElement::identity(*pres_->algebra);
  fwd.seen.emplace(element_key(id), Word{});
  fwd.frontier.emplace_back(id, Word{});
  bwd.seen.emplace(key, Word{});
  bwd.frontier.emplace_back(target, Word{});

  std::vector<Letter> letters;
  for (size_t g = 0; g < gens_.size(); ++g) {
    letters.push_back({g, 1});
    letters.push_back({g, -1});
  }
  auto step = [&](const GroupElement& e, const Letter& l) {
    return multiply(e, l.sign > 0 ? gens_[l.gen] : invert(gens_[l.gen]));
  };

  std::optional<Word> best;
  while (!best && fwd.depth + bwd.depth < cap) {
    const bool forward = fwd.depth <= bwd.depth;
    Side& self = forward ? fwd : bwd;
    Side& other = forward ? bwd : fwd;
    if (self.frontier.empty()) break;
    std::vector<std::pair<GroupElement, Word>> next;
    if (forward) {
      for (const auto& [e, wrd] : self.frontier) {
        for (const Letter& l : letters) {
          if (!wrd.empty() && cancels(wrd.back(), l)) continue;
          GroupElement e2 = step(e, l);
          std::string k2 = element_key(e2);
          if (self.seen.count(k2)) continue;
          Word w2 = wrd;
          w2.push_back(l);
          self.seen.emplace(k2, w2);
          auto hit = other.seen.find(k2);
          if (hit != other.seen.end()) {
            Word cand = concat(w2, hit->second);
            if (!best || word_less(cand, *best)) best = cand;
          }
          next.emplace_back(std::move(e2), std::move(w2));
        }
      }
    } else {
      for (const Letter& l : letters) {
        for (const auto& [e, wrd] : self.frontier) {
          if (!wrd.empty() && cancels(l, wrd.front())) continue;
          // Backward node e satisfies e * eval(word) = target; prepending l
          // moves the node one letter against the word.
          GroupElement e2 = step(e, {l.gen, -l.sign});
          std::string k2 = element_key(e2);
          if (self.seen.count(k2)) continue;
          Word w2;
          w2.push_back(l);
          w2.insert(w2.end(), wrd.begin(), wrd.end());
          self.seen.emplace(k2, w2);
          auto hit = other.seen.find(k2);
          if (hit != other.seen.end()) {
            Word cand = concat(hit->second, w2);
            if (!best || word_less(cand, *best)) best = cand;
          }
          next.emplace_back(std::move(e2), std::move(w2));
        }
      }
    }
    self.frontier = std::move(next);
    ++self.depth;
  }

  ConnectEntry entry;
  if (best) {
    entry.word = best;
  } else {
    entry.depth = fwd.depth + bwd.depth;
  }
  connect_cache_[key] = entry;
  return best;
}

const FillStats& MainScaler::relator_filler(size_t relator, long t) {
  auto key = std::make_pair(relator, t);
  auto it = relator_cache_.find(key);
  if (it == relator_cache_.end()) {
    FillStats fs;
    try {
      fs = shuffle_fill(*pres_, relator, t);
    } catch (const std::runtime_error&) {
      // Shuffling needs every cross pair of the two halves to commute via a
      // relator. Where it does not apply (nilpotency relators, say), collect
      // the scaled relator word instead.
      auto f = collector_->fill(scale_word(pres_->relators[relator], t));
      if (!f) {
        throw std::runtime_error("scaled relator filling infeasible");
      }
      fs.filling = std::move(*f);
      fs.core = fs.filling.area();
    }
    it = relator_cache_.emplace(key, std::move(fs)).first;
  }
  return it->second;
}

const Filling& MainScaler::pentagon_fill(const Word& p) {
  const Word r = free_reduce(p);
  const std::string key = word_key(r);
  auto it = pentagon_cache_.find(key);
  if (it != pentagon_cache_.end()) return it->second;
  std::optional<Filling> f;
  try {
    f = collector_->fill(r);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(std::string("pentagon fill exhausted: ") +
                             pres_->str(r) + " (" + e.what() + ")");
  }
  if (!f) {
    throw std::runtime_error("pentagon fill infeasible: " + pres_->str(r));
  }
  return pentagon_cache_.emplace(key, std::move(*f)).first->second;
}

Filling MainScaler::rescale_filling(const Filling& f, long t, Int& area_out) {
  Filling out;
  for (const Cell& c : f.cells) {
    const FillStats& fs = relator_filler(c.relator, t);
    area_out += fs.area();
    Filling piece = c.sign > 0 ? fs.filling : invert_filling(fs.filling);
    piece = conjugate_filling(piece, inverse_word(scale_word(c.conj, t)));
    append_filling(out, piece);
  }
  return out;
}

MainScaleResult MainScaler::fill(const Word& w) {
  const GradedLieAlgebra& alg = *pres_->algebra;
  MainScaleResult res;
  res.word_len = w.size();
  res.bigon_area = 0;
  res.total_area = 0;

  std::vector<GroupElement> pref;
  pref.reserve(w.size() + 1);
  pref.push_back(GroupElement::identity(alg));
  for (const Letter& l : w) {
    pref.push_back(multiply(
        pref.back(), l.sign > 0 ? gens_[l.gen] : invert(gens_[l.gen])));
  }
  if (!pref.back().is_identity()) {
    throw std::invalid_argument("word does not evaluate to the identity");
  }
  const size_t n = w.size();
  if (n == 0) {
    if (lim_.materialize) res.filling = Filling{};
    return res;
  }
  unsigned k = 0;
  while ((size_t{1} << k) < n) ++k;
  res.levels = k;

  // Grid nodes (scaled-lattice projections of prefix points) and the
  // segments joining neighbours, level by level.
  std::vector<std::vector<GroupElement>> node(k + 1);
  std::vector<std::vector<Word>> seg(k + 1);
  for (unsigned i = 0; i <= k; ++i) {
    const size_t m = size_t{1} << (k - i);
    const long t = 1l << i;
    for (size_t j = 0; j <= m; ++j) {
      const size_t s = (j * n) >> (k - i);
      node[i].push_back(project_to_scaled_lattice(pref[s], *basis_, t));
    }
    for (size_t j = 0; j < m; ++j) {
      GroupElement d = multiply(invert(node[i][j]), node[i][j + 1]);
      auto sw = connect(scale_element(d, rat(1, t)), lim_.segment_cap);
      if (!sw) {
        throw std::runtime_error("segment search capped at level " +
                                 std::to_string(i));
      }
      seg[i].push_back(std::move(*sw));
    }
  }

  // Connectors from each even fine node up to the coarse node over it,
  // written at the finer scale.
  std::vector<std::vector<Word>> conn(k);
  for (unsigned i = 0; i < k; ++i) {
    const size_t m = size_t{1} << (k - i - 1);
    const long t = 1l << i;
    for (size_t j = 0; j <= m; ++j) {
      GroupElement d = multiply(invert(node[i][2 * j]), node[i + 1][j]);
      auto cw = connect(scale_element(d, rat(1, t)), lim_.connector_cap);
      if (!cw) {
        throw std::runtime_error("connector search capped at level " +
                                 std::to_string(i));
      }
      conn[i].push_back(std::move(*cw));
    }
  }

  Filling total_fill;

  // Bottom bigons: chunks of w itself against the level-0 segments.
  {
    std::vector<Filling> fills;
    std::vector<Word> targets;
    const size_t m = size_t{1} << k;
    for (size_t j = 0; j < m; ++j) {
      const size_t s0 = (j * n) >> k, s1 = ((j + 1) * n) >> k;
      Word a(w.begin() + s0, w.begin() + s1);
      Word p = concat(a, inverse_word(seg[0][j]));
      const Filling& f = pentagon_fill(p);
      for (const Cell& c : f.cells) {
        res.bigon_area += relator_filler(c.relator, 1).area();
      }
      if (lim_.materialize) {
        Int ignore = 0;
        fills.push_back(rescale_filling(f, 1, ignore));
        targets.push_back(seg[0][j]);
      }
    }
    res.bigons = m;
    if (lim_.materialize) {
      append_filling(total_fill, prefix_conjugate_assembly(fills, targets));
    }
  }

  // One annulus per adjacent level pair, one pentagon per coarse segment.
  for (unsigned i = 0; i < k; ++i) {
    const size_t m = size_t{1} << (k - i - 1);
    const long t = 1l << i;
    AnnulusRow row;
    row.level = i;
    row.scale = t;
    row.pentagons = m;
    row.area = 0;
    std::vector<Filling> fills;
    std::vector<Word> targets;
    for (size_t j = 0; j < m; ++j) {
      Word a = concat(seg[i][2 * j], seg[i][2 * j + 1]);
      Word b = concat(concat(conn[i][j], scale_word(seg[i + 1][j], 2)),
                      inverse_word(conn[i][j + 1]));
      Word p = concat(a, inverse_word(b));
      if (pentagon_cache_.find(word_key(free_reduce(p))) ==
          pentagon_cache_.end()) {
        ++row.distinct;
      }
      row.max_word = std::max(row.max_word, p.size());
      const Filling& f = pentagon_fill(p);
      Int darea = 0;
      if (lim_.materialize) {
        fills.push_back(rescale_filling(f, t, darea));
        targets.push_back(scale_word(b, t));
      } else {
        for (const Cell& c : f.cells) darea += relator_filler(c.relator, t).area();
      }
      row.area += darea;
    }
    res.total_area += row.area;
    res.rows.push_back(std::move(row));
    if (lim_.materialize) {
      append_filling(total_fill, prefix_conjugate_assembly(fills, targets));
    }
  }

  res.total_area += res.bigon_area;
  if (lim_.materialize) res.filling = std::move(total_fill);
  return res;
}

MainScaleResult mainscale_fill(const Presentation& pres, const Word& w,
                               MainScaleLimits lim) {
  MainScaler scaler(pres, lim);
  return scaler.fill(w);
}

Int mainscale_bound(size_t n, const std::function<Int(long)>& pentagon_area,
                    const Int& bigon_const, const Int& pentagon_count_const) {
  Int total = bigon_const * Int(static_cast<unsigned long>(n));
  if (n <= 1) return total;
  unsigned k = 0;
  while ((size_t{1} << k) < n) ++k;
  for (unsigned i = 0; i < k; ++i) {
    total += pentagon_count_const * pow_int(Int(2), k - i - 1) *
             pentagon_area(1l << i);
  }
  return total;
}

std::string ledger_csv(const MainScaleResult& r) {
  std::ostringstream out;
  out << "level,scale,pentagons,distinct,max_word,area\n";
  out << "bigon,1," << r.bigons << ",0,0," << r.bigon_area.get_str() << "\n";
  for (const AnnulusRow& row : r.rows) {
    out << row.level << "," << row.scale << "," << row.pentagons << ","
        << row.distinct << "," << row.max_word << ","
        << row.area.get_str() << "\n";
  }
  return out.str();
}

std::string ledger_json(const MainScaleResult& r) {
  nlohmann::json j;
  j["word_len"] = r.word_len;
  j["levels"] = r.levels;
  j["bigons"] = r.bigons;
  j["bigon_area"] = r.bigon_area.get_str();
  j["total_area"] = r.total_area.get_str();
  auto& rows = j["annuli"] = nlohmann::json::array();
  for (const AnnulusRow& row : r.rows) {
    nlohmann::json a;
    a["level"] = row.level;
    a["scale"] = row.scale;
    a["pentagons"] = row.pentagons;
    a["distinct"] = row.distinct;
    a["max_word"] = row.max_word;
    a["area"] = row.area.get_str();
    rows.push_back(std::move(a));
  }
  return j.dump(2);
}

}  // namespace nilfill
