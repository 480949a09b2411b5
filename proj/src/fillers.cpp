#include "nilfill/fillers.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "nilfill/linalg.hpp"

namespace nilfill {

namespace {

// Sentinel relator index for cells of a nested commutator that is not (yet)
// a presentation relator; resolved before returning.
constexpr size_t kCoreMark = static_cast<size_t>(-1);

Filling sort_needed(const Word& from, const Word& to, const SwapTable& table) {
  if (from == to) return {};
  return sort_by_swaps(from, to, table, letter_class_by_generator);
}

// Word of the cell's expansion, allowing the sentinel.
Word expand_general(const Cell& c, const Word& core_word,
                    const std::vector<Word>& relators) {
  Word body;
  if (c.relator == kCoreMark) {
    body = c.sign >= 0 ? core_word : inverse_word(core_word);
  } else {
    body = c.sign >= 0 ? relators[c.relator] : inverse_word(relators[c.relator]);
  }
  return concat(concat(inverse_word(c.conj), body), c.conj);
}

// Cells filling [R, u] one letter of u at a time, using relators that
// commute R with each letter.
Filling commutator_letterwise(const Presentation& pres, const Word& R,
                              const Word& u) {
  Filling out;
  Word prefix;
  for (const Letter& l : u) {
    auto f = find_commutator_filling(pres, R, Word{l});
    if (!f) {
      throw std::runtime_error(
          "no relator commutes " + pres.str(R) + " with " +
          pres.str(Word{l}));
    }
    append_filling(out, conjugate_filling(*f, prefix));
    prefix.push_back(l);
  }
  return out;
}

}  // namespace

FillStats shuffle_fill(const Presentation& pres, size_t relator, long t) {
  if (t < 0) throw std::runtime_error("shuffle_fill: negative scale");
  if (relator >= pres.relators.size() || !pres.forms[relator] ||
      pres.forms[relator]->factors.size() != 1) {
    throw std::runtime_error(
        "shuffle_fill needs a relator in single-commutator form");
  }
  const Word& x = pres.forms[relator]->factors[0].x;
  const Word& y = pres.forms[relator]->factors[0].y;
  if (pres.relators[relator] != commutator_word(x, y)) {
    throw std::runtime_error("shuffle_fill: form does not match the relator");
  }
  FillStats out;
  if (t == 0) return out;
  SwapTable table(pres);
  const Word xi = inverse_word(x);
  const Word yi = inverse_word(y);
  const std::vector<Word> scaled = {scale_word(x, t), scale_word(y, t),
                                    scale_word(xi, t), scale_word(yi, t)};
  const std::vector<Word> blocks = {pow_word(x, t), pow_word(y, t),
                                    pow_word(x, -t), pow_word(y, -t)};
  std::vector<Filling> sorts;
  for (size_t i = 0; i < 4; ++i) {
    sorts.push_back(sort_needed(scaled[i], blocks[i], table));
  }
  out.filling = prefix_conjugate_assembly(sorts, blocks);
  out.aux = out.filling.area();
  append_filling(out.filling, power_commutator_filling(x, y, t, relator, 1));
  out.core = static_cast<size_t>(t) * static_cast<size_t>(t);
  return out;
}

FillStats kfold_shuffle_fill(const Presentation& pres,
                             const std::vector<Word>& xs, long t) {
  const size_t k = xs.size();
  if (k < 2) throw std::runtime_error("kfold needs at least two blocks");
  if (t < 0) throw std::runtime_error("kfold: negative scale");
  FillStats out;
  std::vector<Word> nested(k);  // nested[j] = [[x1,..],x_{j+1}] word, j >= 1
  nested[1] = commutator_word(xs[0], xs[1]);
  for (size_t j = 2; j < k; ++j) {
    nested[j] = commutator_word(nested[j - 1], xs[j]);
  }
  const auto idx = pres.find_relator(nested[k - 1]);
  if (!idx) {
    throw std::runtime_error("kfold: the iterated commutator is not a relator");
  }
  if (t == 0) return out;
  SwapTable table(pres);

  // Level 2: fill s_t([x1, x2]) with core cells marked by the sentinel.
  Filling cells;
  {
    const Word& x = xs[0];
    const Word& y = xs[1];
    const std::vector<Word> scaled = {
        scale_word(x, t), scale_word(y, t),
        scale_word(inverse_word(x), t), scale_word(inverse_word(y), t)};
    const std::vector<Word> blocks = {pow_word(x, t), pow_word(y, t),
                                      pow_word(x, -t), pow_word(y, -t)};
    std::vector<Filling> sorts;
    for (size_t i = 0; i < 4; ++i) {
      sorts.push_back(sort_needed(scaled[i], blocks[i], table));
    }
    cells = prefix_conjugate_assembly(sorts, blocks);
    append_filling(cells, power_commutator_filling(x, y, t, kCoreMark, 1));
  }

  // Levels 3..k: wrap the previous stage into a commutator with the next
  // block, keeping exactly t new sentinel cells per previous sentinel.
  for (size_t j = 2; j < k; ++j) {
    const Word& R = nested[j - 1];  // inner commutator at the previous level
    const Word& z = xs[j];
    const Word D = scale_word(R, t);
    const Word zt = pow_word(z, t);
    Filling next;
    {
      const std::vector<Word> scaled = {D, scale_word(z, t), inverse_word(D),
                                        scale_word(inverse_word(z), t)};
      const std::vector<Word> blocks = {D, zt, inverse_word(D),
                                        pow_word(z, -t)};
      std::vector<Filling> sorts;
      for (size_t i = 0; i < 4; ++i) {
        sorts.push_back(sort_needed(scaled[i], blocks[i], table));
      }
      append_filling(next, prefix_conjugate_assembly(sorts, blocks));
    }
    // Prefix products of the previous stage's expansions.
    const size_t m = cells.cells.size();
    std::vector<Word> prefix(m + 1);
    for (size_t i = 0; i < m; ++i) {
      prefix[i + 1] = free_reduce(
          concat(prefix[i], expand_general(cells.cells[i], R, pres.relators)));
    }
    // [w_1 ... w_m, z^t] as the product over i = m..1 of conjugated
    // commutators [w_i, z^t].
    for (size_t i = m; i-- > 0;) {
      const Cell& cell = cells.cells[i];
      Filling piece;
      if (cell.relator == kCoreMark) {
        // [c^-1 R c, z^t] = c^-1 ([R,c] c [R,z^t] c^-1 (c z^t) [R,c^-1] ...) c
        const Word& c = cell.conj;
        Filling inner = commutator_letterwise(pres, R, c);
        Filling middle;
        for (long b = 0; b < t; ++b) {
          middle.cells.push_back(Cell{pow_word(z, -b), kCoreMark, cell.sign});
        }
        append_filling(inner, conjugate_filling(middle, c));
        append_filling(inner,
                       conjugate_filling(
                           commutator_letterwise(pres, R, inverse_word(c)),
                           concat(c, zt)));
        piece = conjugate_filling(inner, inverse_word(c));
      } else {
        piece = commutator_with_cell(cell, zt);
      }
      append_filling(next, conjugate_filling(piece, prefix[i]));
    }
    cells = std::move(next);
  }

  for (Cell& c : cells.cells) {
    if (c.relator == kCoreMark) {
      c.relator = *idx;
      ++out.core;
    } else {
      ++out.aux;
    }
  }
  out.filling = std::move(cells);
  return out;
}

namespace {

struct ContentSystem {
  std::map<std::pair<size_t, size_t>, size_t> col;  // gen pair -> row index
  QMatrix matrix{0, 0};          // rows: pairs, cols: relators with content
  std::vector<size_t> relators;  // column -> relator index
  bool usable = false;           // unique solutions (trivial kernel)
  // The pair content is only meaningful when every relator has zero
  // exponent sums; otherwise the heuristic falls back to word length.
  bool zero_ab = true;
  size_t max_relator_len = 1;
};

QVec word_content(const Word& w, const ContentSystem& sys) {
  QVec m(sys.col.size(), Rational(0));
  for (size_t p = 0; p < w.size(); ++p) {
    for (size_t q = p + 1; q < w.size(); ++q) {
      const Letter& a = w[p];
      const Letter& b = w[q];
      if (a.gen == b.gen) continue;
      const size_t i = std::min(a.gen, b.gen);
      const size_t j = std::max(a.gen, b.gen);
      const int orient = a.gen < b.gen ? 1 : -1;
      m[sys.col.at({i, j})] += Rational(a.sign * b.sign * orient);
    }
  }
  return m;
}

ContentSystem build_content_system(const Presentation& pres) {
  ContentSystem sys;
  const size_t g = pres.generators.size();
  for (size_t i = 0; i < g; ++i) {
    for (size_t j = i + 1; j < g; ++j) {
      const size_t next = sys.col.size();
      sys.col[{i, j}] = next;
    }
  }
  std::vector<QVec> cols;
  for (size_t r = 0; r < pres.relators.size(); ++r) {
    sys.max_relator_len = std::max(sys.max_relator_len,
                                   pres.relators[r].size());
    std::map<size_t, long> sums;
    for (const Letter& l : pres.relators[r]) sums[l.gen] += l.sign;
    for (const auto& [gen, s] : sums) {
      if (s != 0) sys.zero_ab = false;
    }
    QVec mu = word_content(pres.relators[r], sys);
    bool zero = true;
    for (const Rational& q : mu) zero = zero && q == 0;
    if (!zero) {
      cols.push_back(std::move(mu));
      sys.relators.push_back(r);
    }
  }
  sys.matrix = QMatrix(sys.col.size(), cols.size());
  for (size_t c = 0; c < cols.size(); ++c) {
    for (size_t r = 0; r < sys.col.size(); ++r) sys.matrix.at(r, c) = cols[c][r];
  }
  sys.usable = kernel(sys.matrix).empty();
  return sys;
}

// Exact lower bound for the number of cells needed from here, or nullopt when
// the content system proves the word unfillable.
std::optional<size_t> content_heuristic(const Word& w,
                                        const ContentSystem& sys) {
  const size_t len_bound =
      (w.size() + sys.max_relator_len - 1) / sys.max_relator_len;
  if (!sys.zero_ab) return len_bound;
  {
    // Relators all have zero exponent sums, so a fillable word must too.
    std::map<size_t, long> sums;
    for (const Letter& l : w) sums[l.gen] += l.sign;
    for (const auto& [gen, s] : sums) {
      if (s != 0) return std::nullopt;
    }
  }
  QVec m = word_content(w, sys);
  auto lambda = solve(sys.matrix, m);
  if (!lambda) return std::nullopt;
  if (!sys.usable) return len_bound;
  Int total = 0;
  for (const Rational& q : *lambda) {
    if (!is_integer(q)) return std::nullopt;
    Int v = q.get_num();
    total += v < 0 ? -v : v;
  }
  size_t content_bound = total.fits_ulong_p() ? total.get_ui() : ~size_t(0);
  return std::max(len_bound, content_bound);
}

std::string word_key(const Word& w) {
  std::string s;
  s.reserve(w.size() * 3);
  for (const Letter& l : w) {
    s += l.sign > 0 ? 'g' : 'G';
    s += std::to_string(l.gen);
  }
  return s;
}

struct SearchFrame {
  Word prefix;     // letters before the insertion point
  Word rot_head;   // the rotation offset prefix of r^sign
  size_t relator = 0;
  int sign = 1;
};

struct Searcher {
  const Presentation& pres;
  const ContentSystem sys;
  SearchLimits limits;
  size_t nodes = 0;
  bool out_of_budget = false;
  bool length_capped = false;
  size_t bound = 0;
  size_t next_bound = ~size_t(0);
  std::vector<SearchFrame> path;
  std::vector<Cell> solution;
  std::unordered_map<std::string, size_t> seen;

  explicit Searcher(const Presentation& p, const SearchLimits& lim)
      : pres(p), sys(build_content_system(p)), limits(lim) {}

  bool dfs(const Word& u, size_t g) {
    if (u.empty()) {
      solution.clear();
      for (const SearchFrame& f : path) {
        solution.push_back(Cell{concat(f.rot_head, inverse_word(f.prefix)),
                                f.relator, -f.sign});
      }
      return true;
    }
    if (++nodes > limits.max_nodes) {
      out_of_budget = true;
      return false;
    }
    {
      auto key = word_key(u);
      auto it = seen.find(key);
      if (it != seen.end() && it->second <= g) return false;
      seen[key] = g;
    }

    // Deterministic move set: all reduced results of splicing a rotated
    // relator power at some position, deduplicated by resulting word.
    std::map<std::string, std::pair<Word, SearchFrame>> moves;
    for (size_t pos = 0; pos <= u.size(); ++pos) {
      const Word prefix(u.begin(), u.begin() + pos);
      const Word suffix(u.begin() + pos, u.end());
      for (size_t r = 0; r < pres.relators.size(); ++r) {
        for (int sign : {1, -1}) {
          const Word body =
              sign > 0 ? pres.relators[r] : inverse_word(pres.relators[r]);
          for (size_t rot = 0; rot < body.size(); ++rot) {
            Word rotated(body.begin() + rot, body.end());
            rotated.insert(rotated.end(), body.begin(), body.begin() + rot);
            Word candidate =
                free_reduce(concat(concat(prefix, rotated), suffix));
            if (candidate.size() > limits.max_word_len) {
              length_capped = true;
              continue;
            }
            std::string key = word_key(candidate);
            if (moves.count(key)) continue;
            SearchFrame f;
            f.prefix = prefix;
            f.rot_head = Word(body.begin(), body.begin() + rot);
            f.relator = r;
            f.sign = sign;
            moves.emplace(std::move(key),
                          std::make_pair(std::move(candidate), std::move(f)));
          }
        }
      }
    }
    // Keep only moves whose optimistic total stays within the bound, best
    // first; ties break on the serialized word for determinism.
    struct Option {
      size_t h;
      std::string key;
      const std::pair<Word, SearchFrame>* mv;
    };
    std::vector<Option> opts;
    for (const auto& [key, mv] : moves) {
      auto h = content_heuristic(mv.first, sys);
      if (!h) continue;  // provably unfillable continuation
      if (g + 1 + *h > bound) {
        next_bound = std::min(next_bound, g + 1 + *h);
        continue;
      }
      opts.push_back(Option{*h, key, &mv});
    }
    std::sort(opts.begin(), opts.end(), [](const Option& a, const Option& b) {
      return a.h != b.h ? a.h < b.h : a.key < b.key;
    });
    for (const Option& o : opts) {
      path.push_back(o.mv->second);
      if (dfs(o.mv->first, g + 1)) return true;
      path.pop_back();
      if (out_of_budget) return false;
    }
    return false;
  }
};

}  // namespace

std::optional<size_t> content_lower_bound(const Presentation& pres,
                                          const Word& w) {
  ContentSystem sys = build_content_system(pres);
  return content_heuristic(free_reduce(w), sys);
}

SearchResult bfs_exact_fill(const Presentation& pres, const Word& w,
                            const SearchLimits& limits) {
  SearchResult res;
  const Word root = free_reduce(w);
  if (root.empty()) {
    res.status = SearchStatus::found;
    return res;
  }
  Searcher s(pres, limits);
  auto h0 = content_heuristic(root, s.sys);
  if (!h0) {
    res.status = SearchStatus::infeasible;
    return res;
  }
  size_t bound = std::max<size_t>(*h0, 1);
  while (bound <= limits.max_area) {
    s.bound = bound;
    s.next_bound = ~size_t(0);
    s.seen.clear();
    s.path.clear();
    res.area_bound_reached = bound;
    if (s.dfs(root, 0)) {
      res.status = SearchStatus::found;
      res.filling.cells = s.solution;
      res.nodes = s.nodes;
      return res;
    }
    res.nodes = s.nodes;
    if (s.out_of_budget) break;
    if (s.next_bound == ~size_t(0)) {
      // No frontier at all: every continuation was pruned as unfillable,
      // unless the word-length cap hid some of them.
      res.status = s.length_capped ? SearchStatus::exhausted
                                   : SearchStatus::infeasible;
      return res;
    }
    bound = s.next_bound;
  }
  res.status = SearchStatus::exhausted;
  return res;
}

DoublingLedger doubling_fill(
    const Presentation& pres, size_t w_relator, unsigned layer_j, unsigned n,
    const std::function<Filling(const Word&)>& base_fill, bool materialize) {
  const Word& w = pres.relators[w_relator];
  const long copies_per_step = 1L << layer_j;
  DoublingLedger ledger;
  ledger.base_cells =
      pow_int(Int(2), static_cast<unsigned long>(n) * layer_j);
  ledger.total = ledger.base_cells;
  std::vector<Filling> step_fills(n + 1);
  for (unsigned i = 1; i <= n; ++i) {
    const Word big = scale_word(w, 1L << i);
    const Word small = scale_word(w, 1L << (i - 1));
    const Word u = concat(big, pow_word(small, -copies_per_step));
    Filling f = base_fill(u);
    DoublingRow row;
    row.level = i;
    row.copies =
        pow_int(Int(2), static_cast<unsigned long>(n - i) * layer_j);
    row.area_each = Int(static_cast<unsigned long>(f.area()));
    row.word_len = u.size();
    ledger.total += row.copies * row.area_each;
    ledger.rows.push_back(row);
    if (materialize) step_fills[i] = std::move(f);
  }
  if (materialize) {
    Filling acc;
    acc.cells.push_back(Cell{{}, w_relator, 1});
    for (unsigned i = 1; i <= n; ++i) {
      const Word small = scale_word(w, 1L << (i - 1));
      Filling stage = step_fills[i];
      std::vector<Filling> copies(copies_per_step, acc);
      std::vector<Word> targets(copies_per_step, small);
      append_filling(stage, prefix_conjugate_assembly(copies, targets));
      acc = std::move(stage);
    }
    ledger.filling = std::move(acc);
  }
  return ledger;
}

DoublingLedger doubling_ledger(
    const Presentation& pres, size_t w_relator, unsigned layer_j, unsigned n,
    const std::function<Int(const Word&)>& base_area) {
  const Word& w = pres.relators[w_relator];
  const long copies_per_step = 1L << layer_j;
  DoublingLedger ledger;
  ledger.base_cells =
      pow_int(Int(2), static_cast<unsigned long>(n) * layer_j);
  ledger.total = ledger.base_cells;
  for (unsigned i = 1; i <= n; ++i) {
    const Word big = scale_word(w, 1L << i);
    const Word small = scale_word(w, 1L << (i - 1));
    const Word u = concat(big, pow_word(small, -copies_per_step));
    DoublingRow row;
    row.level = i;
    row.copies =
        pow_int(Int(2), static_cast<unsigned long>(n - i) * layer_j);
    row.area_each = base_area(u);
    row.word_len = u.size();
    ledger.total += row.copies * row.area_each;
    ledger.rows.push_back(row);
  }
  return ledger;
}

GeometricBound doubling_series_bound(unsigned a, unsigned j, unsigned n) {
  GeometricBound out;
  out.total = 0;
  for (unsigned i = 0; i <= n; ++i) {
    out.total += pow_int(Int(2), static_cast<unsigned long>(n - i) * j +
                                     static_cast<unsigned long>(i) * a);
  }
  if (n == 0) {
    out.dominant = "1";
    out.dominant_value = 1;
  } else if (a > j) {
    out.dominant = "2^(n*a)";
    out.dominant_value = pow_int(Int(2), static_cast<unsigned long>(n) * a);
  } else if (a < j) {
    out.dominant = "2^(n*j)";
    out.dominant_value = pow_int(Int(2), static_cast<unsigned long>(n) * j);
  } else {
    out.dominant = "n*2^(n*a)";
    out.dominant_value =
        Int(n) * pow_int(Int(2), static_cast<unsigned long>(n) * a);
  }
  return out;
}

QuotientBound quotdehn_bound(unsigned alpha, unsigned j, unsigned n) {
  QuotientBound out;
  out.sum = 0;
  for (unsigned i = 0; i <= n; ++i) {
    out.sum += pow_int(Int(2), static_cast<unsigned long>(n - i) * j +
                                   static_cast<unsigned long>(i) * alpha);
  }
  if (alpha > j) {
    out.dominant = "2^(n*alpha)";
    out.dominant_value = pow_int(Int(2), static_cast<unsigned long>(n) * alpha);
  } else if (alpha < j) {
    out.dominant = "2^(n*j)";
    out.dominant_value = pow_int(Int(2), static_cast<unsigned long>(n) * j);
  } else {
    out.dominant = "n*2^(n*alpha)";
    out.dominant_value =
        Int(std::max(n, 1u)) *
        pow_int(Int(2), static_cast<unsigned long>(n) * alpha);
  }
  return out;
}

}  // namespace nilfill
