#include "nilfill/fillcore.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace nilfill {

Filling conjugate_filling(const Filling& f, const Word& c) {
  Filling out;
  out.cells.reserve(f.cells.size());
  for (const Cell& cell : f.cells) {
    out.cells.push_back(Cell{concat(cell.conj, inverse_word(c)), cell.relator,
                             cell.sign});
  }
  return out;
}

Filling invert_filling(const Filling& f) {
  Filling out;
  out.cells.reserve(f.cells.size());
  for (auto it = f.cells.rbegin(); it != f.cells.rend(); ++it) {
    out.cells.push_back(Cell{it->conj, it->relator, -it->sign});
  }
  return out;
}

void append_filling(Filling& dst, const Filling& src) {
  dst.cells.insert(dst.cells.end(), src.cells.begin(), src.cells.end());
}

namespace {

// Filling of [b, a] from a filling of [a, b]. The commutator words are exact
// inverses of each other, so this is plain inversion.
Filling flip_args(const Filling& f) { return invert_filling(f); }

// Filling of [a^-1, b] from a filling of [a, b], via
// [a^-1, b] = a^-1 [b, a] a in the free group.
Filling invert_first(const Filling& f, const Word& a) {
  return conjugate_filling(invert_filling(f), inverse_word(a));
}

// Filling of [a, b^-1] from a filling of [a, b], via
// [a, b^-1] = b^-1 [b, a] b.
Filling invert_second(const Filling& f, const Word& b) {
  return conjugate_filling(invert_filling(f), inverse_word(b));
}

}  // namespace

std::optional<Filling> find_commutator_filling(const Presentation& pres,
                                               const Word& u, const Word& v) {
  const Word ui = inverse_word(u);
  const Word vi = inverse_word(v);
  for (size_t i = 0; i < pres.relators.size(); ++i) {
    const Word& r = pres.relators[i];
    Filling base;
    base.cells.push_back(Cell{{}, i, 1});
    if (r == commutator_word(u, v)) return base;
    if (r == commutator_word(v, u)) return flip_args(base);
    if (r == commutator_word(ui, v)) {
      // base fills [u^-1, v]; un-invert the first argument.
      return invert_first(base, ui);
    }
    if (r == commutator_word(u, vi)) return invert_second(base, vi);
    if (r == commutator_word(vi, u)) return invert_second(flip_args(base), vi);
    if (r == commutator_word(v, ui)) return invert_first(flip_args(base), ui);
    if (r == commutator_word(ui, vi)) {
      return invert_second(invert_first(base, ui), vi);
    }
    if (r == commutator_word(vi, ui)) {
      return invert_second(invert_first(flip_args(base), ui), vi);
    }
  }
  return std::nullopt;
}

const std::optional<Filling>& SwapTable::lookup(const Letter& p,
                                                const Letter& q) const {
  auto key = std::make_pair(std::make_pair(p.gen, p.sign),
                            std::make_pair(q.gen, q.sign));
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  auto filling = find_commutator_filling(pres_, Word{p}, Word{q});
  return cache_.emplace(key, std::move(filling)).first->second;
}

size_t letter_class_by_generator(const Letter& l) { return l.gen; }

Filling sort_by_swaps(const Word& from, const Word& to, const SwapTable& table,
                      const std::function<size_t(const Letter&)>& class_of) {
  if (from.size() != to.size()) {
    throw std::runtime_error("sort_by_swaps: words have different lengths");
  }
  Filling out;
  Word cur = from;
  for (size_t i = 0; i < to.size(); ++i) {
    // Find the earliest pending letter of the target's class; the relative
    // order within a class is fixed, so it must be the one to move.
    size_t j = i;
    const size_t want = class_of(to[i]);
    while (j < cur.size() && class_of(cur[j]) != want) ++j;
    if (j == cur.size() || !(cur[j] == to[i])) {
      throw std::runtime_error(
          "sort_by_swaps: target is not an order-preserving rearrangement");
    }
    for (size_t k = j; k > i; --k) {
      const Letter x = cur[k - 1];
      const Letter y = cur[k];
      const auto& swap = table.lookup(x, y);
      if (!swap) {
        throw std::runtime_error("sort_by_swaps: no commuting relator for a "
                                 "required letter pair");
      }
      const Word prefix(cur.begin(), cur.begin() + (k - 1));
      append_filling(out, conjugate_filling(*swap, prefix));
      cur[k - 1] = y;
      cur[k] = x;
    }
  }
  return out;
}

Filling fill_cross_commutator(const Word& u, const Word& v,
                              const SwapTable& table) {
  // Sort u v u^-1 v^-1 into u u^-1 v v^-1 with u-letters and v-letters as the
  // two classes; the target reduces to nothing, so the swap cells fill the
  // commutator word on their own.
  const Word from = commutator_word(u, v);
  const Word to = concat(concat(u, inverse_word(u)), concat(v, inverse_word(v)));
  std::map<size_t, size_t> owner;
  for (const Letter& l : u) owner[l.gen] = 0;
  for (const Letter& l : v) {
    auto it = owner.find(l.gen);
    if (it != owner.end() && it->second == 0) {
      throw std::runtime_error(
          "fill_cross_commutator: a generator appears on both sides");
    }
    owner[l.gen] = 1;
  }
  auto class_of = [&owner](const Letter& l) { return owner.at(l.gen); };
  return sort_by_swaps(from, to, table, class_of);
}

Filling prefix_conjugate_assembly(const std::vector<Filling>& fills,
                                  const std::vector<Word>& targets) {
  if (fills.size() != targets.size()) {
    throw std::runtime_error("prefix_conjugate_assembly: size mismatch");
  }
  Filling out;
  Word prefix;
  for (size_t i = 0; i < fills.size(); ++i) {
    append_filling(out, conjugate_filling(fills[i], prefix));
    prefix = free_reduce(concat(prefix, targets[i]));
  }
  return out;
}

Filling power_commutator_filling(const Word& x, const Word& y, long t,
                                 size_t relator, int sign) {
  if (t < 0) throw std::runtime_error("power_commutator_filling: negative t");
  Filling out;
  for (long a = t - 1; a >= 0; --a) {
    for (long b = 0; b < t; ++b) {
      Word conj = concat(pow_word(y, -b), pow_word(x, -a));
      out.cells.push_back(Cell{std::move(conj), relator, sign});
    }
  }
  return out;
}

Filling commutator_with_cell(const Cell& cell, const Word& z) {
  Filling out;
  out.cells.push_back(cell);
  out.cells.push_back(
      Cell{concat(cell.conj, inverse_word(z)), cell.relator, -cell.sign});
  return out;
}

}  // namespace nilfill
