#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nilfill/group.hpp"

namespace nilfill {

struct Letter {
  size_t gen = 0;
  int sign = 1;  // +1 or -1
  bool operator==(const Letter& o) const = default;
};

// A word in the generators; not automatically reduced.
using Word = std::vector<Letter>;

// Parses generator names (lowercase first letter), their case-flipped
// inverses ("a1" -> "A1"), powers u^n, parentheses, and commutators [u,v]
// = u v u^-1 v^-1. Longest-match tokenization, whitespace ignored.
Word parse_word(const std::string& text,
                const std::vector<std::string>& names);

std::string word_to_string(const Word& w,
                           const std::vector<std::string>& names);

Word free_reduce(Word w);
Word inverse_word(const Word& w);
Word concat(const Word& a, const Word& b);
Word pow_word(const Word& w, long n);
Word commutator_word(const Word& u, const Word& v);
// c u c^-1.
Word conjugated_word(const Word& c, const Word& u);
// The scaling endomorphism on letters: every letter becomes t copies.
Word scale_word(const Word& w, long t);
inline Word gen_word(size_t g, int sign = 1) { return Word{{g, sign}}; }

GroupElement evaluate_word(const Word& w,
                           const std::vector<GroupElement>& gens);

// One relator application: the group element conj^-1 r^sign conj written
// multiplicatively, i.e. the cell contributes the word
// conj^-1 relator^sign conj.
struct Cell {
  Word conj;
  size_t relator = 0;
  int sign = 1;
};

struct Filling {
  std::vector<Cell> cells;
  size_t area() const { return cells.size(); }
};

Word expand_cell(const Cell& c, const std::vector<Word>& relators);
Word expand_filling(const Filling& f, const std::vector<Word>& relators);

// True iff w^-1 * (product of the expanded cells) freely reduces to the
// empty word; this is the whole correctness notion for fillings.
bool verify_filling(const Word& w, const Filling& f,
                    const std::vector<Word>& relators);

}  // namespace nilfill
