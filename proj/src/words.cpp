#include "nilfill/words.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace nilfill {
namespace {

std::string flip_case(const std::string& s) {
  std::string t = s;
  if (!t.empty()) {
    if (std::islower(static_cast<unsigned char>(t[0])))
      t[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(t[0])));
    else
      t[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(t[0])));
  }
  return t;
}

struct Parser {
  const std::string& text;
  size_t pos = 0;
  // (token, generator, sign), longest tokens first.
  std::vector<std::tuple<std::string, size_t, int>> tokens;

  Parser(const std::string& t, const std::vector<std::string>& names)
      : text(t) {
    for (size_t i = 0; i < names.size(); ++i) {
      tokens.push_back({names[i], i, 1});
      tokens.push_back({flip_case(names[i]), i, -1});
    }
    std::stable_sort(tokens.begin(), tokens.end(),
                     [](const auto& a, const auto& b) {
                       return std::get<0>(a).size() > std::get<0>(b).size();
                     });
  }

  void skip_ws() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }

  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c)
      throw std::invalid_argument("expected '" + std::string(1, c) +
                                  "' at position " + std::to_string(pos));
    ++pos;
  }

  long parse_int() {
    skip_ws();
    size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
      throw std::invalid_argument("expected integer at position " +
                                  std::to_string(start));
    return std::stol(text.substr(start, pos - start));
  }

  Word parse_sequence(bool top) {
    Word out;
    while (true) {
      skip_ws();
      if (pos >= text.size()) break;
      char c = text[pos];
      if (c == ')' || c == ',' || c == ']') {
        if (top)
          throw std::invalid_argument("unexpected '" + std::string(1, c) +
                                      "' at position " + std::to_string(pos));
        break;
      }
      Word atom;
      if (c == '(') {
        ++pos;
        atom = parse_sequence(false);
        expect(')');
      } else if (c == '[') {
        ++pos;
        Word u = parse_sequence(false);
        expect(',');
        Word v = parse_sequence(false);
        expect(']');
        atom = commutator_word(u, v);
      } else {
        bool matched = false;
        for (const auto& [tok, gen, sign] : tokens) {
          if (text.compare(pos, tok.size(), tok) == 0) {
            atom = gen_word(gen, sign);
            pos += tok.size();
            matched = true;
            break;
          }
        }
        if (!matched)
          throw std::invalid_argument("unknown symbol at position " +
                                      std::to_string(pos));
      }
      if (peek_is('^')) {
        ++pos;
        atom = pow_word(atom, parse_int());
      }
      out.insert(out.end(), atom.begin(), atom.end());
    }
    return out;
  }
};

}  // namespace

Word parse_word(const std::string& text,
                const std::vector<std::string>& names) {
  Parser p(text, names);
  Word w = p.parse_sequence(true);
  return w;
}

std::string word_to_string(const Word& w,
                           const std::vector<std::string>& names) {
  std::string out;
  for (const Letter& l : w) {
    const std::string& n = names.at(l.gen);
    out += l.sign > 0 ? n : flip_case(n);
  }
  if (out.empty()) out = "1";
  return out;
}

Word free_reduce(Word w) {
  Word out;
  for (const Letter& l : w) {
    if (!out.empty() && out.back().gen == l.gen &&
        out.back().sign == -l.sign)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Word inverse_word(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    out.push_back({it->gen, -it->sign});
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word pow_word(const Word& w, long n) {
  Word base = n >= 0 ? w : inverse_word(w);
  long reps = n >= 0 ? n : -n;
  Word out;
  out.reserve(base.size() * static_cast<size_t>(reps));
  for (long i = 0; i < reps; ++i)
    out.insert(out.end(), base.begin(), base.end());
  return out;
}

Word commutator_word(const Word& u, const Word& v) {
  return concat(concat(u, v), concat(inverse_word(u), inverse_word(v)));
}

Word conjugated_word(const Word& c, const Word& u) {
  return concat(concat(c, u), inverse_word(c));
}

Word scale_word(const Word& w, long t) {
  if (t < 0) throw std::invalid_argument("scale_word needs t >= 0");
  Word out;
  out.reserve(w.size() * static_cast<size_t>(t));
  for (const Letter& l : w)
    for (long i = 0; i < t; ++i) out.push_back(l);
  return out;
}

GroupElement evaluate_word(const Word& w,
                           const std::vector<GroupElement>& gens) {
  if (gens.empty()) throw std::invalid_argument("no generators");
  GroupElement acc = GroupElement::identity(gens[0].algebra());
  for (const Letter& l : w) {
    const GroupElement& g = gens.at(l.gen);
    acc = multiply(acc, l.sign > 0 ? g : invert(g));
  }
  return acc;
}

Word expand_cell(const Cell& c, const std::vector<Word>& relators) {
  const Word& r = relators.at(c.relator);
  Word body = c.sign > 0 ? r : inverse_word(r);
  return concat(concat(inverse_word(c.conj), body), c.conj);
}

Word expand_filling(const Filling& f, const std::vector<Word>& relators) {
  Word out;
  for (const Cell& c : f.cells) {
    Word e = expand_cell(c, relators);
    out.insert(out.end(), e.begin(), e.end());
  }
  return out;
}

bool verify_filling(const Word& w, const Filling& f,
                    const std::vector<Word>& relators) {
  Word total = concat(inverse_word(w), expand_filling(f, relators));
  return free_reduce(total).empty();
}

}  // namespace nilfill
