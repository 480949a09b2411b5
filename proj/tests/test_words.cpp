#include <vector>

#include <doctest.h>

#include "nilfill/algebra_presets.hpp"
#include "nilfill/words.hpp"

TEST_SUITE_BEGIN("words");

namespace {
using namespace nilfill;
const std::vector<std::string> ab = {"a", "b"};
}  // namespace

TEST_CASE("parser basics") {
  Word w = parse_word("[a,b]", ab);
  CHECK(word_to_string(w, ab) == "abAB");
  CHECK(w == commutator_word(gen_word(0), gen_word(1)));

  CHECK(word_to_string(parse_word("a^3 B^-2", ab), ab) == "aaabb");
  CHECK(word_to_string(parse_word("(ab)^2", ab), ab) == "abab");
  CHECK(word_to_string(parse_word("(aB)^-1", ab), ab) == "bA");
  CHECK(parse_word("a^0", ab).empty());
  CHECK(word_to_string(parse_word("", ab), ab) == "1");

  Word nested = parse_word("[a,[a,b]]", ab);
  CHECK(nested ==
        commutator_word(gen_word(0), commutator_word(gen_word(0), gen_word(1))));
  CHECK(word_to_string(nested, ab) == "aabABAbaBA");
}

TEST_CASE("longest match and numbered names") {
  std::vector<std::string> names = {"a", "a1", "b2"};
  Word w = parse_word("aa1B2", names);
  REQUIRE(w.size() == 3);
  CHECK(w[0] == Letter{0, 1});
  CHECK(w[1] == Letter{1, 1});
  CHECK(w[2] == Letter{2, -1});
  CHECK(word_to_string(w, names) == "aa1B2");
}

TEST_CASE("parser rejects junk") {
  CHECK_THROWS(parse_word("c", ab));
  CHECK_THROWS(parse_word("[a,b", ab));
  CHECK_THROWS(parse_word("(ab", ab));
  CHECK_THROWS(parse_word("a^", ab));
  CHECK_THROWS(parse_word(")a", ab));
}

TEST_CASE("reduction and inverses") {
  Word w = parse_word("abBAba", ab);
  CHECK(word_to_string(free_reduce(w), ab) == "ba");
  CHECK(free_reduce(parse_word("[a,b][b,a]", ab)).empty());
  CHECK(inverse_word(parse_word("aB", ab)) == parse_word("bA", ab));
  CHECK(free_reduce(concat(parse_word("ab", ab),
                           inverse_word(parse_word("ab", ab))))
            .empty());
}

TEST_CASE("scaling words") {
  CHECK(word_to_string(scale_word(parse_word("aB", ab), 3), ab) ==
        "aaaBBB");
  CHECK(scale_word(parse_word("ab", ab), 0).empty());
  // Scaling a commutator of single letters gives the power commutator.
  CHECK(scale_word(parse_word("[a,b]", ab), 2) ==
        parse_word("[a^2,b^2]", ab));
}

TEST_CASE("evaluation in the Heisenberg group") {
  GradedLieAlgebra h = heisenberg(3);
  std::vector<GroupElement> gens = {
      GroupElement(h, {rat(1), rat(0), rat(0)}),
      GroupElement(h, {rat(0), rat(1), rat(0)})};
  GroupElement c = evaluate_word(parse_word("[a,b]", ab), gens);
  CHECK(c.log() == QVec{rat(0), rat(0), rat(1)});
  CHECK(evaluate_word(parse_word("[a,b][b,a]", ab), gens).is_identity());
  CHECK(evaluate_word(parse_word("a^4", ab), gens).log() ==
        QVec{rat(4), rat(0), rat(0)});
}

TEST_CASE("filling expansion and verification") {
  std::vector<Word> rels = {parse_word("[a,b]", ab)};

  Filling one;
  one.cells.push_back({Word{}, 0, 1});
  CHECK(verify_filling(parse_word("[a,b]", ab), one, rels));
  CHECK_FALSE(verify_filling(parse_word("[b,a]", ab), one, rels));

  Filling flipped;
  flipped.cells.push_back({Word{}, 0, -1});
  CHECK(verify_filling(parse_word("[b,a]", ab), flipped, rels));

  // Conjugated cell: the cell (g, r, +) contributes g^-1 r g.
  Filling conj;
  conj.cells.push_back({parse_word("A", ab), 0, 1});
  CHECK(verify_filling(parse_word("a[a,b]A", ab), conj, rels));

  // Two cells compose left to right.
  Filling two;
  two.cells.push_back({Word{}, 0, 1});
  two.cells.push_back({parse_word("A", ab), 0, 1});
  CHECK(verify_filling(parse_word("[a,b]a[a,b]A", ab), two, rels));
  CHECK(two.area() == 2);
}

TEST_SUITE_END();
