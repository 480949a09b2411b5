#include <cstdint>
#include <vector>

#include <doctest.h>

#include "nilfill/algebra.hpp"
#include "nilfill/bch.hpp"
#include "nilfill/rational.hpp"

TEST_SUITE_BEGIN("bch");

namespace {

using nilfill::Rational;
using nilfill::rat;

// Test-local truncated free associative algebra on two symbols, written
// independently of the library: dense coefficient vectors indexed by an
// explicit monomial encoding.  Monomial of length L with bit pattern b
// (most significant bit = first symbol) lives at index 2^L - 1 + b.
struct Assoc {
  unsigned cap;
  std::vector<Rational> c;

  explicit Assoc(unsigned cap_) : cap(cap_), c((2u << cap_) - 1) {}

  static size_t idx(unsigned len, unsigned bits) {
    return ((1u << len) - 1) + bits;
  }
  Rational& at(unsigned len, unsigned bits) { return c[idx(len, bits)]; }
  const Rational& at(unsigned len, unsigned bits) const {
    return c[idx(len, bits)];
  }
};

Assoc a_mul(const Assoc& a, const Assoc& b) {
  Assoc out(a.cap);
  for (unsigned la = 0; la <= a.cap; ++la)
    for (unsigned ba = 0; ba < (1u << la); ++ba) {
      if (a.at(la, ba) == 0) continue;
      for (unsigned lb = 0; la + lb <= a.cap; ++lb)
        for (unsigned bb = 0; bb < (1u << lb); ++bb) {
          if (b.at(lb, bb) == 0) continue;
          out.at(la + lb, (ba << lb) | bb) += a.at(la, ba) * b.at(lb, bb);
        }
    }
  return out;
}

Assoc a_scale_add(Assoc a, const Assoc& b, const Rational& s) {
  for (size_t i = 0; i < a.c.size(); ++i) a.c[i] += s * b.c[i];
  return a;
}

Assoc a_gen(unsigned cap, unsigned sym) {
  Assoc g(cap);
  g.at(1, sym) = 1;
  return g;
}

Assoc a_exp(const Assoc& u) {
  Assoc out(u.cap);
  out.at(0, 0) = 1;
  Assoc pw = out;
  Rational inv_fact(1);
  for (unsigned n = 1; n <= u.cap; ++n) {
    pw = a_mul(pw, u);
    inv_fact /= static_cast<long>(n);
    out = a_scale_add(out, pw, inv_fact);
  }
  return out;
}

Assoc a_log1p(const Assoc& u) {
  Assoc out(u.cap);
  Assoc pw(u.cap);
  pw.at(0, 0) = 1;
  Rational sign(1);
  for (unsigned n = 1; n <= u.cap; ++n) {
    pw = a_mul(pw, u);
    out = a_scale_add(out, pw, sign / static_cast<long>(n));
    sign = -sign;
  }
  return out;
}

// Associative expansion of the left-normed bracket word.
Assoc a_bracket_word(unsigned cap, const std::vector<std::uint8_t>& w) {
  Assoc acc = a_gen(cap, w[0]);
  for (size_t i = 1; i < w.size(); ++i) {
    Assoc g = a_gen(cap, w[i]);
    acc = a_scale_add(a_mul(acc, g), a_mul(g, acc), rat(-1));
  }
  return acc;
}

Assoc oracle_log(unsigned cap) {
  Assoc prod = a_mul(a_exp(a_gen(cap, 0)), a_exp(a_gen(cap, 1)));
  prod.at(0, 0) -= 1;
  return a_log1p(prod);
}

nilfill::GradedLieAlgebra heis3() {
  std::map<std::pair<size_t, size_t>, nilfill::BracketEntry> table;
  table[{0, 1}] = {{2, rat(1)}};
  return nilfill::GradedLieAlgebra({1, 1, 2}, table, {"x", "y", "z"});
}

}  // namespace

TEST_CASE("series matches associative logarithm") {
  for (unsigned cap = 2; cap <= nilfill::kMaxBCHClass; ++cap) {
    const nilfill::BCHSeries& s = nilfill::bch_series(cap);
    Assoc expanded(cap);
    expanded.at(1, 0) = 1;
    expanded.at(1, 1) = 1;
    for (const nilfill::BCHTerm& t : s.all_terms())
      expanded = a_scale_add(expanded, a_bracket_word(cap, t.word), t.c);
    Assoc want = oracle_log(cap);
    CAPTURE(cap);
    CHECK(expanded.c == want.c);
  }
}

TEST_CASE("low degree terms") {
  const nilfill::BCHSeries& s = nilfill::bch_series(3);

  auto d2 = s.terms(2);
  REQUIRE(d2.size() == 1);
  CHECK(d2[0].word == std::vector<std::uint8_t>{0, 1});
  CHECK(d2[0].c == rat(1, 2));

  // Degree 3 in left-normed form: -1/12 [[X,Y],X] + 1/12 [[X,Y],Y].
  auto d3 = s.terms(3);
  REQUIRE(d3.size() == 2);
  CHECK(d3[0].word == std::vector<std::uint8_t>{0, 1, 0});
  CHECK(d3[0].c == rat(-1, 12));
  CHECK(d3[1].word == std::vector<std::uint8_t>{0, 1, 1});
  CHECK(d3[1].c == rat(1, 12));
}

TEST_CASE("combine in the Heisenberg algebra") {
  auto alg = heis3();
  nilfill::QVec x = {rat(1), rat(0), rat(0)};
  nilfill::QVec y = {rat(0), rat(1), rat(0)};
  nilfill::QVec z = nilfill::bch_combine(alg, x, y);
  CHECK(z == nilfill::QVec{rat(1), rat(1), rat(1, 2)});
  nilfill::QVec zr = nilfill::bch_combine(alg, y, x);
  CHECK(zr == nilfill::QVec{rat(1), rat(1), rat(-1, 2)});
}

TEST_CASE("commuting arguments add") {
  auto alg = heis3();
  // Vectors with proportional layer-1 parts bracket to zero, so the
  // combination is plain addition.
  nilfill::QVec x = {rat(2), rat(3), rat(5)};
  nilfill::QVec y = {rat(4), rat(6), rat(-1)};
  CHECK(nilfill::bch_combine(alg, x, y) ==
        nilfill::QVec{rat(6), rat(9), rat(4)});
  CHECK(nilfill::bch_combine(alg, y, x) ==
        nilfill::QVec{rat(6), rat(9), rat(4)});
}

TEST_CASE("class one falls back to addition") {
  nilfill::GradedLieAlgebra line({1, 1}, {});
  CHECK(nilfill::bch_combine(line, {rat(1), rat(2)}, {rat(3), rat(4)}) ==
        nilfill::QVec{rat(4), rat(6)});
}

TEST_SUITE_END();
