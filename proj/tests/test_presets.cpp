#include <map>
#include <vector>

#include <doctest.h>

#include "nilfill/algebra.hpp"
#include "nilfill/algebra_presets.hpp"
#include "nilfill/rational.hpp"

TEST_SUITE_BEGIN("presets");

namespace {

using namespace nilfill;

// Independent dimension count for the free case: the number of basic
// brackets of each weight via Moebius inversion, (1/w) sum mu(e) d^(w/e).
long witt(long d, long w) {
  auto mu = [](long n) {
    long m = 1;
    for (long p = 2; p * p <= n; ++p)
      if (n % p == 0) {
        n /= p;
        if (n % p == 0) return 0L;
        m = -m;
      }
    if (n > 1) m = -m;
    return m;
  };
  long sum = 0;
  for (long e = 1; e <= w; ++e) {
    if (w % e) continue;
    long pw = 1;
    for (long i = 0; i < w / e; ++i) pw *= d;
    sum += mu(e) * pw;
  }
  return sum / w;
}

}  // namespace

TEST_CASE("free algebra layer dimensions match the counting formula") {
  struct Case {
    size_t d;
    unsigned k;
  };
  for (Case c : {Case{2, 6}, Case{3, 4}, Case{5, 3}}) {
    FreeNilpotent fn = free_nilpotent(c.d, c.k);
    CAPTURE(c.d);
    CAPTURE(c.k);
    for (unsigned w = 1; w <= c.k; ++w) {
      CAPTURE(w);
      CHECK(fn.alg.layer_dim(w) ==
            static_cast<size_t>(witt(static_cast<long>(c.d), w)));
    }
  }
}

TEST_CASE("free algebra tables satisfy the axioms") {
  for (auto [d, k] : std::vector<std::pair<size_t, unsigned>>{
           {2, 5}, {3, 3}, {5, 3}}) {
    AlgebraReport rep = verify_algebra(free_nilpotent(d, k).alg);
    CAPTURE(d);
    CAPTURE(k);
    CHECK(rep.ok);
  }
}

TEST_CASE("small free algebras have the expected basis") {
  FreeNilpotent fn = free_nilpotent(2, 3);
  REQUIRE(fn.alg.dim() == 5);
  // Basis: a1, a2, [a1,a2], [a1,[a1,a2]], [a2,[a1,a2]].
  CHECK(fn.elements[2].left == 0);
  CHECK(fn.elements[2].right == 1);
  CHECK(fn.elements[3].left == 0);
  CHECK(fn.elements[3].right == 2);
  CHECK(fn.elements[4].left == 1);
  CHECK(fn.elements[4].right == 2);
  CHECK(fn.alg.name(3) == "[a1,[a1,a2]]");
  CHECK(fn.alg.bracket_basis(0, 1) == fn.alg.basis(2));
  // [[a1,a2],a1] = -[a1,[a1,a2]].
  CHECK(fn.alg.bracket_basis(2, 0) == scale(fn.alg.basis(3), Rational(-1)));

  FreeNilpotent h = free_nilpotent(2, 2);
  CHECK(h.alg.dim() == 3);
  CHECK(h.alg.bracket_basis(0, 1) == h.alg.basis(2));
}

TEST_CASE("heisenberg family") {
  GradedLieAlgebra h5 = heisenberg(5);
  CHECK(h5.dim() == 5);
  CHECK(verify_algebra(h5).ok);
  CHECK(h5.bracket_basis(0, 2) == h5.basis(4));
  CHECK(h5.bracket_basis(1, 3) == h5.basis(4));
  CHECK(is_zero(h5.bracket_basis(0, 3)));
  CHECK(is_zero(h5.bracket_basis(0, 1)));
  CHECK_THROWS(heisenberg(4));
}

TEST_CASE("quaternionic pairing") {
  GradedLieAlgebra q = division_heisenberg(DivisionKind::quaternions);
  REQUIRE(q.dim() == 7);
  CHECK(verify_algebra(q).ok);
  // [1,i] = [j,k], [1,j] = [k,i], [1,k] = [i,j] for the trace form.
  auto br = [&](size_t i, size_t j) { return bracket(q, q.basis(i), q.basis(j)); };
  CHECK(br(0, 1) == br(2, 3));
  CHECK(br(0, 2) == br(3, 1));
  CHECK(br(0, 3) == br(1, 2));
  CHECK_FALSE(is_zero(br(0, 1)));

  GradedLieAlgebra c = division_heisenberg(DivisionKind::complex_numbers);
  CHECK(c.dim() == 3);
  CHECK_FALSE(is_zero(bracket(c, c.basis(0), c.basis(1))));
}

TEST_CASE("octonion multiplication table") {
  auto t = octonion_table();
  CHECK(t[0][5] == 6);    // identity row
  CHECK(t[1][1] == -1);   // imaginary units square to -1
  CHECK(t[7][7] == -1);
  CHECK(t[1][2] == 4);    // quaternionic triple i j = k
  CHECK(t[2][1] == -4);
  CHECK(t[1][4] == 6);    // doubling: e1 e4 = e5
  for (int i = 1; i < 8; ++i)
    for (int j = 1; j < 8; ++j)
      if (i != j) CHECK(t[i][j] == -t[j][i]);
}

TEST_CASE("octonion bracket relations have small support") {
  GradedLieAlgebra o = division_heisenberg(DivisionKind::octonions);
  REQUIRE(o.dim() == 15);
  CHECK(verify_algebra(o).ok);
  auto rels = small_support_relations(o);
  CHECK(rels.size() == 21);
  for (const auto& r : rels) {
    CHECK(r.pairs.size() == 2);
    // Each relation really is a vanishing combination.
    QVec sum = o.zero();
    for (size_t m = 0; m < r.pairs.size(); ++m) {
      QVec b = bracket(o, o.basis(r.pairs[m].first), o.basis(r.pairs[m].second));
      sum = add(sum, scale(b, Rational(r.coeffs[m])));
    }
    CHECK(is_zero(sum));
  }
}

TEST_CASE("quaternion relations") {
  auto rels = small_support_relations(
      division_heisenberg(DivisionKind::quaternions));
  CHECK(rels.size() == 3);
  for (const auto& r : rels) CHECK(r.pairs.size() == 2);
}

TEST_CASE("rank-8 class-3 algebra") {
  GradedLieAlgebra g = class3_rank8();
  REQUIRE(g.dim() == 8);
  CHECK(g.nclass() == 3);
  CHECK(verify_algebra(g).ok);
  auto br = [&](size_t i, size_t j) { return bracket(g, g.basis(i), g.basis(j)); };
  CHECK(br(0, 1) == g.basis(5));             // [a,b] = f
  CHECK(br(2, 3) == g.basis(5));             // [c,d] = f
  CHECK(br(1, 2) == g.basis(6));             // [b,c] = g
  CHECK(br(3, 4) == g.basis(6));             // [d,e] = g
  CHECK(br(1, 5) == g.basis(7));             // [b,f] = h
  CHECK(br(3, 6) == scale(g.basis(7), Rational(-1)));  // [d,g] = -h
  CHECK(is_zero(br(2, 5)));                  // [c,f] = 0
  CHECK(is_zero(br(0, 2)));                  // a and c commute
  CHECK(is_zero(br(0, 5)));
}

TEST_CASE("central product of Heisenberg algebras") {
  CentralProduct cp = central_product_algebra(heisenberg(3), 2);
  REQUIRE(cp.alg.dim() == 5);
  CHECK(verify_algebra(cp.alg).ok);
  CHECK(cp.alg.name(0) == "x1_1");
  CHECK(cp.alg.name(2) == "x1_2");
  CHECK(cp.alg.name(4) == "z");
  CHECK(cp.alg.bracket_basis(0, 1) == cp.alg.basis(4));
  CHECK(cp.alg.bracket_basis(2, 3) == cp.alg.basis(4));
  CHECK(is_zero(cp.alg.bracket_basis(0, 2)));
  CHECK(is_zero(cp.alg.bracket_basis(0, 3)));
  CHECK(cp.gen_index(1, 0) == 2);
  CHECK(cp.shared_index(0) == 4);
  CHECK_THROWS(central_product_algebra(class3_rank8(), 2));
}

TEST_CASE("central quotient drops the chosen direction") {
  GradedLieAlgebra h3 = heisenberg(3);
  CentralQuotient q = central_quotient(h3, {h3.basis(2)});
  CHECK(q.alg.dim() == 2);
  CHECK(q.alg.nclass() == 1);
  CHECK(q.kept == std::vector<size_t>{0, 1});

  // Quotient map must still be a bracket homomorphism.
  for (size_t i = 0; i < q.alg.dim(); ++i)
    for (size_t j = 0; j < q.alg.dim(); ++j) {
      QVec lhs = bracket(q.alg, q.alg.basis(i), q.alg.basis(j));
      QVec old = bracket(h3, h3.basis(q.kept[i]), h3.basis(q.kept[j]));
      QVec rhs(q.alg.dim(), Rational(0));
      for (size_t r = 0; r < q.alg.dim(); ++r)
        for (size_t c = 0; c < h3.dim(); ++c)
          rhs[r] += q.projection.at(r, c) * old[c];
      CHECK(lhs == rhs);
    }

  // Quotients only accept central directions.
  CHECK_THROWS(central_quotient(h3, {h3.basis(0)}));
}

TEST_CASE("central quotient of a glued square") {
  CentralProduct cp =
      central_product_algebra(free_nilpotent(4, 2).alg, 2);
  REQUIRE(cp.alg.dim() == 14);
  // Kill [a1,a2] + [a3,a4] in the shared layer.
  QVec z = cp.alg.zero();
  z[cp.shared_index(0)] = 1;  // pair (a1,a2)
  z[cp.shared_index(5)] = 1;  // pair (a3,a4)
  CentralQuotient q = central_quotient(cp.alg, {z});
  CHECK(q.alg.dim() == 13);
  CHECK(q.alg.layer_dim(2) == 5);
  CHECK(verify_algebra(q.alg).ok);

  // In the quotient, [a1_1, a2_1] = -[a3_1, a4_1]-direction.
  QVec b01 = bracket(q.alg, q.alg.basis(0), q.alg.basis(1));
  size_t last = q.alg.dim() - 1;
  CHECK(b01 == scale(q.alg.basis(last), Rational(-1)));

  // Homomorphism property on every original basis pair.
  for (size_t i = 0; i < cp.alg.dim(); ++i)
    for (size_t j = 0; j < cp.alg.dim(); ++j) {
      QVec old = bracket(cp.alg, cp.alg.basis(i), cp.alg.basis(j));
      auto proj = [&](const QVec& v) {
        QVec w(q.alg.dim(), Rational(0));
        for (size_t r = 0; r < q.alg.dim(); ++r)
          for (size_t c = 0; c < cp.alg.dim(); ++c)
            w[r] += q.projection.at(r, c) * v[c];
        return w;
      };
      QVec lhs = proj(old);
      QVec rhs = bracket(q.alg, proj(cp.alg.basis(i)), proj(cp.alg.basis(j)));
      CHECK(lhs == rhs);
    }
}

TEST_SUITE_END();
