#include <doctest.h>

#include "nilfill/rational.hpp"

using namespace nilfill;

TEST_SUITE_BEGIN("rational");

TEST_CASE("parse and print") {
  CHECK(parse_rational("3/4") == rat(3, 4));
  CHECK(parse_rational("-3/4") == rat(-3, 4));
  CHECK(parse_rational("5") == rat(5));
  CHECK(parse_rational("-6/4") == rat(-3, 2));
  CHECK(to_string(rat(-3, 2)) == "-3/2");
  CHECK(to_string(rat(7)) == "7");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("round half to even") {
  CHECK(round_half_even(rat(5, 2)) == 2);
  CHECK(round_half_even(rat(7, 2)) == 4);
  CHECK(round_half_even(rat(-5, 2)) == -2);
  CHECK(round_half_even(rat(-7, 2)) == -4);
  CHECK(round_half_even(rat(3, 4)) == 1);
  CHECK(round_half_even(rat(1, 4)) == 0);
  CHECK(round_half_even(rat(-1, 4)) == 0);
  CHECK(round_half_even(rat(-3, 4)) == -1);
  CHECK(round_half_even(rat(2)) == 2);
}

TEST_CASE("floor division") {
  CHECK(floor_div(Int(7), Int(2)) == 3);
  CHECK(floor_div(Int(-7), Int(2)) == -4);
  CHECK(floor_div(Int(7), Int(-2)) == -4);
  CHECK(floor_div(Int(-7), Int(-2)) == 3);
}

TEST_CASE("powers") {
  CHECK(pow_rational(rat(2, 3), 3) == rat(8, 27));
  CHECK(pow_rational(rat(2, 3), -2) == rat(9, 4));
  CHECK(pow_rational(rat(5), 0) == rat(1));
  CHECK(pow_int(Int(3), 5) == 243);
}

TEST_CASE("root bounds and comparisons") {
  // root_upper_bound(q, n) is the least multiple of 1/256 whose nth power
  // is >= q; for q = 2, n = 2 it should be just above sqrt(2) ~ 1.41421.
  Rational r = root_upper_bound(rat(2), 2);
  CHECK(pow_rational(r, 2) >= rat(2));
  CHECK(pow_rational(r - rat(1, 256), 2) < rat(2));

  // 2^(1/2) vs 3^(1/3): 2^3 = 8 > 3^2 = 9 is false, so 2^(1/2) < 3^(1/3).
  CHECK(compare_roots(rat(2), 2, rat(3), 3) == -1);
  CHECK(compare_roots(rat(3), 3, rat(2), 2) == 1);
  CHECK(compare_roots(rat(4), 2, rat(8), 3) == 0);
}

TEST_SUITE_END();
