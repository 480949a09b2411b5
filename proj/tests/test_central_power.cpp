#include <doctest.h>

#include <algorithm>
#include <map>
#include <memory>
#include <set>

#include "nilfill/algebra_presets.hpp"
#include "nilfill/central_power.hpp"
#include "nilfill/fillers.hpp"
#include "nilfill/presentation_builtins.hpp"

TEST_SUITE_BEGIN("central_power");

namespace {
using namespace nilfill;

// Three commuting blocks x_i, y_i without any model; enough structure for
// word-level interleaving.
Presentation three_blocks() {
  Presentation pres;
  pres.generators = {"x1", "y1", "x2", "y2", "x3", "y3"};
  for (size_t a = 0; a < 6; ++a)
    for (size_t b = a + 1; b < 6; ++b) {
      if (a / 2 == b / 2) continue;  // same block: no relator
      pres.add_relator_word(commutator_word(gen_word(a), gen_word(b)),
                            "commute");
    }
  return pres;
}

size_t count_tag(const Presentation& pres, const std::string& tag) {
  return std::count(pres.tags.begin(), pres.tags.end(), tag);
}

// Class-2 base on x1,y1,..,x3,y3 whose only non-free relation glues the
// three block commutators: [x1,y1][x2,y2][x3,y3] = 1.
Presentation triple_block_base() {
  Presentation pres;
  pres.generators = {"x1", "y1", "x2", "y2", "x3", "y3"};
  FreeNilpotent fn = free_nilpotent(6, 2);
  QVec glue = fn.alg.zero();
  for (size_t j = 0; j < 6; j += 2) {
    QVec b = fn.alg.bracket_basis(j, j + 1);
    for (size_t i = 0; i < b.size(); ++i) glue[i] += b[i];
  }
  CentralQuotient quo = central_quotient(fn.alg, {glue});
  auto alg = std::make_shared<GradedLieAlgebra>(std::move(quo.alg));
  pres.algebra = alg;
  for (size_t g = 0; g < 6; ++g) pres.generator_logs.push_back(alg->basis(g));

  Word w;
  RelatorForm form;
  for (size_t j = 0; j < 6; j += 2) {
    w = concat(w, commutator_word(gen_word(j), gen_word(j + 1)));
    form.factors.push_back(RelatorFactor{gen_word(j), gen_word(j + 1)});
  }
  pres.add_relator_word(std::move(w), "glue", std::move(form));
  for (size_t i = 0; i < 6; ++i)
    for (size_t j = 0; j < 6; ++j)
      for (size_t k = j + 1; k < 6; ++k)
        pres.add_relator_word(
            commutator_word(gen_word(i),
                            commutator_word(gen_word(j), gen_word(k))),
            "nilp");
  return pres;
}

}  // namespace

TEST_CASE("interleave merges commutator products") {
  Presentation pres = three_blocks();

  SUBCASE("single factor is returned as is") {
    std::vector<RelatorFactor> one = {{pres.parse("x1"), pres.parse("y1")}};
    InterleaveResult res = interleave(pres, one);
    CHECK(res.word == pres.parse("[x1,y1]"));
    CHECK(res.witness.area() == 0);
  }

  SUBCASE("two factors reproduce the hand-drawn rearrangement") {
    std::vector<RelatorFactor> two = {{pres.parse("x1"), pres.parse("y1")},
                                      {pres.parse("x2"), pres.parse("y2")}};
    InterleaveResult res = interleave(pres, two);
    CHECK(res.word == pres.parse("[x1x2,y1y2]"));
    Word claim = concat(pres.parse("[x1,y1][x2,y2]"),
                        inverse_word(res.word));
    CHECK(verify_filling(claim, res.witness, pres.relators));
  }

  SUBCASE("three factors") {
    std::vector<RelatorFactor> three = {{pres.parse("x1"), pres.parse("y1")},
                                        {pres.parse("x2"), pres.parse("y2")},
                                        {pres.parse("x3"), pres.parse("y3")}};
    InterleaveResult res = interleave(pres, three);
    CHECK(res.word == pres.parse("[x1x2x3,y1y2y3]"));
    Word claim = concat(pres.parse("[x1,y1][x2,y2][x3,y3]"),
                        inverse_word(res.word));
    CHECK(verify_filling(claim, res.witness, pres.relators));
    CHECK(res.witness.area() > 0);
  }

  SUBCASE("multi-letter blocks work when their letters commute across") {
    std::vector<RelatorFactor> two = {{pres.parse("x1"), pres.parse("y1x2")},
                                      {pres.parse("x3"), pres.parse("y3")}};
    InterleaveResult res = interleave(pres, two);
    CHECK(res.word == pres.parse("[x1x3,y1x2y3]"));
    Word claim = concat(concat(pres.parse("[x1,y1x2]"), pres.parse("[x3,y3]")),
                        inverse_word(res.word));
    CHECK(verify_filling(claim, res.witness, pres.relators));
  }

  SUBCASE("shared generators are rejected") {
    std::vector<RelatorFactor> bad = {{pres.parse("x1"), pres.parse("y1")},
                                      {pres.parse("x1"), pres.parse("y2")}};
    CHECK_THROWS_WITH_AS(interleave(pres, bad),
                         doctest::Contains("share generator"),
                         std::runtime_error);
  }

  SUBCASE("a missing commuting relator is an error") {
    Presentation broken = three_blocks();
    // Drop [x1, y2]; the rearrangement needs it.
    Word gone = broken.parse("[x1,y2]");
    for (size_t m = 0; m < broken.relators.size(); ++m)
      if (broken.relators[m] == gone) {
        broken.relators.erase(broken.relators.begin() + m);
        broken.tags.erase(broken.tags.begin() + m);
        broken.forms.erase(broken.forms.begin() + m);
        break;
      }
    std::vector<RelatorFactor> two = {{broken.parse("x1"), broken.parse("y1")},
                                      {broken.parse("x2"), broken.parse("y2")}};
    CHECK_THROWS_WITH_AS(interleave(broken, two),
                         doctest::Contains("no commuting relator"),
                         std::runtime_error);
  }
}

TEST_CASE("inlining central generators") {
  Presentation flat = inline_central_generators(h3_presentation());
  CHECK(flat.generators == std::vector<std::string>{"a1", "a2"});
  REQUIRE(flat.relators.size() == 2);
  CHECK(flat.tags == std::vector<std::string>{"nilp", "nilp"});
  RelatorReport report = verify_relators(flat);
  CHECK(report.relators_ok);
  CHECK(report.compatible);  // the c generator was the only layer-2 log
}

TEST_CASE("central power emits the four relator families") {
  Presentation base = free_class2_presentation(2);
  Presentation power = central_power_presentation(base, 2);

  CHECK(power.generators ==
        std::vector<std::string>{"a1_1", "a2_1", "a1_2", "a2_2"});
  CHECK(count_tag(power, "orig") == 0);  // base relators are all nilpotency
  CHECK(count_tag(power, "nilp") == 4);
  CHECK(count_tag(power, "product") == 4);
  CHECK(count_tag(power, "center") == 1);

  Word center = power.parse("[a1_1,a2_1]");
  center = concat(center, inverse_word(power.parse("[a1_2,a2_2]")));
  REQUIRE(power.find_relator(center).has_value());

  RelatorReport report = verify_relators(power);
  for (const std::string& d : report.details) INFO(d);
  CHECK(report.relators_ok);
  CHECK(report.compatible);

  SUBCASE("n below the floor of two is rejected") {
    CHECK_THROWS_WITH_AS(central_power_presentation(base, 1),
                         doctest::Contains("need n >= 2"), std::runtime_error);
  }
  SUBCASE("payload relators need forms") {
    Presentation bare;
    bare.generators = {"u", "v"};
    bare.add_relator_word(commutator_word(gen_word(0), gen_word(1)), "misc");
    CHECK_THROWS_WITH_AS(central_power_presentation(bare, 2),
                         doctest::Contains("no commutator form"),
                         std::runtime_error);
  }
}

TEST_CASE("the second central power of H_3 is H_5") {
  Presentation power = central_power_presentation(h3_presentation(), 2);
  Presentation h5_model = h5_raw();
  const GradedLieAlgebra& got = *power.algebra;
  const GradedLieAlgebra& want = *h5_model.algebra;
  CHECK(got.dim() == want.dim());
  CHECK(got.layers() == want.layers());
  for (size_t i = 0; i < got.dim(); ++i)
    for (size_t j = 0; j < got.dim(); ++j)
      CHECK(got.bracket_basis(i, j) == want.bracket_basis(i, j));
  CHECK(verify_relators(power).relators_ok);

  CommutatorFormResult res = commutator_form_transform(power);
  REQUIRE(res.pres.relators.size() == 5);
  // The rewritten center relator is the interleaved H_5 relator; generator
  // positions line up with h5_commutator_form exactly.
  Presentation h5 = h5_commutator_form();
  for (const Word& r : h5.relators) {
    INFO(h5.str(r));
    CHECK(res.pres.find_relator(r).has_value());
  }
  CHECK(verify_relators(res.pres).relators_ok);
}

TEST_CASE("commutator form transform witnesses verify") {
  Presentation power =
      central_power_presentation(free_class2_presentation(2), 3);
  CommutatorFormResult res = commutator_form_transform(power);

  REQUIRE(res.rewrites.size() == power.relators.size());
  for (const RelatorRewrite& rw : res.rewrites) {
    Word claim = concat(power.relators[rw.source],
                        inverse_word(rw.replacement));
    INFO("relator ", rw.source, " tag ", power.tags[rw.source]);
    CHECK(verify_filling(claim, rw.witness, power.relators));
    if (power.tags[rw.source] == "nilp") {
      CHECK(rw.replacement.empty());
      for (const Cell& c : rw.witness.cells) {
        CHECK(power.tags[c.relator] != "nilp");
        CHECK(power.tags[c.relator] != "orig");
      }
    }
  }

  for (size_t m = 0; m < res.pres.relators.size(); ++m) {
    auto l = relator_complexity(res.pres, m);
    REQUIRE(l.has_value());
    CHECK(*l == 1);
  }
  CHECK(verify_relators(res.pres).relators_ok);
}

TEST_CASE("base relators spread across copies") {
  Presentation base = triple_block_base();
  REQUIRE(verify_relators(base).relators_ok);
  CHECK(relator_complexity(base, 0) == 3);

  CHECK_THROWS_WITH_AS(central_power_presentation(base, 2),
                       doctest::Contains("need n >= 3"), std::runtime_error);

  Presentation power = central_power_presentation(base, 3);
  CHECK(count_tag(power, "orig") == 3);
  CHECK(verify_relators(power).relators_ok);

  CommutatorFormResult res = commutator_form_transform(power);
  Word spread = power.parse("[x1_1 x2_2 x3_3, y1_1 y2_2 y3_3]");
  REQUIRE(res.pres.find_relator(spread).has_value());
  size_t orig_like = 0;
  for (const std::string& t : res.pres.tags) orig_like += t == "orig";
  CHECK(orig_like == 1);  // the three copies collapse to one relator

  for (const RelatorRewrite& rw : res.rewrites) {
    Word claim = concat(power.relators[rw.source],
                        inverse_word(rw.replacement));
    INFO("relator ", rw.source, " tag ", power.tags[rw.source]);
    CHECK(verify_filling(claim, rw.witness, power.relators));
  }
  CHECK(verify_relators(res.pres).relators_ok);
}

TEST_CASE("multi-letter factors ride through the transform") {
  // u1, u2 commute and [u1 u2, v] = 1; the factor block u1u2 forces the
  // piecewise expansion path.
  Presentation base;
  base.generators = {"u1", "u2", "v"};
  FreeNilpotent fn = free_nilpotent(3, 2);
  QVec z12 = fn.alg.bracket_basis(0, 1);
  QVec z13 = fn.alg.bracket_basis(0, 2);
  QVec z23 = fn.alg.bracket_basis(1, 2);
  QVec mix = fn.alg.zero();
  for (size_t i = 0; i < mix.size(); ++i) mix[i] = z13[i] + z23[i];
  CentralQuotient quo = central_quotient(fn.alg, {z12, mix});
  auto alg = std::make_shared<GradedLieAlgebra>(std::move(quo.alg));
  base.algebra = alg;
  for (size_t g = 0; g < 3; ++g) base.generator_logs.push_back(alg->basis(g));
  base.add_relator("[u1,u2]", "flat",
                   RelatorForm{{RelatorFactor{base.parse("u1"),
                                              base.parse("u2")}}});
  base.add_relator("[u1u2,v]", "blockrel",
                   RelatorForm{{RelatorFactor{base.parse("u1u2"),
                                              base.parse("v")}}});
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j)
      for (size_t k = j + 1; k < 3; ++k)
        base.add_relator_word(
            commutator_word(gen_word(i),
                            commutator_word(gen_word(j), gen_word(k))),
            "nilp");
  REQUIRE(verify_relators(base).relators_ok);

  Presentation power = central_power_presentation(base, 2);
  REQUIRE(verify_relators(power).relators_ok);
  CommutatorFormResult res = commutator_form_transform(power);
  for (const RelatorRewrite& rw : res.rewrites) {
    Word claim = concat(power.relators[rw.source],
                        inverse_word(rw.replacement));
    INFO("relator ", rw.source, " tag ", power.tags[rw.source]);
    CHECK(verify_filling(claim, rw.witness, power.relators));
  }
  CHECK(verify_relators(res.pres).relators_ok);
}

TEST_CASE("power relator forms stay within the complexity budget") {
  for (size_t d = 2; d <= 4; ++d) {
    size_t n = std::max<size_t>(2, d * (d - 1) / 2);
    Presentation power =
        central_power_presentation(free_class2_presentation(d), n);
    for (size_t m = 0; m < power.relators.size(); ++m) {
      auto l = relator_complexity(power, m);
      REQUIRE(l.has_value());
      CHECK(*l <= n);
    }
  }
}

TEST_CASE("sapir quotient preset") {
  Presentation pres = builtin_presentation("sapir_quotient");
  CHECK(pres.generators.size() == 20);
  // 900 nilpotency + 100 cross-copy + 45 center + 1 quotient relator.
  CHECK(pres.relators.size() == 1046);
  CHECK(pres.tags.back() == "quotient");
  CHECK(relator_complexity(pres, pres.relators.size() - 1) == 5);
  CHECK(pres.algebra->dim() == 64);

  RelatorReport report = verify_relators(pres);
  for (const std::string& d : report.details) INFO(d);
  CHECK(report.relators_ok);
  CHECK(report.compatible);
}

TEST_CASE("builtin lookup by name") {
  CHECK(builtin_presentation("h3").generators.size() == 3);
  CHECK(builtin_presentation("h5_raw").relators.size() == 5);
  CHECK(builtin_presentation("h5_commutator_form").relators.size() == 5);
  CHECK(builtin_presentation("free_class2(3)").generators.size() == 3);
  CHECK(builtin_presentation("free_class2").generators.size() == 2);
  CHECK(builtin_presentation("class3_rank8_relators").relators.size() == 8);
  CHECK(builtin_presentation("quaternion_heisenberg").generators.size() == 4);
  CHECK(builtin_presentation("octonion_heisenberg").generators.size() == 8);
  CHECK_THROWS_WITH_AS(builtin_presentation("h6"),
                       doctest::Contains("unknown presentation"),
                       std::runtime_error);
}

TEST_CASE("quotient series bound picks the right regime") {
  auto direct = [](unsigned alpha, unsigned j, unsigned n) -> Int {
    Int s = 0;
    for (unsigned i = 0; i <= n; ++i)
      s += pow_int(Int(2), static_cast<unsigned long>(n - i) * j) *
           pow_int(Int(2), static_cast<unsigned long>(i) * alpha);
    return s;
  };

  CHECK(quotdehn_bound(3, 2, 5).dominant == "2^(n*alpha)");
  CHECK(quotdehn_bound(2, 2, 5).dominant == "n*2^(n*alpha)");
  CHECK(quotdehn_bound(2, 3, 5).dominant == "2^(n*j)");

  for (unsigned alpha = 1; alpha <= 3; ++alpha)
    for (unsigned j = 1; j <= 3; ++j)
      for (unsigned n = 1; n <= 30; ++n) {
        QuotientBound qb = quotdehn_bound(alpha, j, n);
        CHECK(qb.sum == direct(alpha, j, n));
        // sum / dominant within [1, 4]
        CHECK(qb.sum >= qb.dominant_value);
        CHECK(qb.sum <= 4 * qb.dominant_value);
      }
}

TEST_SUITE_END();
