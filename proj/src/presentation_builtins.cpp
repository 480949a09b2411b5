#include "nilfill/presentation_builtins.hpp"

#include <memory>
#include <stdexcept>

#include "nilfill/central_power.hpp"

namespace nilfill {

namespace {

QVec basis_log(const GradedLieAlgebra& alg, size_t i) { return alg.basis(i); }

void attach_layer1_model(Presentation& pres,
                         std::shared_ptr<const GradedLieAlgebra> alg,
                         size_t count) {
  pres.algebra = std::move(alg);
  for (size_t i = 0; i < count; ++i) {
    pres.generator_logs.push_back(basis_log(*pres.algebra, i));
  }
}

RelatorForm one_factor(const Presentation& pres, const std::string& x,
                       const std::string& y) {
  return RelatorForm{{RelatorFactor{pres.parse(x), pres.parse(y)}}};
}

}  // namespace

Presentation h3_presentation() {
  Presentation pres;
  pres.generators = {"a1", "a2", "c"};
  auto alg = std::make_shared<GradedLieAlgebra>(heisenberg(3));
  pres.algebra = alg;
  pres.generator_logs = {alg->basis(0), alg->basis(1), alg->basis(2)};
  pres.add_relator("[a1,a2]C", "center-def");
  pres.add_relator("[c,a1]", "commute", one_factor(pres, "c", "a1"));
  pres.add_relator("[c,a2]", "commute", one_factor(pres, "c", "a2"));
  return pres;
}

Presentation h5_raw() {
  Presentation pres;
  pres.generators = {"a1", "a2", "b1", "b2"};
  auto alg = std::make_shared<GradedLieAlgebra>(
      central_product_algebra(heisenberg(3), 2).alg);
  attach_layer1_model(pres, alg, 4);
  pres.add_relator(
      "[a1,a2][b2,b1]", "center",
      RelatorForm{{RelatorFactor{pres.parse("a1"), pres.parse("a2")},
                   RelatorFactor{pres.parse("b2"), pres.parse("b1")}}});
  pres.add_relator("[a1,b1]", "product", one_factor(pres, "a1", "b1"));
  pres.add_relator("[a1,b2]", "product", one_factor(pres, "a1", "b2"));
  pres.add_relator("[a2,b1]", "product", one_factor(pres, "a2", "b1"));
  pres.add_relator("[a2,b2]", "product", one_factor(pres, "a2", "b2"));
  return pres;
}

Presentation h5_commutator_form() {
  Presentation pres;
  pres.generators = {"a1", "a2", "b1", "b2"};
  auto alg = std::make_shared<GradedLieAlgebra>(
      central_product_algebra(heisenberg(3), 2).alg);
  attach_layer1_model(pres, alg, 4);
  pres.add_relator("[a1b2,a2b1]", "center", one_factor(pres, "a1b2", "a2b1"));
  pres.add_relator("[a1,b1]", "product", one_factor(pres, "a1", "b1"));
  pres.add_relator("[a1,b2]", "product", one_factor(pres, "a1", "b2"));
  pres.add_relator("[a2,b1]", "product", one_factor(pres, "a2", "b1"));
  pres.add_relator("[a2,b2]", "product", one_factor(pres, "a2", "b2"));
  return pres;
}

Presentation free_class2_presentation(size_t d) {
  if (d < 2) throw std::runtime_error("free_class2 needs at least 2 gens");
  Presentation pres;
  for (size_t i = 1; i <= d; ++i) {
    pres.generators.push_back("a" + std::to_string(i));
  }
  auto built = free_nilpotent(d, 2);
  auto alg = std::make_shared<GradedLieAlgebra>(std::move(built.alg));
  attach_layer1_model(pres, alg, d);
  for (size_t i = 0; i < d; ++i) {
    for (size_t j = 0; j < d; ++j) {
      for (size_t k = j + 1; k < d; ++k) {
        Word inner = commutator_word(gen_word(j), gen_word(k));
        Word w = commutator_word(gen_word(i), inner);
        pres.add_relator_word(
            std::move(w), "nilp",
            RelatorForm{{RelatorFactor{gen_word(i), inner}}});
      }
    }
  }
  return pres;
}

Presentation class3_rank8_presentation() {
  Presentation pres;
  pres.generators = {"a", "b", "c", "d", "e"};
  auto alg = std::make_shared<GradedLieAlgebra>(class3_rank8());
  attach_layer1_model(pres, alg, 5);
  const char* pairs[6][2] = {{"a", "c"}, {"a", "d"}, {"a", "e"},
                             {"b", "d"}, {"b", "e"}, {"c", "e"}};
  for (const auto& p : pairs) {
    std::string w = std::string("[") + p[0] + "," + p[1] + "]";
    pres.add_relator(w, "commute", one_factor(pres, p[0], p[1]));
  }
  pres.add_relator("[ace,bD]", "mixed", one_factor(pres, "ace", "bD"));
  pres.add_relator("[aCe,bd]", "mixed", one_factor(pres, "aCe", "bd"));
  return pres;
}

Presentation division_heisenberg_presentation(DivisionKind kind) {
  Presentation pres;
  auto alg = std::make_shared<GradedLieAlgebra>(division_heisenberg(kind));
  const size_t d = alg->layer_dim(1);
  for (size_t i = 0; i < d; ++i) pres.generators.push_back(alg->names()[i]);
  attach_layer1_model(pres, alg, d);
  for (const PairRelation& rel : small_support_relations(*alg)) {
    Word w;
    RelatorForm form;
    bool unit_coeffs = true;
    for (size_t m = 0; m < rel.pairs.size(); ++m) {
      Word x = gen_word(rel.pairs[m].first);
      Word y = gen_word(rel.pairs[m].second);
      long c = rel.coeffs[m];
      w = concat(w, pow_word(commutator_word(x, y), c));
      if (c == 1) {
        form.factors.push_back(RelatorFactor{x, y});
      } else if (c == -1) {
        form.factors.push_back(RelatorFactor{y, x});
      } else {
        unit_coeffs = false;
      }
    }
    pres.add_relator_word(free_reduce(w), "pairing",
                          unit_coeffs ? std::optional<RelatorForm>(form)
                                      : std::nullopt);
  }
  return pres;
}

Presentation sapir_quotient_presentation() {
  Presentation pres =
      central_power_presentation(free_class2_presentation(10), 2);
  Word w;
  RelatorForm form;
  for (size_t j = 0; j < 10; j += 2) {
    // First-copy generators sit at indices 0..9.
    w = concat(w, commutator_word(gen_word(j), gen_word(j + 1)));
    form.factors.push_back(RelatorFactor{gen_word(j), gen_word(j + 1)});
  }
  GroupElement val = evaluate_word(w, pres.gen_elements());
  CentralQuotient quo = central_quotient(*pres.algebra, {val.log()});
  auto alg = std::make_shared<GradedLieAlgebra>(std::move(quo.alg));
  for (QVec& v : pres.generator_logs) {
    QVec nv(alg->dim(), Rational(0));
    for (size_t r = 0; r < quo.projection.rows; ++r)
      for (size_t c = 0; c < quo.projection.cols; ++c)
        if (quo.projection.at(r, c) != 0 && v[c] != 0)
          nv[r] += quo.projection.at(r, c) * v[c];
    v = std::move(nv);
  }
  pres.algebra = alg;
  pres.add_relator_word(std::move(w), "quotient", std::move(form));
  return pres;
}

Presentation builtin_presentation(const std::string& name) {
  if (name == "h3") return h3_presentation();
  if (name == "h5_raw") return h5_raw();
  if (name == "h5_commutator_form") return h5_commutator_form();
  if (name == "class3_rank8_relators") return class3_rank8_presentation();
  if (name == "complex_heisenberg")
    return division_heisenberg_presentation(DivisionKind::complex_numbers);
  if (name == "quaternion_heisenberg")
    return division_heisenberg_presentation(DivisionKind::quaternions);
  if (name == "octonion_heisenberg")
    return division_heisenberg_presentation(DivisionKind::octonions);
  if (name == "sapir_quotient") return sapir_quotient_presentation();
  if (name.rfind("free_class2", 0) == 0) {
    size_t d = 2;
    if (name != "free_class2") {
      if (name.size() < 14 || name[11] != '(' || name.back() != ')')
        throw std::runtime_error("unknown presentation: " + name);
      d = std::stoul(name.substr(12, name.size() - 13));
    }
    return free_class2_presentation(d);
  }
  throw std::runtime_error("unknown presentation: " + name);
}

}  // namespace nilfill
