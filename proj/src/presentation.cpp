#include "nilfill/presentation.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace nilfill {

std::vector<GroupElement> Presentation::gen_elements() const {
  if (!algebra) throw std::runtime_error("presentation has no model attached");
  if (generator_logs.size() != generators.size()) {
    throw std::runtime_error("presentation model is missing generator logs");
  }
  std::vector<GroupElement> out;
  out.reserve(generators.size());
  for (const QVec& v : generator_logs) out.emplace_back(*algebra, v);
  return out;
}

std::optional<size_t> Presentation::find_relator(const Word& w) const {
  for (size_t i = 0; i < relators.size(); ++i) {
    if (relators[i] == w) return i;
  }
  return std::nullopt;
}

void Presentation::add_relator(const std::string& text, std::string tag,
                               std::optional<RelatorForm> form) {
  add_relator_word(parse(text), std::move(tag), std::move(form));
}

void Presentation::add_relator_word(Word w, std::string tag,
                                    std::optional<RelatorForm> form) {
  relators.push_back(std::move(w));
  tags.push_back(std::move(tag));
  forms.push_back(std::move(form));
}

RelatorReport verify_relators(const Presentation& pres) {
  RelatorReport report;
  const auto gens = pres.gen_elements();
  for (size_t i = 0; i < pres.generators.size(); ++i) {
    if (!in_layer(*pres.algebra, pres.generator_logs[i], 1)) {
      report.compatible = false;
      report.details.push_back("generator " + pres.generators[i] +
                               " is not concentrated in layer 1");
    }
  }
  for (size_t i = 0; i < pres.relators.size(); ++i) {
    GroupElement value = evaluate_word(pres.relators[i], gens);
    if (!value.is_identity()) {
      report.relators_ok = false;
      report.details.push_back("relator " + std::to_string(i) + " (" +
                               pres.str(pres.relators[i]) +
                               ") does not evaluate to the identity");
    }
  }
  return report;
}

namespace {

// True if w is exactly x y x^-1 y^-1 for some nonempty x, y.
bool is_commutator_word(const Word& w) {
  const size_t n = w.size();
  if (n < 4 || n % 2 != 0) return false;
  for (size_t lx = 1; lx < n / 2; ++lx) {
    const size_t ly = n / 2 - lx;
    Word x(w.begin(), w.begin() + lx);
    Word y(w.begin() + lx, w.begin() + lx + ly);
    if (commutator_word(x, y) == w) return true;
  }
  return false;
}

}  // namespace

std::optional<size_t> relator_complexity(const Presentation& pres, size_t i) {
  if (i < pres.forms.size() && pres.forms[i]) {
    return pres.forms[i]->factors.size();
  }
  const Word& w = pres.relators[i];
  const size_t n = w.size();
  // best[p] = minimal factor count for the suffix starting at p.
  const size_t kInf = n + 2;
  std::vector<size_t> best(n + 1, kInf);
  best[n] = 0;
  for (size_t p = n; p-- > 0;) {
    for (size_t len = 4; p + len <= n; len += 2) {
      Word seg(w.begin() + p, w.begin() + p + len);
      if (is_commutator_word(seg) && best[p + len] != kInf) {
        best[p] = std::min(best[p], best[p + len] + 1);
      }
    }
  }
  if (best[0] == kInf) return std::nullopt;
  return best[0];
}

std::string presentation_to_json_text(const Presentation& pres) {
  nlohmann::json j;
  j["generators"] = pres.generators;
  std::vector<std::string> rel;
  rel.reserve(pres.relators.size());
  for (const Word& w : pres.relators) rel.push_back(pres.str(w));
  j["relators"] = rel;
  if (!pres.tags.empty()) j["tags"] = pres.tags;
  bool any_form = false;
  for (const auto& f : pres.forms) any_form = any_form || f.has_value();
  if (any_form) {
    nlohmann::json forms = nlohmann::json::array();
    for (const auto& f : pres.forms) {
      if (!f) {
        forms.push_back(nullptr);
        continue;
      }
      nlohmann::json factors = nlohmann::json::array();
      for (const RelatorFactor& fac : f->factors) {
        factors.push_back({pres.str(fac.x), pres.str(fac.y)});
      }
      forms.push_back(factors);
    }
    j["forms"] = forms;
  }
  if (pres.algebra) {
    j["algebra"] = nlohmann::json::parse(algebra_to_json_text(*pres.algebra));
    nlohmann::json logs = nlohmann::json::array();
    for (const QVec& v : pres.generator_logs) {
      nlohmann::json row = nlohmann::json::array();
      for (const Rational& q : v) row.push_back(to_string(q));
      logs.push_back(row);
    }
    j["generator_logs"] = logs;
  }
  return j.dump(2);
}

Presentation presentation_from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Presentation pres;
  pres.generators = j.at("generators").get<std::vector<std::string>>();
  for (const auto& r : j.at("relators")) {
    pres.relators.push_back(parse_word(r.get<std::string>(), pres.generators));
  }
  if (j.contains("tags")) {
    pres.tags = j.at("tags").get<std::vector<std::string>>();
  } else {
    pres.tags.assign(pres.relators.size(), "");
  }
  pres.forms.assign(pres.relators.size(), std::nullopt);
  if (j.contains("forms")) {
    const auto& forms = j.at("forms");
    for (size_t i = 0; i < forms.size() && i < pres.forms.size(); ++i) {
      if (forms[i].is_null()) continue;
      RelatorForm form;
      for (const auto& fac : forms[i]) {
        form.factors.push_back(
            RelatorFactor{pres.parse(fac.at(0).get<std::string>()),
                          pres.parse(fac.at(1).get<std::string>())});
      }
      pres.forms[i] = std::move(form);
    }
  }
  if (j.contains("algebra")) {
    pres.algebra = std::make_shared<GradedLieAlgebra>(
        algebra_from_json_text(j.at("algebra").dump()));
    for (const auto& row : j.at("generator_logs")) {
      QVec v;
      for (const auto& entry : row) {
        v.push_back(parse_rational(entry.get<std::string>()));
      }
      pres.generator_logs.push_back(std::move(v));
    }
  }
  if (pres.tags.size() != pres.relators.size()) {
    throw std::runtime_error("presentation tags do not match relators");
  }
  return pres;
}

Presentation load_presentation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return presentation_from_json_text(buf.str());
}

}  // namespace nilfill
