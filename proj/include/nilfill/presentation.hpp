#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nilfill/algebra.hpp"
#include "nilfill/group.hpp"
#include "nilfill/words.hpp"

namespace nilfill {

// One commutator factor [x, y] of a relator written in commutator form.
struct RelatorFactor {
  Word x, y;
};

// A relator as an explicit product of commutators.
struct RelatorForm {
  std::vector<RelatorFactor> factors;
};

struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;
  // Optional bookkeeping, either empty or sized like `relators`.
  std::vector<std::string> tags;
  std::vector<std::optional<RelatorForm>> forms;

  // Optional exact model: the ambient group and one element per generator.
  std::shared_ptr<const GradedLieAlgebra> algebra;
  std::vector<QVec> generator_logs;

  Word parse(const std::string& text) const {
    return parse_word(text, generators);
  }
  std::string str(const Word& w) const { return word_to_string(w, generators); }
  bool has_model() const { return algebra != nullptr; }
  std::vector<GroupElement> gen_elements() const;
  // Index of the relator whose word equals w exactly, if any.
  std::optional<size_t> find_relator(const Word& w) const;

  void add_relator(const std::string& text, std::string tag = "",
                   std::optional<RelatorForm> form = std::nullopt);
  void add_relator_word(Word w, std::string tag = "",
                        std::optional<RelatorForm> form = std::nullopt);
};

struct RelatorReport {
  bool relators_ok = true;       // every relator evaluates to the identity
  bool compatible = true;        // every generator log lies in layer 1
  std::vector<std::string> details;
};

// Evaluates all relators in the attached model and checks generator logs.
// Requires a model.
RelatorReport verify_relators(const Presentation& pres);

// Minimal number of commutator factors [x, y] into which the relator word
// splits syntactically (consecutive factors), or nullopt if it is not a
// product of commutator words. Uses the stored form's size when present.
std::optional<size_t> relator_complexity(const Presentation& pres, size_t i);

// JSON round trip. The algebra and generator logs are embedded when present.
std::string presentation_to_json_text(const Presentation& pres);
Presentation presentation_from_json_text(const std::string& text);
Presentation load_presentation_file(const std::string& path);

}  // namespace nilfill
