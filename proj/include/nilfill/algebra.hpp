#pragma once

// Graded nilpotent Lie algebras over Q with exact structure constants.
// The grading is by positive integers ("layers"); brackets of layers i and j
// land in layer i+j, and the bracket table stores ordered basis pairs i < j
// only (antisymmetry fills in the rest).

#include "nilfill/linalg.hpp"
#include "nilfill/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nilfill {

struct BracketTerm {
  size_t k;
  Rational c;
};

using BracketEntry = std::vector<BracketTerm>;

class GradedLieAlgebra {
 public:
  GradedLieAlgebra() = default;
  GradedLieAlgebra(std::vector<unsigned> layers,
                   std::map<std::pair<size_t, size_t>, BracketEntry> table,
                   std::vector<std::string> names = {});

  size_t dim() const { return layers_.size(); }
  unsigned layer(size_t i) const { return layers_[i]; }
  const std::vector<unsigned>& layers() const { return layers_; }
  unsigned nclass() const { return nclass_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(size_t i) const { return names_[i]; }
  std::optional<size_t> index_of(const std::string& name) const;

  const std::map<std::pair<size_t, size_t>, BracketEntry>& table() const {
    return table_;
  }

  // [e_i, e_j] for any i, j, as a dense coordinate vector.
  QVec bracket_basis(size_t i, size_t j) const;

  std::vector<size_t> layer_indices(unsigned s) const;
  size_t layer_dim(unsigned s) const { return layer_indices(s).size(); }

  // Zero vector / basis vector helpers.
  QVec zero() const { return QVec(dim(), Rational(0)); }
  QVec basis(size_t i) const;

 private:
  std::vector<unsigned> layers_;
  unsigned nclass_ = 1;
  std::map<std::pair<size_t, size_t>, BracketEntry> table_;
  std::vector<std::string> names_;
};

// Bilinear bracket of coordinate vectors.
QVec bracket(const GradedLieAlgebra& alg, const QVec& x, const QVec& y);

QVec add(const QVec& x, const QVec& y);
QVec sub(const QVec& x, const QVec& y);
QVec scale(const QVec& x, const Rational& c);
bool is_zero(const QVec& x);

// Component of x living in the given layer (other coordinates zeroed).
QVec layer_part(const GradedLieAlgebra& alg, const QVec& x, unsigned s);
// True if every nonzero coordinate of x sits in layer s.
bool in_layer(const GradedLieAlgebra& alg, const QVec& x, unsigned s);
unsigned lowest_layer(const GradedLieAlgebra& alg, const QVec& x);  // 0 if x=0

struct AlgebraReport {
  bool ok = true;
  std::vector<std::string> failures;
  void fail(std::string msg) {
    ok = false;
    failures.push_back(std::move(msg));
  }
};

// Checks grading consistency of the table and the Jacobi identity on all
// basis triples. Exact; no tolerances.
AlgebraReport verify_algebra(const GradedLieAlgebra& alg);

class GradedAutomorphism {
 public:
  GradedAutomorphism(const GradedLieAlgebra& alg, QMatrix m);

  const QMatrix& matrix() const { return m_; }
  QVec apply(const QVec& x) const;
  GradedAutomorphism inverse_map() const;

 private:
  const GradedLieAlgebra* alg_;
  QMatrix m_;
};

// Extends a linear map given on the layer-1 block to the whole algebra so
// that brackets are intertwined. Unique when layer 1 generates; returns
// nullopt when no automorphism extends the given block.
std::optional<GradedAutomorphism> extend_automorphism(
    const GradedLieAlgebra& alg, const QMatrix& layer1_block);

// File format: { "dim": n, "layers": [...], "brackets":
//   [ {"i":., "j":., "terms":[{"k":., "c":"p/q"}]} ], "names": [...] }
// with 0-based indices and i < j. The loader re-verifies the algebra.
GradedLieAlgebra algebra_from_json_text(const std::string& text);
std::string algebra_to_json_text(const GradedLieAlgebra& alg);
GradedLieAlgebra load_algebra_file(const std::string& path);

}  // namespace nilfill
