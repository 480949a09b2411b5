#include "nilfill/algebra.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace nilfill {

GradedLieAlgebra::GradedLieAlgebra(
    std::vector<unsigned> layers,
    std::map<std::pair<size_t, size_t>, BracketEntry> table,
    std::vector<std::string> names)
    : layers_(std::move(layers)), table_(std::move(table)), names_(std::move(names)) {
  if (layers_.empty()) throw std::invalid_argument("algebra needs dim >= 1");
  nclass_ = 1;
  for (unsigned s : layers_) {
    if (s == 0) throw std::invalid_argument("layers are 1-based");
    nclass_ = std::max(nclass_, s);
  }
  for (auto& [key, entry] : table_) {
    auto [i, j] = key;
    if (i >= j || j >= dim())
      throw std::invalid_argument("bracket table keys must satisfy i < j < dim");
    for (auto& t : entry)
      if (t.k >= dim()) throw std::invalid_argument("bracket term out of range");
  }
  if (names_.empty()) {
    names_.resize(dim());
    for (size_t i = 0; i < dim(); ++i) names_[i] = "e" + std::to_string(i + 1);
  }
  if (names_.size() != dim())
    throw std::invalid_argument("names size mismatch");
}

std::optional<size_t> GradedLieAlgebra::index_of(const std::string& name) const {
  for (size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

QVec GradedLieAlgebra::bracket_basis(size_t i, size_t j) const {
  QVec out = zero();
  if (i == j) return out;
  bool flip = i > j;
  if (flip) std::swap(i, j);
  auto it = table_.find({i, j});
  if (it == table_.end()) return out;
  for (const auto& t : it->second) out[t.k] = flip ? -t.c : t.c;
  return out;
}

std::vector<size_t> GradedLieAlgebra::layer_indices(unsigned s) const {
  std::vector<size_t> out;
  for (size_t i = 0; i < dim(); ++i)
    if (layers_[i] == s) out.push_back(i);
  return out;
}

QVec GradedLieAlgebra::basis(size_t i) const {
  QVec v = zero();
  v[i] = 1;
  return v;
}

QVec bracket(const GradedLieAlgebra& alg, const QVec& x, const QVec& y) {
  QVec out = alg.zero();
  for (const auto& [key, entry] : alg.table()) {
    auto [i, j] = key;
    Rational c = x[i] * y[j] - x[j] * y[i];
    if (c == 0) continue;
    for (const auto& t : entry) out[t.k] += c * t.c;
  }
  return out;
}

QVec add(const QVec& x, const QVec& y) {
  QVec out = x;
  for (size_t i = 0; i < out.size(); ++i) out[i] += y[i];
  return out;
}

QVec sub(const QVec& x, const QVec& y) {
  QVec out = x;
  for (size_t i = 0; i < out.size(); ++i) out[i] -= y[i];
  return out;
}

QVec scale(const QVec& x, const Rational& c) {
  QVec out = x;
  for (auto& v : out) v *= c;
  return out;
}

bool is_zero(const QVec& x) {
  return std::all_of(x.begin(), x.end(), [](const Rational& v) { return v == 0; });
}

QVec layer_part(const GradedLieAlgebra& alg, const QVec& x, unsigned s) {
  QVec out = alg.zero();
  for (size_t i = 0; i < x.size(); ++i)
    if (alg.layer(i) == s) out[i] = x[i];
  return out;
}

bool in_layer(const GradedLieAlgebra& alg, const QVec& x, unsigned s) {
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0 && alg.layer(i) != s) return false;
  return true;
}

unsigned lowest_layer(const GradedLieAlgebra& alg, const QVec& x) {
  unsigned best = 0;
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0 && (best == 0 || alg.layer(i) < best)) best = alg.layer(i);
  return best;
}

AlgebraReport verify_algebra(const GradedLieAlgebra& alg) {
  AlgebraReport rep;
  for (const auto& [key, entry] : alg.table()) {
    auto [i, j] = key;
    unsigned target = alg.layer(i) + alg.layer(j);
    for (const auto& t : entry) {
      if (t.c == 0) continue;
      if (alg.layer(t.k) != target)
        rep.fail("grading broken at [" + alg.name(i) + "," + alg.name(j) +
                 "]: term " + alg.name(t.k));
      if (target > alg.nclass())
        rep.fail("bracket exceeds class at [" + alg.name(i) + "," + alg.name(j) + "]");
    }
  }
  size_t n = alg.dim();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      QVec bij = alg.bracket_basis(i, j);
      for (size_t k = j + 1; k < n; ++k) {
        QVec jac = bracket(alg, alg.basis(i), alg.bracket_basis(j, k));
        jac = add(jac, bracket(alg, alg.basis(j), alg.bracket_basis(k, i)));
        jac = add(jac, bracket(alg, alg.basis(k), bij));
        if (!is_zero(jac))
          rep.fail("Jacobi fails at (" + alg.name(i) + "," + alg.name(j) + "," +
                   alg.name(k) + ")");
      }
    }
  return rep;
}

GradedAutomorphism::GradedAutomorphism(const GradedLieAlgebra& alg, QMatrix m)
    : alg_(&alg), m_(std::move(m)) {
  size_t n = alg.dim();
  if (m_.rows != n || m_.cols != n)
    throw std::invalid_argument("automorphism matrix shape");
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (m_.at(i, j) != 0 && alg.layer(i) != alg.layer(j))
        throw std::invalid_argument("automorphism must preserve layers");
  if (!inverse(m_)) throw std::invalid_argument("automorphism must be invertible");
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      QVec lhs = apply(alg.bracket_basis(i, j));
      QVec rhs = bracket(alg, apply(alg.basis(i)), apply(alg.basis(j)));
      if (lhs != rhs)
        throw std::invalid_argument("map does not intertwine the bracket at (" +
                                    alg.name(i) + "," + alg.name(j) + ")");
    }
}

QVec GradedAutomorphism::apply(const QVec& x) const {
  size_t n = alg_->dim();
  QVec out = alg_->zero();
  for (size_t j = 0; j < n; ++j) {
    if (x[j] == 0) continue;
    for (size_t i = 0; i < n; ++i)
      if (m_.at(i, j) != 0) out[i] += m_.at(i, j) * x[j];
  }
  return out;
}

GradedAutomorphism GradedAutomorphism::inverse_map() const {
  auto inv = inverse(m_);
  return GradedAutomorphism(*alg_, *inv);
}

std::optional<GradedAutomorphism> extend_automorphism(
    const GradedLieAlgebra& alg, const QMatrix& layer1_block) {
  auto l1 = alg.layer_indices(1);
  if (layer1_block.rows != l1.size() || layer1_block.cols != l1.size())
    throw std::invalid_argument("layer-1 block shape mismatch");
  size_t n = alg.dim();
  QMatrix full(n, n);
  for (size_t a = 0; a < l1.size(); ++a)
    for (size_t b = 0; b < l1.size(); ++b)
      full.at(l1[a], l1[b]) = layer1_block.at(a, b);

  auto column = [&](size_t j) {
    QVec v(n, Rational(0));
    for (size_t i = 0; i < n; ++i) v[i] = full.at(i, j);
    return v;
  };

  for (unsigned s = 2; s <= alg.nclass(); ++s) {
    auto ls = alg.layer_indices(s);
    if (ls.empty()) continue;
    // Equations: for each bracket pair landing in layer s,
    //   sum_k c_k * X(e_k) = [A e_i, A e_j]  with X the unknown block.
    std::vector<std::pair<std::pair<size_t, size_t>, const BracketEntry*>> eqs;
    for (const auto& [key, entry] : alg.table())
      if (alg.layer(key.first) + alg.layer(key.second) == s)
        eqs.push_back({key, &entry});
    size_t unknowns = ls.size() * ls.size();
    QMatrix sys(eqs.size() * ls.size(), unknowns);
    QVec rhs(eqs.size() * ls.size(), Rational(0));
    std::vector<size_t> pos(n, SIZE_MAX);
    for (size_t a = 0; a < ls.size(); ++a) pos[ls[a]] = a;
    for (size_t e = 0; e < eqs.size(); ++e) {
      auto [i, j] = eqs[e].first;
      QVec target = bracket(alg, column(i), column(j));
      for (size_t r = 0; r < ls.size(); ++r)
        rhs[e * ls.size() + r] = target[ls[r]];
      for (const auto& t : *eqs[e].second) {
        if (t.c == 0) continue;
        size_t colpos = pos[t.k];
        // unknown X(row r, col colpos) appears in equation row r with coeff c
        for (size_t r = 0; r < ls.size(); ++r)
          sys.at(e * ls.size() + r, r * ls.size() + colpos) += t.c;
      }
    }
    auto sol = solve(sys, rhs);
    if (!sol) return std::nullopt;
    for (size_t r = 0; r < ls.size(); ++r)
      for (size_t c = 0; c < ls.size(); ++c)
        full.at(ls[r], ls[c]) = (*sol)[r * ls.size() + c];
  }

  try {
    return GradedAutomorphism(alg, full);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

GradedLieAlgebra algebra_from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  size_t dim = j.at("dim").get<size_t>();
  std::vector<unsigned> layers = j.at("layers").get<std::vector<unsigned>>();
  if (layers.size() != dim) throw std::invalid_argument("layers size != dim");
  std::map<std::pair<size_t, size_t>, BracketEntry> table;
  for (const auto& b : j.at("brackets")) {
    size_t bi = b.at("i").get<size_t>(), bj = b.at("j").get<size_t>();
    BracketEntry entry;
    for (const auto& t : b.at("terms"))
      entry.push_back({t.at("k").get<size_t>(),
                       parse_rational(t.at("c").get<std::string>())});
    if (!table.emplace(std::make_pair(bi, bj), std::move(entry)).second)
      throw std::invalid_argument("duplicate bracket entry");
  }
  std::vector<std::string> names;
  if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
  GradedLieAlgebra alg(std::move(layers), std::move(table), std::move(names));
  auto rep = verify_algebra(alg);
  if (!rep.ok) {
    std::string msg = "algebra file fails verification:";
    for (const auto& f : rep.failures) msg += "\n  " + f;
    throw std::invalid_argument(msg);
  }
  return alg;
}

std::string algebra_to_json_text(const GradedLieAlgebra& alg) {
  nlohmann::json j;
  j["dim"] = alg.dim();
  j["layers"] = alg.layers();
  j["names"] = alg.names();
  auto& bl = j["brackets"] = nlohmann::json::array();
  for (const auto& [key, entry] : alg.table()) {
    nlohmann::json b;
    b["i"] = key.first;
    b["j"] = key.second;
    auto& terms = b["terms"] = nlohmann::json::array();
    for (const auto& t : entry)
      terms.push_back({{"k", t.k}, {"c", to_string(t.c)}});
    bl.push_back(std::move(b));
  }
  return j.dump(2);
}

GradedLieAlgebra load_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return algebra_from_json_text(ss.str());
}

}  // namespace nilfill
