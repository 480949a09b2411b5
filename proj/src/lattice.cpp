#include "nilfill/lattice.hpp"

#include <stdexcept>
#include <utility>

namespace nilfill {

namespace {

// Restriction of a full coordinate vector to one layer's positions.
QVec local_part(const GradedLieAlgebra& alg, const QVec& v, unsigned layer) {
  QVec out;
  for (size_t i : alg.layer_indices(layer)) out.push_back(v[i]);
  return out;
}

struct Carried {
  GroupElement element;
  Word word;
};

struct LayerReduction {
  std::vector<LadderRung> rungs;
  std::vector<Carried> leftover;  // projection to the layer vanished
};

long small_long(const Int& q) {
  if (!q.fits_slong_p()) throw std::runtime_error("ladder coefficient blew up");
  return q.get_si();
}

// Hermite reduction of the elements' layer-local rows, with every integer
// row operation replayed on the elements themselves (and on the words that
// spell them). The layer projection of a product is the sum of the factors'
// projections (deeper cross terms land strictly below), so rows and
// elements stay in sync.
LayerReduction reduce_layer(const GradedLieAlgebra& alg,
                            std::vector<Carried> pool, unsigned layer) {
  std::vector<QVec> qrows;
  qrows.reserve(pool.size());
  for (const auto& e : pool) {
    qrows.push_back(
        local_part(alg, layer_part(alg, e.element.log(), layer), layer));
  }
  Int denom = 1;
  ZMatrix m = scale_to_integer(qrows, denom);
  const size_t n = m.rows, cols = m.cols;

  auto row_sub = [&](size_t i, size_t r, const Int& q) {
    if (q == 0) return;
    for (size_t c = 0; c < cols; ++c) m.at(i, c) -= q * m.at(r, c);
    pool[i].element = multiply(pool[i].element, power(pool[r].element, -q));
    pool[i].word = free_reduce(
        concat(pool[i].word, pow_word(pool[r].word, -small_long(q))));
  };
  auto row_swap = [&](size_t i, size_t r) {
    if (i == r) return;
    for (size_t c = 0; c < cols; ++c) std::swap(m.at(i, c), m.at(r, c));
    std::swap(pool[i], pool[r]);
  };
  auto row_negate = [&](size_t r) {
    for (size_t c = 0; c < cols; ++c) m.at(r, c) = -m.at(r, c);
    pool[r].element = invert(pool[r].element);
    pool[r].word = inverse_word(pool[r].word);
  };

  size_t r = 0;
  for (size_t c = 0; c < cols && r < n; ++c) {
    while (true) {
      size_t best = n;
      for (size_t i = r; i < n; ++i) {
        if (m.at(i, c) == 0) continue;
        if (best == n || abs(m.at(i, c)) < abs(m.at(best, c))) best = i;
      }
      if (best == n) break;
      row_swap(r, best);
      bool clean = true;
      for (size_t i = r + 1; i < n; ++i) {
        if (m.at(i, c) == 0) continue;
        Int q = m.at(i, c) / m.at(r, c);
        row_sub(i, r, q);
        if (m.at(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (m.at(r, c) == 0) continue;
    if (m.at(r, c) < 0) row_negate(r);
    for (size_t i = 0; i < r; ++i) {
      row_sub(i, r, floor_div(m.at(i, c), m.at(r, c)));
    }
    ++r;
  }

  LayerReduction out;
  for (size_t i = 0; i < n; ++i) {
    if (i < r) {
      QVec row(cols);
      for (size_t c = 0; c < cols; ++c) row[c] = rat(m.at(i, c), denom);
      out.rungs.push_back(
          {std::move(pool[i].element), std::move(row), std::move(pool[i].word)});
    } else if (!pool[i].element.is_identity()) {
      out.leftover.push_back(std::move(pool[i]));
    }
  }
  return out;
}

}  // namespace

LatticeBasis::LatticeBasis(const GradedLieAlgebra& alg,
                           const std::vector<GroupElement>& gens)
    : alg_(&alg) {
  std::vector<Carried> pool;
  for (size_t i = 0; i < gens.size(); ++i) {
    pool.push_back({gens[i], gen_word(i)});
  }
  for (unsigned layer = 1; layer <= alg.nclass(); ++layer) {
    LayerReduction red = reduce_layer(alg, std::move(pool), layer);
    if (red.rungs.size() != alg.layer_dim(layer)) {
      throw std::runtime_error("lattice generators do not span layer " +
                               std::to_string(layer));
    }
    pool = std::move(red.leftover);
    if (layer < alg.nclass()) {
      for (const auto& a : red.rungs) {
        for (const auto& b : ladders_.empty() ? red.rungs : ladders_.front()) {
          GroupElement c = commutator(a.element, b.element);
          if (!c.is_identity()) {
            pool.push_back({std::move(c), commutator_word(a.word, b.word)});
          }
        }
      }
    }
    ladders_.push_back(std::move(red.rungs));
  }
}

GroupElement project_to_scaled_lattice(const GroupElement& h,
                                       const LatticeBasis& basis, long t) {
  if (t < 1) throw std::invalid_argument("scale must be positive");
  const GradedLieAlgebra& alg = basis.algebra();
  GroupElement p = GroupElement::identity(alg);
  for (unsigned layer = 1; layer <= alg.nclass(); ++layer) {
    const auto& rungs = basis.ladder(layer);
    if (rungs.empty()) continue;
    GroupElement diff = multiply(invert(p), h);
    QVec v = local_part(alg, layer_part(alg, diff.log(), layer), layer);
    const size_t d = v.size();
    QMatrix a(d, rungs.size());
    for (size_t j = 0; j < rungs.size(); ++j) {
      for (size_t i = 0; i < d; ++i) a.at(i, j) = rungs[j].row[i];
    }
    auto coords = solve(a, v);
    if (!coords) throw std::runtime_error("ladder failed to span layer");
    Rational scale = pow_rational(rat(t), static_cast<long>(layer));
    for (size_t j = 0; j < rungs.size(); ++j) {
      Int m = round_half_even((*coords)[j] / scale);
      if (m == 0) continue;
      p = multiply(p, power(scale_element(rungs[j].element, rat(t)), m));
    }
  }
  return p;
}

CompatibleGenerators compatible_lattice_generators(
    const std::vector<GroupElement>& gens) {
  if (gens.empty()) throw std::invalid_argument("no generators");
  const GradedLieAlgebra& alg = gens[0].algebra();

  auto layer1_rows = [&](const std::vector<GroupElement>& es) {
    std::vector<QVec> rows;
    for (const auto& e : es) {
      rows.push_back(local_part(alg, layer_part(alg, e.log(), 1), 1));
    }
    return rows;
  };

  CompatibleGenerators out;
  out.denom = 1;
  out.hnf = hermite_normal_form(scale_to_integer(layer1_rows(gens), out.denom));
  for (const auto& g : gens) {
    out.gens.emplace_back(alg, layer_part(alg, g.log(), 1));
  }
  Int denom2 = 1;
  ZMatrix hnf2 =
      hermite_normal_form(scale_to_integer(layer1_rows(out.gens), denom2));
  if (denom2 != out.denom || !(hnf2 == out.hnf)) {
    throw std::runtime_error("layer-1 projection changed the lattice");
  }
  return out;
}

}  // namespace nilfill
