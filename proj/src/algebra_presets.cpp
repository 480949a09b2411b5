#include "nilfill/algebra_presets.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace nilfill {
namespace {

struct HallBuilder {
  size_t d;
  unsigned k;
  std::vector<HallBasisElement> els;
  std::map<std::pair<size_t, size_t>, size_t> basic;
  std::map<std::pair<size_t, size_t>, BracketEntry> memo;
  std::set<std::pair<size_t, size_t>> in_progress;

  HallBuilder(size_t d_, unsigned k_) : d(d_), k(k_) {
    for (size_t i = 0; i < d; ++i) {
      HallBasisElement e;
      e.leaf = static_cast<int>(i);
      e.weight = 1;
      els.push_back(e);
    }
    for (unsigned w = 2; w <= k; ++w) {
      size_t known = els.size();
      for (unsigned wu = 1; wu < w; ++wu) {
        unsigned wv = w - wu;
        for (size_t u = 0; u < known; ++u) {
          if (els[u].weight != wu) continue;
          for (size_t v = 0; v < known; ++v) {
            if (els[v].weight != wv || u >= v) continue;
            if (els[v].leaf < 0 && els[v].left > u) continue;
            HallBasisElement e;
            e.left = u;
            e.right = v;
            e.weight = w;
            basic[{u, v}] = els.size();
            els.push_back(e);
          }
        }
      }
    }
  }

  static void accumulate(std::map<size_t, Rational>& acc,
                         const BracketEntry& e, const Rational& scale) {
    for (const auto& t : e) acc[t.k] += scale * t.c;
  }

  BracketEntry negate(BracketEntry e) {
    for (auto& t : e) t.c = -t.c;
    return e;
  }

  // [els[i], els[j]] as a combination of basis elements.
  BracketEntry norm(size_t i, size_t j) {
    if (i == j) return {};
    if (i > j) return negate(norm(j, i));
    if (els[i].weight + els[j].weight > k) return {};
    auto it = memo.find({i, j});
    if (it != memo.end()) return it->second;
    if (!in_progress.insert({i, j}).second)
      throw std::logic_error("cycle in hall normalization");

    BracketEntry out;
    if (els[j].leaf >= 0 || els[j].left <= i) {
      out = {{basic.at({i, j}), Rational(1)}};
    } else {
      // [u,[v1,v2]] = [[u,v1],v2] + [v1,[u,v2]] with v1 > u.
      size_t v1 = els[j].left, v2 = els[j].right;
      std::map<size_t, Rational> acc;
      for (const auto& t : norm(i, v1)) accumulate(acc, norm(t.k, v2), t.c);
      for (const auto& t : norm(i, v2)) accumulate(acc, norm(v1, t.k), t.c);
      for (const auto& [b, c] : acc)
        if (c != 0) out.push_back({b, c});
    }
    in_progress.erase({i, j});
    memo[{i, j}] = out;
    return out;
  }

  std::string name_of(size_t i) const {
    if (els[i].leaf >= 0) return "a" + std::to_string(els[i].leaf + 1);
    return "[" + name_of(els[i].left) + "," + name_of(els[i].right) + "]";
  }
};

}  // namespace

FreeNilpotent free_nilpotent(size_t d, unsigned k) {
  if (d == 0 || k == 0) throw std::invalid_argument("free_nilpotent size");
  HallBuilder hb(d, k);
  std::vector<unsigned> layers;
  std::vector<std::string> names;
  for (size_t i = 0; i < hb.els.size(); ++i) {
    layers.push_back(hb.els[i].weight);
    names.push_back(hb.name_of(i));
  }
  std::map<std::pair<size_t, size_t>, BracketEntry> table;
  for (size_t i = 0; i < hb.els.size(); ++i)
    for (size_t j = i + 1; j < hb.els.size(); ++j) {
      BracketEntry e = hb.norm(i, j);
      if (!e.empty()) table[{i, j}] = e;
    }
  return FreeNilpotent{GradedLieAlgebra(layers, table, names), hb.els};
}

GradedLieAlgebra heisenberg(size_t dim) {
  if (dim < 3 || dim % 2 == 0) throw std::invalid_argument("heisenberg dim");
  size_t n = (dim - 1) / 2;
  std::vector<unsigned> layers(dim, 1);
  layers[dim - 1] = 2;
  std::vector<std::string> names;
  for (size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  for (size_t i = 0; i < n; ++i) names.push_back("y" + std::to_string(i + 1));
  names.push_back("z");
  std::map<std::pair<size_t, size_t>, BracketEntry> table;
  for (size_t i = 0; i < n; ++i) table[{i, n + i}] = {{dim - 1, Rational(1)}};
  return GradedLieAlgebra(layers, table, names);
}

namespace {

using CD = std::vector<Rational>;  // length 2^level

CD cd_conj(CD v) {
  for (size_t i = 1; i < v.size(); ++i) v[i] = -v[i];
  return v;
}

CD cd_add(CD a, const CD& b, const Rational& s) {
  for (size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
  return a;
}

// Cayley-Dickson product: (a,b)(c,d) = (ac - conj(d) b, d a + b conj(c)).
CD cd_mul(const CD& x, const CD& y) {
  size_t n = x.size();
  if (n == 1) return {x[0] * y[0]};
  size_t h = n / 2;
  CD a(x.begin(), x.begin() + h), b(x.begin() + h, x.end());
  CD c(y.begin(), y.begin() + h), d(y.begin() + h, y.end());
  CD lo = cd_add(cd_mul(a, c), cd_mul(cd_conj(d), b), Rational(-1));
  CD hi = cd_add(cd_mul(d, a), cd_mul(b, cd_conj(c)), Rational(1));
  lo.insert(lo.end(), hi.begin(), hi.end());
  return lo;
}

CD cd_unit(size_t n, size_t i) {
  CD v(n, Rational(0));
  v[i] = 1;
  return v;
}

size_t cd_dim(DivisionKind kind) {
  switch (kind) {
    case DivisionKind::complex_numbers: return 2;
    case DivisionKind::quaternions: return 4;
    case DivisionKind::octonions: return 8;
  }
  throw std::invalid_argument("bad division kind");
}

}  // namespace

GradedLieAlgebra division_heisenberg(DivisionKind kind) {
  size_t n = cd_dim(kind);
  size_t dim = 2 * n - 1;
  std::vector<unsigned> layers(dim, 1);
  for (size_t i = n; i < dim; ++i) layers[i] = 2;
  std::vector<std::string> names;
  if (kind == DivisionKind::quaternions) {
    names = {"e", "i", "j", "k", "zi", "zj", "zk"};
  } else if (kind == DivisionKind::complex_numbers) {
    names = {"e", "i", "zi"};
  } else {
    for (size_t i = 0; i < n; ++i) names.push_back("e" + std::to_string(i));
    for (size_t i = 1; i < n; ++i) names.push_back("z" + std::to_string(i));
  }
  std::map<std::pair<size_t, size_t>, BracketEntry> table;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      CD p = cd_mul(cd_unit(n, i), cd_conj(cd_unit(n, j)));
      BracketEntry e;
      for (size_t m = 1; m < n; ++m)
        if (p[m] != 0) e.push_back({n + m - 1, p[m]});
      if (!e.empty()) table[{i, j}] = e;
    }
  return GradedLieAlgebra(layers, table, names);
}

std::vector<std::vector<int>> octonion_table() {
  std::vector<std::vector<int>> t(8, std::vector<int>(8, 0));
  for (size_t i = 0; i < 8; ++i)
    for (size_t j = 0; j < 8; ++j) {
      CD p = cd_mul(cd_unit(8, i), cd_unit(8, j));
      for (size_t m = 0; m < 8; ++m) {
        if (p[m] == 1) t[i][j] = static_cast<int>(m) + 1;
        if (p[m] == -1) t[i][j] = -(static_cast<int>(m) + 1);
      }
    }
  return t;
}

GradedLieAlgebra class3_rank8() {
  std::vector<unsigned> layers = {1, 1, 1, 1, 1, 2, 2, 3};
  std::vector<std::string> names = {"a", "b", "c", "d", "e", "f", "g", "h"};
  std::map<std::pair<size_t, size_t>, BracketEntry> table;
  table[{0, 1}] = {{5, Rational(1)}};   // [a,b] = f
  table[{2, 3}] = {{5, Rational(1)}};   // [c,d] = f
  table[{1, 2}] = {{6, Rational(1)}};   // [b,c] = g
  table[{3, 4}] = {{6, Rational(1)}};   // [d,e] = g
  table[{1, 5}] = {{7, Rational(1)}};   // [b,f] = h
  table[{3, 6}] = {{7, Rational(-1)}};  // [d,g] = -h
  return GradedLieAlgebra(layers, table, names);
}

CentralProduct central_product_algebra(const GradedLieAlgebra& base,
                                       size_t n) {
  if (base.nclass() != 2)
    throw std::invalid_argument("central product needs a class-2 algebra");
  if (n == 0) throw std::invalid_argument("central product needs copies");
  size_t d1 = base.layer_dim(1), d2 = base.layer_dim(2);
  for (size_t i = 0; i < d1; ++i)
    if (base.layer(i) != 1)
      throw std::invalid_argument("base layers must be sorted");

  std::vector<unsigned> layers(n * d1, 1);
  layers.insert(layers.end(), d2, 2);
  std::vector<std::string> names;
  for (size_t m = 0; m < n; ++m)
    for (size_t i = 0; i < d1; ++i)
      names.push_back(base.name(i) + "_" + std::to_string(m + 1));
  for (size_t j = 0; j < d2; ++j) names.push_back(base.name(d1 + j));

  std::map<std::pair<size_t, size_t>, BracketEntry> table;
  for (const auto& [key, entry] : base.table()) {
    BracketEntry shifted = entry;
    for (auto& t : shifted) t.k = n * d1 + (t.k - d1);
    for (size_t m = 0; m < n; ++m)
      table[{m * d1 + key.first, m * d1 + key.second}] = shifted;
  }
  CentralProduct cp{GradedLieAlgebra(layers, table, names), n, d1};
  return cp;
}

CentralQuotient central_quotient(const GradedLieAlgebra& alg,
                                 const std::vector<QVec>& centrals) {
  size_t dim = alg.dim();
  // Group the vectors by layer, checking centrality and homogeneity.
  std::map<unsigned, std::vector<QVec>> by_layer;
  for (const QVec& z : centrals) {
    if (z.size() != dim) throw std::invalid_argument("bad central vector");
    unsigned layer = 0;
    for (size_t i = 0; i < dim; ++i) {
      if (z[i] == 0) continue;
      if (layer == 0) layer = alg.layer(i);
      else if (alg.layer(i) != layer)
        throw std::invalid_argument("central vector spans several layers");
    }
    if (layer == 0) continue;
    for (size_t i = 0; i < dim; ++i)
      if (!is_zero(bracket(alg, z, alg.basis(i))))
        throw std::invalid_argument("vector is not central");
    by_layer[layer].push_back(z);
  }

  std::vector<bool> killed(dim, false);
  // Rows of `elim`: e_p = sum over kept coords, one row per killed coord p.
  std::map<size_t, QVec> elim;
  for (const auto& [layer, vecs] : by_layer) {
    std::vector<size_t> coords = alg.layer_indices(layer);
    QMatrix m(vecs.size(), coords.size());
    for (size_t r = 0; r < vecs.size(); ++r)
      for (size_t c = 0; c < coords.size(); ++c)
        m.at(r, c) = vecs[r][coords[c]];
    std::vector<size_t> pivots = rref(m);
    for (size_t r = 0; r < pivots.size(); ++r) {
      size_t p = coords[pivots[r]];
      killed[p] = true;
      QVec row(dim, Rational(0));
      for (size_t c = 0; c < coords.size(); ++c)
        if (c != pivots[r]) row[coords[c]] = -m.at(r, c);
      elim[p] = row;
    }
  }

  std::vector<size_t> kept;
  for (size_t i = 0; i < dim; ++i)
    if (!killed[i]) kept.push_back(i);
  size_t ndim = kept.size();
  QMatrix projection(ndim, dim);
  std::vector<size_t> new_index(dim, SIZE_MAX);
  for (size_t r = 0; r < ndim; ++r) new_index[kept[r]] = r;
  for (size_t r = 0; r < ndim; ++r) projection.at(r, kept[r]) = 1;
  for (const auto& [p, row] : elim)
    for (size_t i = 0; i < dim; ++i)
      if (row[i] != 0) projection.at(new_index[i], p) = row[i];

  auto project = [&](const QVec& v) {
    QVec w(ndim, Rational(0));
    for (size_t r = 0; r < ndim; ++r)
      for (size_t i = 0; i < dim; ++i)
        if (projection.at(r, i) != 0 && v[i] != 0)
          w[r] += projection.at(r, i) * v[i];
    return w;
  };

  std::vector<unsigned> layers;
  std::vector<std::string> names;
  for (size_t i : kept) {
    layers.push_back(alg.layer(i));
    names.push_back(alg.name(i));
  }
  std::map<std::pair<size_t, size_t>, BracketEntry> table;
  for (size_t a = 0; a < ndim; ++a)
    for (size_t b = a + 1; b < ndim; ++b) {
      QVec img =
          project(bracket(alg, alg.basis(kept[a]), alg.basis(kept[b])));
      BracketEntry e;
      for (size_t m = 0; m < ndim; ++m)
        if (img[m] != 0) e.push_back({m, img[m]});
      if (!e.empty()) table[{a, b}] = e;
    }
  return CentralQuotient{GradedLieAlgebra(layers, table, names),
                         std::move(projection), std::move(kept)};
}

std::vector<PairRelation> small_support_relations(
    const GradedLieAlgebra& alg) {
  if (alg.nclass() != 2)
    throw std::invalid_argument("relation search needs a class-2 algebra");
  std::vector<size_t> l1 = alg.layer_indices(1), l2 = alg.layer_indices(2);
  std::vector<std::pair<size_t, size_t>> pairs;
  for (size_t a = 0; a < l1.size(); ++a)
    for (size_t b = a + 1; b < l1.size(); ++b)
      pairs.push_back({l1[a], l1[b]});

  std::vector<QVec> img(pairs.size(), QVec(l2.size(), Rational(0)));
  for (size_t p = 0; p < pairs.size(); ++p) {
    QVec b = alg.bracket_basis(pairs[p].first, pairs[p].second);
    for (size_t m = 0; m < l2.size(); ++m) img[p][m] = b[l2[m]];
  }

  std::vector<PairRelation> out;
  std::vector<QVec> found;  // relation vectors in pair space
  auto record = [&](const std::vector<size_t>& cols,
                    const std::vector<long>& coeffs) {
    PairRelation r;
    QVec v(pairs.size(), Rational(0));
    for (size_t m = 0; m < cols.size(); ++m) {
      r.pairs.push_back(pairs[cols[m]]);
      r.coeffs.push_back(coeffs[m]);
      v[cols[m]] = coeffs[m];
    }
    out.push_back(r);
    found.push_back(v);
  };

  // Vanishing brackets give single-pair relations.
  std::map<std::string, std::vector<size_t>> groups;
  for (size_t p = 0; p < pairs.size(); ++p) {
    if (is_zero(img[p])) {
      record({p}, {1});
      continue;
    }
    // Key the direction of the image: normalize the leading entry to 1.
    QVec dir = img[p];
    Rational lead;
    for (const Rational& c : dir)
      if (c != 0) { lead = c; break; }
    std::ostringstream key;
    for (Rational& c : dir) {
      c /= lead;
      key << to_string(c) << ";";
    }
    groups[key.str()].push_back(p);
  }
  // Parallel brackets give two-pair relations against the group's first.
  for (const auto& [key, cols] : groups) {
    size_t p0 = cols[0];
    Rational lead0;
    for (const Rational& c : img[p0])
      if (c != 0) { lead0 = c; break; }
    for (size_t m = 1; m < cols.size(); ++m) {
      Rational lead;
      for (const Rational& c : img[cols[m]])
        if (c != 0) { lead = c; break; }
      Rational ratio = lead / lead0;  // img[cols[m]] = ratio * img[p0]
      Int num = ratio.get_num(), den = ratio.get_den();
      long p = static_cast<long>(num.get_si());
      long q = static_cast<long>(den.get_si());
      record({p0, cols[m]}, {-p, q});
    }
  }

  // Complete to a basis of the full relation space if anything is missing.
  QMatrix mat(l2.size(), pairs.size());
  for (size_t p = 0; p < pairs.size(); ++p)
    for (size_t m = 0; m < l2.size(); ++m) mat.at(m, p) = img[p][m];
  std::vector<QVec> ker = kernel(mat);
  for (const QVec& kv : ker) {
    std::vector<QVec> trial = found;
    trial.push_back(kv);
    QMatrix t(trial.size(), pairs.size());
    for (size_t r = 0; r < trial.size(); ++r)
      for (size_t c = 0; c < pairs.size(); ++c) t.at(r, c) = trial[r][c];
    if (rank(t) == found.size()) continue;
    Int den(1);
    for (const Rational& c : kv) den = lcm(den, Int(c.get_den()));
    std::vector<size_t> cols;
    std::vector<long> coeffs;
    for (size_t c = 0; c < pairs.size(); ++c) {
      Rational scaled = kv[c] * Rational(den);
      if (scaled != 0) {
        cols.push_back(c);
        coeffs.push_back(static_cast<long>(Int(scaled.get_num()).get_si()));
      }
    }
    record(cols, coeffs);
  }
  return out;
}

}  // namespace nilfill
