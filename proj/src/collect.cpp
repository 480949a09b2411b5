#include "nilfill/collect.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <utility>

#include "nilfill/linalg.hpp"

namespace nilfill {

namespace {

QVec local_part(const GradedLieAlgebra& alg, const QVec& v, unsigned layer) {
  QVec out;
  for (size_t i : alg.layer_indices(layer)) out.push_back(v[i]);
  return out;
}

std::set<size_t> word_support(const Word& w) {
  std::set<size_t> s;
  for (const Letter& l : w) s.insert(l.gen);
  return s;
}

Word signed_word(const Word& w, int t) { return t > 0 ? w : inverse_word(w); }

// One conjugated commutator of two letters; a single-commutator relator
// expands freely into an ordered product of these.
struct Piece {
  Word conj;
  Letter u, v;
};

Word piece_word(const Piece& p) {
  return conjugated_word(p.conj, commutator_word(Word{p.u}, Word{p.v}));
}

// [x R, Y] = x [R, Y] x^-1 * [x, Y] and [x, y S] = [x, y] * y [x, S] y^-1,
// applied down to letter pairs. The concatenated pieces freely equal [X, Y].
std::vector<Piece> bilinear_pieces(const Word& X, const Word& Y) {
  std::vector<Piece> out;
  if (X.empty() || Y.empty()) return out;
  if (X.size() > 1) {
    Word rest(X.begin() + 1, X.end());
    Word head = gen_word(X[0].gen, X[0].sign);
    for (Piece& p : bilinear_pieces(rest, Y)) {
      p.conj = concat(head, p.conj);
      out.push_back(std::move(p));
    }
    for (Piece& p : bilinear_pieces(head, Y)) out.push_back(std::move(p));
    return out;
  }
  out.push_back({{}, X[0], Y[0]});
  if (Y.size() > 1) {
    Word rest(Y.begin() + 1, Y.end());
    Word head = gen_word(Y[0].gen, Y[0].sign);
    for (Piece& p : bilinear_pieces(X, rest)) {
      p.conj = concat(head, p.conj);
      out.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace

CollectionFiller::CollectionFiller(const Presentation& pres,
                                   const LatticeBasis& basis,
                                   SearchLimits certificate_limits)
    : pres_(&pres),
      basis_(&basis),
      cert_lim_(certificate_limits),
      gens_(pres.gen_elements()),
      table_(pres) {
  if (!pres.has_model()) {
    throw std::invalid_argument("collection needs a model");
  }
}

Word CollectionFiller::atom_word(const Atom& a) {
  if (a.layer == 1) return gen_word(a.index, a.sign);
  return signed_word(spellings(a.layer, a.index)[a.spell].word, a.sign);
}

GroupElement CollectionFiller::atom_value(const Atom& a) const {
  const GroupElement& base =
      a.layer == 1 ? gens_[a.index] : basis_->ladder(a.layer)[a.index].element;
  return a.sign > 0 ? base : invert(base);
}

std::vector<CollectionFiller::Atom> CollectionFiller::lattice_digits(
    const GroupElement& e) const {
  const GradedLieAlgebra& alg = basis_->algebra();
  std::vector<Atom> out;
  GroupElement p = GroupElement::identity(alg);
  for (unsigned layer = 2; layer <= basis_->nclass(); ++layer) {
    const auto& rungs = basis_->ladder(layer);
    if (rungs.empty()) continue;
    GroupElement diff = multiply(invert(p), e);
    QVec v = local_part(alg, layer_part(alg, diff.log(), layer), layer);
    QMatrix a(v.size(), rungs.size());
    for (size_t j = 0; j < rungs.size(); ++j) {
      for (size_t i = 0; i < v.size(); ++i) a.at(i, j) = rungs[j].row[i];
    }
    auto coords = solve(a, v);
    if (!coords) throw std::runtime_error("ladder failed to span layer");
    for (size_t j = 0; j < rungs.size(); ++j) {
      const Rational& c = (*coords)[j];
      if (c == 0) continue;
      if (c.get_den() != 1 || !c.get_num().fits_slong_p()) {
        throw std::runtime_error("commutation defect not a lattice point");
      }
      long m = c.get_num().get_si();
      p = multiply(p, power(rungs[j].element, Int(m)));
      for (long k = 0; k < std::labs(m); ++k) {
        out.push_back({layer, j, m > 0 ? 1 : -1, 0});
      }
    }
  }
  if (!(p == e)) throw std::runtime_error("defect has a layer-1 part");
  return out;
}

const std::vector<CollectionFiller::Spelling>& CollectionFiller::spellings(
    unsigned layer, size_t rung) {
  auto key = std::make_pair(layer, rung);
  auto it = spellings_.find(key);
  if (it != spellings_.end()) return it->second;
  const LadderRung& lr = basis_->ladder(layer)[rung];
  std::vector<Spelling> list;
  list.push_back({lr.word, word_support(lr.word)});
  const GroupElement inv = invert(lr.element);
  for (size_t i = 0; i < gens_.size(); ++i) {
    for (size_t j = i + 1; j < gens_.size(); ++j) {
      GroupElement c = commutator(gens_[i], gens_[j]);
      Word w;
      if (c == lr.element) {
        w = commutator_word(gen_word(i), gen_word(j));
      } else if (c == inv) {
        w = commutator_word(gen_word(j), gen_word(i));
      } else {
        continue;
      }
      bool dup = false;
      for (const auto& s : list) dup = dup || s.word == w;
      if (!dup) list.push_back({std::move(w), {i, j}});
    }
  }
  return spellings_.emplace(key, std::move(list)).first->second;
}

void CollectionFiller::build_seed_exchanges() {
  seeded_ = true;
  const auto& rel = pres_->relators;
  for (size_t ri = 0; ri < rel.size(); ++ri) {
    if (ri >= pres_->forms.size() || !pres_->forms[ri]) continue;
    const RelatorForm& form = *pres_->forms[ri];
    if (form.factors.size() != 1) continue;
    const Word& X = form.factors[0].x;
    const Word& Y = form.factors[0].y;
    if (free_reduce(commutator_word(X, Y)) != free_reduce(rel[ri])) continue;

    std::vector<Piece> pieces = bilinear_pieces(X, Y);
    std::vector<size_t> plain, backed;
    for (size_t k = 0; k < pieces.size(); ++k) {
      if (table_.lookup(pieces[k].u, pieces[k].v)) backed.push_back(k);
      else plain.push_back(k);
    }
    if (plain.size() != 2) continue;

    Word p1 = commutator_word(Word{pieces[plain[0]].u}, Word{pieces[plain[0]].v});
    Word p2 = commutator_word(Word{pieces[plain[1]].u}, Word{pieces[plain[1]].v});
    std::vector<Atom> d1 = lattice_digits(evaluate_word(p1, gens_));
    if (d1.size() != 1) continue;
    const unsigned L = d1[0].layer;
    const size_t r = d1[0].index;
    const int s1 = d1[0].sign;

    // The product of all pieces freely equals the relator word; pulling the
    // relator-backed pieces out to the right leaves the two others filled
    // by the relator cell plus inverted commuting cells.
    auto after_word = [&](size_t k) {
      Word w;
      for (size_t s : plain) {
        if (s > k) w = concat(w, piece_word(pieces[s]));
      }
      return inverse_word(w);
    };
    Filling fex;
    fex.cells.push_back(Cell{{}, ri, +1});
    for (auto itk = backed.rbegin(); itk != backed.rend(); ++itk) {
      const Piece& pc = pieces[*itk];
      Filling one = conjugate_filling(*table_.lookup(pc.u, pc.v), pc.conj);
      append_filling(fex,
                     conjugate_filling(invert_filling(one), after_word(*itk)));
    }
    Word tex = free_reduce(
        concat(piece_word(pieces[plain[0]]), piece_word(pieces[plain[1]])));
    if (!verify_filling(tex, fex, rel)) {
      throw std::logic_error("exchange expansion failed to verify");
    }

    // Shed the conjugators: [p1, c1] * tex * [c2, p2^-1] frees p1 * p2.
    auto shed1 = block_pass(p1, pieces[plain[0]].conj);
    auto shed2 = block_pass(pieces[plain[1]].conj, inverse_word(p2));
    if (!shed1 || !shed2) continue;
    Filling dfill = std::move(*shed1);
    append_filling(dfill, fex);
    append_filling(dfill, *shed2);
    Word dword = free_reduce(concat(p1, p2));
    if (!verify_filling(dword, dfill, rel)) {
      throw std::logic_error("spelling exchange failed to verify");
    }

    const auto& sp = spellings(L, r);
    auto index_of = [&](const Word& w) -> std::optional<size_t> {
      for (size_t i = 0; i < sp.size(); ++i) {
        if (sp[i].word == w) return i;
      }
      return std::nullopt;
    };
    auto a = index_of(signed_word(p1, s1));
    auto b = index_of(signed_word(p2, -s1));
    if (!a || !b || *a == *b) continue;
    if (exchanges_.count(std::make_tuple(L, r, *a, *b))) continue;
    Filling eab = s1 > 0 ? std::move(dfill)
                         : conjugate_filling(invert_filling(dfill),
                                             signed_word(p1, s1));
    exchanges_[std::make_tuple(L, r, *b, *a)] = invert_filling(eab);
    exchanges_[std::make_tuple(L, r, *a, *b)] = std::move(eab);
  }
}

const Filling* CollectionFiller::exchange(unsigned layer, size_t rung, size_t a,
                                          size_t b) {
  static const Filling kEmpty{};
  if (a == b) return &kEmpty;
  if (!seeded_) build_seed_exchanges();
  const auto key = std::make_tuple(layer, rung, a, b);
  auto it = exchanges_.find(key);
  if (it != exchanges_.end()) return &it->second;

  const size_t n = spellings(layer, rung).size();
  std::vector<std::optional<size_t>> prev(n);
  std::vector<bool> seen(n, false);
  std::vector<size_t> queue{a};
  seen[a] = true;
  for (size_t qi = 0; qi < queue.size() && !seen[b]; ++qi) {
    for (size_t nx = 0; nx < n; ++nx) {
      if (seen[nx]) continue;
      if (exchanges_.count(std::make_tuple(layer, rung, queue[qi], nx))) {
        seen[nx] = true;
        prev[nx] = queue[qi];
        queue.push_back(nx);
      }
    }
  }
  if (!seen[b]) return nullptr;
  std::vector<size_t> path{b};
  while (path.back() != a) path.push_back(*prev[path.back()]);
  std::reverse(path.begin(), path.end());
  Filling out;
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    append_filling(
        out, exchanges_.at(std::make_tuple(layer, rung, path[i], path[i + 1])));
  }
  return &exchanges_.emplace(key, std::move(out)).first->second;
}

std::optional<Filling> CollectionFiller::exchange_power(unsigned layer,
                                                        size_t rung, size_t a,
                                                        size_t b, int t) {
  const Filling* e = exchange(layer, rung, a, b);
  if (!e) return std::nullopt;
  if (a == b) return Filling{};
  if (t > 0) return *e;
  const Word& sb = spellings(layer, rung)[b].word;
  return invert_filling(conjugate_filling(*e, inverse_word(sb)));
}

std::optional<Filling> CollectionFiller::block_pass(const Word& u,
                                                    const Word& v) {
  if (u.empty() || v.empty()) return Filling{};
  bool cross = true;
  for (const Letter& lu : u) {
    for (const Letter& lv : v) {
      if (!table_.lookup(lu, lv)) {
        cross = false;
        break;
      }
    }
    if (!cross) break;
  }
  if (cross) return fill_cross_commutator(u, v, table_);

  // One block against single letters, a relator cell per letter:
  // [a, l R] = [a, l] * l [a, R] l^-1.
  auto atomic = [this](const Word& a, const Word& b) -> std::optional<Filling> {
    Filling acc;
    for (auto it = b.rbegin(); it != b.rend(); ++it) {
      Word lw = gen_word(it->gen, it->sign);
      auto one = find_commutator_filling(*pres_, a, lw);
      if (!one) return std::nullopt;
      Filling next = std::move(*one);
      append_filling(next, conjugate_filling(acc, lw));
      acc = std::move(next);
    }
    return acc;
  };
  if (auto f = atomic(u, v)) return f;
  if (auto f = atomic(v, u)) return invert_filling(*f);
  return std::nullopt;
}

std::optional<std::pair<size_t, Filling>> CollectionFiller::passing_spelling(
    unsigned layer, size_t rung, size_t current, int t, const Word& v) {
  const size_t n = spellings(layer, rung).size();
  std::vector<size_t> order{current};
  for (size_t i = 0; i < n; ++i) {
    if (i != current) order.push_back(i);
  }
  for (size_t idx : order) {
    const Word sw = signed_word(spellings(layer, rung)[idx].word, t);
    auto bp = block_pass(sw, v);
    if (!bp) continue;
    if (idx != current && !exchange(layer, rung, current, idx)) continue;
    return std::make_pair(idx, std::move(*bp));
  }
  return std::nullopt;
}

const CollectionFiller::Certificate& CollectionFiller::certificate(
    const Atom& p, const Atom& q) {
  const auto key =
      std::make_pair(AtomKey{p.layer, p.index, p.sign, p.spell},
                     AtomKey{q.layer, q.index, q.sign, q.spell});
  auto it = certs_.find(key);
  if (it != certs_.end()) return it->second;
  return certs_.emplace(key, build_certificate(p, q)).first->second;
}

CollectionFiller::Certificate CollectionFiller::build_certificate(
    const Atom& p, const Atom& q) {
  if (!seeded_) build_seed_exchanges();
  Certificate cert;
  cert.moved_spell = p.spell;
  const Word wp = atom_word(p);
  const Word wq = atom_word(q);
  cert.defect =
      lattice_digits(commutator(invert(atom_value(p)), invert(atom_value(q))));

  // Letters x^sx, y^sy with one central digit between them: with the digit
  // spelled as the plain pair commutator S, the certificate word reduces
  // freely to E (S^a * g S^-a g^-1) E^-1, which a passing spelling fills.
  auto letter_route = [&]() -> std::optional<Filling> {
    const unsigned L = cert.defect[0].layer;
    const size_t r = cert.defect[0].index;
    const auto& sp = spellings(L, r);
    const Word pw = commutator_word(gen_word(p.index), gen_word(q.index));
    const Word pwi = inverse_word(pw);
    size_t dspell = sp.size();
    int eps = 0;
    for (size_t i = 0; i < sp.size(); ++i) {
      if (sp[i].word == pw) {
        dspell = i;
        eps = 1;
        break;
      }
      if (sp[i].word == pwi) {
        dspell = i;
        eps = -1;
        break;
      }
    }
    if (dspell == sp.size()) return std::nullopt;

    Word e;
    int sigma = 1;
    if (p.sign > 0 && q.sign < 0) {
      e = gen_word(q.index, -1);
      sigma = -1;
    } else if (p.sign < 0 && q.sign > 0) {
      e = gen_word(p.index, -1);
      sigma = -1;
    } else if (p.sign < 0 && q.sign < 0) {
      e = concat(gen_word(p.index, -1), gen_word(q.index, -1));
    }
    const int alpha = eps * sigma;
    if (alpha != cert.defect[0].sign) return std::nullopt;

    const Word g = free_reduce(concat(inverse_word(e), concat(wq, wp)));
    auto ps = passing_spelling(L, r, dspell, alpha, g);
    if (!ps) return std::nullopt;
    auto ex1 = exchange_power(L, r, dspell, ps->first, alpha);
    auto ex2 = exchange_power(L, r, ps->first, dspell, alpha);
    if (!ex1 || !ex2) return std::nullopt;
    Filling v = std::move(*ex1);
    append_filling(v, ps->second);
    append_filling(v, conjugate_filling(*ex2, g));
    cert.defect[0].spell = dspell;
    return conjugate_filling(v, e);
  };

  // A rung carried right across a letter or another rung: exchange to a
  // spelling able to pass, then pass block against block.
  auto rung_route = [&]() -> std::optional<Filling> {
    if (!cert.defect.empty()) return std::nullopt;
    auto ps = passing_spelling(p.layer, p.index, p.spell, p.sign, wq);
    if (!ps) return std::nullopt;
    auto ex = exchange_power(p.layer, p.index, p.spell, ps->first, p.sign);
    if (!ex) return std::nullopt;
    Filling f = std::move(*ex);
    append_filling(f, ps->second);
    cert.moved_spell = ps->first;
    return f;
  };

  std::optional<Filling> built;
  if (p.layer == 1 && q.layer == 1) {
    if (cert.defect.empty()) {
      built = find_commutator_filling(*pres_, wp, wq);
    } else if (cert.defect.size() == 1) {
      built = letter_route();
    }
  } else if (p.layer > 1) {
    built = rung_route();
  }

  Word after = wq;
  Atom moved = p;
  moved.spell = cert.moved_spell;
  after = concat(after, atom_word(moved));
  for (const Atom& d : cert.defect) after = concat(after, atom_word(d));
  const Word w = free_reduce(concat(concat(wp, wq), inverse_word(after)));

  if (built) {
    if (!verify_filling(w, *built, pres_->relators)) {
      throw std::logic_error("swap certificate failed to verify: " +
                             pres_->str(w));
    }
    cert.filling = std::move(*built);
    return cert;
  }

  SearchLimits lim = cert_lim_;
  lim.max_word_len = std::min(lim.max_word_len, w.size() + 16);
  SearchResult res = bfs_exact_fill(*pres_, w, lim);
  if (res.status == SearchStatus::found) {
    cert.filling = std::move(res.filling);
    return cert;
  }
  throw std::runtime_error("swap certificate out of reach: " + pres_->str(w));
}

std::optional<Filling> CollectionFiller::fill(const Word& w) {
  if (!evaluate_word(w, gens_).is_identity()) return std::nullopt;
  std::vector<Atom> atoms;
  for (const Letter& l : free_reduce(w)) {
    atoms.push_back({1, l.gen, l.sign, 0});
  }
  Filling cells;
  auto sortkey = [](const Atom& a) { return std::make_pair(a.layer, a.index); };
  auto prefix_word = [&](size_t n) {
    Word p;
    for (size_t i = 0; i < n; ++i) p = concat(p, atom_word(atoms[i]));
    return free_reduce(p);
  };

  while (true) {
    bool changed = false;
    for (size_t i = 0; i + 1 < atoms.size(); ++i) {
      const Atom& a = atoms[i];
      const Atom& b = atoms[i + 1];
      if (a.layer != b.layer || a.index != b.index || a.sign != -b.sign) {
        continue;
      }
      if (a.spell != b.spell) {
        auto ex = exchange_power(a.layer, a.index, a.spell, b.spell, a.sign);
        if (!ex) continue;
        append_filling(cells, conjugate_filling(*ex, prefix_word(i)));
      }
      atoms.erase(atoms.begin() + i, atoms.begin() + i + 2);
      changed = true;
      break;
    }
    if (changed) continue;

    size_t i = atoms.size();
    for (size_t k = 0; k + 1 < atoms.size(); ++k) {
      if (sortkey(atoms[k]) > sortkey(atoms[k + 1])) {
        i = k;
        break;
      }
    }
    if (i == atoms.size()) break;

    const Certificate& c = certificate(atoms[i], atoms[i + 1]);
    if (!c.filling.cells.empty()) {
      append_filling(cells, conjugate_filling(c.filling, prefix_word(i)));
    }
    std::swap(atoms[i], atoms[i + 1]);
    atoms[i + 1].spell = c.moved_spell;
    atoms.insert(atoms.begin() + i + 2, c.defect.begin(), c.defect.end());
  }

  if (!atoms.empty()) {
    throw std::runtime_error("collection left a sorted residue");
  }
  return cells;
}

}  // namespace nilfill
