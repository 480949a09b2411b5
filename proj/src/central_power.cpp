#include "nilfill/central_power.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

#include "nilfill/algebra_presets.hpp"
#include "nilfill/fillcore.hpp"

namespace nilfill {

namespace {

Word map_letters(const Word& w, const std::vector<size_t>& to) {
  Word out;
  out.reserve(w.size());
  for (const Letter& l : w) out.push_back({to[l.gen], l.sign});
  return out;
}

RelatorForm map_form(const RelatorForm& f, const std::vector<size_t>& to) {
  RelatorForm out;
  for (const RelatorFactor& fac : f.factors)
    out.factors.push_back({map_letters(fac.x, to), map_letters(fac.y, to)});
  return out;
}

bool all_positive(const Word& w) {
  return std::all_of(w.begin(), w.end(),
                     [](const Letter& l) { return l.sign == 1; });
}

// Letter-level pieces of the bilinear expansion: [X, Y] freely equals the
// ordered product of conj [x, y] over the recorded (conjugator, x, y)
// triples, via [x1 X', Y] = x1 [X', Y] x1^-1 [x1, Y] and
// [x, y1 Y'] = [x, y1] y1 [x, Y'] y1^-1.
struct Piece {
  Word conj;
  Letter x, y;
};

void expand_pieces(const Word& X, const Word& Y, const Word& pre,
                   std::vector<Piece>& out) {
  if (X.empty() || Y.empty()) return;
  if (X.size() > 1) {
    Word tail(X.begin() + 1, X.end());
    Word inner = pre;
    inner.push_back(X[0]);
    expand_pieces(tail, Y, inner, out);
    expand_pieces(Word{X[0]}, Y, pre, out);
    return;
  }
  if (Y.size() > 1) {
    out.push_back({pre, X[0], Y[0]});
    Word tail(Y.begin() + 1, Y.end());
    Word inner = pre;
    inner.push_back(Y[0]);
    expand_pieces(X, tail, inner, out);
    return;
  }
  out.push_back({pre, X[0], Y[0]});
}

// Structure of a presentation built by central_power_presentation,
// recovered from the generator naming and the relator forms.
struct CopyLayout {
  size_t copies = 0;
  size_t per_copy = 0;

  size_t copy_of(size_t g) const { return g / per_copy; }
  size_t pos_of(size_t g) const { return g % per_copy; }
  size_t gen(size_t copy, size_t pos) const { return copy * per_copy + pos; }
};

CopyLayout parse_layout(const Presentation& pres) {
  CopyLayout lay;
  std::vector<size_t> copy_ids;
  for (const std::string& name : pres.generators) {
    auto us = name.rfind('_');
    if (us == std::string::npos || us + 1 == name.size())
      throw std::runtime_error("not a central power presentation: generator " +
                               name);
    copy_ids.push_back(std::stoul(name.substr(us + 1)));
  }
  lay.copies = *std::max_element(copy_ids.begin(), copy_ids.end());
  if (lay.copies < 2 || pres.generators.size() % lay.copies != 0)
    throw std::runtime_error("not a central power presentation");
  lay.per_copy = pres.generators.size() / lay.copies;
  for (size_t g = 0; g < copy_ids.size(); ++g)
    if (copy_ids[g] != lay.copy_of(g) + 1)
      throw std::runtime_error("central power generators out of order");
  return lay;
}

}  // namespace

InterleaveResult interleave(const Presentation& pres,
                            const std::vector<RelatorFactor>& factors) {
  if (factors.empty()) throw std::runtime_error("interleave: no factors");
  std::map<size_t, size_t> owner;
  for (size_t j = 0; j < factors.size(); ++j) {
    for (const Word* part : {&factors[j].x, &factors[j].y}) {
      for (const Letter& l : *part) {
        auto [it, fresh] = owner.emplace(l.gen, j);
        if (!fresh && it->second != j)
          throw std::runtime_error("interleave: factors share generator " +
                                   pres.generators[l.gen]);
      }
    }
  }
  Word p, q, from;
  for (const RelatorFactor& f : factors) {
    p = concat(p, f.x);
    q = concat(q, f.y);
    from = concat(from, commutator_word(f.x, f.y));
  }
  InterleaveResult out;
  out.word = commutator_word(p, q);
  SwapTable table(pres);
  out.witness = sort_by_swaps(
      from, out.word, table,
      [&owner](const Letter& l) { return owner.at(l.gen); });
  if (!verify_filling(concat(from, inverse_word(out.word)), out.witness,
                      pres.relators))
    throw std::runtime_error("interleave: witness failed verification");
  return out;
}

Presentation inline_central_generators(const Presentation& pres) {
  if (!pres.has_model())
    throw std::runtime_error("inlining needs a generator map");
  Presentation cur = pres;
  for (;;) {
    size_t victim = SIZE_MAX;
    for (size_t g = 0; g < cur.generators.size(); ++g)
      if (!in_layer(*cur.algebra, cur.generator_logs[g], 1)) {
        victim = g;
        break;
      }
    if (victim == SIZE_MAX) break;

    // A relator mentioning the generator exactly once defines it.
    size_t def = SIZE_MAX, at = 0;
    for (size_t m = 0; m < cur.relators.size() && def == SIZE_MAX; ++m) {
      size_t seen = 0, pos = 0;
      for (size_t i = 0; i < cur.relators[m].size(); ++i)
        if (cur.relators[m][i].gen == victim) {
          ++seen;
          pos = i;
        }
      if (seen == 1) {
        def = m;
        at = pos;
      }
    }
    if (def == SIZE_MAX)
      throw std::runtime_error("no defining relator for generator " +
                               cur.generators[victim]);
    const Word& dw = cur.relators[def];
    // A g^e B = 1 gives g = (A^-1 B^-1)^e.
    Word head(dw.begin(), dw.begin() + at);
    Word tail(dw.begin() + at + 1, dw.end());
    Word sub = concat(inverse_word(head), inverse_word(tail));
    if (dw[at].sign < 0) sub = inverse_word(sub);

    std::vector<size_t> to(cur.generators.size());
    Presentation next;
    next.algebra = cur.algebra;
    for (size_t g = 0; g < cur.generators.size(); ++g) {
      if (g == victim) continue;
      to[g] = next.generators.size();
      next.generators.push_back(cur.generators[g]);
      next.generator_logs.push_back(cur.generator_logs[g]);
    }
    auto rewrite = [&](const Word& w) {
      Word out;
      for (const Letter& l : w) {
        if (l.gen == victim) {
          Word s = l.sign > 0 ? sub : inverse_word(sub);
          out.insert(out.end(), s.begin(), s.end());
        } else {
          out.push_back(l);
        }
      }
      return map_letters(out, to);
    };
    // Membership test for the nilpotency retag: evaluate in the free
    // class-2 group on the surviving generators.
    auto free2 = free_nilpotent(next.generators.size(), 2);
    std::vector<GroupElement> fgens;
    for (size_t g = 0; g < next.generators.size(); ++g)
      fgens.emplace_back(free2.alg, free2.alg.basis(g));

    for (size_t m = 0; m < cur.relators.size(); ++m) {
      if (m == def) continue;
      bool touched = std::any_of(
          cur.relators[m].begin(), cur.relators[m].end(),
          [&](const Letter& l) { return l.gen == victim; });
      Word w = free_reduce(rewrite(cur.relators[m]));
      std::string tag = m < cur.tags.size() ? cur.tags[m] : "";
      std::optional<RelatorForm> form;
      if (m < cur.forms.size() && cur.forms[m])
        form = map_form(*cur.forms[m], to);
      if (touched && evaluate_word(w, fgens).is_identity()) {
        tag = "nilp";
        form.reset();
      }
      next.add_relator_word(std::move(w), std::move(tag), std::move(form));
    }
    cur = std::move(next);
  }
  return cur;
}

Presentation central_power_presentation(const Presentation& base, size_t n) {
  Presentation b = base;
  if (b.has_model()) {
    bool flat = true;
    for (const QVec& v : b.generator_logs)
      flat = flat && in_layer(*b.algebra, v, 1);
    if (!flat) b = inline_central_generators(b);
  }
  const size_t p = b.generators.size();

  std::vector<size_t> payload;
  size_t need = 2;
  for (size_t m = 0; m < b.relators.size(); ++m) {
    if (m < b.tags.size() && b.tags[m] == "nilp") continue;
    if (m >= b.forms.size() || !b.forms[m])
      throw std::runtime_error("central power: relator " + std::to_string(m) +
                               " has no commutator form");
    payload.push_back(m);
    need = std::max(need, b.forms[m]->factors.size());
  }
  if (n < need)
    throw std::runtime_error("central power: need n >= " +
                             std::to_string(need));

  Presentation out;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < p; ++j)
      out.generators.push_back(b.generators[j] + "_" + std::to_string(i + 1));
  if (b.has_model()) {
    if (b.algebra->layer_dim(1) != p)
      throw std::runtime_error("central power: generators must span layer 1");
    CentralProduct cp = central_product_algebra(*b.algebra, n);
    auto alg = std::make_shared<GradedLieAlgebra>(std::move(cp.alg));
    out.algebra = alg;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < p; ++j)
        out.generator_logs.push_back(alg->basis(cp.gen_index(i, j)));
  }

  auto cg = [&](size_t copy, size_t j) { return gen_word(copy * p + j); };

  for (size_t i = 0; i < n; ++i) {
    std::vector<size_t> to(p);
    for (size_t j = 0; j < p; ++j) to[j] = i * p + j;
    for (size_t m : payload)
      out.add_relator_word(map_letters(b.relators[m], to), "orig",
                           map_form(*b.forms[m], to));
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < p; ++j)
      for (size_t k = 0; k < p; ++k)
        for (size_t l = k + 1; l < p; ++l) {
          Word inner = commutator_word(cg(i, k), cg(i, l));
          out.add_relator_word(
              commutator_word(cg(i, j), inner), "nilp",
              RelatorForm{{RelatorFactor{cg(i, j), inner}}});
        }
  for (size_t i = 0; i < n; ++i)
    for (size_t k = i + 1; k < n; ++k)
      for (size_t j = 0; j < p; ++j)
        for (size_t l = 0; l < p; ++l)
          out.add_relator_word(
              commutator_word(cg(i, j), cg(k, l)), "product",
              RelatorForm{{RelatorFactor{cg(i, j), cg(k, l)}}});
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      for (size_t k = 0; k < p; ++k)
        for (size_t l = k + 1; l < p; ++l) {
          Word wi = commutator_word(cg(i, k), cg(i, l));
          Word wj = commutator_word(cg(j, k), cg(j, l));
          out.add_relator_word(
              concat(wi, inverse_word(wj)), "center",
              RelatorForm{{RelatorFactor{cg(i, k), cg(i, l)},
                           RelatorFactor{cg(j, l), cg(j, k)}}});
        }
  return out;
}

namespace {

// Helpers for commutator_form_transform, bundling the copy layout, a swap
// table, and the index of "center" relators per (copy, copy, gen, gen).
struct Transformer {
  const Presentation& pres;
  CopyLayout lay;
  SwapTable table;
  std::map<std::array<size_t, 4>, size_t> center_at;

  const RelatorForm& need_form(size_t m) const {
    if (m >= pres.forms.size() || !pres.forms[m])
      throw std::runtime_error("transform: relator " + std::to_string(m) +
                               " has no commutator form");
    return *pres.forms[m];
  }

  explicit Transformer(const Presentation& p) : pres(p), table(p) {
    lay = parse_layout(p);
    for (size_t m = 0; m < p.relators.size(); ++m) {
      if (m >= p.tags.size() || p.tags[m] != "center") continue;
      const RelatorForm& f = need_form(m);
      size_t i = lay.copy_of(f.factors[0].x[0].gen);
      size_t j = lay.copy_of(f.factors[1].x[0].gen);
      size_t k = lay.pos_of(f.factors[0].x[0].gen);
      size_t l = lay.pos_of(f.factors[0].y[0].gen);
      center_at[{i, j, k, l}] = m;
    }
  }

  // Filling of [g(a,k), g(a,l)]^eps * ([g(b,k), g(b,l)]^eps)^-1 built from
  // one "center" cell. eps = -1 means both commutators argument-swapped.
  Filling copy_swap(size_t a, size_t b, size_t k, size_t l, int eps) const {
    size_t m0 = std::min(a, b), m1 = std::max(a, b);
    auto it = center_at.find({m0, m1, k, l});
    if (it == center_at.end())
      throw std::runtime_error("transform: missing center relator");
    Filling base;
    base.cells.push_back(Cell{{}, it->second, 1});
    // base fills I_{m0} * I_{m1}^-1 with I_m = [g(m,k), g(m,l)].
    if (eps > 0) return a == m0 ? base : invert_filling(base);
    Word im1 = commutator_word(gen_word(lay.gen(m1, k)),
                               gen_word(lay.gen(m1, l)));
    Filling fl = conjugate_filling(base, inverse_word(im1));
    // fl fills I_{m1}^-1 * I_{m0}.
    return a == m1 ? fl : invert_filling(fl);
  }

  // Filling of [block, v_1...v_s] peeled one letter at a time, each step a
  // nilpotency cell: [B, v V'] = [B, v] * v [B, V'] v^-1.
  Filling block_past_letters(const Word& block, const Word& letters) const {
    Filling out;
    Word conj;
    for (const Letter& v : letters) {
      auto f = find_commutator_filling(pres, block, Word{v});
      if (!f)
        throw std::runtime_error("transform: no relator moves a commutator "
                                 "past " + pres.generators[v.gen]);
      append_filling(out, conjugate_filling(*f, conj));
      conj.push_back(v);
    }
    return out;
  }

  Word retarget(const Word& w, size_t to_copy) const {
    Word out;
    out.reserve(w.size());
    for (const Letter& l : w)
      out.push_back({lay.gen(to_copy, lay.pos_of(l.gen)), l.sign});
    return out;
  }

  // Filling of [X, Y] (copy a) * ([X, Y]') ^-1 where ' moves every letter
  // to copy b. X and Y must be positive words in copy-a generators.
  Filling factor_swap(const Word& X, const Word& Y, size_t a,
                      size_t b) const {
    if (!all_positive(X) || !all_positive(Y))
      throw std::runtime_error("transform: factor words must be positive");
    std::vector<Piece> pieces;
    expand_pieces(X, Y, {}, pieces);
    std::vector<Filling> fills;
    std::vector<Word> targets;
    for (const Piece& pc : pieces) {
      size_t k = lay.pos_of(pc.x.gen), l = lay.pos_of(pc.y.gen);
      Word pa = commutator_word(Word{pc.x}, Word{pc.y});
      Word pb = retarget(pa, b);
      Word ca = pc.conj;
      Word cb = retarget(ca, b);
      targets.push_back(conjugated_word(cb, pb));
      Filling g;
      if (k == l) {
        // [x, x] on both sides; freely trivial.
        fills.push_back(g);
        continue;
      }
      int eps = k < l ? 1 : -1;
      if (eps < 0) std::swap(k, l);
      append_filling(g, conjugate_filling(copy_swap(a, b, k, l, eps), ca));
      append_filling(g, fill_cross_commutator(ca, pb, table));
      append_filling(g, block_past_letters(pb, cb));
      fills.push_back(std::move(g));
    }
    return prefix_conjugate_assembly(fills, targets);
  }
};

}  // namespace

CommutatorFormResult commutator_form_transform(const Presentation& pres) {
  Transformer tr(pres);
  const CopyLayout& lay = tr.lay;

  CommutatorFormResult out;
  out.pres.generators = pres.generators;
  out.pres.algebra = pres.algebra;
  out.pres.generator_logs = pres.generator_logs;

  auto emit_once = [&](const Word& w, const std::string& tag,
                       RelatorForm form) {
    if (!out.pres.find_relator(w))
      out.pres.add_relator_word(w, tag, std::move(form));
  };

  for (size_t m = 0; m < pres.relators.size(); ++m) {
    const std::string tag = m < pres.tags.size() ? pres.tags[m] : "";
    const Word& old = pres.relators[m];
    RelatorRewrite rw;
    rw.source = m;

    if (tag == "product") {
      rw.replacement = old;
      emit_once(old, tag, tr.need_form(m));
    } else if (tag == "center") {
      const RelatorForm& f = tr.need_form(m);
      InterleaveResult il = interleave(pres, f.factors);
      rw.replacement = il.word;
      rw.witness = std::move(il.witness);
      emit_once(rw.replacement, tag,
                RelatorForm{{RelatorFactor{
                    concat(f.factors[0].x, f.factors[1].x),
                    concat(f.factors[0].y, f.factors[1].y)}}});
    } else if (tag == "nilp") {
      // [u, I] is derived from a center cell trading I for its copy-mate I'
      // plus commutation of u with I': conj_u(swap) * [u, I'] * swap^-1.
      const RelatorForm& f = tr.need_form(m);
      Letter u = f.factors[0].x[0];
      const Word& inner = f.factors[0].y;
      size_t i = lay.copy_of(u.gen);
      size_t i2 = (i + 1) % lay.copies;
      size_t k = lay.pos_of(inner[0].gen), l = lay.pos_of(inner[1].gen);
      Filling swap = tr.copy_swap(i, i2, k, l, 1);
      Word inner2 = tr.retarget(inner, i2);
      Filling w;
      append_filling(w, conjugate_filling(swap, Word{u}));
      append_filling(w, fill_cross_commutator(Word{u}, inner2, tr.table));
      append_filling(w, invert_filling(swap));
      rw.witness = std::move(w);
      for (const Cell& c : rw.witness.cells) {
        const std::string& ct = pres.tags[c.relator];
        if (ct != "center" && ct != "product")
          throw std::runtime_error("transform: circular nilpotency witness");
      }
    } else if (tag == "orig") {
      const RelatorForm& f = tr.need_form(m);
      if (f.factors.size() > lay.copies)
        throw std::runtime_error("transform: more factors than copies");
      size_t i = lay.copy_of(old[0].gen);
      std::vector<Filling> fills;
      std::vector<Word> targets;
      std::vector<RelatorFactor> mixed;
      for (size_t t = 0; t < f.factors.size(); ++t) {
        const RelatorFactor& fac = f.factors[t];
        mixed.push_back({tr.retarget(fac.x, t), tr.retarget(fac.y, t)});
        targets.push_back(commutator_word(mixed[t].x, mixed[t].y));
        fills.push_back(t == i ? Filling{}
                               : tr.factor_swap(fac.x, fac.y, i, t));
      }
      Filling w = prefix_conjugate_assembly(fills, targets);
      InterleaveResult il = interleave(pres, mixed);
      append_filling(w, il.witness);
      rw.replacement = il.word;
      rw.witness = std::move(w);
      Word px, py;
      for (const RelatorFactor& fac : mixed) {
        px = concat(px, fac.x);
        py = concat(py, fac.y);
      }
      emit_once(rw.replacement, tag, RelatorForm{{RelatorFactor{px, py}}});
    } else {
      throw std::runtime_error("transform: unexpected relator tag \"" + tag +
                               "\"");
    }

    if (!verify_filling(concat(old, inverse_word(rw.replacement)), rw.witness,
                        pres.relators))
      throw std::runtime_error("transform: witness for relator " +
                               std::to_string(m) + " failed verification");
    out.rewrites.push_back(std::move(rw));
  }
  return out;
}

}  // namespace nilfill
