#pragma once

#include "nilfill/algebra_presets.hpp"
#include "nilfill/presentation.hpp"

namespace nilfill {

// Integer Heisenberg group: a1, a2 and a named central generator c, with
// [a1, a2] = c and c central. The model maps c to the layer-2 basis vector,
// so this presentation is deliberately not layer-1 compatible.
Presentation h3_presentation();

// Rank-5 Heisenberg group H_5 (two Heisenberg blocks sharing the center),
// with the glue relator written as a product of two commutators.
Presentation h5_raw();

// Same group, glue relator interleaved into a single commutator [a1b2, a2b1].
Presentation h5_commutator_form();

// Free class-2 group on d generators: relators [ai, [aj, ak]].
Presentation free_class2_presentation(size_t d);

// Five generators a..e with six commuting pairs and two mixed-word
// commutator relators; the model is the class-3 rank-8 algebra.
Presentation class3_rank8_presentation();

// Heisenberg group over a division algebra; relators pair up the commutators
// that share an imaginary direction.
Presentation division_heisenberg_presentation(DivisionKind kind);

// Central square of the free class-2 group on ten generators, quotiented by
// the single central element [a1,a2][a3,a4][a5,a6][a7,a8][a9,a10]. The
// quotient word is appended as a relator tagged "quotient".
Presentation sapir_quotient_presentation();

// Lookup by name: h3, h5_raw, h5_commutator_form, free_class2(d),
// class3_rank8_relators, complex_heisenberg, quaternion_heisenberg,
// octonion_heisenberg, sapir_quotient. Throws on anything else.
Presentation builtin_presentation(const std::string& name);

}  // namespace nilfill
