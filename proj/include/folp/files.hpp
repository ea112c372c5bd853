#pragma once
// Line-oriented file formats for derivations and models.
//
// Proof files:
//   proof
//   hyp <label>: <formula>
//   cs <constant>: <formula>
//   declare variant_closed | axiomatically_appropriate
//   <label>. <formula> <justification>
//   qed <formula>
// with justifications: axiom <SCHEMA> | cs <c> | hyp <l> | mp <i> <j> |
// gen <x> <i> | nec <i> | necx {<vars>} <i>.  necx is a loader macro: it
// expands into a necessitation step followed by an index-lifting chain with
// sublabels <n>.a, <n>.b, ...; the final line carries the user's label and
// formula.  '#' starts a comment; blank lines are ignored.
//
// Model files:
//   model
//   worlds: w, u
//   access: w -> u, v
//   domain w: a, b
//   pred P1 @ w: (a), (a, b)
//   evidence <leaf-term> : <formula> @ {x=a, ...} : w, u
//   cs <constant> : <formula>
//   end

#include <string>

#include "folp/model.hpp"
#include "folp/proof.hpp"

namespace folp {

Derivation load_proof(const std::string& text);
std::string print_proof(const Derivation& d);

FiniteModel load_model(const std::string& text);

}  // namespace folp
