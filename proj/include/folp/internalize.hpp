#pragma once
// Internalization: converts a checked derivation of F into a derivation of
// [t]{X} F whose evidence term t records the proof structure.  Hypotheses
// must carry certificates [s]{X_i} G_i; X is the union of their index sets.
// Axiom and necessitation steps are discharged by extending the constant
// specification with fresh constants.

#include "folp/proof.hpp"

namespace folp {

struct Internalized {
  Term term;              // composed evidence term for the conclusion
  VarSet index;           // X, the union of the hypothesis index sets
  Derivation derivation;  // checks; goal is [term]{X} <input conclusion>
};

// Requires every hypothesis to be certificate-shaped [s]{X_i} G_i; the output
// derivation keeps those hypotheses.  Throws Error{Input} when the input does
// not check, a hypothesis has the wrong shape, or a generalization step binds
// a variable of X.
Internalized internalize_just(const Derivation& d);

// General form: first replaces every hypothesis G_i by a fresh certificate
// [p]{FV(G_i)} G_i, then internalizes as above.
Internalized internalize(const Derivation& d);

}  // namespace folp
