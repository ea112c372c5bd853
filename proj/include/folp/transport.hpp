#pragma once
// Transport: renames the individual variables of a checked derivation.  The
// renaming is restricted to the variables free in the statement (hypotheses
// and conclusion); purely internal variables keep their names.  Constant
// specification lines whose certified formula changes require the
// specification to be declared closed under variants and to contain the
// renamed entry.

#include "folp/proof.hpp"

namespace folp {

// Throws Error{Input} when a renaming step captures, a needed constant
// specification variant is unavailable, or the renamed derivation no longer
// checks (a collapsing renaming can break side conditions).
Derivation transport(const Derivation& d, const VarRenaming& sigma);

}  // namespace folp
