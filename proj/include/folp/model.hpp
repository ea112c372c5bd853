#pragma once
// Finite epistemic models: an S4 frame with monotone first-order domains, a
// world-indexed interpretation of predicates, a basic evidence table and a
// constant specification.  Evaluation is guarded: a formula can only be true
// at a world where the valuation lands inside the world's domain.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "folp/ast.hpp"
#include "folp/proof.hpp"

namespace folp {

using World = std::string;
using Obj = std::string;

// Finite individual valuation (assignment of objects to variables).
using Valuation = std::map<Var, Obj>;

Valuation restrict_to(const Valuation& f, const VarSet& X);
bool subvaluation(const Valuation& small, const Valuation& big);
std::string print_valuation(const Valuation& f);

// Basic evidence table: worlds assigned to triples (leaf term, formula,
// valuation).  Only justification variables and constants may be keyed.
class BasicEvidence {
 public:
  struct Triple {
    Term term;
    Formula formula;
    Valuation val;
    friend bool operator<(const Triple& a, const Triple& b) {
      if (int c = compare(a.term, b.term)) return c < 0;
      if (int c = compare(a.formula, b.formula)) return c < 0;
      return a.val < b.val;
    }
  };

  // Overwrites any previous entry for the same triple.
  void set(const Term& t, const Formula& f, const Valuation& val, std::set<World> worlds);
  const std::set<World>* find(const Term& t, const Formula& f, const Valuation& val) const;
  const std::map<Triple, std::set<World>>& table() const { return table_; }
  bool empty() const { return table_.empty(); }

 private:
  std::map<Triple, std::set<World>> table_;
};

struct FiniteModel {
  std::set<World> worlds;
  std::map<World, std::set<World>> access;  // w -> successors (R)
  std::map<World, std::set<Obj>> domain;    // w -> D_w
  std::map<std::string, size_t> pred_arity;
  // pred -> world -> set of tuples
  std::map<std::string, std::map<World, std::set<std::vector<Obj>>>> interp;
  BasicEvidence basic;
  ConstantSpec cs;

  std::set<Obj> objects() const;  // D, the union of all world domains
  bool has_world(const World& w) const { return worlds.count(w) != 0; }
  bool in_domain(const World& w, const Obj& o) const;
  bool related(const World& w, const World& u) const;
  const std::set<World>& successors(const World& w) const;
  bool atom_holds(const std::string& pred, const World& w, const std::vector<Obj>& tuple) const;
};

// Frame and typing checks: non-empty reflexive-transitive frame, non-empty
// monotone domains, well-typed interpretation and evidence table, axiom
// entries in the constant specification.  Returns itemized findings.
std::vector<std::string> validate_model(const FiniteModel& m);

// Reflexive-transitive closure of the accessibility relation.
FiniteModel rt_closure(FiniteModel m);

struct EvalLimits {
  size_t max_box_vars = 6;  // width of the modal quantifier prefix
  size_t max_domain = 8;    // |D|
};

class EvidenceOracle;

// Truth at a world.  Throws Error{Resource} beyond the limits and
// Error{UnknownWorld} for worlds outside the model.
bool eval_at(const FiniteModel& m, const EvidenceOracle& ev, const World& w,
             const Valuation& nu, const Formula& f, const EvalLimits& lim = {});

// Truth in (model, valuation): true at every world where nu covers FV(f)
// inside the domain.
bool holds(const FiniteModel& m, const EvidenceOracle& ev, const Valuation& nu,
           const Formula& f, const EvalLimits& lim = {});

struct ValidityResult {
  bool valid = true;
  bool has_witness = false;
  Valuation witness;  // first refuting valuation in enumeration order
  World world;        // first world where it fails
};

// Truth under every valuation of FV(f) into D.  Enumeration order (variables
// sorted, objects sorted) fixes the reported witness deterministically.
ValidityResult valid_in_model(const FiniteModel& m, const EvidenceOracle& ev,
                              const Formula& f, const EvalLimits& lim = {});

}  // namespace folp
