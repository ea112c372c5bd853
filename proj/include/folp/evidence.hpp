#pragma once
// Evidence closure: the demand-driven completion of a basic evidence table to
// a full evidence function, an audit of the defining closure conditions, and
// an independent brute-force fixpoint oracle over an explicit key universe.
//
// The closure law: query(t, F, f) first restricts f to FV(F), computes a
// renaming-invariant result for the restricted triple, then intersects with
// the worlds whose domain covers the image of the original f.  All results
// are closed under the accessibility relation.

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "folp/model.hpp"

namespace folp {

// Renaming-invariant key: free occurrences of grounded variables print as
// #object, ungrounded free variables as $1, $2, ... numbered by first
// occurrence (bodies visited before index sets); bound structure is literal.
// Two queries with equal keys denote the same evidence set.
std::string canonical_key(const Term& t, const Formula& f, const Valuation& ground);

// Matches a candidate formula against the key pattern of (target, ground):
// candidate variables map onto key tokens (many-to-one onto grounded tokens,
// one-to-one onto ungrounded ones).  On success returns the valuation the
// grounded tokens induce on the candidate's variables.
std::optional<Valuation> match_to_key(const Formula& candidate, const Formula& target,
                                      const Valuation& ground);

struct EvidenceLimits {
  size_t max_candidate_vars = 4;  // extra antecedent variables ground over D
};

// Demand-driven evidence function over a finite model.  Thread-safe; results
// are memoized per canonical key.
class EvidenceOracle {
 public:
  explicit EvidenceOracle(const FiniteModel& m, EvidenceLimits lim = {});

  std::set<World> query(const Term& t, const Formula& f, const Valuation& val) const;
  size_t memo_size() const;

 private:
  std::set<World> restricted(const Term& t, const Formula& f, const Valuation& g) const;
  std::set<World> raw(const Term& t, const Formula& f, const Valuation& g) const;
  std::set<World> base_leaf(const Term& t, const Formula& f, const Valuation& g) const;
  std::set<World> app_rule(const Term& t, const Formula& f, const Valuation& g) const;

  const FiniteModel& m_;
  EvidenceLimits lim_;
  mutable std::map<std::string, std::set<World>> memo_;
  mutable std::set<std::string> in_progress_;
  mutable std::mutex mu_;
};

// Any evidence assignment, for auditing: hand-written tables as well as the
// oracle itself can be wrapped.
using EvidenceFn =
    std::function<std::set<World>(const Term&, const Formula&, const Valuation&)>;

struct EvidenceTriple {
  Term term;
  Formula formula;
  Valuation val;
  friend bool operator<(const EvidenceTriple& a, const EvidenceTriple& b) {
    if (int c = compare(a.term, b.term)) return c < 0;
    if (int c = compare(a.formula, b.formula)) return c < 0;
    return a.val < b.val;
  }
  std::string to_string() const;
};

struct AuditViolation {
  std::string condition;  // adequacy, substitution, r-closure, extension,
                          // restriction, application, sum, introspection,
                          // generalization, meets-cs, domain-closure
  std::string witness;    // human-readable counterexample
};

// Checks the basic table itself: downward closure of its domain and the five
// structural conditions (adequacy, substitution, closure under R, extension,
// restriction) restricted to that domain.
std::vector<AuditViolation> audit_basic(const FiniteModel& m);

// Explicit finite universe of triples used by the closure audit and by the
// brute-force oracle.
using ProbeUniverse = std::vector<EvidenceTriple>;

// Universe generation: every triple the closure rules can mention when
// queried at the roots, i.e. closed under subterm decomposition, candidate
// antecedents, sub- and super-valuations over the relevant variables, and
// modal/quantifier wrappers required by the introspection and
// generalization rules.  extra_vars join the valuation variable pool.
ProbeUniverse probe_universe(const FiniteModel& m,
                             const std::vector<EvidenceTriple>& roots,
                             const VarSet& extra_vars = {});

// Checks all nine closure conditions and meets-CS for an arbitrary evidence
// assignment by direct enumeration over the universe.
std::vector<AuditViolation> audit_closure(const FiniteModel& m, const EvidenceFn& ev,
                                          const ProbeUniverse& universe);

// Least fixpoint of the raw closure rules over the universe, seeded from the
// basic table and the constant specification.  Throws Error{Uncovered} when
// a rule needs a triple outside the universe.
std::map<EvidenceTriple, std::set<World>> brute_force_closure(const FiniteModel& m,
                                                              const ProbeUniverse& universe);

}  // namespace folp
