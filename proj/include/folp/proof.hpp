#pragma once
// Hilbert-style derivations under a constant specification, and their
// verification.  A derivation carries named hypotheses, a constant
// specification, a line list, and a goal; check() replays it line by line.
//
// Rule restrictions enforced by check():
//   * generalization over x is legal only when x is not free in any
//     hypothesis the cited line depends on (dependence is tracked per line);
//   * necessitation cites a line whose justification is literally an axiom
//     (the justification tag, not a re-match of the formula).

#include <string>
#include <vector>

#include "folp/ast.hpp"
#include "folp/axioms.hpp"

namespace folp {

// Constant specification: finitely many entries c |- F, standing for the
// closed assertions [c]{} F.  Every F must itself be an axiom instance; the
// two flags are caller declarations (variant closure can be spot-checked by
// validate_cs, axiomatical appropriateness is declared, never checked).
class ConstantSpec {
 public:
  struct Entry {
    std::string constant;
    Formula formula;
  };

  void add(std::string constant, Formula f);
  bool contains(const std::string& constant, const Formula& f) const;
  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  bool variant_closed = false;
  bool axiomatically_appropriate = false;

 private:
  std::vector<Entry> entries_;  // insertion order; duplicates collapse
};

struct CsIssue {
  enum class Kind { NonAxiomEntry, MissingVariant };
  Kind kind;
  std::string constant;
  Formula formula;  // offending entry (NonAxiomEntry) or missing variant
  std::string message;
};

// Checks every entry for axiom-ness and, when the spec declares itself
// variant-closed, closure under free-variable renamings into the given
// variable universe.
std::vector<CsIssue> validate_cs(const ConstantSpec& cs, const VarSet& universe);

struct Justification {
  enum class Kind { Axiom, Cs, Hyp, Mp, Gen, Nec };
  Kind kind = Kind::Axiom;
  SchemaId schema = SchemaId::A0_TAUT;  // Axiom
  std::string constant;                 // Cs
  std::string hyp;                      // Hyp
  std::string ref1, ref2;               // Mp cites two lines; Gen/Nec cite ref1
  Var gen_var;                          // Gen

  static Justification axiom(SchemaId id);
  static Justification cs(std::string constant);
  static Justification hyp_ref(std::string label);
  static Justification mp(std::string imp_line, std::string arg_line);
  static Justification gen(Var x, std::string line);
  static Justification nec(std::string line);
  std::string to_string() const;
};

struct Line {
  std::string label;
  Formula formula;
  Justification just;
};

struct Hypothesis {
  std::string label;
  Formula formula;
};

struct Derivation {
  std::vector<Hypothesis> hyps;
  ConstantSpec cs;
  std::vector<Line> lines;
  Formula goal;  // must equal the last line's formula
};

struct LineVerdict {
  std::string label;
  bool ok = true;
  std::string message;
  std::vector<std::string> depends_on;  // hypothesis labels this line rests on
};

struct CheckReport {
  bool ok = false;
  std::string message;               // derivation-level problem, if any
  std::vector<LineVerdict> lines;    // one per line, in order
  std::string first_bad;             // label of the first failing line, if any
};

CheckReport check(const Derivation& d);

}  // namespace folp
