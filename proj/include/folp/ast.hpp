#pragma once
// Abstract syntax for the object language: justification terms and formulas
// with binding modalities.  Terms and formulas are immutable values sharing
// subtrees; all operations are pure.

#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace folp {

using Var = std::string;  // individual variable, ordered lexicographically

class Error : public std::runtime_error {
 public:
  enum class Kind {
    Lexical,
    Syntax,
    Arity,
    Capture,
    Uncovered,
    UnknownWorld,
    Resource,
    Input,
    Refused,  // the operation is well-posed but undefined for this input
    Internal,
  };
  Error(Kind k, std::string msg) : std::runtime_error(std::move(msg)), kind(k) {}
  Kind kind;
};

// Finite set of individual variables kept sorted; iteration order is the
// canonical (lexicographic) order used everywhere for printing and hashing.
class VarSet {
 public:
  VarSet() = default;
  VarSet(std::initializer_list<Var> vs) {
    for (const auto& v : vs) insert(v);
  }
  static VarSet from(const std::vector<Var>& vs) {
    VarSet s;
    for (const auto& v : vs) s.insert(v);
    return s;
  }

  void insert(const Var& v);
  void erase(const Var& v);
  bool contains(const Var& v) const;
  bool empty() const { return items_.empty(); }
  size_t size() const { return items_.size(); }

  VarSet united(const VarSet& o) const;
  VarSet minus(const VarSet& o) const;
  VarSet intersect(const VarSet& o) const;
  bool subset_of(const VarSet& o) const;

  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  const std::vector<Var>& items() const { return items_; }

  friend int compare(const VarSet& a, const VarSet& b);
  friend bool operator==(const VarSet& a, const VarSet& b) { return a.items_ == b.items_; }
  friend bool operator!=(const VarSet& a, const VarSet& b) { return a.items_ != b.items_; }
  friend bool operator<(const VarSet& a, const VarSet& b) { return compare(a, b) < 0; }

 private:
  std::vector<Var> items_;  // sorted, unique
};

// Justification term.  Gen carries a variable index that is *not* an
// occurrence of the variable: terms never contain individual variables.
class Term {
 public:
  enum class Kind { JVar, JConst, App, Sum, Bang, Gen };

  Term() = default;  // empty handle; valid() is false

  static Term jvar(std::string name);
  static Term jconst(std::string name);
  static Term app(Term fn, Term arg);
  static Term sum(Term lhs, Term rhs);
  static Term bang(Term inner);
  static Term gen(Var index, Term inner);

  Kind kind() const;
  const std::string& name() const;  // JVar, JConst
  const Var& gen_index() const;     // Gen
  const Term& left() const;         // App, Sum
  const Term& right() const;        // App, Sum
  const Term& inner() const;        // Bang, Gen
  bool valid() const { return n_ != nullptr; }

  friend int compare(const Term& a, const Term& b);
  friend bool operator==(const Term& a, const Term& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Term& a, const Term& b) { return compare(a, b) != 0; }
  friend bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }

 private:
  struct Node;
  std::shared_ptr<const Node> n_;
  static Term make(Node n);
};

struct Term::Node {
  Kind kind;
  std::string name;  // JVar/JConst name or Gen index
  Term a, b;
};

inline Term::Kind Term::kind() const { return n_->kind; }
inline const std::string& Term::name() const { return n_->name; }
inline const Var& Term::gen_index() const { return n_->name; }
inline const Term& Term::left() const { return n_->a; }
inline const Term& Term::right() const { return n_->b; }
inline const Term& Term::inner() const { return n_->a; }

// Formula.  Box and Just carry an explicit index set X of variables that
// remain free in the body; every other body variable is bound by the
// modality.  The free variables of box{X} F and [t]{X} F are exactly X.
class Formula {
 public:
  enum class Kind { Atom, Not, And, Or, Imp, Iff, Forall, Exists, Box, Just };

  Formula() = default;  // empty handle; valid() is false

  static Formula atom(std::string pred, std::vector<Var> args);
  static Formula lnot(Formula f);
  static Formula land(Formula a, Formula b);
  static Formula lor(Formula a, Formula b);
  static Formula imp(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula forall(Var x, Formula body);
  static Formula exists(Var x, Formula body);
  static Formula box(VarSet index, Formula body);
  static Formula just(Term t, VarSet index, Formula body);

  Kind kind() const;
  const std::string& pred() const;       // Atom
  const std::vector<Var>& args() const;  // Atom
  const Var& bound_var() const;          // Forall, Exists
  const VarSet& index() const;           // Box, Just
  const Term& term() const;              // Just
  const Formula& child() const;          // Not, Forall, Exists, Box, Just
  const Formula& lhs() const;            // And, Or, Imp, Iff
  const Formula& rhs() const;            // And, Or, Imp, Iff
  bool valid() const { return n_ != nullptr; }
  bool is_binary() const {
    Kind k = kind();
    return k == Kind::And || k == Kind::Or || k == Kind::Imp || k == Kind::Iff;
  }

  friend int compare(const Formula& a, const Formula& b);
  friend bool operator==(const Formula& a, const Formula& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Formula& a, const Formula& b) { return compare(a, b) != 0; }
  friend bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

 private:
  struct Node;
  std::shared_ptr<const Node> n_;
  static Formula make(Node n);
};

struct Formula::Node {
  Kind kind;
  std::string pred;  // Atom predicate or quantifier bound variable
  std::vector<Var> args;
  VarSet index;
  Term term;
  Formula a, b;
};

inline Formula::Kind Formula::kind() const { return n_->kind; }
inline const std::string& Formula::pred() const { return n_->pred; }
inline const std::vector<Var>& Formula::args() const { return n_->args; }
inline const Var& Formula::bound_var() const { return n_->pred; }
inline const VarSet& Formula::index() const { return n_->index; }
inline const Term& Formula::term() const { return n_->term; }
inline const Formula& Formula::child() const { return n_->a; }
inline const Formula& Formula::lhs() const { return n_->a; }
inline const Formula& Formula::rhs() const { return n_->b; }

VarSet free_vars(const Formula& f);

// Variable-for-variable substitution, applied simultaneously.
using VarRenaming = std::map<Var, Var>;

struct CaptureError {
  Var binder;   // binding occurrence involved in the collision
  Var renamed;  // variable whose renaming collides with it
  std::string to_string() const;
};

// Renames free occurrences (including index sets); bound occurrences, binders
// and gen indices are untouched.  Fails when a renamed occurrence would fall
// under a binder on its target, or a bound occurrence would be released by an
// index-set rename.
std::optional<Formula> try_rename(const Formula& f, const VarRenaming& s,
                                  CaptureError* err = nullptr);
Formula rename(const Formula& f, const VarRenaming& s);  // throws Error{Capture}

// Renames *every* occurrence of the mapped variables: free occurrences,
// binders, index sets and gen indices.  Used to transport whole derivations;
// per-binder collision checks keep the result meaning-equivalent.
std::optional<Formula> try_rename_all(const Formula& f, const VarRenaming& s,
                                      CaptureError* err = nullptr);
Term rename_all(const Term& t, const VarRenaming& s);

// Replaces every occurrence of the justification variable p by a term.
Term subst_jvar(const Term& t, const std::string& p, const Term& by);
Formula subst_jvar(const Formula& f, const std::string& p, const Term& by);

// Rewrites Or, Imp, Iff, Exists into the And/Not/Forall core.
Formula desugar(const Formula& f);

}  // namespace folp
