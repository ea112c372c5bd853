#include "folp/ast.hpp"

#include <algorithm>

namespace folp {

// --- VarSet -----------------------------------------------------------------

void VarSet::insert(const Var& v) {
  auto it = std::lower_bound(items_.begin(), items_.end(), v);
  if (it == items_.end() || *it != v) items_.insert(it, v);
}

void VarSet::erase(const Var& v) {
  auto it = std::lower_bound(items_.begin(), items_.end(), v);
  if (it != items_.end() && *it == v) items_.erase(it);
}

bool VarSet::contains(const Var& v) const {
  return std::binary_search(items_.begin(), items_.end(), v);
}

VarSet VarSet::united(const VarSet& o) const {
  VarSet r = *this;
  for (const auto& v : o) r.insert(v);
  return r;
}

VarSet VarSet::minus(const VarSet& o) const {
  VarSet r;
  for (const auto& v : items_)
    if (!o.contains(v)) r.insert(v);
  return r;
}

VarSet VarSet::intersect(const VarSet& o) const {
  VarSet r;
  for (const auto& v : items_)
    if (o.contains(v)) r.insert(v);
  return r;
}

bool VarSet::subset_of(const VarSet& o) const {
  for (const auto& v : items_)
    if (!o.contains(v)) return false;
  return true;
}

int compare(const VarSet& a, const VarSet& b) {
  size_t n = std::min(a.items_.size(), b.items_.size());
  for (size_t i = 0; i < n; ++i) {
    if (a.items_[i] < b.items_[i]) return -1;
    if (b.items_[i] < a.items_[i]) return 1;
  }
  if (a.items_.size() < b.items_.size()) return -1;
  if (a.items_.size() > b.items_.size()) return 1;
  return 0;
}

// --- Term -------------------------------------------------------------------

Term Term::make(Node n) {
  Term t;
  t.n_ = std::make_shared<const Node>(std::move(n));
  return t;
}

Term Term::jvar(std::string name) { return make({Kind::JVar, std::move(name), {}, {}}); }
Term Term::jconst(std::string name) { return make({Kind::JConst, std::move(name), {}, {}}); }
Term Term::app(Term fn, Term arg) { return make({Kind::App, {}, std::move(fn), std::move(arg)}); }
Term Term::sum(Term lhs, Term rhs) { return make({Kind::Sum, {}, std::move(lhs), std::move(rhs)}); }
Term Term::bang(Term inner) { return make({Kind::Bang, {}, std::move(inner), {}}); }
Term Term::gen(Var index, Term inner) {
  return make({Kind::Gen, std::move(index), std::move(inner), {}});
}

int compare(const Term& a, const Term& b) {
  if (a.n_ == b.n_) return 0;
  if (!a.n_) return -1;
  if (!b.n_) return 1;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  if (int c = a.n_->name.compare(b.n_->name)) return c < 0 ? -1 : 1;
  if (int c = compare(a.n_->a, b.n_->a)) return c;
  return compare(a.n_->b, b.n_->b);
}

// --- Formula ----------------------------------------------------------------

Formula Formula::make(Node n) {
  Formula f;
  f.n_ = std::make_shared<const Node>(std::move(n));
  return f;
}

Formula Formula::atom(std::string pred, std::vector<Var> args) {
  Node n;
  n.kind = Kind::Atom;
  n.pred = std::move(pred);
  n.args = std::move(args);
  return make(std::move(n));
}
Formula Formula::lnot(Formula f) {
  Node n;
  n.kind = Kind::Not;
  n.a = std::move(f);
  return make(std::move(n));
}
Formula Formula::land(Formula a, Formula b) {
  Node n;
  n.kind = Kind::And;
  n.a = std::move(a);
  n.b = std::move(b);
  return make(std::move(n));
}
Formula Formula::lor(Formula a, Formula b) {
  Node n;
  n.kind = Kind::Or;
  n.a = std::move(a);
  n.b = std::move(b);
  return make(std::move(n));
}
Formula Formula::imp(Formula a, Formula b) {
  Node n;
  n.kind = Kind::Imp;
  n.a = std::move(a);
  n.b = std::move(b);
  return make(std::move(n));
}
Formula Formula::iff(Formula a, Formula b) {
  Node n;
  n.kind = Kind::Iff;
  n.a = std::move(a);
  n.b = std::move(b);
  return make(std::move(n));
}
Formula Formula::forall(Var x, Formula body) {
  Node n;
  n.kind = Kind::Forall;
  n.pred = std::move(x);
  n.a = std::move(body);
  return make(std::move(n));
}
Formula Formula::exists(Var x, Formula body) {
  Node n;
  n.kind = Kind::Exists;
  n.pred = std::move(x);
  n.a = std::move(body);
  return make(std::move(n));
}
Formula Formula::box(VarSet index, Formula body) {
  Node n;
  n.kind = Kind::Box;
  n.index = std::move(index);
  n.a = std::move(body);
  return make(std::move(n));
}
Formula Formula::just(Term t, VarSet index, Formula body) {
  Node n;
  n.kind = Kind::Just;
  n.term = std::move(t);
  n.index = std::move(index);
  n.a = std::move(body);
  return make(std::move(n));
}

int compare(const Formula& a, const Formula& b) {
  if (a.n_ == b.n_) return 0;
  if (!a.n_) return -1;
  if (!b.n_) return 1;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  if (int c = a.n_->pred.compare(b.n_->pred)) return c < 0 ? -1 : 1;
  if (a.n_->args != b.n_->args) return a.n_->args < b.n_->args ? -1 : 1;
  if (int c = compare(a.n_->index, b.n_->index)) return c;
  if (int c = compare(a.n_->term, b.n_->term)) return c;
  if (int c = compare(a.n_->a, b.n_->a)) return c;
  return compare(a.n_->b, b.n_->b);
}

VarSet free_vars(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return VarSet::from(f.args());
    case Formula::Kind::Not:
      return free_vars(f.child());
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp:
    case Formula::Kind::Iff:
      return free_vars(f.lhs()).united(free_vars(f.rhs()));
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      VarSet s = free_vars(f.child());
      s.erase(f.bound_var());
      return s;
    }
    case Formula::Kind::Box:
    case Formula::Kind::Just:
      return f.index();
  }
  throw Error(Error::Kind::Internal, "free_vars: bad kind");
}

// --- Renaming ---------------------------------------------------------------

std::string CaptureError::to_string() const {
  return "renaming variable '" + renamed + "' collides with binding occurrence of '" + binder + "'";
}

static const Var& sigma_hat(const VarRenaming& s, const Var& v) {
  auto it = s.find(v);
  return it == s.end() ? v : it->second;
}

static std::optional<Formula> rename_free(const Formula& f, const VarRenaming& s,
                                          CaptureError* err) {
  if (s.empty()) return f;
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      std::vector<Var> args;
      args.reserve(f.args().size());
      for (const auto& v : f.args()) args.push_back(sigma_hat(s, v));
      return Formula::atom(f.pred(), std::move(args));
    }
    case Formula::Kind::Not: {
      auto c = rename_free(f.child(), s, err);
      if (!c) return std::nullopt;
      return Formula::lnot(*c);
    }
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp:
    case Formula::Kind::Iff: {
      auto a = rename_free(f.lhs(), s, err);
      if (!a) return std::nullopt;
      auto b = rename_free(f.rhs(), s, err);
      if (!b) return std::nullopt;
      switch (f.kind()) {
        case Formula::Kind::And: return Formula::land(*a, *b);
        case Formula::Kind::Or: return Formula::lor(*a, *b);
        case Formula::Kind::Imp: return Formula::imp(*a, *b);
        default: return Formula::iff(*a, *b);
      }
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      const Var& x = f.bound_var();
      VarRenaming inner = s;
      inner.erase(x);
      VarSet fv = free_vars(f.child());
      for (const auto& [from, to] : inner) {
        if (to == x && from != x && fv.contains(from)) {
          if (err) *err = {x, from};
          return std::nullopt;
        }
      }
      auto c = rename_free(f.child(), inner, err);
      if (!c) return std::nullopt;
      return f.kind() == Formula::Kind::Forall ? Formula::forall(x, *c)
                                               : Formula::exists(x, *c);
    }
    case Formula::Kind::Box:
    case Formula::Kind::Just: {
      const VarSet& X = f.index();
      VarSet bound = free_vars(f.child()).minus(X);
      VarSet newX;
      for (const auto& x : X) {
        const Var& y = sigma_hat(s, x);
        if (bound.contains(y)) {
          if (err) *err = {y, x};
          return std::nullopt;
        }
        newX.insert(y);
      }
      VarRenaming inner;
      for (const auto& [from, to] : s)
        if (X.contains(from)) inner.emplace(from, to);
      auto c = rename_free(f.child(), inner, err);
      if (!c) return std::nullopt;
      return f.kind() == Formula::Kind::Box
                 ? Formula::box(std::move(newX), *c)
                 : Formula::just(f.term(), std::move(newX), *c);
    }
  }
  throw Error(Error::Kind::Internal, "rename: bad kind");
}

std::optional<Formula> try_rename(const Formula& f, const VarRenaming& s, CaptureError* err) {
  return rename_free(f, s, err);
}

Formula rename(const Formula& f, const VarRenaming& s) {
  CaptureError err;
  auto r = rename_free(f, s, &err);
  if (!r) throw Error(Error::Kind::Capture, err.to_string());
  return *r;
}

Term rename_all(const Term& t, const VarRenaming& s) {
  if (s.empty()) return t;
  switch (t.kind()) {
    case Term::Kind::JVar:
    case Term::Kind::JConst:
      return t;
    case Term::Kind::App:
      return Term::app(rename_all(t.left(), s), rename_all(t.right(), s));
    case Term::Kind::Sum:
      return Term::sum(rename_all(t.left(), s), rename_all(t.right(), s));
    case Term::Kind::Bang:
      return Term::bang(rename_all(t.inner(), s));
    case Term::Kind::Gen:
      return Term::gen(sigma_hat(s, t.gen_index()), rename_all(t.inner(), s));
  }
  throw Error(Error::Kind::Internal, "rename_all: bad term kind");
}

std::optional<Formula> try_rename_all(const Formula& f, const VarRenaming& s, CaptureError* err) {
  if (s.empty()) return f;
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      std::vector<Var> args;
      args.reserve(f.args().size());
      for (const auto& v : f.args()) args.push_back(sigma_hat(s, v));
      return Formula::atom(f.pred(), std::move(args));
    }
    case Formula::Kind::Not: {
      auto c = try_rename_all(f.child(), s, err);
      if (!c) return std::nullopt;
      return Formula::lnot(*c);
    }
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp:
    case Formula::Kind::Iff: {
      auto a = try_rename_all(f.lhs(), s, err);
      if (!a) return std::nullopt;
      auto b = try_rename_all(f.rhs(), s, err);
      if (!b) return std::nullopt;
      switch (f.kind()) {
        case Formula::Kind::And: return Formula::land(*a, *b);
        case Formula::Kind::Or: return Formula::lor(*a, *b);
        case Formula::Kind::Imp: return Formula::imp(*a, *b);
        default: return Formula::iff(*a, *b);
      }
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      const Var& x = f.bound_var();
      const Var& x2 = sigma_hat(s, x);
      VarSet fv = free_vars(f.child());
      fv.erase(x);
      for (const auto& u : fv) {
        if (sigma_hat(s, u) == x2) {
          if (err) *err = {x2, u};
          return std::nullopt;
        }
      }
      auto c = try_rename_all(f.child(), s, err);
      if (!c) return std::nullopt;
      return f.kind() == Formula::Kind::Forall ? Formula::forall(x2, *c)
                                               : Formula::exists(x2, *c);
    }
    case Formula::Kind::Box:
    case Formula::Kind::Just: {
      const VarSet& X = f.index();
      VarSet newX;
      for (const auto& x : X) newX.insert(sigma_hat(s, x));
      for (const auto& u : free_vars(f.child()).minus(X)) {
        if (newX.contains(sigma_hat(s, u))) {
          if (err) *err = {sigma_hat(s, u), u};
          return std::nullopt;
        }
      }
      auto c = try_rename_all(f.child(), s, err);
      if (!c) return std::nullopt;
      return f.kind() == Formula::Kind::Box
                 ? Formula::box(std::move(newX), *c)
                 : Formula::just(rename_all(f.term(), s), std::move(newX), *c);
    }
  }
  throw Error(Error::Kind::Internal, "rename_all: bad kind");
}

// --- subst_jvar -------------------------------------------------------------

Term subst_jvar(const Term& t, const std::string& p, const Term& by) {
  switch (t.kind()) {
    case Term::Kind::JVar:
      return t.name() == p ? by : t;
    case Term::Kind::JConst:
      return t;
    case Term::Kind::App:
      return Term::app(subst_jvar(t.left(), p, by), subst_jvar(t.right(), p, by));
    case Term::Kind::Sum:
      return Term::sum(subst_jvar(t.left(), p, by), subst_jvar(t.right(), p, by));
    case Term::Kind::Bang:
      return Term::bang(subst_jvar(t.inner(), p, by));
    case Term::Kind::Gen:
      return Term::gen(t.gen_index(), subst_jvar(t.inner(), p, by));
  }
  throw Error(Error::Kind::Internal, "subst_jvar: bad term kind");
}

Formula subst_jvar(const Formula& f, const std::string& p, const Term& by) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return f;
    case Formula::Kind::Not:
      return Formula::lnot(subst_jvar(f.child(), p, by));
    case Formula::Kind::And:
      return Formula::land(subst_jvar(f.lhs(), p, by), subst_jvar(f.rhs(), p, by));
    case Formula::Kind::Or:
      return Formula::lor(subst_jvar(f.lhs(), p, by), subst_jvar(f.rhs(), p, by));
    case Formula::Kind::Imp:
      return Formula::imp(subst_jvar(f.lhs(), p, by), subst_jvar(f.rhs(), p, by));
    case Formula::Kind::Iff:
      return Formula::iff(subst_jvar(f.lhs(), p, by), subst_jvar(f.rhs(), p, by));
    case Formula::Kind::Forall:
      return Formula::forall(f.bound_var(), subst_jvar(f.child(), p, by));
    case Formula::Kind::Exists:
      return Formula::exists(f.bound_var(), subst_jvar(f.child(), p, by));
    case Formula::Kind::Box:
      return Formula::box(f.index(), subst_jvar(f.child(), p, by));
    case Formula::Kind::Just:
      return Formula::just(subst_jvar(f.term(), p, by), f.index(),
                           subst_jvar(f.child(), p, by));
  }
  throw Error(Error::Kind::Internal, "subst_jvar: bad kind");
}

// --- desugar ----------------------------------------------------------------

Formula desugar(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return f;
    case Formula::Kind::Not:
      return Formula::lnot(desugar(f.child()));
    case Formula::Kind::And:
      return Formula::land(desugar(f.lhs()), desugar(f.rhs()));
    case Formula::Kind::Or:
      // A | B  ==>  ~(~A & ~B)
      return Formula::lnot(Formula::land(Formula::lnot(desugar(f.lhs())),
                                         Formula::lnot(desugar(f.rhs()))));
    case Formula::Kind::Imp:
      // A -> B  ==>  ~(A & ~B)
      return Formula::lnot(Formula::land(desugar(f.lhs()), Formula::lnot(desugar(f.rhs()))));
    case Formula::Kind::Iff:
      // A <-> B  ==>  ~(A & ~B) & ~(B & ~A)
      return Formula::land(desugar(Formula::imp(f.lhs(), f.rhs())),
                           desugar(Formula::imp(f.rhs(), f.lhs())));
    case Formula::Kind::Forall:
      return Formula::forall(f.bound_var(), desugar(f.child()));
    case Formula::Kind::Exists:
      // exists x. A  ==>  ~ forall x. ~A
      return Formula::lnot(Formula::forall(f.bound_var(), Formula::lnot(desugar(f.child()))));
    case Formula::Kind::Box:
      return Formula::box(f.index(), desugar(f.child()));
    case Formula::Kind::Just:
      return Formula::just(f.term(), f.index(), desugar(f.child()));
  }
  throw Error(Error::Kind::Internal, "desugar: bad kind");
}

}  // namespace folp
