#include "folp/axioms.hpp"

#include <array>

#include "folp/parse.hpp"

namespace folp {

namespace {

const std::array<const char*, kSchemaCount> kNames = {
    "A0_TAUT", "A0_FORALL_INST", "A0_EXISTS_INST", "A0_FORALL_DISTR", "A0_EXISTS_DISTR",
    "A1",      "A1P",            "A2",             "A2P",             "A3",
    "A3P",     "A4",             "A4P",            "A5L",             "A5R",
    "A6",      "A6P",            "A7",             "A7P",             "A8"};

using Bindings = std::map<std::string, std::string>;

// --- propositional skeleton -------------------------------------------------

bool is_boolean_node(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Not:
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp:
    case Formula::Kind::Iff:
      return true;
    default:
      return false;
  }
}

// Assigns an atom id to every maximal non-boolean subformula; returns false
// when the cap is exceeded.
bool collect_atoms(const Formula& f, std::map<Formula, size_t>& atoms) {
  if (!is_boolean_node(f)) {
    if (atoms.emplace(f, atoms.size()).second && atoms.size() > kMaxTautAtoms) return false;
    return true;
  }
  if (f.kind() == Formula::Kind::Not) return collect_atoms(f.child(), atoms);
  return collect_atoms(f.lhs(), atoms) && collect_atoms(f.rhs(), atoms);
}

bool eval_skeleton(const Formula& f, const std::map<Formula, size_t>& atoms, uint32_t row) {
  if (!is_boolean_node(f)) return (row >> atoms.at(f)) & 1u;
  switch (f.kind()) {
    case Formula::Kind::Not:
      return !eval_skeleton(f.child(), atoms, row);
    case Formula::Kind::And:
      return eval_skeleton(f.lhs(), atoms, row) && eval_skeleton(f.rhs(), atoms, row);
    case Formula::Kind::Or:
      return eval_skeleton(f.lhs(), atoms, row) || eval_skeleton(f.rhs(), atoms, row);
    case Formula::Kind::Imp:
      return !eval_skeleton(f.lhs(), atoms, row) || eval_skeleton(f.rhs(), atoms, row);
    case Formula::Kind::Iff:
      return eval_skeleton(f.lhs(), atoms, row) == eval_skeleton(f.rhs(), atoms, row);
    default:
      throw Error(Error::Kind::Internal, "eval_skeleton");
  }
}

std::optional<Bindings> match_taut(const Formula& f) {
  if (!is_boolean_node(f)) return std::nullopt;  // bare parts are never tautologies
  std::map<Formula, size_t> atoms;
  if (!collect_atoms(f, atoms)) return std::nullopt;
  uint32_t rows = 1u << atoms.size();
  for (uint32_t row = 0; row < rows; ++row)
    if (!eval_skeleton(f, atoms, row)) return std::nullopt;
  return Bindings{{"atoms", std::to_string(atoms.size())}};
}

// --- shared helpers ---------------------------------------------------------

struct Modal {  // one of [t]{X} F  /  box{X} F
  bool boxed;
  Term t;  // invalid when boxed
  VarSet X;
  Formula body;
};

std::optional<Modal> as_modal(const Formula& f, bool boxed) {
  if (boxed) {
    if (f.kind() != Formula::Kind::Box) return std::nullopt;
    return Modal{true, Term(), f.index(), f.child()};
  }
  if (f.kind() != Formula::Kind::Just) return std::nullopt;
  return Modal{false, f.term(), f.index(), f.child()};
}

// Finds y with B = A + {y}; prefers a genuinely added variable, falling back
// to an absorbed one (y already in A) when the sets coincide.  The filter
// restricts acceptable y (used for the A1/A1P freeness side condition).
template <typename Pred>
std::optional<Var> added_var(const VarSet& A, const VarSet& B, Pred ok) {
  if (!A.subset_of(B)) return std::nullopt;
  VarSet diff = B.minus(A);
  if (diff.size() > 1) return std::nullopt;
  if (diff.size() == 1) {
    const Var& y = *diff.begin();
    if (ok(y)) return y;
    return std::nullopt;
  }
  for (const Var& y : A)  // A == B: y absorbed into the set
    if (ok(y)) return y;
  return std::nullopt;
}

std::string print_set(const VarSet& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& v : s) {
    if (!first) out += ", ";
    out += v;
    first = false;
  }
  return out + "}";
}

// A1/A1P and A2/A2P share the index-set-step shape.
std::optional<Bindings> match_index_step(const Formula& f, bool boxed, bool dropping) {
  if (f.kind() != Formula::Kind::Imp) return std::nullopt;
  auto big = as_modal(dropping ? f.lhs() : f.rhs(), boxed);
  auto small = as_modal(dropping ? f.rhs() : f.lhs(), boxed);
  if (!big || !small) return std::nullopt;
  if (!boxed && big->t != small->t) return std::nullopt;
  if (big->body != small->body) return std::nullopt;
  VarSet fv = dropping ? free_vars(big->body) : VarSet{};
  auto y = added_var(small->X, big->X, [&](const Var& v) { return !dropping || !fv.contains(v); });
  if (!y) return std::nullopt;
  Bindings b{{"X", print_set(small->X)}, {"y", *y}, {"F", print(big->body)}};
  if (!boxed) b["t"] = print(big->t);
  return b;
}

std::optional<Bindings> match_reflect(const Formula& f, bool boxed) {  // A3 / A3P
  if (f.kind() != Formula::Kind::Imp) return std::nullopt;
  auto m = as_modal(f.lhs(), boxed);
  if (!m || m->body != f.rhs()) return std::nullopt;
  Bindings b{{"X", print_set(m->X)}, {"F", print(m->body)}};
  if (!boxed) b["t"] = print(m->t);
  return b;
}

std::optional<Bindings> match_app(const Formula& f, bool boxed) {  // A4 / A4P
  if (f.kind() != Formula::Kind::Imp || f.rhs().kind() != Formula::Kind::Imp) return std::nullopt;
  auto prem = as_modal(f.lhs(), boxed);
  auto arg = as_modal(f.rhs().lhs(), boxed);
  auto res = as_modal(f.rhs().rhs(), boxed);
  if (!prem || !arg || !res) return std::nullopt;
  if (prem->body.kind() != Formula::Kind::Imp) return std::nullopt;
  if (prem->X != arg->X || prem->X != res->X) return std::nullopt;
  if (prem->body.lhs() != arg->body || prem->body.rhs() != res->body) return std::nullopt;
  if (!boxed) {
    if (res->t.kind() != Term::Kind::App) return std::nullopt;
    if (res->t.left() != prem->t || res->t.right() != arg->t) return std::nullopt;
  }
  Bindings b{{"X", print_set(prem->X)},
             {"F", print(prem->body.lhs())},
             {"G", print(prem->body.rhs())}};
  if (!boxed) {
    b["t"] = print(prem->t);
    b["s"] = print(arg->t);
  }
  return b;
}

std::optional<Bindings> match_sum(const Formula& f, bool left) {  // A5L / A5R
  if (f.kind() != Formula::Kind::Imp) return std::nullopt;
  auto prem = as_modal(f.lhs(), false);
  auto res = as_modal(f.rhs(), false);
  if (!prem || !res) return std::nullopt;
  if (prem->body != res->body || prem->X != res->X) return std::nullopt;
  if (res->t.kind() != Term::Kind::Sum) return std::nullopt;
  if ((left ? res->t.left() : res->t.right()) != prem->t) return std::nullopt;
  return Bindings{{"X", print_set(prem->X)},
                  {"F", print(prem->body)},
                  {"t", print(res->t.left())},
                  {"s", print(res->t.right())}};
}

std::optional<Bindings> match_introspect(const Formula& f, bool boxed) {  // A6 / A6P
  if (f.kind() != Formula::Kind::Imp) return std::nullopt;
  auto prem = as_modal(f.lhs(), boxed);
  auto res = as_modal(f.rhs(), boxed);
  if (!prem || !res) return std::nullopt;
  if (prem->X != res->X) return std::nullopt;
  if (res->body != f.lhs()) return std::nullopt;  // inner copy of the whole premise
  if (!boxed) {
    if (res->t.kind() != Term::Kind::Bang || res->t.inner() != prem->t) return std::nullopt;
  }
  Bindings b{{"X", print_set(prem->X)}, {"F", print(prem->body)}};
  if (!boxed) b["t"] = print(prem->t);
  return b;
}

std::optional<Bindings> match_gen(const Formula& f, bool boxed) {  // A7 / A7P
  if (f.kind() != Formula::Kind::Imp) return std::nullopt;
  auto prem = as_modal(f.lhs(), boxed);
  auto res = as_modal(f.rhs(), boxed);
  if (!prem || !res) return std::nullopt;
  if (prem->X != res->X) return std::nullopt;
  if (res->body.kind() != Formula::Kind::Forall) return std::nullopt;
  const Var& x = res->body.bound_var();
  if (res->body.child() != prem->body) return std::nullopt;
  if (prem->X.contains(x)) return std::nullopt;
  if (!boxed) {
    if (res->t.kind() != Term::Kind::Gen || res->t.gen_index() != x ||
        res->t.inner() != prem->t)
      return std::nullopt;
  }
  Bindings b{{"X", print_set(prem->X)}, {"x", x}, {"F", print(prem->body)}};
  if (!boxed) b["t"] = print(prem->t);
  return b;
}

std::optional<Bindings> match_connect(const Formula& f) {  // A8
  if (f.kind() != Formula::Kind::Imp) return std::nullopt;
  auto prem = as_modal(f.lhs(), false);
  auto res = as_modal(f.rhs(), true);
  if (!prem || !res) return std::nullopt;
  if (prem->body != res->body || prem->X != res->X) return std::nullopt;
  return Bindings{{"X", print_set(prem->X)}, {"F", print(prem->body)}, {"t", print(prem->t)}};
}

std::optional<Bindings> match_forall_inst(const Formula& f) {
  if (f.kind() != Formula::Kind::Imp || f.lhs().kind() != Formula::Kind::Forall)
    return std::nullopt;
  const Var& x = f.lhs().bound_var();
  const Formula& body = f.lhs().child();
  VarSet candidates = free_vars(f.rhs());
  candidates.insert(x);
  for (const Var& y : candidates) {
    if (y == x) {
      if (body == f.rhs()) return Bindings{{"x", x}, {"y", y}};
      continue;
    }
    auto inst = try_rename(body, {{x, y}});
    if (inst && *inst == f.rhs()) return Bindings{{"x", x}, {"y", y}};
  }
  return std::nullopt;
}

std::optional<Bindings> match_exists_inst(const Formula& f) {
  if (f.kind() != Formula::Kind::Imp || f.rhs().kind() != Formula::Kind::Exists)
    return std::nullopt;
  const Var& x = f.rhs().bound_var();
  const Formula& body = f.rhs().child();
  VarSet candidates = free_vars(f.lhs());
  candidates.insert(x);
  for (const Var& y : candidates) {
    if (y == x) {
      if (body == f.lhs()) return Bindings{{"x", x}, {"y", y}};
      continue;
    }
    auto inst = try_rename(body, {{x, y}});
    if (inst && *inst == f.lhs()) return Bindings{{"x", x}, {"y", y}};
  }
  return std::nullopt;
}

std::optional<Bindings> match_forall_distr(const Formula& f) {
  if (f.kind() != Formula::Kind::Imp || f.lhs().kind() != Formula::Kind::Forall)
    return std::nullopt;
  const Var& x = f.lhs().bound_var();
  const Formula& inner = f.lhs().child();
  if (inner.kind() != Formula::Kind::Imp) return std::nullopt;
  const Formula& rhs = f.rhs();
  if (rhs.kind() != Formula::Kind::Imp || rhs.rhs().kind() != Formula::Kind::Forall)
    return std::nullopt;
  if (rhs.rhs().bound_var() != x) return std::nullopt;
  if (inner.lhs() != rhs.lhs() || inner.rhs() != rhs.rhs().child()) return std::nullopt;
  if (free_vars(inner.lhs()).contains(x)) return std::nullopt;
  return Bindings{{"x", x}, {"F", print(inner.lhs())}, {"G", print(inner.rhs())}};
}

std::optional<Bindings> match_exists_distr(const Formula& f) {
  if (f.kind() != Formula::Kind::Imp || f.lhs().kind() != Formula::Kind::Forall)
    return std::nullopt;
  const Var& x = f.lhs().bound_var();
  const Formula& inner = f.lhs().child();
  if (inner.kind() != Formula::Kind::Imp) return std::nullopt;
  const Formula& rhs = f.rhs();
  if (rhs.kind() != Formula::Kind::Imp || rhs.lhs().kind() != Formula::Kind::Exists)
    return std::nullopt;
  if (rhs.lhs().bound_var() != x) return std::nullopt;
  if (inner.lhs() != rhs.lhs().child() || inner.rhs() != rhs.rhs()) return std::nullopt;
  if (free_vars(inner.rhs()).contains(x)) return std::nullopt;
  return Bindings{{"x", x}, {"F", print(inner.lhs())}, {"G", print(inner.rhs())}};
}

std::optional<Bindings> match_one(const Formula& f, SchemaId id) {
  switch (id) {
    case SchemaId::A0_TAUT: return match_taut(f);
    case SchemaId::A0_FORALL_INST: return match_forall_inst(f);
    case SchemaId::A0_EXISTS_INST: return match_exists_inst(f);
    case SchemaId::A0_FORALL_DISTR: return match_forall_distr(f);
    case SchemaId::A0_EXISTS_DISTR: return match_exists_distr(f);
    case SchemaId::A1: return match_index_step(f, false, true);
    case SchemaId::A1P: return match_index_step(f, true, true);
    case SchemaId::A2: return match_index_step(f, false, false);
    case SchemaId::A2P: return match_index_step(f, true, false);
    case SchemaId::A3: return match_reflect(f, false);
    case SchemaId::A3P: return match_reflect(f, true);
    case SchemaId::A4: return match_app(f, false);
    case SchemaId::A4P: return match_app(f, true);
    case SchemaId::A5L: return match_sum(f, true);
    case SchemaId::A5R: return match_sum(f, false);
    case SchemaId::A6: return match_introspect(f, false);
    case SchemaId::A6P: return match_introspect(f, true);
    case SchemaId::A7: return match_gen(f, false);
    case SchemaId::A7P: return match_gen(f, true);
    case SchemaId::A8: return match_connect(f);
  }
  throw Error(Error::Kind::Internal, "match_one: bad schema id");
}

}  // namespace

const char* schema_name(SchemaId id) { return kNames[static_cast<int>(id)]; }

std::optional<SchemaId> schema_from_name(std::string_view name) {
  for (int i = 0; i < kSchemaCount; ++i)
    if (name == kNames[i]) return static_cast<SchemaId>(i);
  return std::nullopt;
}

const std::vector<SchemaId>& all_schemas() {
  static const std::vector<SchemaId> ids = [] {
    std::vector<SchemaId> v;
    for (int i = 0; i < kSchemaCount; ++i) v.push_back(static_cast<SchemaId>(i));
    return v;
  }();
  return ids;
}

std::vector<AxiomMatch> match_axiom(const Formula& f) {
  std::vector<AxiomMatch> out;
  for (SchemaId id : all_schemas())
    if (auto b = match_one(f, id)) out.push_back({id, std::move(*b)});
  return out;
}

bool matches_schema(const Formula& f, SchemaId id) { return match_one(f, id).has_value(); }

bool is_axiom(const Formula& f) {
  for (SchemaId id : all_schemas())
    if (match_one(f, id)) return true;
  return false;
}

}  // namespace folp
