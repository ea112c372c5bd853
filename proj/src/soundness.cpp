// Randomized soundness sweep: random audited models, random axiom instances,
// validity checks through the evidence closure, and rule-preservation checks.
//
// Determinism: every choice is drawn from the caller's mt19937_64 via modular
// reduction (no distribution objects), and all container iteration is over
// sorted std::map/std::set, so a fixed seed reproduces the exact sweep.

#include "folp/soundness.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "folp/evidence.hpp"
#include "folp/parse.hpp"

namespace folp {

namespace {

size_t pick(std::mt19937_64& rng, size_t n) { return static_cast<size_t>(rng() % n); }

bool chance(std::mt19937_64& rng, uint32_t percent) { return rng() % 100 < percent; }

const std::vector<Var>& var_pool() {
  static const std::vector<Var> pool = {"x", "y", "z"};
  return pool;
}

Var pick_var(std::mt19937_64& rng) { return var_pool()[pick(rng, var_pool().size())]; }

// ---------------------------------------------------------------------------
// Random syntax.

Term random_term(std::mt19937_64& rng, int depth) {
  size_t k = pick(rng, depth > 0 ? 7 : 3);
  switch (k) {
    case 0: return Term::jvar("p1");
    case 1: return Term::jvar("p2");
    case 2: return Term::jconst("c1");
    case 3: return Term::app(random_term(rng, depth - 1), random_term(rng, depth - 1));
    case 4: return Term::sum(random_term(rng, depth - 1), random_term(rng, depth - 1));
    case 5: return Term::bang(random_term(rng, depth - 1));
    default: return Term::gen(pick_var(rng), random_term(rng, depth - 1));
  }
}

Formula random_atom(std::mt19937_64& rng) {
  if (chance(rng, 50)) return Formula::atom("P1", {pick_var(rng)});
  return Formula::atom("P2", {pick_var(rng), pick_var(rng)});
}

// Random index set for a modality: a subset of the body's free variables,
// occasionally with one extra pure-index variable.
VarSet random_index(std::mt19937_64& rng, const Formula& body) {
  VarSet X;
  for (const auto& v : free_vars(body))
    if (chance(rng, 50)) X.insert(v);
  if (chance(rng, 25)) X.insert(pick_var(rng));
  return X;
}

Formula random_formula(std::mt19937_64& rng, int depth) {
  if (depth <= 0) return random_atom(rng);
  switch (pick(rng, 9)) {
    case 0: return random_atom(rng);
    case 1: return Formula::lnot(random_formula(rng, depth - 1));
    case 2:
      return Formula::land(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 3:
      return Formula::lor(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 4:
      return Formula::imp(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 5: return Formula::forall(pick_var(rng), random_formula(rng, depth - 1));
    case 6: return Formula::exists(pick_var(rng), random_formula(rng, depth - 1));
    case 7: {
      Formula body = random_formula(rng, depth - 1);
      return Formula::box(random_index(rng, body), body);
    }
    default: {
      Formula body = random_formula(rng, depth - 1);
      return Formula::just(random_term(rng, 1), random_index(rng, body), body);
    }
  }
}

// A formula avoiding one variable, for side-conditioned schemas.
Formula random_formula_without(std::mt19937_64& rng, int depth, const Var& banned) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Formula f = random_formula(rng, depth);
    if (!free_vars(f).contains(banned)) return f;
  }
  return Formula::atom("P1", {banned == "x" ? Var("y") : Var("x")});
}

// ---------------------------------------------------------------------------
// Random axiom instances.

Formula taut_instance(std::mt19937_64& rng) {
  Formula f = random_formula(rng, 1);
  Formula g = random_formula(rng, 1);
  switch (pick(rng, 8)) {
    case 0: return Formula::imp(f, f);
    case 1: return Formula::imp(f, Formula::imp(g, f));
    case 2: return Formula::imp(Formula::land(f, g), f);
    case 3: return Formula::imp(f, Formula::lor(f, g));
    case 4: return Formula::imp(Formula::lnot(Formula::lnot(f)), f);
    case 5: return Formula::iff(f, f);
    case 6: return Formula::imp(Formula::land(f, g), Formula::land(g, f));
    default: return Formula::lor(f, Formula::lnot(f));
  }
}

// forall x. F -> F[x/y] (and its dual); retries until the substitution is
// capture-free.
Formula quantifier_inst(std::mt19937_64& rng, bool universal) {
  for (int attempt = 0;; ++attempt) {
    Formula f = random_formula(rng, 1 + static_cast<int>(pick(rng, 2)));
    Var x = pick_var(rng);
    Var y = attempt < 48 ? pick_var(rng) : x;
    auto sub = try_rename(f, {{x, y}});
    if (!sub) continue;
    if (universal) return Formula::imp(Formula::forall(x, f), *sub);
    return Formula::imp(*sub, Formula::exists(x, f));
  }
}

Formula distribution_inst(std::mt19937_64& rng, bool universal) {
  Var x = pick_var(rng);
  if (universal) {  // forall x. (F -> G) -> (F -> forall x. G),  x not free in F
    Formula f = random_formula_without(rng, 1, x);
    Formula g = random_formula(rng, 1);
    return Formula::imp(Formula::forall(x, Formula::imp(f, g)),
                        Formula::imp(f, Formula::forall(x, g)));
  }
  // forall x. (F -> G) -> (exists x. F -> G),  x not free in G
  Formula f = random_formula(rng, 1);
  Formula g = random_formula_without(rng, 1, x);
  return Formula::imp(Formula::forall(x, Formula::imp(f, g)),
                      Formula::imp(Formula::exists(x, f), g));
}

// Premise wrapper shared by the modal schemas: [t]{X} F or box{X} F.
Formula evidential(bool boxed, const Term& t, const VarSet& X, const Formula& f) {
  return boxed ? Formula::box(X, f) : Formula::just(t, X, f);
}

}  // namespace

Formula random_instance(std::mt19937_64& rng, SchemaId id) {
  switch (id) {
    case SchemaId::A0_TAUT: return taut_instance(rng);
    case SchemaId::A0_FORALL_INST: return quantifier_inst(rng, true);
    case SchemaId::A0_EXISTS_INST: return quantifier_inst(rng, false);
    case SchemaId::A0_FORALL_DISTR: return distribution_inst(rng, true);
    case SchemaId::A0_EXISTS_DISTR: return distribution_inst(rng, false);
    default: break;
  }

  bool boxed = id == SchemaId::A1P || id == SchemaId::A2P || id == SchemaId::A3P ||
               id == SchemaId::A4P || id == SchemaId::A6P || id == SchemaId::A7P;
  Term t = random_term(rng, 1);
  Term s = random_term(rng, 1);
  Formula f = random_formula(rng, pick(rng, 2) ? 2 : 1);
  VarSet X = random_index(rng, f);

  switch (id) {
    case SchemaId::A1:
    case SchemaId::A1P: {  // [t]{X + y} F -> [t]{X} F,  y not free in F
      Var y = pick_var(rng);
      f = random_formula_without(rng, 1, y);
      X = random_index(rng, f);
      X.erase(y);
      VarSet Xy = X;
      Xy.insert(y);
      return Formula::imp(evidential(boxed, t, Xy, f), evidential(boxed, t, X, f));
    }
    case SchemaId::A2:
    case SchemaId::A2P: {  // [t]{X} F -> [t]{X + y} F
      Var y = pick_var(rng);
      X.erase(y);
      VarSet Xy = X;
      Xy.insert(y);
      return Formula::imp(evidential(boxed, t, X, f), evidential(boxed, t, Xy, f));
    }
    case SchemaId::A3:
    case SchemaId::A3P:  // [t]{X} F -> F
      return Formula::imp(evidential(boxed, t, X, f), f);
    case SchemaId::A4:
    case SchemaId::A4P: {  // application distributes over ->
      Formula g = random_formula(rng, 1);
      VarSet Xi = random_index(rng, Formula::imp(f, g));
      Formula prem = evidential(boxed, t, Xi, Formula::imp(f, g));
      Formula ante = evidential(boxed, s, Xi, f);
      Formula conc = evidential(boxed, Term::app(t, s), Xi, g);
      return Formula::imp(prem, Formula::imp(ante, conc));
    }
    case SchemaId::A5L:  // [t]{X} F -> [(t + s)]{X} F
      return Formula::imp(Formula::just(t, X, f), Formula::just(Term::sum(t, s), X, f));
    case SchemaId::A5R:  // [s]{X} F -> [(t + s)]{X} F
      return Formula::imp(Formula::just(s, X, f), Formula::just(Term::sum(t, s), X, f));
    case SchemaId::A6: {  // [t]{X} F -> [!t]{X} [t]{X} F
      Formula prem = Formula::just(t, X, f);
      return Formula::imp(prem, Formula::just(Term::bang(t), X, prem));
    }
    case SchemaId::A6P: {  // box{X} F -> box{X} box{X} F
      Formula prem = Formula::box(X, f);
      return Formula::imp(prem, Formula::box(X, prem));
    }
    case SchemaId::A7:
    case SchemaId::A7P: {  // generalization under the modality,  x not in X
      Var x = pick_var(rng);
      X.erase(x);
      Formula prem = evidential(boxed, t, X, f);
      Formula body = Formula::forall(x, f);
      if (boxed) return Formula::imp(prem, Formula::box(X, body));
      return Formula::imp(prem, Formula::just(Term::gen(x, t), X, body));
    }
    case SchemaId::A8:  // [t]{X} F -> box{X} F
      return Formula::imp(Formula::just(t, X, f), Formula::box(X, f));
    default:
      throw Error(Error::Kind::Internal, "unhandled schema in random_instance");
  }
}

Formula random_instance(std::mt19937_64& rng) {
  const auto& ids = all_schemas();
  return random_instance(rng, ids[pick(rng, ids.size())]);
}

// ---------------------------------------------------------------------------
// Random models.

namespace {

// Candidate formulas for basic evidence entries; imp-shaped entries feed the
// application rule, quantified and modal ones the gen and bang rules.
std::vector<Formula> evidence_formula_pool() {
  Formula p1x = Formula::atom("P1", {"x"});
  Formula p1y = Formula::atom("P1", {"y"});
  Formula p2xy = Formula::atom("P2", {"x", "y"});
  Formula p2xx = Formula::atom("P2", {"x", "x"});
  return {p1x,
          p1y,
          p2xy,
          p2xx,
          Formula::imp(p1x, p1y),
          Formula::imp(p2xy, p1x),
          Formula::forall("x", p1x),
          Formula::box({"x"}, p1x)};
}

// Repairs a random table in place until audit_basic is satisfied: trims
// inadequate worlds, closes under R, and equalizes the substitution and
// extension conditions (values only grow, so the loop terminates).
void repair_evidence(FiniteModel& m,
                     std::map<BasicEvidence::Triple, std::set<World>>& entries) {
  auto adequate = [&](const Valuation& val, const World& w) {
    for (const auto& [v, o] : val)
      if (!m.in_domain(w, o)) return false;
    return true;
  };

  for (auto& [key, ws] : entries) {
    std::set<World> closed;
    for (const auto& w : ws) {
      if (!adequate(key.val, w)) continue;
      closed.insert(w);
      for (const auto& u : m.successors(w))
        if (adequate(key.val, u)) closed.insert(u);
    }
    ws = std::move(closed);
  }

  for (bool changed = true; changed;) {
    changed = false;
    for (auto& [a, va] : entries) {
      for (auto& [b, vb] : entries) {
        if (&a == &b) continue;
        if (!(a.term == b.term)) continue;
        // Substitution: entries sharing a canonical key carry the same set.
        if (canonical_key(a.term, a.formula, a.val) ==
            canonical_key(b.term, b.formula, b.val)) {
          for (const auto& w : va)
            if (vb.insert(w).second) changed = true;
        }
        // Extension: a grounding extension keeps the evidence wherever its
        // image still fits the domain.
        if (a.formula == b.formula && subvaluation(a.val, b.val)) {
          for (const auto& w : va)
            if (adequate(b.val, w) && vb.insert(w).second) changed = true;
        }
      }
    }
  }
}

}  // namespace

FiniteModel random_model(std::mt19937_64& rng) {
  static const std::vector<Obj> kObjs = {"a", "b", "c", "d"};

  FiniteModel m;
  size_t nw = 1 + pick(rng, 4);
  std::vector<World> worlds;
  for (size_t i = 0; i < nw; ++i) worlds.push_back("w" + std::to_string(i + 1));
  for (const auto& w : worlds) {
    m.worlds.insert(w);
    m.access[w];
  }
  for (const auto& w : worlds)
    for (const auto& u : worlds)
      if (w != u && chance(rng, 30)) m.access[w].insert(u);
  m = rt_closure(std::move(m));

  size_t nobj = 1 + pick(rng, 4);
  for (const auto& w : worlds) {
    std::set<Obj>& dom = m.domain[w];
    for (size_t i = 0; i < nobj; ++i)
      if (chance(rng, 50)) dom.insert(kObjs[i]);
    if (dom.empty()) dom.insert(kObjs[pick(rng, nobj)]);
  }
  // Monotone repair: domains grow along the (transitive) accessibility.
  for (size_t round = 0; round < nw; ++round)
    for (const auto& w : worlds)
      for (const auto& u : m.successors(w))
        if (u != w) m.domain[u].insert(m.domain[w].begin(), m.domain[w].end());

  m.pred_arity["P1"] = 1;
  m.pred_arity["P2"] = 2;
  for (const auto& w : worlds) {
    for (const auto& o : m.domain[w])
      if (chance(rng, 50)) m.interp["P1"][w].insert({o});
    for (const auto& o1 : m.domain[w])
      for (const auto& o2 : m.domain[w])
        if (chance(rng, 50)) m.interp["P2"][w].insert({o1, o2});
  }

  const std::vector<Formula> pool = evidence_formula_pool();
  const std::vector<Term> leaves = {Term::jvar("p1"), Term::jvar("p2"), Term::jconst("c1")};
  std::vector<Obj> universe;  // objects some world actually carries
  {
    std::set<Obj> all = m.objects();
    universe.assign(all.begin(), all.end());
  }
  std::map<BasicEvidence::Triple, std::set<World>> entries;
  size_t ne = pick(rng, 6);
  for (size_t i = 0; i < ne; ++i) {
    const Term& t = leaves[pick(rng, leaves.size())];
    const Formula& f = pool[pick(rng, pool.size())];
    Valuation val;  // random partial grounding over FV(f)
    for (const auto& v : free_vars(f))
      if (chance(rng, 50)) val.emplace(v, universe[pick(rng, universe.size())]);
    std::set<World> ws;
    for (const auto& w : worlds)
      if (chance(rng, 40)) ws.insert(w);
    auto [it, fresh] = entries.emplace(BasicEvidence::Triple{t, f, val}, ws);
    if (!fresh) it->second.insert(ws.begin(), ws.end());
  }
  repair_evidence(m, entries);
  for (const auto& [key, ws] : entries) m.basic.set(key.term, key.formula, key.val, ws);

  return m;
}

// ---------------------------------------------------------------------------
// The sweep.

SweepReport soundness_sweep(const SweepOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  SweepReport rep;

  auto note_failure = [&](const std::string& what) {
    if (rep.first_failure.empty()) rep.first_failure = what;
  };

  for (size_t mi = 0; mi < opt.models; ++mi) {
    FiniteModel m = random_model(rng);
    ++rep.models_built;
    EvidenceOracle oracle(m);

    auto model_valid = [&](const Formula& f) {
      return valid_in_model(m, oracle, f, opt.limits).valid;
    };

    for (size_t k = 0; k < opt.instances; ++k) {
      Formula inst = random_instance(rng);
      ++rep.instances_checked;
      try {
        ValidityResult r = valid_in_model(m, oracle, inst, opt.limits);
        if (!r.valid) {
          ++rep.instances_failed;
          note_failure("model " + std::to_string(mi) + ": axiom instance " + print(inst) +
                       " refuted at " + r.world + " under " + print_valuation(r.witness));
        }
      } catch (const Error& e) {
        ++rep.instances_failed;
        note_failure("model " + std::to_string(mi) + ": axiom instance " + print(inst) +
                     " raised: " + e.what());
      }
    }

    // Rule preservation on one premise triple per model.  The premises are
    // valid-by-soundness shapes (an axiom instance and a tautological
    // weakening), so the rule conclusions must stay valid.
    Formula a = random_instance(rng);
    Formula b = random_formula(rng, 1);
    Var x = pick_var(rng);
    ++rep.rule_triples;
    try {
      if (!model_valid(a) || !model_valid(Formula::imp(a, Formula::imp(b, a)))) {
        ++rep.rule_failures;
        note_failure("model " + std::to_string(mi) + ": rule premise " + print(a) +
                     " unexpectedly refuted");
      } else {
        if (!model_valid(Formula::imp(b, a))) {  // modus ponens
          ++rep.rule_failures;
          note_failure("model " + std::to_string(mi) + ": modus ponens broke validity of " +
                       print(Formula::imp(b, a)));
        }
        if (!model_valid(Formula::forall(x, a))) {  // generalization
          ++rep.rule_failures;
          note_failure("model " + std::to_string(mi) + ": generalization broke validity of " +
                       print(Formula::forall(x, a)));
        }
        if (!model_valid(Formula::box({}, a))) {  // necessitation
          ++rep.rule_failures;
          note_failure("model " + std::to_string(mi) + ": necessitation broke validity of " +
                       print(Formula::box({}, a)));
        }
      }
    } catch (const Error& e) {
      ++rep.rule_failures;
      note_failure("model " + std::to_string(mi) + ": rule check raised: " + e.what());
    }
  }
  return rep;
}

}  // namespace folp
