#include "folp/evidence.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <thread>

#include "folp/parse.hpp"

namespace folp {

namespace {

bool is_leaf(const Term& t) {
  return t.kind() == Term::Kind::JVar || t.kind() == Term::Kind::JConst;
}

bool is_token(const std::string& s) { return !s.empty() && (s[0] == '#' || s[0] == '$'); }

bool image_in_domain(const FiniteModel& m, const World& w, const Valuation& f) {
  for (const auto& [v, o] : f)
    if (!m.in_domain(w, o)) return false;
  return true;
}

void r_close(const FiniteModel& m, std::set<World>& s) {
  std::deque<World> todo(s.begin(), s.end());
  while (!todo.empty()) {
    World w = todo.front();
    todo.pop_front();
    for (const auto& u : m.successors(w))
      if (s.insert(u).second) todo.push_back(u);
  }
}

void trim_to_adequate(const FiniteModel& m, const Valuation& f, std::set<World>& s) {
  for (auto it = s.begin(); it != s.end();)
    it = image_in_domain(m, *it, f) ? std::next(it) : s.erase(it);
}

// Rebuilds a formula with free occurrences replaced by key tokens: grounded
// variables become #object, ungrounded free variables become $1, $2, ... in
// order of first occurrence (bodies before index sets, index members in
// sorted order).  Bound occurrences, binders and proof terms stay literal.
class KeyBuilder {
 public:
  explicit KeyBuilder(const Valuation& ground) : ground_(ground) {}

  Formula rebuild(const Formula& f, const VarSet& bound) {
    switch (f.kind()) {
      case Formula::Kind::Atom: {
        std::vector<Var> args;
        args.reserve(f.args().size());
        for (const auto& v : f.args()) args.push_back(bound.contains(v) ? v : tok(v));
        return Formula::atom(f.pred(), std::move(args));
      }
      case Formula::Kind::Not:
        return Formula::lnot(rebuild(f.child(), bound));
      case Formula::Kind::And:
        return Formula::land(rebuild(f.lhs(), bound), rebuild(f.rhs(), bound));
      case Formula::Kind::Or:
        return Formula::lor(rebuild(f.lhs(), bound), rebuild(f.rhs(), bound));
      case Formula::Kind::Imp:
        return Formula::imp(rebuild(f.lhs(), bound), rebuild(f.rhs(), bound));
      case Formula::Kind::Iff:
        return Formula::iff(rebuild(f.lhs(), bound), rebuild(f.rhs(), bound));
      case Formula::Kind::Forall: {
        VarSet b2 = bound;
        b2.insert(f.bound_var());
        return Formula::forall(f.bound_var(), rebuild(f.child(), b2));
      }
      case Formula::Kind::Exists: {
        VarSet b2 = bound;
        b2.insert(f.bound_var());
        return Formula::exists(f.bound_var(), rebuild(f.child(), b2));
      }
      case Formula::Kind::Box:
      case Formula::Kind::Just: {
        VarSet b2 = bound.united(free_vars(f.child()).minus(f.index()));
        Formula body = rebuild(f.child(), b2);
        VarSet idx;
        for (const auto& v : f.index()) idx.insert(bound.contains(v) ? v : tok(v));
        if (f.kind() == Formula::Kind::Box) return Formula::box(std::move(idx), std::move(body));
        return Formula::just(f.term(), std::move(idx), std::move(body));
      }
    }
    throw Error(Error::Kind::Internal, "unreachable formula kind");
  }

  // First original variable that produced each token.
  const std::map<std::string, Var>& reps() const { return rep_; }

 private:
  std::string tok(const Var& v) {
    std::string t;
    auto g = ground_.find(v);
    if (g != ground_.end()) {
      t = "#" + g->second;
    } else {
      auto it = label_.find(v);
      if (it == label_.end()) it = label_.emplace(v, "$" + std::to_string(next_++)).first;
      t = it->second;
    }
    rep_.emplace(t, v);
    return t;
  }

  const Valuation& ground_;
  std::map<Var, std::string> label_;
  std::map<std::string, Var> rep_;
  size_t next_ = 1;
};

// Walks a candidate formula against a key pattern: candidate free variables
// map onto tokens (many-to-one onto #tokens, injectively onto $tokens);
// bound positions must agree literally.  Atom positions force assignments;
// index sets are matched by backtracking at the end (each free candidate
// member picks a token, every pattern token must be covered).
class Matcher {
 public:
  bool walk(const Formula& cand, const Formula& pat, const VarSet& bound) {
    if (cand.kind() != pat.kind()) return false;
    switch (cand.kind()) {
      case Formula::Kind::Atom: {
        if (cand.pred() != pat.pred() || cand.args().size() != pat.args().size()) return false;
        for (size_t i = 0; i < cand.args().size(); ++i) {
          const Var& cv = cand.args()[i];
          const std::string& pv = pat.args()[i];
          if (bound.contains(cv)) {
            if (is_token(pv) || pv != cv) return false;
          } else {
            if (!is_token(pv) || !bind(cv, pv)) return false;
          }
        }
        return true;
      }
      case Formula::Kind::Not:
        return walk(cand.child(), pat.child(), bound);
      case Formula::Kind::And:
      case Formula::Kind::Or:
      case Formula::Kind::Imp:
      case Formula::Kind::Iff:
        return walk(cand.lhs(), pat.lhs(), bound) && walk(cand.rhs(), pat.rhs(), bound);
      case Formula::Kind::Forall:
      case Formula::Kind::Exists: {
        if (cand.bound_var() != pat.bound_var()) return false;
        VarSet b2 = bound;
        b2.insert(cand.bound_var());
        return walk(cand.child(), pat.child(), b2);
      }
      case Formula::Kind::Box:
      case Formula::Kind::Just: {
        if (cand.kind() == Formula::Kind::Just && cand.term() != pat.term()) return false;
        VarSet b2 = bound.united(free_vars(cand.child()).minus(cand.index()));
        if (!walk(cand.child(), pat.child(), b2)) return false;
        IndexProblem prob;
        VarSet lit_p;
        for (const auto& s : pat.index().items())
          if (is_token(s))
            prob.tokens.push_back(s);
          else
            lit_p.insert(s);
        VarSet lit_c;
        for (const auto& v : cand.index())
          if (bound.contains(v))
            lit_c.insert(v);
          else
            prob.vars.push_back(v);
        if (lit_c != lit_p) return false;
        problems_.push_back(std::move(prob));
        return true;
      }
    }
    return false;
  }

  // Solves the queued index problems; on success invokes fn once per complete
  // assignment, stopping early when fn returns true.
  bool solve(const std::function<bool()>& fn) { return go(0, 0, fn); }

  const std::map<Var, std::string>& assignment() const { return assign_; }

  // Valuation the #tokens induce on the candidate's variables.
  Valuation grounded() const {
    Valuation out;
    for (const auto& [v, t] : assign_)
      if (t[0] == '#') out.emplace(v, t.substr(1));
    return out;
  }

 private:
  struct IndexProblem {
    std::vector<Var> vars;           // free candidate index members
    std::vector<std::string> tokens;  // pattern index tokens to cover
  };

  bool bind(const Var& v, const std::string& t) {
    auto it = assign_.find(v);
    if (it != assign_.end()) return it->second == t;
    if (t[0] == '$') {
      auto o = owner_.find(t);
      if (o != owner_.end() && o->second != v) return false;
      owner_.emplace(t, v);
    }
    assign_.emplace(v, t);
    return true;
  }

  void unbind(const Var& v, const std::string& t) {
    assign_.erase(v);
    auto o = owner_.find(t);
    if (o != owner_.end() && o->second == v) owner_.erase(o);
  }

  bool go(size_t pi, size_t vi, const std::function<bool()>& fn) {
    if (pi == problems_.size()) return fn();
    const IndexProblem& p = problems_[pi];
    if (vi == p.vars.size()) {
      for (const auto& t : p.tokens) {
        bool covered = false;
        for (const auto& v : p.vars)
          if (assign_.at(v) == t) {
            covered = true;
            break;
          }
        if (!covered) return false;
      }
      return go(pi + 1, 0, fn);
    }
    const Var& v = p.vars[vi];
    auto it = assign_.find(v);
    if (it != assign_.end()) {
      if (std::find(p.tokens.begin(), p.tokens.end(), it->second) == p.tokens.end())
        return false;
      return go(pi, vi + 1, fn);
    }
    for (const auto& t : p.tokens) {
      if (!bind(v, t)) continue;
      if (go(pi, vi + 1, fn)) return true;
      unbind(v, t);
    }
    return false;
  }

  std::map<Var, std::string> assign_;
  std::map<std::string, Var> owner_;  // $token -> candidate variable
  std::vector<IndexProblem> problems_;
};

std::string pattern_of(const Formula& f, const Valuation& ground) {
  KeyBuilder kb(ground);
  return print(kb.rebuild(f, {}));
}

// Implication shapes a term could plausibly justify, harvested from the
// basic table and the constant specification.
void imp_support(const FiniteModel& m, const Term& t, std::map<std::string, Formula>& out) {
  switch (t.kind()) {
    case Term::Kind::JVar:
    case Term::Kind::JConst: {
      for (const auto& [triple, ws] : m.basic.table()) {
        (void)ws;
        if (triple.term == t && triple.formula.kind() == Formula::Kind::Imp)
          out.emplace(print(triple.formula), triple.formula);
      }
      if (t.kind() == Term::Kind::JConst)
        for (const auto& e : m.cs.entries())
          if (e.constant == t.name() && e.formula.kind() == Formula::Kind::Imp)
            out.emplace(print(e.formula), e.formula);
      return;
    }
    case Term::Kind::App: {
      std::map<std::string, Formula> inner;
      imp_support(m, t.left(), inner);
      for (const auto& [k, th] : inner) {
        (void)k;
        if (th.rhs().kind() == Formula::Kind::Imp) out.emplace(print(th.rhs()), th.rhs());
      }
      return;
    }
    case Term::Kind::Sum:
      imp_support(m, t.left(), out);
      imp_support(m, t.right(), out);
      return;
    case Term::Kind::Bang:
    case Term::Kind::Gen:
      return;  // introspection and generalization never evidence implications
  }
}

// Candidate antecedent instances for the application rule: for the query
// (t1.t2, F, g), each harvested shape A -> B whose consequent B can be
// renamed onto F contributes antecedent instances Psi with any variables of
// A beyond B grounded over the domain.  fn receives (Psi, extended
// valuation); enumeration is deterministic.
void for_each_app_candidate(const FiniteModel& m, const EvidenceLimits& lim, const Term& t1,
                            const Formula& f, const Valuation& g,
                            const std::function<void(const Formula&, const Valuation&)>& fn) {
  std::map<std::string, Formula> shapes;
  imp_support(m, t1, shapes);
  if (shapes.empty()) return;

  KeyBuilder kb(g);
  Formula pattern = kb.rebuild(f, {});
  std::string pattern_str = print(pattern);
  const std::map<std::string, Var>& reps = kb.reps();
  std::vector<Obj> objs;
  {
    std::set<Obj> all = m.objects();
    objs.assign(all.begin(), all.end());
  }

  // Deduplicates emitted (Psi, valuation) pairs across solutions and shapes.
  std::set<std::string> seen;

  for (const auto& [key, shape] : shapes) {
    (void)key;
    const Formula& a = shape.lhs();
    const Formula& b = shape.rhs();
    Matcher mm;
    if (!mm.walk(b, pattern, {})) continue;
    size_t solutions = 0;
    mm.solve([&]() -> bool {
      if (++solutions > 64) return true;  // stop an implausible blow-up
      VarRenaming sigma;
      for (const auto& [v, tokn] : mm.assignment()) sigma[v] = reps.at(tokn);
      auto bs = try_rename(b, sigma);
      if (!bs || pattern_of(*bs, g) != pattern_str) return false;

      VarSet extras = free_vars(a).minus(free_vars(b));
      if (extras.size() > lim.max_candidate_vars) return false;
      VarRenaming sigma_full = sigma;
      size_t ei = 0;
      std::vector<Var> evars;
      for (const auto& x : extras) {
        Var e = "_e" + std::to_string(++ei);
        sigma_full[x] = e;
        evars.push_back(e);
      }
      auto psi = try_rename(a, sigma_full);
      if (!psi) return false;

      // Ground the fresh antecedent variables over the whole domain.
      std::vector<size_t> idx(evars.size(), 0);
      if (!evars.empty() && objs.empty()) return false;
      while (true) {
        Valuation f2 = g;
        for (size_t i = 0; i < evars.size(); ++i) f2[evars[i]] = objs[idx[i]];
        std::string tag = print(*psi) + "\n" + print_valuation(f2);
        if (seen.insert(tag).second) fn(*psi, f2);
        if (evars.empty()) break;
        size_t i = evars.size();
        bool rolled = false;
        while (i > 0) {
          --i;
          if (++idx[i] < objs.size()) {
            rolled = true;
            break;
          }
          idx[i] = 0;
        }
        if (!rolled) break;
      }
      return false;  // keep enumerating solutions
    });
  }
}

}  // namespace

std::string canonical_key(const Term& t, const Formula& f, const Valuation& ground) {
  KeyBuilder kb(ground);
  return print(t) + "\t" + print(kb.rebuild(f, {}));
}

std::optional<Valuation> match_to_key(const Formula& candidate, const Formula& target,
                                      const Valuation& ground) {
  KeyBuilder kb(ground);
  Formula pattern = kb.rebuild(target, {});
  Matcher mm;
  if (!mm.walk(candidate, pattern, {})) return std::nullopt;
  std::optional<Valuation> out;
  mm.solve([&]() -> bool {
    out = mm.grounded();
    return true;
  });
  return out;
}

std::string EvidenceTriple::to_string() const {
  return print(term) + " : " + print(formula) + " @ " + print_valuation(val);
}

EvidenceOracle::EvidenceOracle(const FiniteModel& m, EvidenceLimits lim) : m_(m), lim_(lim) {}

std::set<World> EvidenceOracle::query(const Term& t, const Formula& f,
                                      const Valuation& val) const {
  Valuation g = restrict_to(val, free_vars(f));
  std::set<World> s = restricted(t, f, g);
  trim_to_adequate(m_, val, s);
  return s;
}

size_t EvidenceOracle::memo_size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return memo_.size();
}

std::set<World> EvidenceOracle::restricted(const Term& t, const Formula& f,
                                           const Valuation& g) const {
  std::string key = canonical_key(t, f, g);
  std::ostringstream tid;
  tid << std::this_thread::get_id();
  std::string guard_key = key + "\n" + tid.str();
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    if (in_progress_.count(guard_key))
      throw Error(Error::Kind::Internal, "evidence query cycle at " + key);
    in_progress_.insert(guard_key);
  }
  std::set<World> s;
  try {
    s = raw(t, f, g);
  } catch (...) {
    std::lock_guard<std::mutex> lock(mu_);
    in_progress_.erase(guard_key);
    throw;
  }
  trim_to_adequate(m_, g, s);
  r_close(m_, s);
  trim_to_adequate(m_, g, s);  // defensive for non-monotone inputs
  {
    std::lock_guard<std::mutex> lock(mu_);
    memo_[key] = s;
    in_progress_.erase(guard_key);
  }
  return s;
}

std::set<World> EvidenceOracle::raw(const Term& t, const Formula& f, const Valuation& g) const {
  switch (t.kind()) {
    case Term::Kind::JVar:
    case Term::Kind::JConst:
      return base_leaf(t, f, g);
    case Term::Kind::App:
      return app_rule(t, f, g);
    case Term::Kind::Sum: {
      std::set<World> s = query(t.left(), f, g);
      std::set<World> r = query(t.right(), f, g);
      s.insert(r.begin(), r.end());
      return s;
    }
    case Term::Kind::Bang: {
      // !s evidences [s]{X} F when every index variable is grounded; the
      // inner query runs at the grounding restricted to the body.
      if (f.kind() != Formula::Kind::Just || f.term() != t.inner()) return {};
      for (const auto& x : f.index())
        if (!g.count(x)) return {};
      return query(t.inner(), f.child(), restrict_to(g, free_vars(f.child())));
    }
    case Term::Kind::Gen: {
      if (f.kind() != Formula::Kind::Forall || f.bound_var() != t.gen_index()) return {};
      return query(t.inner(), f.child(), g);
    }
  }
  return {};
}

std::set<World> EvidenceOracle::base_leaf(const Term& t, const Formula& f,
                                          const Valuation& g) const {
  std::set<World> s;
  for (const auto& [triple, ws] : m_.basic.table()) {
    if (!(triple.term == t)) continue;
    auto induced = match_to_key(triple.formula, f, g);
    if (!induced) continue;
    Valuation h = restrict_to(triple.val, free_vars(triple.formula));
    if (!subvaluation(h, *induced)) continue;
    s.insert(ws.begin(), ws.end());
  }
  if (t.kind() == Term::Kind::JConst) {
    for (const auto& e : m_.cs.entries()) {
      if (e.constant != t.name()) continue;
      if (match_to_key(e.formula, f, g)) {
        s.insert(m_.worlds.begin(), m_.worlds.end());
        break;
      }
    }
  }
  return s;
}

std::set<World> EvidenceOracle::app_rule(const Term& t, const Formula& f,
                                         const Valuation& g) const {
  std::set<World> s;
  for_each_app_candidate(m_, lim_, t.left(), f, g,
                         [&](const Formula& psi, const Valuation& f2) {
                           std::set<World> a = query(t.left(), Formula::imp(psi, f), f2);
                           if (a.empty()) return;
                           std::set<World> b = query(t.right(), psi, f2);
                           for (const auto& w : a)
                             if (b.count(w)) s.insert(w);
                         });
  return s;
}

std::vector<AuditViolation> audit_basic(const FiniteModel& m) {
  std::vector<AuditViolation> out;
  const auto& table = m.basic.table();

  auto value_of = [&](const BasicEvidence::Triple& key) -> const std::set<World>* {
    return m.basic.find(key.term, key.formula, key.val);
  };

  for (const auto& [a, va] : table) {
    // Downward closure: the restriction of every entry is itself an entry.
    Valuation ra = restrict_to(a.val, free_vars(a.formula));
    if (ra != a.val) {
      const std::set<World>* under = value_of({a.term, a.formula, ra});
      if (!under) {
        out.push_back({"domain-closure", "no entry for the restriction " +
                                             EvidenceTriple{a.term, a.formula, ra}.to_string()});
      } else {
        for (const auto& w : va)
          if (!under->count(w))
            out.push_back({"restriction",
                           EvidenceTriple{a.term, a.formula, a.val}.to_string() + " holds at " +
                               w + " but its restriction does not"});
      }
    }

    for (const auto& w : va) {
      if (!image_in_domain(m, w, a.val))
        out.push_back({"adequacy", EvidenceTriple{a.term, a.formula, a.val}.to_string() +
                                       " holds at " + w +
                                       " although the valuation leaves its domain"});
      for (const auto& u : m.successors(w))
        if (!va.count(u))
          out.push_back({"r-closure", EvidenceTriple{a.term, a.formula, a.val}.to_string() +
                                          " holds at " + w + " but not at its successor " + u});
    }

    for (const auto& [b, vb] : table) {
      if (&a == &b) continue;
      if (a.term == b.term && a.formula == b.formula && subvaluation(a.val, b.val)) {
        for (const auto& w : va)
          if (image_in_domain(m, w, b.val) && !vb.count(w))
            out.push_back({"extension", EvidenceTriple{a.term, a.formula, a.val}.to_string() +
                                            " holds at " + w + " but the extension " +
                                            print_valuation(b.val) + " does not"});
      }
      if (a.term == b.term &&
          canonical_key(a.term, a.formula, restrict_to(a.val, free_vars(a.formula))) ==
              canonical_key(b.term, b.formula, restrict_to(b.val, free_vars(b.formula)))) {
        Valuation rb = restrict_to(b.val, free_vars(b.formula));
        if (ra == a.val && rb == b.val && va != vb)
          out.push_back({"substitution",
                         EvidenceTriple{a.term, a.formula, a.val}.to_string() + " and " +
                             EvidenceTriple{b.term, b.formula, b.val}.to_string() +
                             " share a key but differ"});
      }
    }
  }
  return out;
}

ProbeUniverse probe_universe(const FiniteModel& m, const std::vector<EvidenceTriple>& roots,
                             const VarSet& extra_vars) {
  constexpr size_t kCap = 50000;
  EvidenceLimits lim;
  std::set<EvidenceTriple> seen;
  std::deque<EvidenceTriple> todo;
  std::vector<Obj> objs;
  {
    std::set<Obj> all = m.objects();
    objs.assign(all.begin(), all.end());
  }

  auto push = [&](EvidenceTriple tr) {
    if (seen.size() >= kCap)
      throw Error(Error::Kind::Resource, "probe universe exceeded " + std::to_string(kCap) +
                                             " triples");
    if (seen.insert(tr).second) todo.push_back(std::move(tr));
  };

  // Sub- and super-valuations of the restricted triple over its variable
  // pool: every partial map from pool to objects extending nothing or part
  // of the grounding, so extension and restriction can be audited.
  auto enrich = [&](const Term& t, const Formula& f, const Valuation& g) {
    VarSet pool = free_vars(f).united(extra_vars);
    if (pool.size() > 4 || objs.empty()) {
      push({t, f, g});
      return;
    }
    const std::vector<Var>& vars = pool.items();
    std::vector<size_t> idx(vars.size(), 0);  // 0 = unset, k = objs[k-1]
    while (true) {
      Valuation v2;
      for (size_t i = 0; i < vars.size(); ++i)
        if (idx[i] > 0) v2.emplace(vars[i], objs[idx[i] - 1]);
      push({t, f, std::move(v2)});
      size_t i = vars.size();
      bool rolled = false;
      while (i > 0) {
        --i;
        if (++idx[i] <= objs.size()) {
          rolled = true;
          break;
        }
        idx[i] = 0;
      }
      if (!rolled) break;
    }
  };

  for (const auto& r : roots) {
    push(r);
    enrich(r.term, r.formula, restrict_to(r.val, free_vars(r.formula)));
  }

  // Decomposition closure, mirroring what the closure rules can demand.
  std::vector<EvidenceTriple> processed;
  while (!todo.empty()) {
    EvidenceTriple tr = todo.front();
    todo.pop_front();
    processed.push_back(tr);
    Valuation g = restrict_to(tr.val, free_vars(tr.formula));
    push({tr.term, tr.formula, g});

    switch (tr.term.kind()) {
      case Term::Kind::App:
        for_each_app_candidate(m, lim, tr.term.left(), tr.formula, g,
                               [&](const Formula& psi, const Valuation& f2) {
                                 enrich(tr.term.left(), Formula::imp(psi, tr.formula), f2);
                                 enrich(tr.term.right(), psi, f2);
                                 push({tr.term.left(), Formula::imp(psi, tr.formula), f2});
                                 push({tr.term.right(), psi, f2});
                               });
        break;
      case Term::Kind::Sum:
        enrich(tr.term.left(), tr.formula, g);
        enrich(tr.term.right(), tr.formula, g);
        break;
      case Term::Kind::Bang: {
        const Formula& f = tr.formula;
        if (f.kind() == Formula::Kind::Just && f.term() == tr.term.inner()) {
          bool gated = true;
          for (const auto& x : f.index())
            if (!g.count(x)) gated = false;
          if (gated)
            enrich(tr.term.inner(), f.child(), restrict_to(g, free_vars(f.child())));
        }
        break;
      }
      case Term::Kind::Gen:
        if (tr.formula.kind() == Formula::Kind::Forall &&
            tr.formula.bound_var() == tr.term.gen_index())
          enrich(tr.term.inner(), tr.formula.child(), g);
        break;
      default:
        break;
    }
  }

  // One layer of wrappers, so the introspection and generalization
  // conditions have their conclusion triples in the universe.
  for (const auto& tr : processed) {
    Valuation g = restrict_to(tr.val, free_vars(tr.formula));
    VarSet x_idx;
    for (const auto& [v, o] : g) {
      (void)o;
      x_idx.insert(v);
    }
    push({Term::bang(tr.term), Formula::just(tr.term, x_idx, tr.formula), g});
    VarSet pool = free_vars(tr.formula).united(extra_vars);
    for (const auto& x : pool) {
      if (g.count(x)) continue;
      push({Term::gen(x, tr.term), Formula::forall(x, tr.formula),
            restrict_to(g, free_vars(tr.formula).minus(VarSet{x}))});
    }
  }

  return ProbeUniverse(seen.begin(), seen.end());
}

std::vector<AuditViolation> audit_closure(const FiniteModel& m, const EvidenceFn& ev,
                                          const ProbeUniverse& universe) {
  std::vector<AuditViolation> out;
  auto offend = [&](const std::string& cond, const std::string& wit) {
    out.push_back({cond, wit});
  };

  std::map<std::string, std::vector<size_t>> by_key;      // substitution groups
  std::map<std::string, std::vector<size_t>> by_shape;    // (term, formula) groups
  std::map<std::string, Term> term_pool;
  std::vector<std::set<World>> val(universe.size());
  VarSet var_pool;

  for (size_t i = 0; i < universe.size(); ++i) {
    const EvidenceTriple& tr = universe[i];
    val[i] = ev(tr.term, tr.formula, tr.val);
    Valuation g = restrict_to(tr.val, free_vars(tr.formula));
    if (g == tr.val) by_key[canonical_key(tr.term, tr.formula, g)].push_back(i);
    by_shape[print(tr.term) + "\t" + print(tr.formula)].push_back(i);
    term_pool.emplace(print(tr.term), tr.term);
    for (const auto& v : free_vars(tr.formula)) var_pool.insert(v);
    for (const auto& [v, o] : tr.val) {
      (void)o;
      var_pool.insert(v);
    }
  }

  for (size_t i = 0; i < universe.size(); ++i) {
    const EvidenceTriple& tr = universe[i];

    for (const auto& w : val[i]) {
      if (!image_in_domain(m, w, tr.val))
        offend("adequacy",
               tr.to_string() + " holds at " + w + " although the valuation leaves its domain");
      for (const auto& u : m.successors(w))
        if (!val[i].count(u))
          offend("r-closure",
                 tr.to_string() + " holds at " + w + " but not at its successor " + u);
    }

    // Restriction: evidence survives forgetting variables outside FV.
    Valuation g = restrict_to(tr.val, free_vars(tr.formula));
    if (g != tr.val) {
      std::set<World> under = ev(tr.term, tr.formula, g);
      for (const auto& w : val[i])
        if (!under.count(w))
          offend("restriction",
                 tr.to_string() + " holds at " + w + " but its restriction does not");
    }

    // Introspection at the canonical instance g = f, X = Dom(f) cap FV(F).
    VarSet x_idx;
    for (const auto& [v, o] : g) {
      (void)o;
      x_idx.insert(v);
    }
    Formula wrapped = Formula::just(tr.term, x_idx, tr.formula);
    std::set<World> intro = ev(Term::bang(tr.term), wrapped, tr.val);
    for (const auto& w : val[i])
      if (image_in_domain(m, w, tr.val) && !intro.count(w))
        offend("introspection", tr.to_string() + " holds at " + w + " but " +
                                    print(Term::bang(tr.term)) + " : " + print(wrapped) +
                                    " does not");

    // Generalization over every pool variable not grounded in FV.
    for (const auto& x : var_pool) {
      if (g.count(x)) continue;
      std::set<World> gen =
          ev(Term::gen(x, tr.term), Formula::forall(x, tr.formula), tr.val);
      for (const auto& w : val[i])
        if (image_in_domain(m, w, tr.val) && !gen.count(w))
          offend("generalization", tr.to_string() + " holds at " + w + " but gen{" + x +
                                       "} over it does not");
    }

    // Sum: evidence survives joining any other term on either side.
    for (const auto& [tn, t2] : term_pool) {
      (void)tn;
      std::set<World> left = ev(Term::sum(tr.term, t2), tr.formula, tr.val);
      std::set<World> right = ev(Term::sum(t2, tr.term), tr.formula, tr.val);
      for (const auto& w : val[i]) {
        if (!left.count(w))
          offend("sum", tr.to_string() + " holds at " + w + " but the sum with " + print(t2) +
                            " on the right does not");
        if (!right.count(w))
          offend("sum", tr.to_string() + " holds at " + w + " but the sum with " + print(t2) +
                            " on the left does not");
      }
    }

    // Application: pairs within the universe sharing the valuation.
    if (tr.formula.kind() == Formula::Kind::Imp) {
      for (size_t j = 0; j < universe.size(); ++j) {
        const EvidenceTriple& ar = universe[j];
        if (!(ar.val == tr.val) || !(ar.formula == tr.formula.lhs())) continue;
        std::set<World> app =
            ev(Term::app(tr.term, ar.term), tr.formula.rhs(), tr.val);
        for (const auto& w : val[i])
          if (val[j].count(w) && !app.count(w))
            offend("application", tr.to_string() + " and " + ar.to_string() + " hold at " + w +
                                      " but the application does not");
      }
    }
  }

  // Substitution: canonical-key-equal restricted triples agree.
  for (const auto& [key, idxs] : by_key) {
    (void)key;
    for (size_t a = 0; a + 1 < idxs.size(); ++a)
      if (val[idxs[a]] != val[idxs[a + 1]])
        offend("substitution", universe[idxs[a]].to_string() + " and " +
                                   universe[idxs[a + 1]].to_string() +
                                   " share a key but differ");
  }

  // Extension within shape groups.
  for (const auto& [shape, idxs] : by_shape) {
    (void)shape;
    for (size_t a : idxs)
      for (size_t b : idxs) {
        if (a == b) continue;
        const EvidenceTriple& fa = universe[a];
        const EvidenceTriple& fb = universe[b];
        if (!subvaluation(fa.val, fb.val) || fa.val == fb.val) continue;
        for (const auto& w : val[a])
          if (image_in_domain(m, w, fb.val) && !val[b].count(w))
            offend("extension", fa.to_string() + " holds at " + w + " but the extension " +
                                    print_valuation(fb.val) + " does not");
      }
  }

  // The constant specification is fully covered at the empty valuation.
  for (const auto& e : m.cs.entries()) {
    std::set<World> got = ev(Term::jconst(e.constant), e.formula, {});
    if (got != m.worlds)
      offend("meets-cs", e.constant + " : " + print(e.formula) +
                             " is not evidenced at every world");
  }

  return out;
}

std::map<EvidenceTriple, std::set<World>> brute_force_closure(const FiniteModel& m,
                                                              const ProbeUniverse& universe) {
  std::map<EvidenceTriple, std::set<World>> val;
  for (const auto& tr : universe) val[tr];

  auto need = [&](const EvidenceTriple& tr) -> std::set<World>& {
    auto it = val.find(tr);
    if (it == val.end())
      throw Error(Error::Kind::Uncovered,
                  "closure rule needs a triple outside the universe: " + tr.to_string());
    return it->second;
  };

  bool changed = false;
  auto add = [&](const EvidenceTriple& key, std::set<World>& target, const World& w) {
    if (target.count(w)) return;
    if (!image_in_domain(m, w, key.val)) return;
    target.insert(w);
    changed = true;
  };

  // Seeds: the basic table and the constant specification, where present.
  for (const auto& [tr, ws] : m.basic.table()) {
    auto it = val.find({tr.term, tr.formula, tr.val});
    if (it == val.end()) continue;
    for (const auto& w : ws) add(it->first, it->second, w);
  }
  for (const auto& e : m.cs.entries()) {
    auto it = val.find({Term::jconst(e.constant), e.formula, {}});
    if (it == val.end()) continue;
    for (const auto& w : m.worlds) add(it->first, it->second, w);
  }

  // Resolve every rule instance up front: flows carry worlds from source
  // entries into a target entry, guarded per-world by the target's domain
  // adequacy inside add().
  struct Flow {
    const EvidenceTriple* target;
    std::set<World>* target_val;
    std::vector<const std::set<World>*> sources;  // union of sources
    const std::set<World>* also = nullptr;        // intersected with sources[0]
  };
  std::vector<Flow> flows;
  auto entry = [&](const EvidenceTriple& tr) -> std::pair<const EvidenceTriple*, std::set<World>*> {
    auto it = val.find(tr);
    if (it == val.end())
      throw Error(Error::Kind::Uncovered,
                  "closure rule needs a triple outside the universe: " + tr.to_string());
    return {&it->first, &it->second};
  };

  std::map<std::string, std::vector<const EvidenceTriple*>> by_key, by_shape;
  for (const auto& [tr, ws] : val) {
    (void)ws;
    Valuation g = restrict_to(tr.val, free_vars(tr.formula));
    if (g == tr.val) by_key[canonical_key(tr.term, tr.formula, g)].push_back(&tr);
    by_shape[print(tr.term) + "\t" + print(tr.formula)].push_back(&tr);
  }

  for (auto& [tr, ws] : val) {
    Valuation g = restrict_to(tr.val, free_vars(tr.formula));
    if (g != tr.val) {
      auto [t2, v2] = entry({tr.term, tr.formula, g});
      flows.push_back({t2, v2, {&ws}, nullptr});
    }
    switch (tr.term.kind()) {
      case Term::Kind::Sum: {
        auto a = entry({tr.term.left(), tr.formula, tr.val});
        auto b = entry({tr.term.right(), tr.formula, tr.val});
        flows.push_back({&tr, &ws, {a.second, b.second}, nullptr});
        break;
      }
      case Term::Kind::Bang: {
        const Formula& f = tr.formula;
        if (f.kind() != Formula::Kind::Just || !(f.term() == tr.term.inner())) break;
        bool gated = true;
        for (const auto& x : f.index())
          if (!g.count(x)) gated = false;
        if (!gated || g != tr.val) break;
        auto inner = entry({tr.term.inner(), f.child(), restrict_to(g, free_vars(f.child()))});
        flows.push_back({&tr, &ws, {inner.second}, nullptr});
        break;
      }
      case Term::Kind::Gen: {
        const Formula& f = tr.formula;
        if (f.kind() != Formula::Kind::Forall || f.bound_var() != tr.term.gen_index()) break;
        const Var& x = tr.term.gen_index();
        if (tr.val.count(x) && free_vars(f.child()).contains(x)) break;
        auto inner = entry({tr.term.inner(), f.child(), tr.val});
        flows.push_back({&tr, &ws, {inner.second}, nullptr});
        break;
      }
      case Term::Kind::App: {
        // Implication/antecedent pairs present in the universe at exactly
        // this valuation; missing pairs simply contribute nothing.
        for (const auto& [other, ovs] : val) {
          if (!(other.term == tr.term.left()) || !(other.val == tr.val)) continue;
          if (other.formula.kind() != Formula::Kind::Imp) continue;
          if (!(other.formula.rhs() == tr.formula)) continue;
          auto ant = val.find({tr.term.right(), other.formula.lhs(), tr.val});
          if (ant == val.end()) continue;
          flows.push_back({&tr, &ws, {&ovs}, &ant->second});
        }
        break;
      }
      default:
        break;
    }
  }

  do {
    changed = false;

    for (const Flow& fl : flows) {
      if (fl.also) {
        for (const auto& w : *fl.sources[0])
          if (fl.also->count(w)) add(*fl.target, *fl.target_val, w);
      } else {
        for (const std::set<World>* src : fl.sources)
          for (const auto& w : *src) add(*fl.target, *fl.target_val, w);
      }
    }

    // R-closure.
    for (auto& [tr, ws] : val) {
      std::vector<World> cur(ws.begin(), ws.end());
      for (const auto& w : cur)
        for (const auto& u : m.successors(w)) add(tr, ws, u);
    }

    // Key equalization: canonical-key-equal restricted triples agree.
    for (const auto& [key, group] : by_key) {
      (void)key;
      if (group.size() < 2) continue;
      std::set<World> un;
      for (const EvidenceTriple* tr : group) {
        const std::set<World>& ws = val.at(*tr);
        un.insert(ws.begin(), ws.end());
      }
      for (const EvidenceTriple* tr : group) {
        std::set<World>& ws = val.at(*tr);
        for (const auto& w : un) add(*tr, ws, w);
      }
    }

    // Extension within shape groups.
    for (const auto& [shape, group] : by_shape) {
      (void)shape;
      for (const EvidenceTriple* a : group)
        for (const EvidenceTriple* b : group) {
          if (a == b || !subvaluation(a->val, b->val) || a->val == b->val) continue;
          std::set<World>& target = val.at(*b);
          for (const auto& w : val.at(*a)) add(*b, target, w);
        }
    }
  } while (changed);

  return val;
}

}  // namespace folp
