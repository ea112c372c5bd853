#include "folp/model.hpp"

#include <algorithm>
#include <sstream>

#include "folp/evidence.hpp"
#include "folp/parse.hpp"

namespace folp {

Valuation restrict_to(const Valuation& f, const VarSet& X) {
  Valuation out;
  for (const auto& [v, o] : f)
    if (X.contains(v)) out.emplace(v, o);
  return out;
}

bool subvaluation(const Valuation& small, const Valuation& big) {
  for (const auto& [v, o] : small) {
    auto it = big.find(v);
    if (it == big.end() || it->second != o) return false;
  }
  return true;
}

std::string print_valuation(const Valuation& f) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [v, o] : f) {
    if (!first) os << ", ";
    first = false;
    os << v << "=" << o;
  }
  os << "}";
  return os.str();
}

void BasicEvidence::set(const Term& t, const Formula& f, const Valuation& val,
                        std::set<World> worlds) {
  if (t.kind() != Term::Kind::JVar && t.kind() != Term::Kind::JConst)
    throw Error(Error::Kind::Input,
                "basic evidence is keyed by justification variables or constants, got " +
                    print(t));
  table_[{t, f, val}] = std::move(worlds);
}

const std::set<World>* BasicEvidence::find(const Term& t, const Formula& f,
                                           const Valuation& val) const {
  auto it = table_.find({t, f, val});
  return it == table_.end() ? nullptr : &it->second;
}

std::set<Obj> FiniteModel::objects() const {
  std::set<Obj> out;
  for (const auto& [w, d] : domain) out.insert(d.begin(), d.end());
  return out;
}

bool FiniteModel::in_domain(const World& w, const Obj& o) const {
  auto it = domain.find(w);
  return it != domain.end() && it->second.count(o) != 0;
}

bool FiniteModel::related(const World& w, const World& u) const {
  auto it = access.find(w);
  return it != access.end() && it->second.count(u) != 0;
}

const std::set<World>& FiniteModel::successors(const World& w) const {
  static const std::set<World> kEmpty;
  auto it = access.find(w);
  return it == access.end() ? kEmpty : it->second;
}

bool FiniteModel::atom_holds(const std::string& pred, const World& w,
                             const std::vector<Obj>& tuple) const {
  auto pit = interp.find(pred);
  if (pit == interp.end()) return false;
  auto wit = pit->second.find(w);
  return wit != pit->second.end() && wit->second.count(tuple) != 0;
}

std::vector<std::string> validate_model(const FiniteModel& m) {
  std::vector<std::string> issues;
  auto note = [&](std::string s) { issues.push_back(std::move(s)); };

  if (m.worlds.empty()) note("model has no worlds");

  for (const auto& [w, succ] : m.access) {
    if (!m.has_world(w)) note("accessibility mentions unknown world '" + w + "'");
    for (const auto& u : succ)
      if (!m.has_world(u)) note("accessibility mentions unknown world '" + u + "'");
  }
  for (const auto& w : m.worlds) {
    if (!m.related(w, w)) note("accessibility is not reflexive at " + w);
    for (const auto& u : m.successors(w))
      for (const auto& v : m.successors(u))
        if (!m.related(w, v))
          note("accessibility is not transitive: " + w + " -> " + u + " -> " + v +
               " without " + w + " -> " + v);
  }

  for (const auto& [w, d] : m.domain) {
    if (!m.has_world(w)) note("domain given for unknown world '" + w + "'");
    (void)d;
  }
  for (const auto& w : m.worlds) {
    auto it = m.domain.find(w);
    if (it == m.domain.end() || it->second.empty()) {
      note("world " + w + " has an empty domain");
      continue;
    }
    for (const auto& u : m.successors(w))
      for (const auto& o : it->second)
        if (!m.in_domain(u, o))
          note("domains are not monotone along " + w + " -> " + u + ": object '" + o +
               "' disappears");
  }

  for (const auto& [p, by_world] : m.interp) {
    auto ar = m.pred_arity.find(p);
    for (const auto& [w, tuples] : by_world) {
      if (!m.has_world(w)) note("interpretation of " + p + " at unknown world '" + w + "'");
      for (const auto& tup : tuples) {
        if (ar != m.pred_arity.end() && tup.size() != ar->second)
          note("interpretation of " + p + " at " + w + " has a tuple of arity " +
               std::to_string(tup.size()) + ", expected " + std::to_string(ar->second));
        for (const auto& o : tup)
          if (!m.in_domain(w, o))
            note("interpretation of " + p + " at " + w + " uses object '" + o +
                 "' outside the domain");
      }
    }
  }

  std::set<Obj> all = m.objects();
  for (const auto& [triple, ws] : m.basic.table()) {
    if (triple.term.kind() != Term::Kind::JVar && triple.term.kind() != Term::Kind::JConst)
      note("basic evidence keyed by a compound term " + print(triple.term));
    VarSet fv = free_vars(triple.formula);
    for (const auto& [v, o] : triple.val) {
      if (!fv.contains(v))
        note("basic evidence valuation assigns '" + v + "', which is not free in " +
             print(triple.formula));
      if (!all.count(o))
        note("basic evidence valuation uses unknown object '" + o + "'");
    }
    for (const auto& w : ws)
      if (!m.has_world(w)) note("basic evidence mentions unknown world '" + w + "'");
  }

  for (const auto& e : m.cs.entries())
    if (!is_axiom(e.formula))
      note("constant specification entry " + e.constant + " : " + print(e.formula) +
           " is not an axiom instance");

  return issues;
}

FiniteModel rt_closure(FiniteModel m) {
  for (const auto& w : m.worlds) m.access[w].insert(w);
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [w, succ] : m.access) {
      std::set<World> grow = succ;
      for (const auto& u : succ) {
        const auto& next = m.successors(u);
        grow.insert(next.begin(), next.end());
      }
      if (grow.size() != succ.size()) {
        succ = std::move(grow);
        changed = true;
      }
    }
  }
  return m;
}

namespace {

// All free variables mapped inside the world's domain.
bool covered(const FiniteModel& m, const World& w, const Valuation& nu, const VarSet& vars) {
  for (const auto& v : vars) {
    auto it = nu.find(v);
    if (it == nu.end() || !m.in_domain(w, it->second)) return false;
  }
  return true;
}

bool eval_rec(const FiniteModel& m, const EvidenceOracle& ev, const World& w,
              const Valuation& nu, const Formula& f, const EvalLimits& lim) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      std::vector<Obj> tuple;
      tuple.reserve(f.args().size());
      for (const auto& v : f.args()) {
        auto it = nu.find(v);
        if (it == nu.end() || !m.in_domain(w, it->second)) return false;
        tuple.push_back(it->second);
      }
      return m.atom_holds(f.pred(), w, tuple);
    }
    case Formula::Kind::Not:
      return covered(m, w, nu, free_vars(f)) && !eval_rec(m, ev, w, nu, f.child(), lim);
    case Formula::Kind::And:
      return eval_rec(m, ev, w, nu, f.lhs(), lim) && eval_rec(m, ev, w, nu, f.rhs(), lim);
    case Formula::Kind::Or:
      return covered(m, w, nu, free_vars(f)) &&
             (eval_rec(m, ev, w, nu, f.lhs(), lim) || eval_rec(m, ev, w, nu, f.rhs(), lim));
    case Formula::Kind::Imp:
      return covered(m, w, nu, free_vars(f)) &&
             (!eval_rec(m, ev, w, nu, f.lhs(), lim) || eval_rec(m, ev, w, nu, f.rhs(), lim));
    case Formula::Kind::Iff:
      return covered(m, w, nu, free_vars(f)) &&
             eval_rec(m, ev, w, nu, f.lhs(), lim) == eval_rec(m, ev, w, nu, f.rhs(), lim);
    case Formula::Kind::Forall: {
      auto dit = m.domain.find(w);
      if (dit == m.domain.end()) return true;  // vacuous over an empty domain
      Valuation val2 = nu;
      for (const auto& a : dit->second) {
        val2[f.bound_var()] = a;
        if (!eval_rec(m, ev, w, val2, f.child(), lim)) return false;
      }
      return true;
    }
    case Formula::Kind::Exists: {
      if (!covered(m, w, nu, free_vars(f))) return false;
      auto dit = m.domain.find(w);
      if (dit == m.domain.end()) return false;
      Valuation val2 = nu;
      for (const auto& a : dit->second) {
        val2[f.bound_var()] = a;
        if (eval_rec(m, ev, w, val2, f.child(), lim)) return true;
      }
      return false;
    }
    case Formula::Kind::Box:
    case Formula::Kind::Just: {
      if (!covered(m, w, nu, f.index())) return false;
      const Formula& body = f.child();
      VarSet fv_body = free_vars(body);
      if (f.kind() == Formula::Kind::Just) {
        Valuation key = restrict_to(nu, fv_body.intersect(f.index()));
        std::set<World> e = ev.query(f.term(), body, key);
        if (!e.count(w)) return false;
      }
      VarSet opened = fv_body.minus(f.index());
      if (opened.size() > lim.max_box_vars)
        throw Error(Error::Kind::Resource,
                    "modal prefix opens " + std::to_string(opened.size()) +
                        " variables, limit is " + std::to_string(lim.max_box_vars));
      Valuation base = restrict_to(nu, fv_body.intersect(f.index()));
      const std::vector<Var>& ys = opened.items();
      for (const auto& u : m.successors(w)) {
        if (ys.empty()) {
          if (!eval_rec(m, ev, u, base, body, lim)) return false;
          continue;
        }
        auto dit = m.domain.find(u);
        if (dit == m.domain.end() || dit->second.empty())
          continue;  // no assignments of the opened variables: vacuous here
        std::vector<Obj> du(dit->second.begin(), dit->second.end());
        // Enumerate all assignments of the opened variables into D_u.
        std::vector<size_t> idx(ys.size(), 0);
        while (true) {
          Valuation val2 = base;
          for (size_t i = 0; i < ys.size(); ++i) val2[ys[i]] = du[idx[i]];
          if (!eval_rec(m, ev, u, val2, body, lim)) return false;
          size_t i = ys.size();
          bool rolled = false;
          while (i > 0) {
            --i;
            if (++idx[i] < du.size()) {
              rolled = true;
              break;
            }
            idx[i] = 0;
          }
          if (!rolled) break;
        }
      }
      return true;
    }
  }
  return false;
}

}  // namespace

bool eval_at(const FiniteModel& m, const EvidenceOracle& ev, const World& w,
             const Valuation& nu, const Formula& f, const EvalLimits& lim) {
  if (!m.has_world(w)) throw Error(Error::Kind::UnknownWorld, "unknown world '" + w + "'");
  if (m.objects().size() > lim.max_domain)
    throw Error(Error::Kind::Resource, "domain has " + std::to_string(m.objects().size()) +
                                           " objects, limit is " +
                                           std::to_string(lim.max_domain));
  for (const auto& v : free_vars(f))
    if (!nu.count(v))
      throw Error(Error::Kind::Input, "valuation does not cover free variable '" + v + "'");
  return eval_rec(m, ev, w, nu, f, lim);
}

bool holds(const FiniteModel& m, const EvidenceOracle& ev, const Valuation& nu,
           const Formula& f, const EvalLimits& lim) {
  VarSet fv = free_vars(f);
  for (const auto& w : m.worlds) {
    if (!covered(m, w, nu, fv)) continue;  // vacuous at worlds the valuation misses
    if (!eval_at(m, ev, w, nu, f, lim)) return false;
  }
  return true;
}

ValidityResult valid_in_model(const FiniteModel& m, const EvidenceOracle& ev,
                              const Formula& f, const EvalLimits& lim) {
  ValidityResult res;
  std::set<Obj> all = m.objects();
  if (all.size() > lim.max_domain)
    throw Error(Error::Kind::Resource, "domain has " + std::to_string(all.size()) +
                                           " objects, limit is " +
                                           std::to_string(lim.max_domain));
  VarSet fv = free_vars(f);
  const std::vector<Var>& vars = fv.items();
  std::vector<Obj> objs(all.begin(), all.end());
  if (!vars.empty() && objs.empty()) return res;  // no valuations to refute it

  // Enumerates valuations in lexicographic order over sorted variables and
  // objects, so the reported witness is deterministic.
  std::vector<size_t> idx(vars.size(), 0);
  while (true) {
    Valuation nu;
    for (size_t i = 0; i < vars.size(); ++i) nu[vars[i]] = objs[idx[i]];
    for (const auto& w : m.worlds) {
      bool cov = true;
      for (const auto& v : fv)
        if (!m.in_domain(w, nu.at(v))) {
          cov = false;
          break;
        }
      if (!cov) continue;
      if (!eval_at(m, ev, w, nu, f, lim)) {
        res.valid = false;
        res.has_witness = true;
        res.witness = nu;
        res.world = w;
        return res;
      }
    }
    if (vars.empty() || objs.empty()) break;
    size_t i = vars.size();
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
  return res;
}

}  // namespace folp
