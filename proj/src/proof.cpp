#include "folp/proof.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "folp/parse.hpp"

namespace folp {

void ConstantSpec::add(std::string constant, Formula f) {
  if (contains(constant, f)) return;
  entries_.push_back({std::move(constant), std::move(f)});
}

bool ConstantSpec::contains(const std::string& constant, const Formula& f) const {
  for (const auto& e : entries_)
    if (e.constant == constant && e.formula == f) return true;
  return false;
}

namespace {

// Enumerates all total maps FV(f) -> universe, recursing variable by variable.
void for_each_renaming(const std::vector<Var>& fv, size_t i, const VarSet& universe,
                       VarRenaming& acc, const std::function<void(const VarRenaming&)>& fn) {
  if (i == fv.size()) {
    fn(acc);
    return;
  }
  for (const Var& u : universe) {
    acc[fv[i]] = u;
    for_each_renaming(fv, i + 1, universe, acc, fn);
  }
  acc.erase(fv[i]);
}

}  // namespace

std::vector<CsIssue> validate_cs(const ConstantSpec& cs, const VarSet& universe) {
  std::vector<CsIssue> issues;
  for (const auto& e : cs.entries()) {
    if (!is_axiom(e.formula)) {
      issues.push_back({CsIssue::Kind::NonAxiomEntry, e.constant, e.formula,
                        "entry " + e.constant + " : " + print(e.formula) +
                            " is not an axiom instance"});
    }
  }
  if (cs.variant_closed && !universe.empty()) {
    for (const auto& e : cs.entries()) {
      VarSet fv_set = free_vars(e.formula);
      const std::vector<Var>& fv = fv_set.items();
      VarRenaming acc;
      for_each_renaming(fv, 0, universe, acc, [&](const VarRenaming& sigma) {
        auto variant = try_rename(e.formula, sigma);
        if (!variant) return;  // capture: this renaming yields no variant
        if (!cs.contains(e.constant, *variant)) {
          issues.push_back({CsIssue::Kind::MissingVariant, e.constant, *variant,
                            "declared variant-closed but missing " + e.constant + " : " +
                                print(*variant)});
        }
      });
    }
  }
  return issues;
}

Justification Justification::axiom(SchemaId id) {
  Justification j;
  j.kind = Kind::Axiom;
  j.schema = id;
  return j;
}
Justification Justification::cs(std::string constant) {
  Justification j;
  j.kind = Kind::Cs;
  j.constant = std::move(constant);
  return j;
}
Justification Justification::hyp_ref(std::string label) {
  Justification j;
  j.kind = Kind::Hyp;
  j.hyp = std::move(label);
  return j;
}
Justification Justification::mp(std::string imp_line, std::string arg_line) {
  Justification j;
  j.kind = Kind::Mp;
  j.ref1 = std::move(imp_line);
  j.ref2 = std::move(arg_line);
  return j;
}
Justification Justification::gen(Var x, std::string line) {
  Justification j;
  j.kind = Kind::Gen;
  j.gen_var = std::move(x);
  j.ref1 = std::move(line);
  return j;
}
Justification Justification::nec(std::string line) {
  Justification j;
  j.kind = Kind::Nec;
  j.ref1 = std::move(line);
  return j;
}

std::string Justification::to_string() const {
  switch (kind) {
    case Kind::Axiom: return std::string("axiom ") + schema_name(schema);
    case Kind::Cs: return "cs " + constant;
    case Kind::Hyp: return "hyp " + hyp;
    case Kind::Mp: return "mp " + ref1 + " " + ref2;
    case Kind::Gen: return "gen " + gen_var + " " + ref1;
    case Kind::Nec: return "nec " + ref1;
  }
  return "?";
}

CheckReport check(const Derivation& d) {
  CheckReport report;
  report.ok = true;

  std::map<std::string, const Hypothesis*> hyp_by_label;
  for (const auto& h : d.hyps) {
    if (!hyp_by_label.emplace(h.label, &h).second) {
      report.ok = false;
      report.message = "duplicate hypothesis label " + h.label;
      return report;
    }
  }
  for (const auto& e : d.cs.entries()) {
    if (!is_axiom(e.formula)) {
      report.ok = false;
      report.message = "constant specification entry " + e.constant + " : " +
                       print(e.formula) + " is not an axiom instance";
      return report;
    }
  }
  if (d.lines.empty()) {
    report.ok = false;
    report.message = "derivation has no lines";
    return report;
  }

  std::map<std::string, size_t> pos;  // label -> index, filled as lines pass by
  std::vector<std::set<std::string>> deps(d.lines.size());

  auto fail = [&](size_t i, LineVerdict& v, const std::string& msg) {
    v.ok = false;
    v.message = msg;
    if (report.ok) report.first_bad = d.lines[i].label;
    report.ok = false;
  };

  // Resolves a cited label to an earlier position.
  auto resolve = [&](const std::string& ref, size_t i) -> std::optional<size_t> {
    auto it = pos.find(ref);
    if (it == pos.end() || it->second >= i) return std::nullopt;
    return it->second;
  };

  for (size_t i = 0; i < d.lines.size(); ++i) {
    const Line& ln = d.lines[i];
    LineVerdict v;
    v.label = ln.label;
    if (pos.count(ln.label)) {
      fail(i, v, "duplicate line label");
      report.lines.push_back(std::move(v));
      pos.emplace(ln.label + "#dup" + std::to_string(i), i);
      continue;
    }

    switch (ln.just.kind) {
      case Justification::Kind::Axiom: {
        if (!matches_schema(ln.formula, ln.just.schema))
          fail(i, v, std::string("formula is not an instance of ") +
                         schema_name(ln.just.schema));
        break;
      }
      case Justification::Kind::Cs: {
        const Formula& f = ln.formula;
        if (f.kind() != Formula::Kind::Just || f.term().kind() != Term::Kind::JConst ||
            f.term().name() != ln.just.constant || !f.index().empty())
          fail(i, v, "a constant specification line must read [" + ln.just.constant + "]{} F");
        else if (!d.cs.contains(ln.just.constant, f.child()))
          fail(i, v, "constant specification has no entry " + ln.just.constant + " : " +
                         print(f.child()));
        break;
      }
      case Justification::Kind::Hyp: {
        auto it = hyp_by_label.find(ln.just.hyp);
        if (it == hyp_by_label.end())
          fail(i, v, "unknown hypothesis " + ln.just.hyp);
        else if (it->second->formula != ln.formula)
          fail(i, v, "formula differs from hypothesis " + ln.just.hyp);
        else {
          deps[i].insert(ln.just.hyp);
          v.depends_on.assign(deps[i].begin(), deps[i].end());
        }
        break;
      }
      case Justification::Kind::Mp: {
        auto a = resolve(ln.just.ref1, i);
        auto b = resolve(ln.just.ref2, i);
        if (!a || !b) {
          fail(i, v, "modus ponens cites a line that is missing or not earlier");
          break;
        }
        const Formula& fi = d.lines[*a].formula;  // candidate implication
        const Formula& fj = d.lines[*b].formula;  // candidate argument
        bool fwd = fi.kind() == Formula::Kind::Imp && fi.lhs() == fj && fi.rhs() == ln.formula;
        bool bwd = fj.kind() == Formula::Kind::Imp && fj.lhs() == fi && fj.rhs() == ln.formula;
        if (!fwd && !bwd) {
          fail(i, v, "modus ponens does not connect lines " + ln.just.ref1 + " and " +
                         ln.just.ref2 + " to this formula");
          break;
        }
        deps[i].insert(deps[*a].begin(), deps[*a].end());
        deps[i].insert(deps[*b].begin(), deps[*b].end());
        v.depends_on.assign(deps[i].begin(), deps[i].end());
        break;
      }
      case Justification::Kind::Gen: {
        auto a = resolve(ln.just.ref1, i);
        if (!a) {
          fail(i, v, "generalization cites a line that is missing or not earlier");
          break;
        }
        if (ln.formula.kind() != Formula::Kind::Forall ||
            ln.formula.bound_var() != ln.just.gen_var ||
            ln.formula.child() != d.lines[*a].formula) {
          fail(i, v, "formula is not forall " + ln.just.gen_var + ". (line " + ln.just.ref1 + ")");
          break;
        }
        bool blocked = false;
        for (const auto& hl : deps[*a]) {
          if (free_vars(hyp_by_label.at(hl)->formula).contains(ln.just.gen_var)) {
            fail(i, v, "generalization over " + ln.just.gen_var +
                           " is blocked: variable is free in hypothesis " + hl);
            blocked = true;
            break;
          }
        }
        if (blocked) break;
        deps[i] = deps[*a];
        v.depends_on.assign(deps[i].begin(), deps[i].end());
        break;
      }
      case Justification::Kind::Nec: {
        auto a = resolve(ln.just.ref1, i);
        if (!a) {
          fail(i, v, "necessitation cites a line that is missing or not earlier");
          break;
        }
        if (d.lines[*a].just.kind != Justification::Kind::Axiom) {
          fail(i, v, "necessitation requires line " + ln.just.ref1 +
                         " to be justified as an axiom");
          break;
        }
        if (ln.formula.kind() != Formula::Kind::Box || !ln.formula.index().empty() ||
            ln.formula.child() != d.lines[*a].formula) {
          fail(i, v, "formula is not box{} (line " + ln.just.ref1 + ")");
          break;
        }
        break;
      }
    }

    pos.emplace(ln.label, i);
    report.lines.push_back(std::move(v));
  }

  if (d.goal.valid() && d.lines.back().formula != d.goal) {
    report.ok = false;
    if (report.message.empty())
      report.message = "last line does not state the goal " + print(d.goal);
  }
  return report;
}

}  // namespace folp
