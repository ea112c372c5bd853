#include "folp/transport.hpp"

#include "folp/parse.hpp"

namespace folp {

namespace {

Formula rename_or_fail(const Formula& f, const VarRenaming& s, const std::string& where) {
  CaptureError err;
  std::optional<Formula> out = try_rename_all(f, s, &err);
  if (!out)
    throw Error(Error::Kind::Input,
                "transport failed at " + where + ": " + err.to_string());
  return *out;
}

}  // namespace

Derivation transport(const Derivation& d, const VarRenaming& sigma) {
  // Only the statement's free variables move; internal names stay put.
  VarSet statement;
  for (const auto& h : d.hyps) statement = statement.united(free_vars(h.formula));
  if (d.goal.valid())
    statement = statement.united(free_vars(d.goal));
  else if (!d.lines.empty())
    statement = statement.united(free_vars(d.lines.back().formula));

  VarRenaming s;
  for (const auto& [from, to] : sigma)
    if (statement.contains(from) && from != to) s.emplace(from, to);

  Derivation out;
  out.cs = d.cs;
  if (s.empty()) {
    out = d;
    return out;
  }

  for (const auto& h : d.hyps)
    out.hyps.push_back({h.label, rename_or_fail(h.formula, s, "hypothesis " + h.label)});

  for (const auto& ln : d.lines) {
    Line nl = ln;
    nl.formula = rename_or_fail(ln.formula, s, "line " + ln.label);
    if (nl.just.kind == Justification::Kind::Gen) {
      auto it = s.find(nl.just.gen_var);
      if (it != s.end()) nl.just.gen_var = it->second;
    }
    if (nl.just.kind == Justification::Kind::Cs &&
        !(nl.formula == ln.formula)) {
      const Formula& variant = nl.formula.child();
      if (!d.cs.variant_closed)
        throw Error(Error::Kind::Input,
                    "transport failed at line " + ln.label +
                        ": renaming a constant specification line requires the "
                        "specification to be declared variant_closed");
      if (!d.cs.contains(nl.just.constant, variant))
        throw Error(Error::Kind::Input,
                    "transport failed at line " + ln.label +
                        ": constant specification lacks the variant " + nl.just.constant +
                        " : " + print(variant));
    }
    out.lines.push_back(std::move(nl));
  }

  if (d.goal.valid()) out.goal = rename_or_fail(d.goal, s, "the goal");

  CheckReport rep = check(out);
  if (!rep.ok)
    throw Error(Error::Kind::Input,
                "transport failed: the renamed derivation does not check (" +
                    (rep.message.empty() ? "line " + rep.first_bad : rep.message) + ")");
  return out;
}

}  // namespace folp
