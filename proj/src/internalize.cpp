#include "folp/internalize.hpp"

#include <map>
#include <set>
#include <string>

#include "folp/axioms.hpp"
#include "folp/parse.hpp"

namespace folp {

namespace {

void collect_names(const Term& t, std::set<std::string>& vars, std::set<std::string>& consts) {
  switch (t.kind()) {
    case Term::Kind::JVar: vars.insert(t.name()); return;
    case Term::Kind::JConst: consts.insert(t.name()); return;
    case Term::Kind::App:
    case Term::Kind::Sum:
      collect_names(t.left(), vars, consts);
      collect_names(t.right(), vars, consts);
      return;
    case Term::Kind::Bang:
    case Term::Kind::Gen: collect_names(t.inner(), vars, consts); return;
  }
}

void collect_names(const Formula& f, std::set<std::string>& vars, std::set<std::string>& consts) {
  switch (f.kind()) {
    case Formula::Kind::Atom: return;
    case Formula::Kind::Not:
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
    case Formula::Kind::Box: collect_names(f.child(), vars, consts); return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp:
    case Formula::Kind::Iff:
      collect_names(f.lhs(), vars, consts);
      collect_names(f.rhs(), vars, consts);
      return;
    case Formula::Kind::Just:
      collect_names(f.term(), vars, consts);
      collect_names(f.child(), vars, consts);
      return;
  }
}

// Names for fresh certificates, clear of everything the derivation mentions.
class FreshNames {
 public:
  explicit FreshNames(const Derivation& d) {
    for (const auto& h : d.hyps) collect_names(h.formula, jvars_, jconsts_);
    for (const auto& e : d.cs.entries()) {
      jconsts_.insert(e.constant);
      collect_names(e.formula, jvars_, jconsts_);
    }
    for (const auto& ln : d.lines) collect_names(ln.formula, jvars_, jconsts_);
  }

  std::string fresh_const() {
    while (jconsts_.count("c" + std::to_string(next_const_))) ++next_const_;
    std::string c = "c" + std::to_string(next_const_++);
    jconsts_.insert(c);
    return c;
  }

  std::string fresh_jvar() {
    while (jvars_.count("p" + std::to_string(next_var_))) ++next_var_;
    std::string p = "p" + std::to_string(next_var_++);
    jvars_.insert(p);
    return p;
  }

 private:
  std::set<std::string> jvars_, jconsts_;
  size_t next_const_ = 9000;
  size_t next_var_ = 9000;
};

// Emits the output derivation line by line with sequential labels.
class Builder {
 public:
  Builder(const Derivation& input, VarSet index)
      : fresh_(input), index_(std::move(index)) {
    out_.cs = input.cs;
  }

  std::string add(Formula f, Justification j) {
    std::string label = std::to_string(++count_);
    out_.lines.push_back({label, std::move(f), std::move(j)});
    return label;
  }

  // Reuses one constant per distinct certified formula.
  std::string cs_constant(const Formula& f) {
    auto it = const_for_.find(print(f));
    if (it != const_for_.end()) return it->second;
    std::string c = fresh_.fresh_const();
    const_for_.emplace(print(f), c);
    out_.cs.add(c, f);
    return c;
  }

  // Index monotonicity: [t]{cur} F  to  [t]{index_} F, one variable per step.
  std::string lift(const Term& t, VarSet cur, const Formula& body, std::string label) {
    for (const auto& y : index_.minus(cur)) {
      VarSet next = cur;
      next.insert(y);
      Formula prem = Formula::just(t, cur, body);
      Formula conc = Formula::just(t, next, body);
      std::string ax = add(Formula::imp(prem, conc), Justification::axiom(SchemaId::A2));
      label = add(conc, Justification::mp(ax, label));
      cur = next;
    }
    return label;
  }

  // Certificate introduction: from a line stating F, derive [!t]{from} F via
  // positive introspection (F itself must be [t]{from} G), then lift.
  std::string introspect_and_lift(const Term& t, const VarSet& from, const Formula& f,
                                  const std::string& label) {
    Formula intro = Formula::just(Term::bang(t), from, f);
    std::string ax = add(Formula::imp(f, intro), Justification::axiom(SchemaId::A6));
    std::string l2 = add(intro, Justification::mp(ax, label));
    return lift(Term::bang(t), from, f, l2);
  }

  const VarSet& index() const { return index_; }
  Derivation& out() { return out_; }

 private:
  FreshNames fresh_;
  VarSet index_;
  Derivation out_;
  size_t count_ = 0;
  std::map<std::string, std::string> const_for_;
};

}  // namespace

Internalized internalize_just(const Derivation& d) {
  CheckReport rep = check(d);
  if (!rep.ok)
    throw Error(Error::Kind::Input,
                "cannot internalize: the derivation does not check (" +
                    (rep.message.empty() ? "line " + rep.first_bad : rep.message) + ")");

  VarSet X;
  for (const auto& h : d.hyps) {
    if (h.formula.kind() != Formula::Kind::Just)
      throw Error(Error::Kind::Input, "cannot internalize: hypothesis " + h.label +
                                          " is not certificate-shaped: " + print(h.formula));
    X = X.united(h.formula.index());
  }

  Builder b(d, X);

  // Hypotheses carry over under uniform labels.
  std::map<std::string, std::string> hyp_label;
  for (size_t i = 0; i < d.hyps.size(); ++i) {
    std::string label = "h" + std::to_string(i + 1);
    hyp_label.emplace(d.hyps[i].label, label);
    b.out().hyps.push_back({label, d.hyps[i].formula});
  }

  std::map<std::string, Formula> formula_of;  // input label -> formula
  struct DoneLine {
    Term term;
    std::string label;  // output line stating [term]{X} formula
  };
  std::map<std::string, DoneLine> done;  // input label -> evidence so far

  for (const auto& ln : d.lines) {
    switch (ln.just.kind) {
      case Justification::Kind::Axiom: {
        std::string c = b.cs_constant(ln.formula);
        Term tc = Term::jconst(c);
        std::string l1 =
            b.add(Formula::just(tc, {}, ln.formula), Justification::cs(c));
        done[ln.label] = {tc, b.lift(tc, {}, ln.formula, l1)};
        break;
      }
      case Justification::Kind::Cs: {
        // ln.formula is [c]{} G; its certificate is !c.
        Term tc = ln.formula.term();
        std::string l1 = b.add(ln.formula, Justification::cs(ln.just.constant));
        done[ln.label] = {Term::bang(tc),
                          b.introspect_and_lift(tc, {}, ln.formula, l1)};
        break;
      }
      case Justification::Kind::Hyp: {
        // ln.formula restates the certificate-shaped hypothesis [s]{X_i} G.
        Term s = ln.formula.term();
        std::string l1 =
            b.add(ln.formula, Justification::hyp_ref(hyp_label.at(ln.just.hyp)));
        done[ln.label] = {Term::bang(s),
                          b.introspect_and_lift(s, ln.formula.index(), ln.formula, l1)};
        break;
      }
      case Justification::Kind::Mp: {
        const Formula& f1 = formula_of.at(ln.just.ref1);
        bool fwd = f1.kind() == Formula::Kind::Imp &&
                   f1.lhs() == formula_of.at(ln.just.ref2) && f1.rhs() == ln.formula;
        const std::string& imp_ref = fwd ? ln.just.ref1 : ln.just.ref2;
        const std::string& ant_ref = fwd ? ln.just.ref2 : ln.just.ref1;
        const DoneLine& di = done.at(imp_ref);
        const DoneLine& da = done.at(ant_ref);
        const Formula& ant = formula_of.at(ant_ref);
        Term ta = Term::app(di.term, da.term);
        Formula step = Formula::imp(Formula::just(da.term, X, ant),
                                    Formula::just(ta, X, ln.formula));
        std::string ax =
            b.add(Formula::imp(Formula::just(di.term, X, Formula::imp(ant, ln.formula)),
                               step),
                  Justification::axiom(SchemaId::A4));
        std::string m1 = b.add(step, Justification::mp(ax, di.label));
        done[ln.label] = {ta, b.add(Formula::just(ta, X, ln.formula),
                                    Justification::mp(m1, da.label))};
        break;
      }
      case Justification::Kind::Gen: {
        const Var& x = ln.just.gen_var;
        if (X.contains(x))
          throw Error(Error::Kind::Refused,
                      "cannot internalize: generalization over " + x +
                          " collides with the hypothesis index set at line " + ln.label);
        const DoneLine& di = done.at(ln.just.ref1);
        const Formula& body = formula_of.at(ln.just.ref1);
        Term tg = Term::gen(x, di.term);
        Formula conc = Formula::just(tg, X, ln.formula);
        std::string ax = b.add(Formula::imp(Formula::just(di.term, X, body), conc),
                               Justification::axiom(SchemaId::A7));
        done[ln.label] = {tg, b.add(conc, Justification::mp(ax, di.label))};
        break;
      }
      case Justification::Kind::Nec: {
        // ln.formula is box{} G for an axiom G; certify G by a fresh constant
        // a, its introspection by !a, and the modal step [a]{} G -> box{} G by
        // a second constant b; the certificate is (b . !a).
        const Formula& g = formula_of.at(ln.just.ref1);
        std::string a = b.cs_constant(g);
        Term ta = Term::jconst(a);
        Formula ja = Formula::just(ta, {}, g);
        Formula a8 = Formula::imp(ja, ln.formula);
        std::string bc = b.cs_constant(a8);
        Term tb = Term::jconst(bc);

        std::string l1 = b.add(ja, Justification::cs(a));
        Formula ija = Formula::just(Term::bang(ta), {}, ja);
        std::string ax1 = b.add(Formula::imp(ja, ija), Justification::axiom(SchemaId::A6));
        std::string l2 = b.add(ija, Justification::mp(ax1, l1));
        std::string l3 = b.add(Formula::just(tb, {}, a8), Justification::cs(bc));
        Term tba = Term::app(tb, Term::bang(ta));
        Formula step = Formula::imp(ija, Formula::just(tba, {}, ln.formula));
        std::string ax2 = b.add(
            Formula::imp(Formula::just(tb, {}, a8), step), Justification::axiom(SchemaId::A4));
        std::string m1 = b.add(step, Justification::mp(ax2, l3));
        std::string m2 =
            b.add(Formula::just(tba, {}, ln.formula), Justification::mp(m1, l2));
        done[ln.label] = {tba, b.lift(tba, {}, ln.formula, m2)};
        break;
      }
    }
    formula_of.emplace(ln.label, ln.formula);
  }

  const DoneLine& last = done.at(d.lines.back().label);
  Formula goal = Formula::just(last.term, X, d.lines.back().formula);
  b.out().goal = goal;

  CheckReport out_rep = check(b.out());
  if (!out_rep.ok)
    throw Error(Error::Kind::Internal,
                "internalization produced a derivation that does not check (" +
                    (out_rep.message.empty() ? "line " + out_rep.first_bad
                                             : out_rep.message) +
                    ")");
  return {last.term, X, std::move(b.out())};
}

Internalized internalize(const Derivation& d) {
  CheckReport rep = check(d);
  if (!rep.ok)
    throw Error(Error::Kind::Input,
                "cannot internalize: the derivation does not check (" +
                    (rep.message.empty() ? "line " + rep.first_bad : rep.message) + ")");

  if (d.hyps.empty()) return internalize_just(d);

  // Replace every hypothesis G by a certificate [p]{FV(G)} G and re-derive G
  // from it, so the certificate-shaped case applies.
  FreshNames fresh(d);
  std::set<std::string> used_labels;
  for (const auto& ln : d.lines) used_labels.insert(ln.label);
  auto unused = [&](std::string base) {
    while (used_labels.count(base)) base += "'";
    used_labels.insert(base);
    return base;
  };

  Derivation d2;
  d2.cs = d.cs;
  std::map<std::string, std::pair<std::string, std::string>> intro;  // hyp -> (A3 line, hyp line)
  for (const auto& h : d.hyps) {
    Formula cert = Formula::just(Term::jvar(fresh.fresh_jvar()), free_vars(h.formula),
                                 h.formula);
    d2.hyps.push_back({h.label, cert});
    std::string la = unused(h.label + ".cert");
    std::string lb = unused(h.label + ".use");
    d2.lines.push_back({la, cert, Justification::hyp_ref(h.label)});
    d2.lines.push_back(
        {lb, Formula::imp(cert, h.formula), Justification::axiom(SchemaId::A3)});
    intro.emplace(h.label, std::make_pair(lb, la));
  }
  for (const auto& ln : d.lines) {
    if (ln.just.kind == Justification::Kind::Hyp) {
      const auto& [lb, la] = intro.at(ln.just.hyp);
      d2.lines.push_back({ln.label, ln.formula, Justification::mp(lb, la)});
    } else {
      d2.lines.push_back(ln);
    }
  }
  d2.goal = d.lines.back().formula;
  return internalize_just(d2);
}

}  // namespace folp
