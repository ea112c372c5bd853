#include "folp/files.hpp"

#include <regex>
#include <sstream>

#include "folp/parse.hpp"

namespace folp {

namespace {

[[noreturn]] void fail(size_t lineno, const std::string& msg) {
  throw Error(Error::Kind::Input, "line " + std::to_string(lineno) + ": " + msg);
}

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// Removes a '#'-comment and surrounding blanks.
std::string logical_line(const std::string& raw) {
  size_t h = raw.find('#');
  return strip(h == std::string::npos ? raw : raw.substr(0, h));
}

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) {
    cur = strip(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

bool is_ident(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c))) return false;
  return true;
}

// Sublabel suffixes a, b, ..., z, aa, ab, ...
std::string alpha_suffix(size_t i) {
  std::string s;
  do {
    s.insert(s.begin(), static_cast<char>('a' + i % 26));
    i = i / 26;
  } while (i-- > 0);
  return s;
}

const std::regex kJustAxiom(R"(^(.*\S)\s+axiom\s+(\w+)$)");
const std::regex kJustCs(R"(^(.*\S)\s+cs\s+(\w+)$)");
const std::regex kJustHyp(R"(^(.*\S)\s+hyp\s+(\w+)$)");
const std::regex kJustMp(R"(^(.*\S)\s+mp\s+([\w.]+)\s+([\w.]+)$)");
const std::regex kJustGen(R"(^(.*\S)\s+gen\s+([a-z][A-Za-z0-9]*)\s+([\w.]+)$)");
const std::regex kJustNec(R"(^(.*\S)\s+nec\s+([\w.]+)$)");
const std::regex kJustNecx(R"(^(.*\S)\s+necx\s*\{([^{}]*)\}\s*([\w.]+)$)");

}  // namespace

Derivation load_proof(const std::string& text) {
  Derivation d;
  PredTable preds;
  std::istringstream is(text);
  std::string raw;
  size_t lineno = 0;
  bool saw_header = false, saw_qed = false;
  std::map<std::string, Formula> formula_by_label;

  auto parse_f = [&](const std::string& src) {
    try {
      return parse_formula(src, &preds);
    } catch (const Error& e) {
      fail(lineno, e.what());
    }
  };

  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = logical_line(raw);
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != "proof") fail(lineno, "expected 'proof' header");
      saw_header = true;
      continue;
    }
    if (saw_qed) fail(lineno, "content after qed");

    if (line.rfind("hyp ", 0) == 0) {
      size_t colon = line.find(':');
      if (colon == std::string::npos) fail(lineno, "expected 'hyp <label>: <formula>'");
      std::string label = strip(line.substr(4, colon - 4));
      if (!is_ident(label)) fail(lineno, "bad hypothesis label '" + label + "'");
      if (!d.lines.empty()) fail(lineno, "hypotheses must precede derivation lines");
      d.hyps.push_back({label, parse_f(line.substr(colon + 1))});
      continue;
    }
    if (line.rfind("cs ", 0) == 0) {
      size_t colon = line.find(':');
      if (colon == std::string::npos) fail(lineno, "expected 'cs <constant>: <formula>'");
      std::string c = strip(line.substr(3, colon - 3));
      if (!is_ident(c) || c[0] != 'c') fail(lineno, "bad constant name '" + c + "'");
      Formula f = parse_f(line.substr(colon + 1));
      if (!is_axiom(f))
        fail(lineno, "constant specification entry is not an axiom instance: " + print(f));
      d.cs.add(c, f);
      continue;
    }
    if (line.rfind("declare ", 0) == 0) {
      std::string what = strip(line.substr(8));
      if (what == "variant_closed")
        d.cs.variant_closed = true;
      else if (what == "axiomatically_appropriate")
        d.cs.axiomatically_appropriate = true;
      else
        fail(lineno, "unknown declaration '" + what + "'");
      continue;
    }
    if (line.rfind("qed", 0) == 0) {
      d.goal = parse_f(line.substr(3));
      saw_qed = true;
      continue;
    }

    // Derivation line: "<label>. <formula> <justification>".
    size_t dot = line.find(". ");
    if (dot == std::string::npos || dot == 0)
      fail(lineno, "expected '<label>. <formula> <justification>'");
    std::string label = line.substr(0, dot);
    if (label.find(' ') != std::string::npos) fail(lineno, "bad line label '" + label + "'");
    std::string rest = strip(line.substr(dot + 2));

    std::smatch m;
    Formula f;
    auto add_line = [&](Justification j) {
      f = parse_f(m[1].str());
      d.lines.push_back({label, f, std::move(j)});
      formula_by_label.emplace(label, f);
    };

    if (std::regex_match(rest, m, kJustAxiom)) {
      auto id = schema_from_name(m[2].str());
      if (!id) fail(lineno, "unknown axiom schema '" + m[2].str() + "'");
      add_line(Justification::axiom(*id));
    } else if (std::regex_match(rest, m, kJustCs)) {
      add_line(Justification::cs(m[2].str()));
    } else if (std::regex_match(rest, m, kJustHyp)) {
      add_line(Justification::hyp_ref(m[2].str()));
    } else if (std::regex_match(rest, m, kJustMp)) {
      add_line(Justification::mp(m[2].str(), m[3].str()));
    } else if (std::regex_match(rest, m, kJustGen)) {
      add_line(Justification::gen(m[2].str(), m[3].str()));
    } else if (std::regex_match(rest, m, kJustNec)) {
      add_line(Justification::nec(m[2].str()));
    } else if (std::regex_match(rest, m, kJustNecx)) {
      // Macro: necessitate the cited axiom line at the empty index, then
      // lift variables into the index one at a time.
      Formula user_f = parse_f(m[1].str());
      VarSet X;
      for (const auto& v : split_list(m[2].str(), ','))
        if (is_ident(v) && std::islower(static_cast<unsigned char>(v[0])))
          X.insert(v);
        else
          fail(lineno, "bad variable '" + v + "' in necx index");
      std::string ref = m[3].str();
      auto cited = formula_by_label.find(ref);
      if (cited == formula_by_label.end())
        fail(lineno, "necx cites unknown line " + ref);
      Formula boxed = Formula::box({}, cited->second);
      if (X.empty()) {
        d.lines.push_back({label, user_f, Justification::nec(ref)});
        formula_by_label.emplace(label, user_f);
        continue;
      }
      size_t suffix = 0;
      auto sub = [&] { return label + "." + alpha_suffix(suffix++); };
      std::string prev = sub();
      d.lines.push_back({prev, boxed, Justification::nec(ref)});
      VarSet Y;
      for (auto it = X.begin(); it != X.end(); ++it) {
        VarSet Y2 = Y;
        Y2.insert(*it);
        Formula step = Formula::imp(Formula::box(Y, cited->second),
                                    Formula::box(Y2, cited->second));
        bool last = std::next(it) == X.end();
        std::string ax_label = sub();
        d.lines.push_back({ax_label, step, Justification::axiom(SchemaId::A2P)});
        std::string mp_label = last ? label : sub();
        Formula mp_f = last ? user_f : Formula::box(Y2, cited->second);
        d.lines.push_back({mp_label, mp_f, Justification::mp(ax_label, prev)});
        prev = mp_label;
        Y = Y2;
      }
      formula_by_label.emplace(label, user_f);
    } else {
      fail(lineno, "unrecognized justification in '" + rest + "'");
    }
  }

  if (!saw_header) throw Error(Error::Kind::Input, "empty input: expected 'proof' header");
  if (!saw_qed) throw Error(Error::Kind::Input, "missing 'qed <formula>'");
  if (d.lines.empty()) throw Error(Error::Kind::Input, "derivation has no lines");
  if (d.lines.back().formula != d.goal)
    throw Error(Error::Kind::Input, "qed formula differs from the last line: " +
                                        print(d.lines.back().formula) + " vs " + print(d.goal));
  return d;
}

std::string print_proof(const Derivation& d) {
  std::ostringstream os;
  os << "proof\n";
  for (const auto& h : d.hyps) os << "hyp " << h.label << ": " << print(h.formula) << "\n";
  for (const auto& e : d.cs.entries())
    os << "cs " << e.constant << ": " << print(e.formula) << "\n";
  if (d.cs.variant_closed) os << "declare variant_closed\n";
  if (d.cs.axiomatically_appropriate) os << "declare axiomatically_appropriate\n";
  for (const auto& ln : d.lines)
    os << ln.label << ". " << print(ln.formula) << " " << ln.just.to_string() << "\n";
  os << "qed " << print(d.goal.valid() ? d.goal : d.lines.back().formula) << "\n";
  return os.str();
}

namespace {

// "(a, b)" tuples, possibly several, possibly none; "()" is the 0-tuple.
std::vector<std::vector<Obj>> parse_tuples(const std::string& s, size_t lineno) {
  std::vector<std::vector<Obj>> out;
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  skip_ws();
  while (i < s.size()) {
    if (s[i] != '(') fail(lineno, "expected '(' starting a tuple");
    size_t close = s.find(')', i);
    if (close == std::string::npos) fail(lineno, "unterminated tuple");
    std::vector<Obj> tuple;
    for (const auto& o : split_list(s.substr(i + 1, close - i - 1), ',')) {
      if (!is_ident(o) || std::isupper(static_cast<unsigned char>(o[0])))
        fail(lineno, "bad object name '" + o + "'");
      tuple.push_back(o);
    }
    out.push_back(std::move(tuple));
    i = close + 1;
    skip_ws();
    if (i < s.size()) {
      if (s[i] != ',') fail(lineno, "expected ',' between tuples");
      ++i;
      skip_ws();
    }
  }
  return out;
}

Valuation parse_valuation(const std::string& s, size_t lineno) {
  std::string body = strip(s);
  if (body.size() < 2 || body.front() != '{' || body.back() != '}')
    fail(lineno, "expected valuation '{x=a, ...}'");
  Valuation val;
  for (const auto& item : split_list(body.substr(1, body.size() - 2), ',')) {
    size_t eq = item.find('=');
    if (eq == std::string::npos) fail(lineno, "expected 'var=object' in valuation");
    std::string v = strip(item.substr(0, eq));
    std::string o = strip(item.substr(eq + 1));
    if (!is_ident(v) || std::isupper(static_cast<unsigned char>(v[0])))
      fail(lineno, "bad variable '" + v + "' in valuation");
    if (!is_ident(o) || std::isupper(static_cast<unsigned char>(o[0])))
      fail(lineno, "bad object '" + o + "' in valuation");
    if (!val.emplace(v, o).second) fail(lineno, "variable '" + v + "' assigned twice");
  }
  return val;
}

}  // namespace

FiniteModel load_model(const std::string& text) {
  FiniteModel md;
  PredTable preds;
  std::istringstream is(text);
  std::string raw;
  size_t lineno = 0;
  bool saw_header = false, saw_end = false;

  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = logical_line(raw);
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != "model") fail(lineno, "expected 'model' header");
      saw_header = true;
      continue;
    }
    if (saw_end) fail(lineno, "content after end");
    if (line == "end") {
      saw_end = true;
      continue;
    }

    if (line.rfind("worlds:", 0) == 0) {
      for (const auto& w : split_list(line.substr(7), ',')) {
        if (!is_ident(w) || std::isupper(static_cast<unsigned char>(w[0])))
          fail(lineno, "bad world name '" + w + "'");
        md.worlds.insert(w);
      }
      continue;
    }
    if (line.rfind("access:", 0) == 0) {
      std::string body = strip(line.substr(7));
      size_t arrow = body.find("->");
      if (arrow == std::string::npos) fail(lineno, "expected 'access: w -> u, v'");
      std::string w = strip(body.substr(0, arrow));
      if (!md.worlds.count(w)) fail(lineno, "unknown world '" + w + "'");
      for (const auto& u : split_list(body.substr(arrow + 2), ',')) {
        if (!md.worlds.count(u)) fail(lineno, "unknown world '" + u + "'");
        md.access[w].insert(u);
      }
      continue;
    }
    if (line.rfind("domain ", 0) == 0) {
      size_t colon = line.find(':');
      if (colon == std::string::npos) fail(lineno, "expected 'domain <world>: a, b'");
      std::string w = strip(line.substr(7, colon - 7));
      if (!md.worlds.count(w)) fail(lineno, "unknown world '" + w + "'");
      for (const auto& o : split_list(line.substr(colon + 1), ',')) {
        if (!is_ident(o) || std::isupper(static_cast<unsigned char>(o[0])))
          fail(lineno, "bad object name '" + o + "'");
        md.domain[w].insert(o);
      }
      continue;
    }
    if (line.rfind("pred ", 0) == 0) {
      size_t at = line.find('@');
      size_t colon = line.find(':', at == std::string::npos ? 0 : at);
      if (at == std::string::npos || colon == std::string::npos)
        fail(lineno, "expected 'pred P1 @ w: (a), (a, b)'");
      std::string p = strip(line.substr(5, at - 5));
      std::string w = strip(line.substr(at + 1, colon - at - 1));
      if (!md.worlds.count(w)) fail(lineno, "unknown world '" + w + "'");
      auto tuples = parse_tuples(line.substr(colon + 1), lineno);
      for (auto& tup : tuples) {
        try {
          preds.note(p, tup.size());
        } catch (const Error& e) {
          fail(lineno, e.what());
        }
        md.interp[p][w].insert(std::move(tup));
      }
      if (tuples.empty()) md.interp[p][w];  // empty extension still mentions the predicate
      continue;
    }
    if (line.rfind("evidence ", 0) == 0) {
      std::string body = line.substr(9);
      size_t c1 = body.find(':');
      if (c1 == std::string::npos) fail(lineno, "expected 'evidence t : F @ {..} : worlds'");
      size_t at = body.find('@', c1);
      if (at == std::string::npos) fail(lineno, "expected '@ {..}' in evidence line");
      size_t c2 = body.find(':', at);
      if (c2 == std::string::npos) fail(lineno, "expected world list after valuation");
      Term t;
      Formula f;
      try {
        t = parse_term(strip(body.substr(0, c1)));
        f = parse_formula(strip(body.substr(c1 + 1, at - c1 - 1)), &preds);
      } catch (const Error& e) {
        fail(lineno, e.what());
      }
      if (t.kind() != Term::Kind::JVar && t.kind() != Term::Kind::JConst)
        fail(lineno, "evidence entries are keyed by justification variables or constants");
      Valuation val = parse_valuation(body.substr(at + 1, c2 - at - 1), lineno);
      std::set<World> ws;
      for (const auto& w : split_list(body.substr(c2 + 1), ',')) {
        if (!md.worlds.count(w)) fail(lineno, "unknown world '" + w + "'");
        ws.insert(w);
      }
      md.basic.set(t, f, val, std::move(ws));
      continue;
    }
    if (line.rfind("cs ", 0) == 0) {
      size_t colon = line.find(':');
      if (colon == std::string::npos) fail(lineno, "expected 'cs <constant> : <formula>'");
      std::string c = strip(line.substr(3, colon - 3));
      if (!is_ident(c) || c[0] != 'c') fail(lineno, "bad constant name '" + c + "'");
      Formula f;
      try {
        f = parse_formula(line.substr(colon + 1), &preds);
      } catch (const Error& e) {
        fail(lineno, e.what());
      }
      if (!is_axiom(f))
        fail(lineno, "constant specification entry is not an axiom instance: " + print(f));
      md.cs.add(c, f);
      continue;
    }
    fail(lineno, "unrecognized model line '" + line + "'");
  }

  if (!saw_header) throw Error(Error::Kind::Input, "empty input: expected 'model' header");
  if (!saw_end) throw Error(Error::Kind::Input, "missing 'end'");
  md.pred_arity = preds.arity;
  return md;
}

}  // namespace folp
