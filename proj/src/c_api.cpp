// C binding.  Thin, exception-safe shims over the C++ core: every entry
// point funnels through guard(), which translates exceptions into status
// codes and the thread-local error buffer.  Strings cross the boundary as
// malloc'd copies released by folp_string_free.

#include "folp.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "folp/evidence.hpp"
#include "folp/files.hpp"
#include "folp/internalize.hpp"
#include "folp/model.hpp"
#include "folp/parse.hpp"
#include "folp/proof.hpp"
#include "folp/soundness.hpp"

using namespace folp;

struct folp_proof {
  Derivation d;
};

struct folp_model {
  FiniteModel m;
  EvalLimits limits{};
  std::unique_ptr<EvidenceOracle> oracle;  // lazy; keyed to the immutable model

  EvidenceOracle& ev() {
    if (!oracle) oracle = std::make_unique<EvidenceOracle>(m);
    return *oracle;
  }
};

namespace {

std::string& last_error_buf() {
  thread_local std::string buf;
  return buf;
}

// malloc-backed copy, so C callers can free() via folp_string_free.
char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_out(char** out, const std::string& s) {
  if (out) *out = dup_string(s);
}

template <typename Body>
int guard(Body&& body) {
  last_error_buf().clear();
  try {
    return body();
  } catch (const Error& e) {
    last_error_buf() = e.what();
    return e.kind == Error::Kind::Refused ? FOLP_FAIL : FOLP_ERR_INPUT;
  } catch (const std::exception& e) {
    last_error_buf() = e.what();
    return FOLP_ERR_INPUT;
  }
}

int fail_input(const std::string& msg) {
  last_error_buf() = msg;
  return FOLP_ERR_INPUT;
}

std::string read_file(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Error::Kind::Input, std::string("cannot read ") + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// "x=a, y=b", optionally wrapped in braces; "" or NULL is the empty map.
Valuation parse_valuation(const char* text) {
  Valuation val;
  if (!text) return val;
  std::string s = text;
  size_t b = s.find_first_not_of(" \t");
  size_t e = s.find_last_not_of(" \t");
  if (b == std::string::npos) return val;
  s = s.substr(b, e - b + 1);
  if (s.size() >= 2 && s.front() == '{' && s.back() == '}') s = s.substr(1, s.size() - 2);
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    size_t eq = item.find('=');
    if (eq == std::string::npos) {
      if (item.find_first_not_of(" \t") == std::string::npos) continue;
      throw Error(Error::Kind::Input, "valuation item without '=': " + item);
    }
    auto trim = [](std::string t) {
      size_t x = t.find_first_not_of(" \t");
      if (x == std::string::npos) return std::string();
      size_t y = t.find_last_not_of(" \t");
      return t.substr(x, y - x + 1);
    };
    std::string var = trim(item.substr(0, eq));
    std::string obj = trim(item.substr(eq + 1));
    if (var.empty() || obj.empty())
      throw Error(Error::Kind::Input, "malformed valuation item: " + item);
    val[var] = obj;
  }
  return val;
}

std::string render_check_report(const CheckReport& rep) {
  std::ostringstream out;
  for (const auto& lv : rep.lines) {
    out << "line\t" << lv.label << "\t" << (lv.ok ? "ok" : "fail") << "\t";
    if (!lv.ok) {
      out << lv.message;
    } else if (!lv.depends_on.empty()) {
      out << "depends=";
      for (size_t i = 0; i < lv.depends_on.size(); ++i)
        out << (i ? "," : "") << lv.depends_on[i];
    }
    out << "\n";
  }
  out << "result\t" << (rep.ok ? "ok" : "fail") << "\n";
  if (!rep.ok && !rep.first_bad.empty()) out << "first_bad\t" << rep.first_bad << "\n";
  if (!rep.message.empty()) out << "message\t" << rep.message << "\n";
  return out.str();
}

}  // namespace

extern "C" {

const char* folp_last_error(void) { return last_error_buf().c_str(); }

void folp_string_free(char* s) { std::free(s); }

/* --- language ----------------------------------------------------------- */

int folp_fmt_term(const char* text, char** out) {
  return guard([&] {
    if (!text || !out) return fail_input("folp_fmt_term: null argument");
    set_out(out, print(parse_term(text)));
    return FOLP_OK;
  });
}

int folp_fmt_formula(const char* text, char** out) {
  return guard([&] {
    if (!text || !out) return fail_input("folp_fmt_formula: null argument");
    set_out(out, print(parse_formula(text)));
    return FOLP_OK;
  });
}

/* --- derivations -------------------------------------------------------- */

int folp_proof_parse(const char* text, folp_proof** out) {
  return guard([&] {
    if (!text || !out) return fail_input("folp_proof_parse: null argument");
    auto p = std::make_unique<folp_proof>();
    p->d = load_proof(text);
    *out = p.release();
    return FOLP_OK;
  });
}

int folp_proof_load(const char* path, folp_proof** out) {
  return guard([&] {
    if (!path || !out) return fail_input("folp_proof_load: null argument");
    auto p = std::make_unique<folp_proof>();
    p->d = load_proof(read_file(path));
    *out = p.release();
    return FOLP_OK;
  });
}

void folp_proof_free(folp_proof* p) { delete p; }

int folp_proof_print(const folp_proof* p, char** out) {
  return guard([&] {
    if (!p || !out) return fail_input("folp_proof_print: null argument");
    set_out(out, print_proof(p->d));
    return FOLP_OK;
  });
}

int folp_proof_check(const folp_proof* p, char** report) {
  return guard([&] {
    if (!p) return fail_input("folp_proof_check: null argument");
    CheckReport rep = check(p->d);
    set_out(report, render_check_report(rep));
    if (rep.ok) return FOLP_OK;
    last_error_buf() = rep.first_bad.empty()
                           ? rep.message
                           : "line " + rep.first_bad + " does not check";
    return FOLP_FAIL;
  });
}

int folp_proof_internalize(const folp_proof* p, folp_proof** out) {
  return guard([&] {
    if (!p || !out) return fail_input("folp_proof_internalize: null argument");
    Internalized r = internalize(p->d);
    CheckReport rc = check(r.derivation);
    if (!rc.ok)
      throw Error(Error::Kind::Internal,
                  "internalized derivation failed to re-check: " + rc.message);
    auto q = std::make_unique<folp_proof>();
    q->d = std::move(r.derivation);
    *out = q.release();
    return FOLP_OK;
  });
}

/* --- models ------------------------------------------------------------- */

int folp_model_parse(const char* text, folp_model** out) {
  return guard([&] {
    if (!text || !out) return fail_input("folp_model_parse: null argument");
    auto h = std::make_unique<folp_model>();
    h->m = load_model(text);
    *out = h.release();
    return FOLP_OK;
  });
}

int folp_model_load(const char* path, folp_model** out) {
  return guard([&] {
    if (!path || !out) return fail_input("folp_model_load: null argument");
    auto h = std::make_unique<folp_model>();
    h->m = load_model(read_file(path));
    *out = h.release();
    return FOLP_OK;
  });
}

void folp_model_free(folp_model* m) { delete m; }

int folp_model_validate(const folp_model* m, char** findings) {
  return guard([&] {
    if (!m) return fail_input("folp_model_validate: null argument");
    std::vector<std::string> items = validate_model(m->m);
    if (items.empty()) return FOLP_OK;
    std::ostringstream out;
    for (const auto& it : items) out << it << "\n";
    set_out(findings, out.str());
    last_error_buf() = "model has " + std::to_string(items.size()) + " finding(s)";
    return FOLP_FAIL;
  });
}

int folp_model_set_limits(folp_model* m, size_t max_box_vars, size_t max_domain) {
  return guard([&] {
    if (!m) return fail_input("folp_model_set_limits: null argument");
    m->limits.max_box_vars = max_box_vars;
    m->limits.max_domain = max_domain;
    return FOLP_OK;
  });
}

int folp_model_eval(folp_model* m, const char* world, const char* valuation,
                    const char* formula) {
  return guard([&] {
    if (!m || !world || !formula) return fail_input("folp_model_eval: null argument");
    bool v = eval_at(m->m, m->ev(), world, parse_valuation(valuation),
                     parse_formula(formula), m->limits);
    if (v) return FOLP_OK;
    last_error_buf() = "false";
    return FOLP_FAIL;
  });
}

int folp_model_holds(folp_model* m, const char* valuation, const char* formula) {
  return guard([&] {
    if (!m || !formula) return fail_input("folp_model_holds: null argument");
    bool v = holds(m->m, m->ev(), parse_valuation(valuation), parse_formula(formula),
                   m->limits);
    if (v) return FOLP_OK;
    last_error_buf() = "false";
    return FOLP_FAIL;
  });
}

int folp_model_valid(folp_model* m, const char* formula, char** witness) {
  return guard([&] {
    if (!m || !formula) return fail_input("folp_model_valid: null argument");
    ValidityResult r = valid_in_model(m->m, m->ev(), parse_formula(formula), m->limits);
    if (r.valid) return FOLP_OK;
    std::ostringstream out;
    out << "world\t" << r.world << "\n";
    out << "valuation\t" << print_valuation(r.witness) << "\n";
    set_out(witness, out.str());
    last_error_buf() =
        "refuted at " + r.world + " under " + print_valuation(r.witness);
    return FOLP_FAIL;
  });
}

/* --- evidence ----------------------------------------------------------- */

int folp_evidence_query(folp_model* m, const char* term, const char* formula,
                        const char* valuation, char** worlds) {
  return guard([&] {
    if (!m || !term || !formula || !worlds)
      return fail_input("folp_evidence_query: null argument");
    std::set<World> ws = m->ev().query(parse_term(term), parse_formula(formula),
                                       parse_valuation(valuation));
    std::ostringstream out;
    bool first = true;
    for (const auto& w : ws) {
      if (!first) out << ", ";
      out << w;
      first = false;
    }
    set_out(worlds, out.str());
    return FOLP_OK;
  });
}

int folp_evidence_audit(folp_model* m, int close, char** findings) {
  return guard([&] {
    if (!m) return fail_input("folp_evidence_audit: null argument");
    std::vector<AuditViolation> items = audit_basic(m->m);
    if (close) {
      std::vector<EvidenceTriple> roots;
      for (const auto& [tr, ws] : m->m.basic.table()) {
        (void)ws;
        roots.push_back({tr.term, tr.formula, tr.val});
      }
      for (const auto& e : m->m.cs.entries())
        roots.push_back({Term::jconst(e.constant), e.formula, {}});
      ProbeUniverse u = probe_universe(m->m, roots);
      EvidenceOracle& o = m->ev();
      EvidenceFn fn = [&](const Term& t, const Formula& f, const Valuation& v) {
        return o.query(t, f, v);
      };
      std::vector<AuditViolation> more = audit_closure(m->m, fn, u);
      items.insert(items.end(), more.begin(), more.end());
    }
    if (items.empty()) return FOLP_OK;
    std::ostringstream out;
    for (const auto& it : items) out << it.condition << "\t" << it.witness << "\n";
    set_out(findings, out.str());
    last_error_buf() = "audit found " + std::to_string(items.size()) + " violation(s)";
    return FOLP_FAIL;
  });
}

/* --- soundness ---------------------------------------------------------- */

int folp_soundness_sweep(size_t models, size_t instances, uint64_t seed, char** report) {
  return guard([&] {
    SweepOptions opt;
    opt.models = models;
    opt.instances = instances;
    opt.seed = seed;
    SweepReport rep = soundness_sweep(opt);
    std::ostringstream out;
    out << "models\t" << rep.models_built << "\n";
    out << "instances\t" << rep.instances_checked << "\n";
    out << "instances_failed\t" << rep.instances_failed << "\n";
    out << "rule_triples\t" << rep.rule_triples << "\n";
    out << "rule_failures\t" << rep.rule_failures << "\n";
    out << "ok\t" << (rep.ok() ? "true" : "false") << "\n";
    if (!rep.first_failure.empty()) out << "first_failure\t" << rep.first_failure << "\n";
    set_out(report, out.str());
    if (rep.ok()) return FOLP_OK;
    last_error_buf() = rep.first_failure;
    return FOLP_FAIL;
  });
}

}  // extern "C"
