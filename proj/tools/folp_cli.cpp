// Command-line front end.  Talks to the core exclusively through the C API
// (folp.h); all output is deterministic for fixed inputs.
//
// Exit codes follow the library's status convention:
//   0  positive verdict (true / valid / checks / silent audit / clean sweep)
//   1  negative logical verdict (false / refuted / rejected / violations)
//   2  unusable input (parse errors, unknown worlds, resource caps)
//
// --report switches a subcommand to machine output: one "key<TAB>value"
// record per line, nothing else.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "folp.h"

namespace {

// Owned C string from an out-parameter.
struct OutStr {
  char* p = nullptr;
  ~OutStr() { folp_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

struct ProofHandle {
  folp_proof* p = nullptr;
  ~ProofHandle() { folp_proof_free(p); }
};

struct ModelHandle {
  folp_model* m = nullptr;
  ~ModelHandle() { folp_model_free(m); }
};

int report_error() {
  std::cerr << "error: " << folp_last_error() << "\n";
  return FOLP_ERR_INPUT;
}

// Shared option state.
struct Opts {
  std::string proof_path;
  std::string model_path;
  std::string formula;
  std::string formula_pos;  // positional alternative to --formula
  std::string term;
  std::string val;
  std::string at;
  bool machine = false;
  bool close = false;
  std::size_t cap_vars = 6;
  std::size_t cap_domain = 8;
  std::size_t models = 200;
  std::size_t instances = 50;
  std::uint64_t seed = 1;
};

void add_caps(CLI::App* cmd, Opts& o) {
  cmd->add_option("--cap-vars", o.cap_vars,
                  "Cap on modal quantifier width (default 6)");
  cmd->add_option("--cap-domain", o.cap_domain, "Cap on object universe size (default 8)");
}

int load_model_with_caps(const Opts& o, ModelHandle& mh) {
  int rc = folp_model_load(o.model_path.c_str(), &mh.m);
  if (rc != FOLP_OK) return rc;
  return folp_model_set_limits(mh.m, o.cap_vars, o.cap_domain);
}

// --- subcommand bodies ------------------------------------------------------

int run_fmt(const Opts& o) {
  if (!o.formula.empty() + !o.term.empty() + !o.proof_path.empty() != 1) {
    std::cerr << "error: fmt needs exactly one of --formula, --term, --proof\n";
    return FOLP_ERR_INPUT;
  }
  OutStr out;
  if (!o.formula.empty()) {
    if (folp_fmt_formula(o.formula.c_str(), &out.p) != FOLP_OK) return report_error();
    std::cout << out.str() << "\n";
    return FOLP_OK;
  }
  if (!o.term.empty()) {
    if (folp_fmt_term(o.term.c_str(), &out.p) != FOLP_OK) return report_error();
    std::cout << out.str() << "\n";
    return FOLP_OK;
  }
  ProofHandle ph;
  if (folp_proof_load(o.proof_path.c_str(), &ph.p) != FOLP_OK) return report_error();
  if (folp_proof_print(ph.p, &out.p) != FOLP_OK) return report_error();
  std::cout << out.str();
  return FOLP_OK;
}

int run_check(const Opts& o) {
  ProofHandle ph;
  if (folp_proof_load(o.proof_path.c_str(), &ph.p) != FOLP_OK) return report_error();
  OutStr rep;
  int rc = folp_proof_check(ph.p, &rep.p);
  if (rc == FOLP_ERR_INPUT) return report_error();
  if (o.machine) {
    std::cout << rep.str();
  } else {
    std::cout << rep.str();  // the per-line records are already readable
    std::cout << (rc == FOLP_OK ? "proof checks\n" : "proof rejected\n");
  }
  return rc;
}

int run_internalize(const Opts& o) {
  ProofHandle ph;
  if (folp_proof_load(o.proof_path.c_str(), &ph.p) != FOLP_OK) return report_error();
  ProofHandle out;
  int rc = folp_proof_internalize(ph.p, &out.p);
  if (rc == FOLP_ERR_INPUT) return report_error();
  if (rc == FOLP_FAIL) {
    if (o.machine) {
      std::cout << "result\trefused\n";
      std::cout << "reason\t" << folp_last_error() << "\n";
    } else {
      std::cerr << "refused: " << folp_last_error() << "\n";
    }
    return FOLP_FAIL;
  }
  OutStr printed;
  if (folp_proof_print(out.p, &printed.p) != FOLP_OK) return report_error();
  if (o.machine) {
    std::cout << "result\tok\n";
    // The certified statement is the derivation's goal (its qed line).
    std::string text = printed.str();
    size_t q = text.rfind("qed ");
    if (q != std::string::npos) {
      size_t e = text.find('\n', q);
      std::cout << "goal\t" << text.substr(q + 4, e - q - 4) << "\n";
    }
  } else {
    std::cout << printed.str();
  }
  return FOLP_OK;
}

int run_model_validate(const Opts& o) {
  ModelHandle mh;
  if (folp_model_load(o.model_path.c_str(), &mh.m) != FOLP_OK) return report_error();
  OutStr findings;
  int rc = folp_model_validate(mh.m, &findings.p);
  if (rc == FOLP_ERR_INPUT) return report_error();
  if (o.machine) {
    std::istringstream in(findings.str());
    for (std::string line; std::getline(in, line);)
      std::cout << "finding\t" << line << "\n";
    std::cout << "result\t" << (rc == FOLP_OK ? "ok" : "fail") << "\n";
  } else if (rc == FOLP_OK) {
    std::cout << "model is well-formed\n";
  } else {
    std::cout << findings.str();
  }
  return rc;
}

int run_model_eval(const Opts& o, bool at_world) {
  ModelHandle mh;
  if (load_model_with_caps(o, mh) != FOLP_OK) return report_error();
  int rc = at_world ? folp_model_eval(mh.m, o.at.c_str(), o.val.c_str(), o.formula.c_str())
                    : folp_model_holds(mh.m, o.val.c_str(), o.formula.c_str());
  if (rc == FOLP_ERR_INPUT) return report_error();
  if (o.machine)
    std::cout << "value\t" << (rc == FOLP_OK ? "true" : "false") << "\n";
  else
    std::cout << (rc == FOLP_OK ? "true" : "false") << "\n";
  return rc;
}

int run_model_valid(const Opts& o) {
  ModelHandle mh;
  if (load_model_with_caps(o, mh) != FOLP_OK) return report_error();
  OutStr witness;
  int rc = folp_model_valid(mh.m, o.formula.c_str(), &witness.p);
  if (rc == FOLP_ERR_INPUT) return report_error();
  if (o.machine) {
    std::cout << "valid\t" << (rc == FOLP_OK ? "true" : "false") << "\n";
    if (rc == FOLP_FAIL) std::cout << witness.str();
  } else if (rc == FOLP_OK) {
    std::cout << "valid\n";
  } else {
    std::cout << "refuted: " << folp_last_error() << "\n";
  }
  return rc;
}

int run_evidence_query(const Opts& o) {
  ModelHandle mh;
  if (load_model_with_caps(o, mh) != FOLP_OK) return report_error();
  OutStr worlds;
  if (folp_evidence_query(mh.m, o.term.c_str(), o.formula.c_str(), o.val.c_str(),
                          &worlds.p) != FOLP_OK)
    return report_error();
  if (o.machine)
    std::cout << "worlds\t" << worlds.str() << "\n";
  else
    std::cout << "{" << worlds.str() << "}\n";
  return FOLP_OK;  // informational: an empty evidence set is not a failure
}

int run_evidence_audit(const Opts& o) {
  ModelHandle mh;
  if (load_model_with_caps(o, mh) != FOLP_OK) return report_error();
  OutStr findings;
  int rc = folp_evidence_audit(mh.m, o.close ? 1 : 0, &findings.p);
  if (rc == FOLP_ERR_INPUT) return report_error();
  if (o.machine) {
    std::istringstream in(findings.str());
    for (std::string line; std::getline(in, line);)
      std::cout << "violation\t" << line << "\n";
    std::cout << "result\t" << (rc == FOLP_OK ? "ok" : "fail") << "\n";
  } else if (rc == FOLP_OK) {
    std::cout << "audit silent\n";
  } else {
    std::cout << findings.str();
  }
  return rc;
}

int run_soundness(const Opts& o) {
  OutStr rep;
  int rc = folp_soundness_sweep(o.models, o.instances, o.seed, &rep.p);
  if (rc == FOLP_ERR_INPUT) return report_error();
  std::cout << rep.str();  // already key<TAB>value records
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"folp: justification-logic toolkit (derivation checking, "
               "internalization, finite-model evaluation, evidence closure)"};
  app.require_subcommand(1);
  Opts o;

  auto* fmt = app.add_subcommand("fmt", "Canonicalize a formula, term or proof file");
  fmt->add_option("--formula", o.formula, "Formula text");
  fmt->add_option("--term", o.term, "Justification-term text");
  fmt->add_option("--proof", o.proof_path, "Proof file");

  auto* check = app.add_subcommand("check", "Replay and verify a derivation");
  check->add_option("proof", o.proof_path, "Proof file")->required();
  check->add_flag("--report", o.machine, "Machine-readable output");

  auto* internalize =
      app.add_subcommand("internalize", "Lift a derivation to a certified derivation");
  internalize->add_option("proof", o.proof_path, "Proof file")->required();
  internalize->add_flag("--report", o.machine, "Machine-readable output");

  auto* model = app.add_subcommand("model", "Finite-model operations");
  model->require_subcommand(1);

  auto* mvalidate = model->add_subcommand("validate", "Frame/domain/typing checks");
  mvalidate->add_option("model", o.model_path, "Model file")->required();
  mvalidate->add_flag("--report", o.machine, "Machine-readable output");

  auto* meval = model->add_subcommand("eval", "Truth at a world under a valuation");
  meval->add_option("model", o.model_path, "Model file")->required();
  meval->add_option("--formula", o.formula, "Formula text")->required();
  meval->add_option("--at", o.at, "World name")->required();
  meval->add_option("--val", o.val, "Valuation, e.g. \"x=a, y=b\"");
  meval->add_flag("--report", o.machine, "Machine-readable output");
  add_caps(meval, o);

  auto* mholds = model->add_subcommand("holds", "Truth at every covered world");
  mholds->add_option("model", o.model_path, "Model file")->required();
  mholds->add_option("--formula", o.formula, "Formula text")->required();
  mholds->add_option("--val", o.val, "Valuation, e.g. \"x=a, y=b\"");
  mholds->add_flag("--report", o.machine, "Machine-readable output");
  add_caps(mholds, o);

  auto* mvalid = model->add_subcommand("valid", "Truth under every valuation");
  mvalid->add_option("model", o.model_path, "Model file")->required();
  mvalid->add_option("--formula", o.formula, "Formula text")->required();
  mvalid->add_flag("--report", o.machine, "Machine-readable output");
  add_caps(mvalid, o);

  auto* evidence = app.add_subcommand("evidence", "Evidence-closure operations");
  evidence->require_subcommand(1);

  auto* equery = evidence->add_subcommand("query", "Worlds where a term evidences a formula");
  equery->add_option("model", o.model_path, "Model file")->required();
  equery->add_option("--term", o.term, "Justification-term text")->required();
  equery->add_option("--formula", o.formula, "Formula text")->required();
  equery->add_option("--val", o.val, "Valuation, e.g. \"x=a, y=b\"");
  equery->add_flag("--report", o.machine, "Machine-readable output");
  add_caps(equery, o);

  auto* eaudit = evidence->add_subcommand("audit", "Audit the evidence table / closure");
  eaudit->add_option("model", o.model_path, "Model file")->required();
  eaudit->add_flag("--close", o.close, "Also audit the demand-driven closure");
  eaudit->add_flag("--report", o.machine, "Machine-readable output");
  add_caps(eaudit, o);

  auto* soundness =
      app.add_subcommand("soundness", "Randomized axiom/rule soundness sweep");
  soundness->add_option("--models", o.models, "Number of random models (default 200)");
  soundness->add_option("--instances", o.instances,
                        "Axiom instances per model (default 50)");
  soundness->add_option("--seed", o.seed, "Random seed (default 1)");

  CLI11_PARSE(app, argc, argv);

  if (fmt->parsed()) return run_fmt(o);
  if (check->parsed()) return run_check(o);
  if (internalize->parsed()) return run_internalize(o);
  if (mvalidate->parsed()) return run_model_validate(o);
  if (meval->parsed()) return run_model_eval(o, true);
  if (mholds->parsed()) return run_model_eval(o, false);
  if (mvalid->parsed()) return run_model_valid(o);
  if (equery->parsed()) return run_evidence_query(o);
  if (eaudit->parsed()) return run_evidence_audit(o);
  if (soundness->parsed()) return run_soundness(o);
  return FOLP_ERR_INPUT;
}
