#ifndef FOLP_H
#define FOLP_H

/* C interface to the folp toolkit: parsing and canonical printing of the
 * object language, derivation checking and internalization, finite-model
 * evaluation, evidence-closure queries and audits, and the randomized
 * soundness sweep.
 *
 * Conventions
 * -----------
 * Every function returns one of the status codes below.  FOLP_OK and
 * FOLP_FAIL are the two sides of a logical verdict (true/false, proved/
 * rejected, silent/violations); FOLP_ERR_INPUT means the inputs themselves
 * were unusable (syntax errors, unknown worlds, missing files, resource
 * caps).  After FOLP_FAIL or FOLP_ERR_INPUT, folp_last_error() describes
 * the reason; the buffer is thread-local and overwritten by the next call
 * on the same thread.
 *
 * All returned strings (out-parameters of type char**) are heap-allocated
 * and owned by the caller; release them with folp_string_free.  Out-
 * parameters are written only on the documented statuses and left untouched
 * otherwise.  NULL out-parameters are allowed where noted.
 *
 * Valuations are written "x=a, y=b" (an optional surrounding {...} is
 * accepted); the empty string or NULL denotes the empty valuation.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define FOLP_OK 0        /* positive verdict / success */
#define FOLP_FAIL 1      /* negative logical verdict */
#define FOLP_ERR_INPUT 2 /* unusable input */

/* Description of the most recent failure on this thread ("" after success).
 * The pointer stays valid until the next folp_* call on the same thread. */
const char* folp_last_error(void);

/* Releases a string returned through any char** out-parameter. */
void folp_string_free(char* s);

/* --- language ----------------------------------------------------------- */

/* Parse a justification term / formula and return its canonical printing.
 * FOLP_OK on success, FOLP_ERR_INPUT on parse errors. */
int folp_fmt_term(const char* text, char** out);
int folp_fmt_formula(const char* text, char** out);

/* --- derivations -------------------------------------------------------- */

typedef struct folp_proof folp_proof;

/* Parse a proof file from memory / from disk.  The constant specification
 * is validated for axiom-ness at load time.  FOLP_OK or FOLP_ERR_INPUT. */
int folp_proof_parse(const char* text, folp_proof** out);
int folp_proof_load(const char* path, folp_proof** out);
void folp_proof_free(folp_proof* p);

/* Canonical proof-file text of the derivation.  FOLP_OK. */
int folp_proof_print(const folp_proof* p, char** out);

/* Replays the derivation.  FOLP_OK when every line checks, FOLP_FAIL
 * otherwise.  In both cases *report (nullable) receives one tab-separated
 * record per line:
 *   line <TAB> <label> <TAB> ok|fail <TAB> <detail>
 * followed by "result <TAB> ok|fail", and, on failure, "first_bad <TAB>
 * <label>" plus an optional derivation-level "message <TAB> ...". */
int folp_proof_check(const folp_proof* p, char** report);

/* Constructs a derivation of [t]{X} G from the given derivation of G, where
 * X is the union of the hypothesis index sets after certificate wrapping.
 * FOLP_OK with the new derivation in *out; FOLP_FAIL when the derivation
 * uses generalization over a variable of X (the transformation is undefined
 * there); FOLP_ERR_INPUT when the input derivation does not check. */
int folp_proof_internalize(const folp_proof* p, folp_proof** out);

/* --- models ------------------------------------------------------------- */

typedef struct folp_model folp_model;

int folp_model_parse(const char* text, folp_model** out);
int folp_model_load(const char* path, folp_model** out);
void folp_model_free(folp_model* m);

/* Frame, domain, typing and constant-specification checks.  FOLP_OK when
 * clean; FOLP_FAIL with newline-separated findings in *findings (nullable).
 */
int folp_model_validate(const folp_model* m, char** findings);

/* Evaluation resource caps for this handle (defaults: 6 modal variables,
 * domain size 8).  FOLP_OK. */
int folp_model_set_limits(folp_model* m, size_t max_box_vars, size_t max_domain);

/* Truth of a formula at a world under a valuation: FOLP_OK true, FOLP_FAIL
 * false.  Unknown worlds, unparsable inputs, missing valuation entries and
 * exceeded caps give FOLP_ERR_INPUT. */
int folp_model_eval(folp_model* m, const char* world, const char* valuation,
                    const char* formula);

/* Truth at every world where the valuation lands inside the domain. */
int folp_model_holds(folp_model* m, const char* valuation, const char* formula);

/* Truth under every valuation of the formula's free variables into the
 * object universe.  FOLP_OK when valid; FOLP_FAIL with the first refuting
 * valuation and world (enumeration order is deterministic) in *witness
 * (nullable) as two tab-separated records:
 *   world <TAB> <w> \n valuation <TAB> {x=a, ...} */
int folp_model_valid(folp_model* m, const char* formula, char** witness);

/* --- evidence ----------------------------------------------------------- */

/* Worlds where the term evidences the formula under the valuation, computed
 * by the demand-driven closure of the model's basic evidence table.
 * Informational: FOLP_OK with a comma-separated sorted world list (possibly
 * empty) in *worlds. */
int folp_evidence_query(folp_model* m, const char* term, const char* formula,
                        const char* valuation, char** worlds);

/* Audits the basic evidence table (close == 0), or additionally the full
 * closure over a probe universe rooted at the table entries (close != 0).
 * FOLP_OK when silent; FOLP_FAIL with newline-separated
 * "<condition> <TAB> <witness>" findings in *findings (nullable). */
int folp_evidence_audit(folp_model* m, int close, char** findings);

/* --- soundness ---------------------------------------------------------- */

/* Randomized soundness sweep: `models` seeded random audited models, each
 * checked against `instances` random axiom-schema instances, plus one
 * rule-preservation triple per model.  Deterministic for a fixed seed.
 * FOLP_OK when nothing was falsified, FOLP_FAIL otherwise; *report
 * (nullable) receives tab-separated counters:
 *   models, instances, instances_failed, rule_triples, rule_failures, ok
 * and a "first_failure" record when applicable. */
int folp_soundness_sweep(size_t models, size_t instances, uint64_t seed,
                         char** report);

#ifdef __cplusplus
}
#endif

#endif /* FOLP_H */
