#pragma once
// Randomized soundness sweep.  Builds seeded random finite models (S4 frame,
// monotone domains, repaired random evidence table that passes the basic
// audit), generates random instances of every axiom schema, and checks each
// instance is valid in each model under the demand-driven evidence closure.
// Also checks that the inference rules preserve model validity on random
// premise triples.  Fully deterministic for a fixed seed.

#include <cstdint>
#include <random>
#include <string>

#include "folp/axioms.hpp"
#include "folp/model.hpp"

namespace folp {

struct SweepOptions {
  size_t models = 200;    // number of random models to build
  size_t instances = 50;  // axiom instances checked per model
  uint64_t seed = 1;
  EvalLimits limits{};
};

struct SweepReport {
  size_t models_built = 0;
  size_t instances_checked = 0;
  size_t instances_failed = 0;  // axiom instances refuted by some model
  size_t rule_triples = 0;      // one MP/Gen/Nec premise triple per model
  size_t rule_failures = 0;     // premises valid but a conclusion refuted
  std::string first_failure;    // empty when everything held

  bool ok() const { return instances_failed == 0 && rule_failures == 0; }
};

// Random model with |W| <= 4 worlds, |D| <= 4 objects, reflexive-transitive
// accessibility, monotone non-empty domains and a random basic evidence
// table repaired until audit_basic is silent.
FiniteModel random_model(std::mt19937_64& rng);

// Random instance of the given schema; matches_schema(result, id) holds.
Formula random_instance(std::mt19937_64& rng, SchemaId id);

// Random instance of a uniformly chosen schema.
Formula random_instance(std::mt19937_64& rng);

SweepReport soundness_sweep(const SweepOptions& opt = {});

}  // namespace folp
