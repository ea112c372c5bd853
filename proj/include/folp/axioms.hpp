#pragma once
// Recognition of axiom instances.  Twenty schemas: the classical first-order
// group (A0_*), and the modal/justification groups A1..A8 with their boxed
// variants (suffix P).  match_axiom returns every schema a formula instantiates
// together with a witness binding, since instances can overlap (for example
// [t]{x} F -> [(t + t)]{x} F fits both sum schemas).

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "folp/ast.hpp"

namespace folp {

enum class SchemaId {
  A0_TAUT,          // propositional tautology over maximal non-boolean parts
  A0_FORALL_INST,   // forall x. F -> F[x/y]
  A0_EXISTS_INST,   // F[x/y] -> exists x. F
  A0_FORALL_DISTR,  // forall x. (F -> G) -> (F -> forall x. G),  x not free in F
  A0_EXISTS_DISTR,  // forall x. (F -> G) -> (exists x. F -> G),  x not free in G
  A1,               // [t]{X + y} F -> [t]{X} F,  y not free in F
  A1P,              // box{X + y} F -> box{X} F,  y not free in F
  A2,               // [t]{X} F -> [t]{X + y} F
  A2P,              // box{X} F -> box{X + y} F
  A3,               // [t]{X} F -> F
  A3P,              // box{X} F -> F
  A4,               // [t]{X} (F -> G) -> ([s]{X} F -> [(t . s)]{X} G)
  A4P,              // box{X} (F -> G) -> (box{X} F -> box{X} G)
  A5L,              // [t]{X} F -> [(t + s)]{X} F
  A5R,              // [s]{X} F -> [(t + s)]{X} F
  A6,               // [t]{X} F -> [!t]{X} [t]{X} F
  A6P,              // box{X} F -> box{X} box{X} F
  A7,               // [t]{X} F -> [gen{x}(t)]{X} forall x. F,  x not in X
  A7P,              // box{X} F -> box{X} forall x. F,  x not in X
  A8,               // [t]{X} F -> box{X} F
};

inline constexpr int kSchemaCount = 20;

const char* schema_name(SchemaId id);
std::optional<SchemaId> schema_from_name(std::string_view name);
const std::vector<SchemaId>& all_schemas();

struct AxiomMatch {
  SchemaId schema;
  std::map<std::string, std::string> bindings;  // printable witness instantiation
};

// Every schema the formula instantiates, in SchemaId order, one witness each.
std::vector<AxiomMatch> match_axiom(const Formula& f);
bool matches_schema(const Formula& f, SchemaId id);
bool is_axiom(const Formula& f);

// Propositional-skeleton truth-tabling gives up beyond this many distinct
// non-boolean parts and reports no match.
inline constexpr size_t kMaxTautAtoms = 16;

}  // namespace folp
