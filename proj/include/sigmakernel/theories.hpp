#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sigmakernel/formula.hpp"
#include "sigmakernel/vocabulary.hpp"

namespace sigma {

// An implication between two Sigma formulas.
struct Implication {
  Formula lhs, rhs;
  std::string str() const { return "(=> " + lhs.str() + " " + rhs.str() + ")"; }
};

// Identifies an axiom of a theory: either a concrete axiom by name, or an
// instance of a schema / symbol family with its parameters. Axioms are
// referred to by their figure numbers ("1".."27").
struct AxiomRef {
  std::string name;
  std::optional<Formula> formula;  // congruence (4), induction (19), separation (20-22)
  std::vector<FuncSym> syms;       // symbol-family axioms (15)-(19)
  int k = 0, i = 0;                // projection axiom (15); separation parameter arity

  std::string str() const;
};

class Theory {
public:
  std::string name;
  Vocabulary vocab;
  // Concrete axioms in declaration order, named.
  std::vector<std::pair<std::string, Implication>> axioms;
  bool gen_congruence = false;  // fig 8 (4)
  bool gen_induction = false;   // fig 9 (19)
  bool gen_separation = false;  // fig 10 (20)-(22)
  bool gen_symbol_families = false;  // the P/C/R/I equation families

  const Implication* find_concrete(const std::string& n) const {
    for (const auto& [an, imp] : axioms)
      if (an == n) return &imp;
    return nullptr;
  }

  // Resolves an axiom reference to the schematic implication it names,
  // instantiating generators. The result still has its free variables;
  // rule (0) substitutes terms for them afterwards.
  Result<Implication> resolve(const AxiomRef& ref) const;

  // Canonical order of an implication's parameters: the lexicographically
  // sorted free variables of both sides.
  static std::vector<std::string> axiom_params(const Implication& imp);
};

// Built-in theories.
Theory builtin_equality(const Vocabulary& v);
Theory builtin_pra();
Theory builtin_prs();
Theory builtin_prs_infinity();
// Resolves a builtin by name (equality | pra | prs | prs-infinity).
std::optional<Theory> builtin_theory(const std::string& name);

// Delta0: a Sigma formula whose existential quantifiers are also bounded,
// i.e. every Exists body is (v G t) ^ psi (either order) with G the positive
// guard relation and v not free in t.
bool is_delta0(const Formula& f, const Vocabulary& v);

// Symbol-wise dual on the desugared form: top/bot, and/or, exists/forall,
// and each relation with its declared dual; bounded shapes are resugared.
Result<Formula> dualize(const Formula& f, const Vocabulary& v);

// Schema instantiation helpers (also reachable through Theory::resolve).
Result<Implication> congruence_instance(const Vocabulary& v, const Formula& phi);
Result<Implication> induction_instance(const Vocabulary& v, const Formula& theta);
Result<std::vector<Implication>> separation_instances(const Vocabulary& v, int k,
                                                      const Formula& phi);

}  // namespace sigma
