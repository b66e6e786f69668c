#pragma once

#include <map>
#include <set>
#include <string>

#include "sigmakernel/diag.hpp"
#include "sigmakernel/formula.hpp"

namespace sigma {

// Which generated symbol grammar, if any, the vocabulary is closed under.
enum class SymbolGrammar : uint8_t { None, Pra, Prs };

struct Vocabulary {
  std::map<std::string, int> relations;  // name -> arity
  std::map<std::string, int> functions;  // flat named symbols (constants included)
  std::string notin;                     // distinguished binary guard relation
  std::map<std::string, std::string> duals;  // symmetric, e.g. = <-> neq, < <-> nless
  SymbolGrammar grammar = SymbolGrammar::None;
  bool with_infinity = false;  // admits the N symbol (set grammar only)

  bool has_relation(const std::string& r, int arity) const {
    auto it = relations.find(r);
    return it != relations.end() && it->second == arity;
  }
  std::optional<std::string> dual_of(const std::string& r) const {
    auto it = duals.find(r);
    if (it == duals.end()) return std::nullopt;
    return it->second;
  }
  // The positive partner of the guard relation (e.g. < for nless, in for notin).
  std::optional<std::string> positive_guard() const { return dual_of(notin); }

  std::optional<Diag> validate() const;
};

// Computes the arity of a (possibly structured) function symbol, validating
// the grammar constraints along the way.
Result<int> symbol_arity(const Vocabulary& v, const FuncSym& f);

std::optional<Diag> validate_term(const Vocabulary& v, const Term& t);
std::optional<Diag> validate_formula(const Vocabulary& v, const Formula& f);

}  // namespace sigma
