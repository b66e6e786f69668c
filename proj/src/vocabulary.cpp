#include "sigmakernel/vocabulary.hpp"

namespace sigma {

std::optional<Diag> Vocabulary::validate() const {
  if (notin.empty()) return Diag{"vocabulary has no distinguished guard relation"};
  if (!has_relation(notin, 2))
    return Diag{"distinguished guard relation " + notin + " is not a declared binary relation"};
  for (const auto& [a, b] : duals) {
    auto it = duals.find(b);
    if (it == duals.end() || it->second != a)
      return Diag{"dual pair " + a + "/" + b + " is not symmetric"};
    if (!relations.count(a) || !relations.count(b))
      return Diag{"dual pair " + a + "/" + b + " names an undeclared relation"};
    if (relations.at(a) != relations.at(b))
      return Diag{"dual pair " + a + "/" + b + " has mismatched arities"};
  }
  return std::nullopt;
}

Result<int> symbol_arity(const Vocabulary& v, const FuncSym& f) {
  using K = FuncSym::Kind;
  bool pra = v.grammar == SymbolGrammar::Pra;
  bool prs = v.grammar == SymbolGrammar::Prs;
  switch (f.kind) {
    case K::Named: {
      auto it = v.functions.find(f.name);
      if (it == v.functions.end()) return Diag{"unknown function symbol " + f.name};
      return it->second;
    }
    case K::Zero:
      if (!pra) return Diag{"symbol Z requires the arithmetic grammar"};
      return 1;
    case K::Succ:
      if (!pra) return Diag{"symbol S requires the arithmetic grammar"};
      return 1;
    case K::Proj:
      if (!pra && !prs) return Diag{"projection symbols require a generated grammar"};
      if (f.k < 1 || f.i < 1 || f.i > f.k)
        return Diag{"projection index out of range in (p " + std::to_string(f.k) + " " +
                    std::to_string(f.i) + ")"};
      return f.k;
    case K::Compose: {
      if (!pra && !prs) return Diag{"composition symbols require a generated grammar"};
      if (f.sub.size() < 2) return Diag{"composition needs an outer symbol and at least one inner"};
      auto g = symbol_arity(v, f.sub[0]);
      if (!g) return g;
      if (*g != static_cast<int>(f.sub.size()) - 1)
        return Diag{"composition arity mismatch: outer symbol is " + std::to_string(*g) +
                    "-ary but " + std::to_string(f.sub.size() - 1) + " inner symbols given"};
      int k = -1;
      for (size_t j = 1; j < f.sub.size(); ++j) {
        auto h = symbol_arity(v, f.sub[j]);
        if (!h) return h;
        if (k == -1)
          k = *h;
        else if (k != *h)
          return Diag{"composition inner symbols have mismatched arities"};
      }
      return k;
    }
    case K::PrimRec: {
      if (!pra) return Diag{"primitive recursion symbols require the arithmetic grammar"};
      if (f.sub.size() != 2) return Diag{"primitive recursion takes two symbols"};
      auto g = symbol_arity(v, f.sub[0]);
      if (!g) return g;
      auto h = symbol_arity(v, f.sub[1]);
      if (!h) return h;
      if (*h != *g + 2)
        return Diag{"recursion arity mismatch: step symbol must be " + std::to_string(*g + 2) +
                    "-ary, got " + std::to_string(*h)};
      return *g + 1;
    }
    case K::SetUnion:
      if (!prs) return Diag{"symbol U requires the set grammar"};
      return 1;
    case K::SetPair:
      if (!prs) return Diag{"symbol A requires the set grammar"};
      return 2;
    case K::SetImage: {
      if (!prs) return Diag{"image symbols require the set grammar"};
      if (f.sub.size() != 1) return Diag{"image takes one symbol"};
      auto g = symbol_arity(v, f.sub[0]);
      if (!g) return g;
      if (*g < 2) return Diag{"image requires a symbol of arity at least 2"};
      return *g;
    }
    case K::SetRec: {
      if (!prs) return Diag{"set recursion symbols require the set grammar"};
      if (f.sub.size() != 1) return Diag{"set recursion takes one symbol"};
      auto g = symbol_arity(v, f.sub[0]);
      if (!g) return g;
      if (*g < 2) return Diag{"set recursion requires a symbol of arity at least 2"};
      return *g - 1;
    }
    case K::SetSep: {
      if (!prs) return Diag{"separation symbols require the set grammar"};
      if (f.k < 0) return Diag{"separation symbol has negative parameter arity"};
      if (!f.sep || !f.sep->valid()) return Diag{"separation symbol has no parameter formula"};
      if (auto d = check_sigma(*f.sep)) return *d;
      if (auto d = validate_formula(v, *f.sep)) return *d;
      // Free variables must fall within the declared slots v0..vk.
      std::set<std::string> slots;
      for (int j = 0; j <= f.k; ++j) slots.insert("v" + std::to_string(j));
      for (const auto& x : free_vars(*f.sep))
        if (!slots.count(x))
          return Diag{"separation parameter uses variable " + x + " outside slots v0..v" +
                      std::to_string(f.k)};
      return f.k + 1;
    }
    case K::SetNat:
      if (!prs || !v.with_infinity) return Diag{"symbol N requires the set grammar with infinity"};
      return 1;
  }
  return Diag{"unknown symbol kind"};
}

static std::optional<Diag> validate_term_rec(const Vocabulary& v, const Term& t) {
  if (t.is_var()) return std::nullopt;
  auto ar = symbol_arity(v, t.fn());
  if (!ar) return ar.error();
  if (*ar != static_cast<int>(t.args().size()))
    return Diag{"arity mismatch: " + t.fn().str() + " expects " + std::to_string(*ar) +
                " arguments, got " + std::to_string(t.args().size())};
  for (const auto& a : t.args())
    if (auto d = validate_term_rec(v, a)) return d;
  return std::nullopt;
}

std::optional<Diag> validate_term(const Vocabulary& v, const Term& t) {
  return validate_term_rec(v, t);
}

std::optional<Diag> validate_formula(const Vocabulary& v, const Formula& f) {
  switch (f.tag()) {
    case Conn::Top:
    case Conn::Bottom: return std::nullopt;
    case Conn::Atom: {
      auto it = v.relations.find(f.rel());
      if (it == v.relations.end()) return Diag{"unknown relation symbol " + f.rel()};
      if (it->second != static_cast<int>(f.terms().size()))
        return Diag{"arity mismatch: relation " + f.rel() + " expects " +
                    std::to_string(it->second) + " arguments, got " +
                    std::to_string(f.terms().size())};
      for (const auto& t : f.terms())
        if (auto d = validate_term(v, t)) return d;
      return std::nullopt;
    }
    case Conn::And:
    case Conn::Or:
    case Conn::Implies: {
      if (auto d = validate_formula(v, f.left())) return d;
      return validate_formula(v, f.right());
    }
    case Conn::Exists:
    case Conn::Forall: return validate_formula(v, f.body());
    case Conn::ForallIn: {
      if (auto d = validate_term(v, f.bound())) return d;
      return validate_formula(v, f.body());
    }
  }
  return std::nullopt;
}

}  // namespace sigma
