#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "sigmakernel/diag.hpp"

namespace sigma {

class Formula;

// A function symbol: either a plain named symbol, or an element of one of the
// generated symbol grammars (primitive recursive functions over numbers, and
// primitive recursive set functions). Structured symbols carry their arity
// structurally; named symbols get theirs from the vocabulary.
struct FuncSym {
  enum class Kind : uint8_t {
    Named,     // constants and declared functions
    Zero,      // Z, unary
    Succ,      // S, unary
    Proj,      // P(k,i), k-ary
    Compose,   // C(g, h1..hm), arity of the h's
    PrimRec,   // R(g, h), (arity(g)+1)-ary
    SetUnion,  // U, unary
    SetPair,   // A, binary
    SetImage,  // I(f), same arity as f
    SetRec,    // R(f), arity(f)-1
    SetSep,    // S(phi) for a Delta0 formula of arity k+1
    SetNat,    // N, unary
  };

  Kind kind = Kind::Named;
  std::string name;                    // Named
  int k = 0, i = 0;                    // Proj(k,i); SetSep stores k in `k`
  std::vector<FuncSym> sub;            // Compose: g,h1..hm; PrimRec: g,h; SetImage/SetRec: f
  std::shared_ptr<const Formula> sep;  // SetSep parameter

  static FuncSym named(std::string n) {
    FuncSym f;
    f.name = std::move(n);
    return f;
  }
  static FuncSym make(Kind kd, std::vector<FuncSym> s = {}) {
    FuncSym f;
    f.kind = kd;
    f.sub = std::move(s);
    return f;
  }
  static FuncSym proj(int k, int i) {
    FuncSym f;
    f.kind = Kind::Proj;
    f.k = k;
    f.i = i;
    return f;
  }
  static FuncSym separation(int k, Formula phi);

  bool operator==(const FuncSym& o) const;
  bool operator!=(const FuncSym& o) const { return !(*this == o); }
  std::string str() const;  // canonical rendering; doubles as a table key
};

class Term {
public:
  Term() = default;
  static Term var(std::string name);
  static Term app(FuncSym f, std::vector<Term> args);

  bool valid() const { return n_ != nullptr; }
  bool is_var() const;
  const std::string& var_name() const;
  const FuncSym& fn() const;
  const std::vector<Term>& args() const;

  bool operator==(const Term& o) const;
  bool operator!=(const Term& o) const { return !(*this == o); }
  std::string str() const;

private:
  struct Node;
  std::shared_ptr<const Node> n_;
};

enum class Conn : uint8_t { Top, Bottom, Atom, And, Or, Implies, Exists, Forall, ForallIn };

// Immutable first-order formulas. ForallIn(v, t, phi) is the bounded
// universal quantifier, a primitive node that desugars to
// Forall(v, Or(notin(v, t), phi)) on demand. Implies and unguarded Forall
// exist for the classical sequent side only; the Sigma fragment excludes
// them (see check_sigma).
class Formula {
public:
  Formula() = default;

  static Formula top();
  static Formula bottom();
  static Formula atom(std::string rel, std::vector<Term> terms);
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula implies(Formula l, Formula r);
  static Formula exists(std::string v, Formula body);
  static Formula forall(std::string v, Formula body);
  // Requires v not free in bound; throws std::invalid_argument otherwise.
  static Formula forall_in(std::string v, Term bound, Formula body);

  bool valid() const { return n_ != nullptr; }
  Conn tag() const;
  const std::string& rel() const;
  const std::vector<Term>& terms() const;
  const Formula& left() const;
  const Formula& right() const;
  const std::string& var() const;
  const Term& bound() const;
  const Formula& body() const;

  bool operator==(const Formula& o) const;  // syntactic identity
  bool operator!=(const Formula& o) const { return !(*this == o); }
  std::string str() const;

private:
  struct Node;
  std::shared_ptr<const Node> n_;
};

using Subst = std::map<std::string, Term>;

std::set<std::string> free_vars(const Term& t);
std::set<std::string> free_vars(const Formula& f);
// Every variable name occurring anywhere, bound or free.
void collect_vars(const Term& t, std::set<std::string>& out);
void collect_vars(const Formula& f, std::set<std::string>& out);
std::set<std::string> all_vars(const Formula& f);

// Smallest name of the shape v0, v1, ... not in `avoid`.
std::string fresh_var(const std::set<std::string>& avoid);

Term substitute(const Term& t, const Subst& s);
// Simultaneous capture-avoiding substitution; bound variables are renamed
// (deterministically) whenever a substituted term would be captured.
Formula substitute(const Formula& f, const Subst& s);
Formula substitute(const Formula& f, const std::string& v, const Term& t);

// True iff textbook substitution f[v/t] would have to rename a binder,
// i.e. some free occurrence of v sits under a binder for a variable of t.
bool substitution_requires_renaming(const Formula& f, const std::string& v, const Term& t);

bool alpha_equal(const Formula& a, const Formula& b);
// Canonical de Bruijn rendering; equal strings iff alpha-equal formulas.
std::string alpha_key(const Formula& f);

// Renames bound variables so that none of them occurs in `avoid`.
Formula rename_bound_away(const Formula& f, const std::set<std::string>& avoid);

// Structural Sigma check: no Implies, no unguarded Forall, and every
// ForallIn satisfies its guard invariant. Returns nullopt when ok.
std::optional<Diag> check_sigma(const Formula& f);

Formula universal_closure(const Formula& f);

Result<Formula> subformula_at(const Formula& f, const Path& p);
// Literal (capturing) replacement of the subformula at p.
Result<Formula> replace_at(const Formula& f, const Path& p, const Formula& repl);

// All formula positions of f in preorder, root first.
std::vector<Path> all_paths(const Formula& f);

// ForallIn(v,t,phi) <-> Forall(v, Or(Atom(notin,[v,t]), phi)).
Formula desugar_forall_in(const Formula& f, const std::string& notin);
Formula resugar_forall_in(const Formula& f, const std::string& notin);

int formula_size(const Formula& f);
// Connective depth used as the cut-rank measure; substitution-invariant.
// ForallIn counts as quantifier plus guard disjunction.
int degree(const Formula& f);

}  // namespace sigma
