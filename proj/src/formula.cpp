#include "sigmakernel/formula.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace sigma {

// ---------------------------------------------------------------------------
// Terms

struct Term::Node {
  bool is_var = false;
  std::string var;
  FuncSym fn;
  std::vector<Term> args;
};

Term Term::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->is_var = true;
  n->var = std::move(name);
  Term t;
  t.n_ = std::move(n);
  return t;
}

Term Term::app(FuncSym f, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->is_var = false;
  n->fn = std::move(f);
  n->args = std::move(args);
  Term t;
  t.n_ = std::move(n);
  return t;
}

bool Term::is_var() const { return n_->is_var; }
const std::string& Term::var_name() const { return n_->var; }
const FuncSym& Term::fn() const { return n_->fn; }
const std::vector<Term>& Term::args() const { return n_->args; }

bool Term::operator==(const Term& o) const {
  if (n_ == o.n_) return true;
  if (!n_ || !o.n_) return false;
  if (n_->is_var != o.n_->is_var) return false;
  if (n_->is_var) return n_->var == o.n_->var;
  if (!(n_->fn == o.n_->fn)) return false;
  if (n_->args.size() != o.n_->args.size()) return false;
  for (size_t j = 0; j < n_->args.size(); ++j)
    if (n_->args[j] != o.n_->args[j]) return false;
  return true;
}

std::string Term::str() const {
  if (!n_) return "<null>";
  if (n_->is_var) return n_->var;
  if (n_->args.empty()) return n_->fn.str();
  std::string s = "(" + n_->fn.str();
  for (const auto& a : n_->args) s += " " + a.str();
  return s + ")";
}

// ---------------------------------------------------------------------------
// Function symbols

FuncSym FuncSym::separation(int k, Formula phi) {
  FuncSym f;
  f.kind = Kind::SetSep;
  f.k = k;
  f.sep = std::make_shared<const Formula>(std::move(phi));
  return f;
}

bool FuncSym::operator==(const FuncSym& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::Named: return name == o.name;
    case Kind::Proj: return k == o.k && i == o.i;
    case Kind::SetSep:
      if (k != o.k) return false;
      return (sep && o.sep) ? *sep == *o.sep : sep == o.sep;
    default: break;
  }
  if (sub.size() != o.sub.size()) return false;
  for (size_t j = 0; j < sub.size(); ++j)
    if (!(sub[j] == o.sub[j])) return false;
  return true;
}

std::string FuncSym::str() const {
  switch (kind) {
    case Kind::Named: return name;
    case Kind::Zero: return "Z";
    case Kind::Succ: return "S";
    case Kind::Proj: return "(p " + std::to_string(k) + " " + std::to_string(i) + ")";
    case Kind::Compose: {
      std::string s = "(c";
      for (const auto& g : sub) s += " " + g.str();
      return s + ")";
    }
    case Kind::PrimRec: return "(r " + sub[0].str() + " " + sub[1].str() + ")";
    case Kind::SetUnion: return "U";
    case Kind::SetPair: return "A";
    case Kind::SetImage: return "(i " + sub[0].str() + ")";
    case Kind::SetRec: return "(r " + sub[0].str() + ")";
    case Kind::SetSep:
      return "(s " + std::to_string(k) + " " + (sep ? sep->str() : "?") + ")";
    case Kind::SetNat: return "N";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Formulas

struct Formula::Node {
  Conn tag;
  std::string rel;
  std::vector<Term> terms;
  Formula left, right;  // And/Or/Implies
  std::string var;      // binders
  Term bound;           // ForallIn
  Formula body;         // binders
};

Formula Formula::top() {
  auto n = std::make_shared<Node>();
  n->tag = Conn::Top;
  Formula f;
  f.n_ = std::move(n);
  return f;
}

Formula Formula::bottom() {
  auto n = std::make_shared<Node>();
  n->tag = Conn::Bottom;
  Formula f;
  f.n_ = std::move(n);
  return f;
}

Formula Formula::atom(std::string rel, std::vector<Term> terms) {
  auto n = std::make_shared<Node>();
  n->tag = Conn::Atom;
  n->rel = std::move(rel);
  n->terms = std::move(terms);
  Formula f;
  f.n_ = std::move(n);
  return f;
}

Formula Formula::conj(Formula l, Formula r) {
  if (!l.valid() || !r.valid()) throw std::invalid_argument("null child formula");
  auto n = std::make_shared<Node>();
  n->tag = Conn::And;
  n->left = std::move(l);
  n->right = std::move(r);
  Formula f;
  f.n_ = std::move(n);
  return f;
}

Formula Formula::disj(Formula l, Formula r) {
  if (!l.valid() || !r.valid()) throw std::invalid_argument("null child formula");
  auto n = std::make_shared<Node>();
  n->tag = Conn::Or;
  n->left = std::move(l);
  n->right = std::move(r);
  Formula f;
  f.n_ = std::move(n);
  return f;
}

Formula Formula::implies(Formula l, Formula r) {
  if (!l.valid() || !r.valid()) throw std::invalid_argument("null child formula");
  auto n = std::make_shared<Node>();
  n->tag = Conn::Implies;
  n->left = std::move(l);
  n->right = std::move(r);
  Formula f;
  f.n_ = std::move(n);
  return f;
}

Formula Formula::exists(std::string v, Formula body) {
  if (!body.valid()) throw std::invalid_argument("null body");
  auto n = std::make_shared<Node>();
  n->tag = Conn::Exists;
  n->var = std::move(v);
  n->body = std::move(body);
  Formula f;
  f.n_ = std::move(n);
  return f;
}

Formula Formula::forall(std::string v, Formula body) {
  if (!body.valid()) throw std::invalid_argument("null body");
  auto n = std::make_shared<Node>();
  n->tag = Conn::Forall;
  n->var = std::move(v);
  n->body = std::move(body);
  Formula f;
  f.n_ = std::move(n);
  return f;
}

Formula Formula::forall_in(std::string v, Term bound, Formula body) {
  if (!body.valid() || !bound.valid()) throw std::invalid_argument("null bound or body");
  if (free_vars(bound).count(v))
    throw std::invalid_argument("forall_in: variable " + v + " occurs in its bound term");
  auto n = std::make_shared<Node>();
  n->tag = Conn::ForallIn;
  n->var = std::move(v);
  n->bound = std::move(bound);
  n->body = std::move(body);
  Formula f;
  f.n_ = std::move(n);
  return f;
}

Conn Formula::tag() const { return n_->tag; }
const std::string& Formula::rel() const { return n_->rel; }
const std::vector<Term>& Formula::terms() const { return n_->terms; }
const Formula& Formula::left() const { return n_->left; }
const Formula& Formula::right() const { return n_->right; }
const std::string& Formula::var() const { return n_->var; }
const Term& Formula::bound() const { return n_->bound; }
const Formula& Formula::body() const { return n_->body; }

bool Formula::operator==(const Formula& o) const {
  if (n_ == o.n_) return true;
  if (!n_ || !o.n_) return false;
  if (n_->tag != o.n_->tag) return false;
  switch (n_->tag) {
    case Conn::Top:
    case Conn::Bottom: return true;
    case Conn::Atom: {
      if (n_->rel != o.n_->rel || n_->terms.size() != o.n_->terms.size()) return false;
      for (size_t j = 0; j < n_->terms.size(); ++j)
        if (n_->terms[j] != o.n_->terms[j]) return false;
      return true;
    }
    case Conn::And:
    case Conn::Or:
    case Conn::Implies:
      return n_->left == o.n_->left && n_->right == o.n_->right;
    case Conn::Exists:
    case Conn::Forall:
      return n_->var == o.n_->var && n_->body == o.n_->body;
    case Conn::ForallIn:
      return n_->var == o.n_->var && n_->bound == o.n_->bound && n_->body == o.n_->body;
  }
  return false;
}

std::string Formula::str() const {
  if (!n_) return "<null>";
  switch (n_->tag) {
    case Conn::Top: return "top";
    case Conn::Bottom: return "bot";
    case Conn::Atom: {
      if (n_->terms.empty()) return "(" + n_->rel + ")";
      std::string s = "(" + n_->rel;
      for (const auto& t : n_->terms) s += " " + t.str();
      return s + ")";
    }
    case Conn::And: return "(and " + n_->left.str() + " " + n_->right.str() + ")";
    case Conn::Or: return "(or " + n_->left.str() + " " + n_->right.str() + ")";
    case Conn::Implies: return "(=> " + n_->left.str() + " " + n_->right.str() + ")";
    case Conn::Exists: return "(exists " + n_->var + " " + n_->body.str() + ")";
    case Conn::Forall: return "(forall " + n_->var + " " + n_->body.str() + ")";
    case Conn::ForallIn:
      return "(forallin " + n_->var + " " + n_->bound.str() + " " + n_->body.str() + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Variables

static void free_vars_term(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) {
    out.insert(t.var_name());
    return;
  }
  for (const auto& a : t.args()) free_vars_term(a, out);
}

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  free_vars_term(t, out);
  return out;
}

static void free_vars_rec(const Formula& f, std::set<std::string>& bound,
                          std::set<std::string>& out) {
  switch (f.tag()) {
    case Conn::Top:
    case Conn::Bottom: return;
    case Conn::Atom: {
      std::set<std::string> vs;
      for (const auto& t : f.terms()) free_vars_term(t, vs);
      for (const auto& v : vs)
        if (!bound.count(v)) out.insert(v);
      return;
    }
    case Conn::And:
    case Conn::Or:
    case Conn::Implies:
      free_vars_rec(f.left(), bound, out);
      free_vars_rec(f.right(), bound, out);
      return;
    case Conn::Exists:
    case Conn::Forall:
    case Conn::ForallIn: {
      if (f.tag() == Conn::ForallIn) {
        std::set<std::string> vs;
        free_vars_term(f.bound(), vs);
        for (const auto& v : vs)
          if (!bound.count(v)) out.insert(v);
      }
      bool was_bound = bound.count(f.var()) > 0;
      bound.insert(f.var());
      free_vars_rec(f.body(), bound, out);
      if (!was_bound) bound.erase(f.var());
      return;
    }
  }
}

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  free_vars_rec(f, bound, out);
  return out;
}

void collect_vars(const Term& t, std::set<std::string>& out) { free_vars_term(t, out); }

void collect_vars(const Formula& f, std::set<std::string>& out) {
  switch (f.tag()) {
    case Conn::Top:
    case Conn::Bottom: return;
    case Conn::Atom:
      for (const auto& t : f.terms()) free_vars_term(t, out);
      return;
    case Conn::And:
    case Conn::Or:
    case Conn::Implies:
      collect_vars(f.left(), out);
      collect_vars(f.right(), out);
      return;
    case Conn::Exists:
    case Conn::Forall:
    case Conn::ForallIn:
      out.insert(f.var());
      if (f.tag() == Conn::ForallIn) free_vars_term(f.bound(), out);
      collect_vars(f.body(), out);
      return;
  }
}

std::set<std::string> all_vars(const Formula& f) {
  std::set<std::string> out;
  collect_vars(f, out);
  return out;
}

std::string fresh_var(const std::set<std::string>& avoid) {
  for (int j = 0;; ++j) {
    std::string c = "v" + std::to_string(j);
    if (!avoid.count(c)) return c;
  }
}

// ---------------------------------------------------------------------------
// Substitution

Term substitute(const Term& t, const Subst& s) {
  if (t.is_var()) {
    auto it = s.find(t.var_name());
    return it == s.end() ? t : it->second;
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(substitute(a, s));
  return Term::app(t.fn(), std::move(args));
}

static Formula subst_rec(const Formula& f, const Subst& s) {
  if (s.empty()) return f;
  switch (f.tag()) {
    case Conn::Top:
    case Conn::Bottom: return f;
    case Conn::Atom: {
      std::vector<Term> ts;
      ts.reserve(f.terms().size());
      for (const auto& t : f.terms()) ts.push_back(substitute(t, s));
      return Formula::atom(f.rel(), std::move(ts));
    }
    case Conn::And: return Formula::conj(subst_rec(f.left(), s), subst_rec(f.right(), s));
    case Conn::Or: return Formula::disj(subst_rec(f.left(), s), subst_rec(f.right(), s));
    case Conn::Implies:
      return Formula::implies(subst_rec(f.left(), s), subst_rec(f.right(), s));
    case Conn::Exists:
    case Conn::Forall:
    case Conn::ForallIn: {
      Subst inner = s;
      inner.erase(f.var());
      std::set<std::string> body_free = free_vars(f.body());
      // Restrict to entries that can actually fire.
      for (auto it = inner.begin(); it != inner.end();) {
        if (!body_free.count(it->first))
          it = inner.erase(it);
        else
          ++it;
      }
      Term new_bound = f.tag() == Conn::ForallIn ? substitute(f.bound(), inner) : Term();
      if (inner.empty()) {
        if (f.tag() == Conn::ForallIn && !(new_bound == f.bound()))
          return Formula::forall_in(f.var(), new_bound, f.body());
        return f;
      }
      bool capture = false;
      for (const auto& [w, t] : inner)
        if (free_vars(t).count(f.var())) capture = true;
      std::string v = f.var();
      Formula body = f.body();
      if (capture) {
        std::set<std::string> avoid = all_vars(body);
        for (const auto& [w, t] : inner) {
          avoid.insert(w);
          collect_vars(t, avoid);
        }
        avoid.insert(v);
        std::string v2 = fresh_var(avoid);
        Subst both = inner;
        both[v] = Term::var(v2);
        Formula nb = subst_rec(body, both);
        if (f.tag() == Conn::Exists) return Formula::exists(v2, nb);
        if (f.tag() == Conn::Forall) return Formula::forall(v2, nb);
        return Formula::forall_in(v2, new_bound, nb);
      }
      Formula nb = subst_rec(body, inner);
      if (f.tag() == Conn::Exists) return Formula::exists(v, nb);
      if (f.tag() == Conn::Forall) return Formula::forall(v, nb);
      return Formula::forall_in(v, new_bound, nb);
    }
  }
  return f;
}

Formula substitute(const Formula& f, const Subst& s) { return subst_rec(f, s); }

Formula substitute(const Formula& f, const std::string& v, const Term& t) {
  Subst s;
  s[v] = t;
  return subst_rec(f, s);
}

static bool requires_renaming_rec(const Formula& f, const std::string& v,
                                  const std::set<std::string>& tvars,
                                  std::set<std::string>& binders) {
  switch (f.tag()) {
    case Conn::Top:
    case Conn::Bottom: return false;
    case Conn::Atom: {
      std::set<std::string> vs;
      for (const auto& t : f.terms()) free_vars_term(t, vs);
      if (!vs.count(v)) return false;
      for (const auto& b : binders)
        if (tvars.count(b)) return true;
      return false;
    }
    case Conn::And:
    case Conn::Or:
    case Conn::Implies:
      return requires_renaming_rec(f.left(), v, tvars, binders) ||
             requires_renaming_rec(f.right(), v, tvars, binders);
    case Conn::Exists:
    case Conn::Forall:
    case Conn::ForallIn: {
      if (f.tag() == Conn::ForallIn) {
        std::set<std::string> vs;
        free_vars_term(f.bound(), vs);
        if (vs.count(v)) {
          for (const auto& b : binders)
            if (tvars.count(b)) return true;
        }
      }
      if (f.var() == v) return false;  // v no longer free below
      bool had = binders.count(f.var()) > 0;
      binders.insert(f.var());
      bool r = requires_renaming_rec(f.body(), v, tvars, binders);
      if (!had) binders.erase(f.var());
      return r;
    }
  }
  return false;
}

bool substitution_requires_renaming(const Formula& f, const std::string& v, const Term& t) {
  std::set<std::string> tvars = free_vars(t);
  std::set<std::string> binders;
  return requires_renaming_rec(f, v, tvars, binders);
}

// ---------------------------------------------------------------------------
// Alpha equivalence

static bool alpha_term(const Term& a, const Term& b,
                       const std::map<std::string, std::string>& la,
                       const std::map<std::string, std::string>& lb) {
  if (a.is_var() != b.is_var()) return false;
  if (a.is_var()) {
    auto ia = la.find(a.var_name());
    auto ib = lb.find(b.var_name());
    if (ia != la.end() || ib != lb.end()) {
      // Bound on either side: must be the same binder level.
      return ia != la.end() && ib != lb.end() && ia->second == ib->second;
    }
    return a.var_name() == b.var_name();
  }
  if (!(a.fn() == b.fn()) || a.args().size() != b.args().size()) return false;
  for (size_t j = 0; j < a.args().size(); ++j)
    if (!alpha_term(a.args()[j], b.args()[j], la, lb)) return false;
  return true;
}

static bool alpha_rec(const Formula& a, const Formula& b,
                      std::map<std::string, std::string>& la,
                      std::map<std::string, std::string>& lb, int depth) {
  if (a.tag() != b.tag()) return false;
  switch (a.tag()) {
    case Conn::Top:
    case Conn::Bottom: return true;
    case Conn::Atom: {
      if (a.rel() != b.rel() || a.terms().size() != b.terms().size()) return false;
      for (size_t j = 0; j < a.terms().size(); ++j)
        if (!alpha_term(a.terms()[j], b.terms()[j], la, lb)) return false;
      return true;
    }
    case Conn::And:
    case Conn::Or:
    case Conn::Implies:
      return alpha_rec(a.left(), b.left(), la, lb, depth) &&
             alpha_rec(a.right(), b.right(), la, lb, depth);
    case Conn::Exists:
    case Conn::Forall:
    case Conn::ForallIn: {
      if (a.tag() == Conn::ForallIn && !alpha_term(a.bound(), b.bound(), la, lb)) return false;
      std::string lvl = "#" + std::to_string(depth);
      auto oa = la.find(a.var());
      auto ob = lb.find(b.var());
      std::optional<std::string> sa, sb;
      if (oa != la.end()) sa = oa->second;
      if (ob != lb.end()) sb = ob->second;
      la[a.var()] = lvl;
      lb[b.var()] = lvl;
      bool r = alpha_rec(a.body(), b.body(), la, lb, depth + 1);
      if (sa)
        la[a.var()] = *sa;
      else
        la.erase(a.var());
      if (sb)
        lb[b.var()] = *sb;
      else
        lb.erase(b.var());
      return r;
    }
  }
  return false;
}

bool alpha_equal(const Formula& a, const Formula& b) {
  if (!a.valid() || !b.valid()) return a.valid() == b.valid();
  std::map<std::string, std::string> la, lb;
  return alpha_rec(a, b, la, lb, 0);
}

static void alpha_key_term(const Term& t, const std::map<std::string, std::string>& env,
                           std::string& out) {
  if (t.is_var()) {
    auto it = env.find(t.var_name());
    out += it == env.end() ? t.var_name() : it->second;
    return;
  }
  out += "(" + t.fn().str();
  for (const auto& a : t.args()) {
    out += ' ';
    alpha_key_term(a, env, out);
  }
  out += ')';
}

static void alpha_key_rec(const Formula& f, std::map<std::string, std::string>& env, int depth,
                          std::string& out) {
  switch (f.tag()) {
    case Conn::Top: out += "T"; return;
    case Conn::Bottom: out += "F"; return;
    case Conn::Atom:
      out += "(" + f.rel();
      for (const auto& t : f.terms()) {
        out += ' ';
        alpha_key_term(t, env, out);
      }
      out += ')';
      return;
    case Conn::And:
    case Conn::Or:
    case Conn::Implies: {
      out += f.tag() == Conn::And ? "(& " : f.tag() == Conn::Or ? "(| " : "(> ";
      alpha_key_rec(f.left(), env, depth, out);
      out += ' ';
      alpha_key_rec(f.right(), env, depth, out);
      out += ')';
      return;
    }
    case Conn::Exists:
    case Conn::Forall:
    case Conn::ForallIn: {
      out += f.tag() == Conn::Exists ? "(E" : f.tag() == Conn::Forall ? "(A" : "(B";
      if (f.tag() == Conn::ForallIn) {
        out += ' ';
        alpha_key_term(f.bound(), env, out);
      }
      std::string lvl = "#" + std::to_string(depth);
      auto old = env.find(f.var());
      std::optional<std::string> saved;
      if (old != env.end()) saved = old->second;
      env[f.var()] = lvl;
      out += ' ';
      alpha_key_rec(f.body(), env, depth + 1, out);
      out += ')';
      if (saved)
        env[f.var()] = *saved;
      else
        env.erase(f.var());
      return;
    }
  }
}

std::string alpha_key(const Formula& f) {
  std::string out;
  std::map<std::string, std::string> env;
  alpha_key_rec(f, env, 0, out);
  return out;
}

Formula rename_bound_away(const Formula& f, const std::set<std::string>& avoid) {
  switch (f.tag()) {
    case Conn::Top:
    case Conn::Bottom:
    case Conn::Atom: return f;
    case Conn::And:
      return Formula::conj(rename_bound_away(f.left(), avoid), rename_bound_away(f.right(), avoid));
    case Conn::Or:
      return Formula::disj(rename_bound_away(f.left(), avoid), rename_bound_away(f.right(), avoid));
    case Conn::Implies:
      return Formula::implies(rename_bound_away(f.left(), avoid),
                              rename_bound_away(f.right(), avoid));
    case Conn::Exists:
    case Conn::Forall:
    case Conn::ForallIn: {
      Formula body = rename_bound_away(f.body(), avoid);
      std::string v = f.var();
      if (avoid.count(v)) {
        std::set<std::string> av = avoid;
        auto allv = all_vars(body);
        av.insert(allv.begin(), allv.end());
        av.insert(v);
        std::string v2 = fresh_var(av);
        body = substitute(body, v, Term::var(v2));
        v = v2;
      }
      if (f.tag() == Conn::Exists) return Formula::exists(v, body);
      if (f.tag() == Conn::Forall) return Formula::forall(v, body);
      return Formula::forall_in(v, f.bound(), body);
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Sigma fragment

static std::optional<Diag> check_sigma_rec(const Formula& f, Path& here) {
  switch (f.tag()) {
    case Conn::Top:
    case Conn::Bottom:
    case Conn::Atom: return std::nullopt;
    case Conn::Implies:
      return Diag{"implication is not a Sigma connective", 0, 0, here};
    case Conn::Forall:
      return Diag{"unguarded universal quantifier is not a Sigma connective", 0, 0, here};
    case Conn::And:
    case Conn::Or: {
      here.push_back(Sel::Left);
      if (auto d = check_sigma_rec(f.left(), here)) return d;
      here.back() = Sel::Right;
      if (auto d = check_sigma_rec(f.right(), here)) return d;
      here.pop_back();
      return std::nullopt;
    }
    case Conn::Exists: {
      here.push_back(Sel::Body);
      if (auto d = check_sigma_rec(f.body(), here)) return d;
      here.pop_back();
      return std::nullopt;
    }
    case Conn::ForallIn: {
      if (free_vars(f.bound()).count(f.var()))
        return Diag{"bound variable " + f.var() + " occurs in its bound term", 0, 0, here};
      here.push_back(Sel::Body);
      if (auto d = check_sigma_rec(f.body(), here)) return d;
      here.pop_back();
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::optional<Diag> check_sigma(const Formula& f) {
  Path here;
  return check_sigma_rec(f, here);
}

Formula universal_closure(const Formula& f) {
  std::set<std::string> fv = free_vars(f);
  Formula out = f;
  // set iterates in lexicographic order; wrap from the innermost out.
  std::vector<std::string> vs(fv.begin(), fv.end());
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) out = Formula::forall(*it, out);
  return out;
}

// ---------------------------------------------------------------------------
// Contexts

Result<Formula> subformula_at(const Formula& f, const Path& p) {
  Formula cur = f;
  for (size_t j = 0; j < p.size(); ++j) {
    switch (p[j]) {
      case Sel::Left:
        if (cur.tag() != Conn::And && cur.tag() != Conn::Or && cur.tag() != Conn::Implies)
          return Diag{"path selector l does not apply", 0, 0, Path(p.begin(), p.begin() + j + 1)};
        cur = cur.left();
        break;
      case Sel::Right:
        if (cur.tag() != Conn::And && cur.tag() != Conn::Or && cur.tag() != Conn::Implies)
          return Diag{"path selector r does not apply", 0, 0, Path(p.begin(), p.begin() + j + 1)};
        cur = cur.right();
        break;
      case Sel::Body:
        if (cur.tag() != Conn::Exists && cur.tag() != Conn::Forall && cur.tag() != Conn::ForallIn)
          return Diag{"path selector b does not apply", 0, 0, Path(p.begin(), p.begin() + j + 1)};
        cur = cur.body();
        break;
    }
  }
  return cur;
}

static Result<Formula> replace_rec(const Formula& f, const Path& p, size_t j,
                                   const Formula& repl) {
  if (j == p.size()) return repl;
  switch (p[j]) {
    case Sel::Left: {
      if (f.tag() != Conn::And && f.tag() != Conn::Or && f.tag() != Conn::Implies)
        return Diag{"path selector l does not apply", 0, 0, Path(p.begin(), p.begin() + j + 1)};
      auto sub = replace_rec(f.left(), p, j + 1, repl);
      if (!sub) return sub;
      if (f.tag() == Conn::And) return Formula::conj(*sub, f.right());
      if (f.tag() == Conn::Or) return Formula::disj(*sub, f.right());
      return Formula::implies(*sub, f.right());
    }
    case Sel::Right: {
      if (f.tag() != Conn::And && f.tag() != Conn::Or && f.tag() != Conn::Implies)
        return Diag{"path selector r does not apply", 0, 0, Path(p.begin(), p.begin() + j + 1)};
      auto sub = replace_rec(f.right(), p, j + 1, repl);
      if (!sub) return sub;
      if (f.tag() == Conn::And) return Formula::conj(f.left(), *sub);
      if (f.tag() == Conn::Or) return Formula::disj(f.left(), *sub);
      return Formula::implies(f.left(), *sub);
    }
    case Sel::Body: {
      if (f.tag() != Conn::Exists && f.tag() != Conn::Forall && f.tag() != Conn::ForallIn)
        return Diag{"path selector b does not apply", 0, 0, Path(p.begin(), p.begin() + j + 1)};
      auto sub = replace_rec(f.body(), p, j + 1, repl);
      if (!sub) return sub;
      if (f.tag() == Conn::Exists) return Formula::exists(f.var(), *sub);
      if (f.tag() == Conn::Forall) return Formula::forall(f.var(), *sub);
      return Formula::forall_in(f.var(), f.bound(), *sub);
    }
  }
  return Diag{"unreachable"};
}

Result<Formula> replace_at(const Formula& f, const Path& p, const Formula& repl) {
  return replace_rec(f, p, 0, repl);
}

static void paths_rec(const Formula& f, Path& here, std::vector<Path>& out) {
  out.push_back(here);
  switch (f.tag()) {
    case Conn::And:
    case Conn::Or:
    case Conn::Implies:
      here.push_back(Sel::Left);
      paths_rec(f.left(), here, out);
      here.back() = Sel::Right;
      paths_rec(f.right(), here, out);
      here.pop_back();
      return;
    case Conn::Exists:
    case Conn::Forall:
    case Conn::ForallIn:
      here.push_back(Sel::Body);
      paths_rec(f.body(), here, out);
      here.pop_back();
      return;
    default: return;
  }
}

std::vector<Path> all_paths(const Formula& f) {
  std::vector<Path> out;
  Path here;
  paths_rec(f, here, out);
  return out;
}

// ---------------------------------------------------------------------------
// Desugaring

Formula desugar_forall_in(const Formula& f, const std::string& notin) {
  if (f.tag() != Conn::ForallIn) return f;
  Formula guard = Formula::atom(notin, {Term::var(f.var()), f.bound()});
  return Formula::forall(f.var(), Formula::disj(guard, f.body()));
}

Formula resugar_forall_in(const Formula& f, const std::string& notin) {
  if (f.tag() != Conn::Forall) return f;
  const Formula& b = f.body();
  if (b.tag() != Conn::Or) return f;
  const Formula& g = b.left();
  if (g.tag() != Conn::Atom || g.rel() != notin || g.terms().size() != 2) return f;
  if (!g.terms()[0].is_var() || g.terms()[0].var_name() != f.var()) return f;
  if (free_vars(g.terms()[1]).count(f.var())) return f;
  return Formula::forall_in(f.var(), g.terms()[1], b.right());
}

int formula_size(const Formula& f) {
  switch (f.tag()) {
    case Conn::Top:
    case Conn::Bottom:
    case Conn::Atom: return 1;
    case Conn::And:
    case Conn::Or:
    case Conn::Implies: return 1 + formula_size(f.left()) + formula_size(f.right());
    case Conn::Exists:
    case Conn::Forall: return 1 + formula_size(f.body());
    case Conn::ForallIn: return 2 + formula_size(f.body());
  }
  return 1;
}

int degree(const Formula& f) {
  switch (f.tag()) {
    case Conn::Top:
    case Conn::Bottom:
    case Conn::Atom: return 0;
    case Conn::And:
    case Conn::Or:
    case Conn::Implies: return 1 + std::max(degree(f.left()), degree(f.right()));
    case Conn::Exists:
    case Conn::Forall: return 1 + degree(f.body());
    case Conn::ForallIn: return 2 + degree(f.body());
  }
  return 0;
}

}  // namespace sigma
