#include "sigmakernel/theories.hpp"

#include <algorithm>

namespace sigma {

namespace {

Term V(const std::string& n) { return Term::var(n); }
Term zero() { return Term::app(FuncSym::named("0"), {}); }
Term succ(Term t) { return Term::app(FuncSym::make(FuncSym::Kind::Succ), {std::move(t)}); }
Formula atom2(const std::string& r, Term a, Term b) {
  return Formula::atom(r, {std::move(a), std::move(b)});
}

std::vector<Term> var_args(const std::string& stem, int from, int to) {
  std::vector<Term> out;
  for (int j = from; j <= to; ++j) out.push_back(V(stem + std::to_string(j)));
  return out;
}

}  // namespace

std::string AxiomRef::str() const {
  if (!formula && syms.empty() && k == 0 && i == 0) return name;
  std::string s = "(" + name;
  if (name == "15") {
    s += " " + std::to_string(k) + " " + std::to_string(i);
  } else if (name == "20" || name == "21" || name == "22") {
    s += " " + std::to_string(k);
    if (formula) s += " " + formula->str();
  } else {
    for (const auto& f : syms) s += " " + f.str();
    if (formula) s += " " + formula->str();
  }
  return s + ")";
}

std::vector<std::string> Theory::axiom_params(const Implication& imp) {
  std::set<std::string> fv = free_vars(imp.lhs);
  auto r = free_vars(imp.rhs);
  fv.insert(r.begin(), r.end());
  return {fv.begin(), fv.end()};
}

// ---------------------------------------------------------------------------
// Delta0 and dualization

static bool bounded_exists_parts(const Formula& ex, const Vocabulary& v, Formula* guard_out,
                                 Formula* rest_out) {
  if (ex.tag() != Conn::Exists) return false;
  auto pos = v.positive_guard();
  if (!pos) return false;
  const Formula& b = ex.body();
  if (b.tag() != Conn::And) return false;
  auto is_guard = [&](const Formula& g) {
    return g.tag() == Conn::Atom && g.rel() == *pos && g.terms().size() == 2 &&
           g.terms()[0].is_var() && g.terms()[0].var_name() == ex.var() &&
           !free_vars(g.terms()[1]).count(ex.var());
  };
  if (is_guard(b.left())) {
    if (guard_out) *guard_out = b.left();
    if (rest_out) *rest_out = b.right();
    return true;
  }
  if (is_guard(b.right())) {
    if (guard_out) *guard_out = b.right();
    if (rest_out) *rest_out = b.left();
    return true;
  }
  return false;
}

bool is_delta0(const Formula& f, const Vocabulary& v) {
  switch (f.tag()) {
    case Conn::Top:
    case Conn::Bottom:
    case Conn::Atom: return true;
    case Conn::And:
    case Conn::Or: return is_delta0(f.left(), v) && is_delta0(f.right(), v);
    case Conn::Implies:
    case Conn::Forall: return false;
    case Conn::ForallIn: return is_delta0(f.body(), v);
    case Conn::Exists: {
      Formula rest;
      if (!bounded_exists_parts(f, v, nullptr, &rest)) return false;
      return is_delta0(rest, v);
    }
  }
  return false;
}

Result<Formula> dualize(const Formula& f, const Vocabulary& v) {
  switch (f.tag()) {
    case Conn::Top: return Formula::bottom();
    case Conn::Bottom: return Formula::top();
    case Conn::Atom: {
      auto d = v.dual_of(f.rel());
      if (!d) return Diag{"no dual declared for relation " + f.rel()};
      return Formula::atom(*d, f.terms());
    }
    case Conn::And: {
      auto l = dualize(f.left(), v);
      if (!l) return l;
      auto r = dualize(f.right(), v);
      if (!r) return r;
      return Formula::disj(*l, *r);
    }
    case Conn::Or: {
      auto l = dualize(f.left(), v);
      if (!l) return l;
      auto r = dualize(f.right(), v);
      if (!r) return r;
      return Formula::conj(*l, *r);
    }
    case Conn::ForallIn: {
      auto pos = v.positive_guard();
      if (!pos) return Diag{"no dual declared for guard relation " + v.notin};
      auto b = dualize(f.body(), v);
      if (!b) return b;
      Formula guard = atom2(*pos, V(f.var()), f.bound());
      return Formula::exists(f.var(), Formula::conj(guard, *b));
    }
    case Conn::Exists: {
      Formula guard, rest;
      if (!bounded_exists_parts(f, v, &guard, &rest))
        return Diag{"existential quantifier is not bounded; formula is not Delta0"};
      auto b = dualize(rest, v);
      if (!b) return b;
      return Formula::forall_in(f.var(), guard.terms()[1], *b);
    }
    case Conn::Implies:
    case Conn::Forall: return Diag{"formula is not in the Sigma fragment"};
  }
  return Diag{"unreachable"};
}

// ---------------------------------------------------------------------------
// Schema generators

Result<Implication> congruence_instance(const Vocabulary& v, const Formula& phi) {
  if (auto d = check_sigma(phi)) return *d;
  if (auto d = validate_formula(v, phi)) return *d;
  std::string x = "x";
  std::set<std::string> avoid = all_vars(phi);
  avoid.insert(x);
  std::string y = avoid.count("y") ? fresh_var(avoid) : "y";
  Formula lhs = Formula::conj(phi, atom2("=", V(x), V(y)));
  Formula rhs = substitute(phi, x, V(y));
  return Implication{lhs, rhs};
}

Result<Implication> induction_instance(const Vocabulary& v, const Formula& theta) {
  if (auto d = check_sigma(theta)) return *d;
  if (auto d = validate_formula(v, theta)) return *d;
  if (!is_delta0(theta, v)) return Diag{"induction parameter is not Delta0"};
  std::string x = "x";
  std::set<std::string> avoid = all_vars(theta);
  avoid.insert(x);
  std::string y = avoid.count("y") ? fresh_var(avoid) : "y";
  auto dual_theta = dualize(theta, v);
  if (!dual_theta) return dual_theta.error();
  Formula step = Formula::disj(*dual_theta, substitute(theta, x, succ(V(x))));
  Formula lhs = Formula::forall_in(x, V(y), step);
  Formula rhs = Formula::disj(substitute(*dual_theta, x, zero()), substitute(theta, x, V(y)));
  return Implication{lhs, rhs};
}

Result<std::vector<Implication>> separation_instances(const Vocabulary& v, int k,
                                                      const Formula& phi) {
  if (auto d = check_sigma(phi)) return *d;
  if (!is_delta0(phi, v)) return Diag{"separation parameter is not Delta0"};
  FuncSym sym = FuncSym::separation(k, phi);
  if (auto ar = symbol_arity(v, sym); !ar) return ar.error();
  // Slots v0..vk become z, x1..xk.
  Subst slots;
  slots["v0"] = V("z");
  for (int j = 1; j <= k; ++j) slots["v" + std::to_string(j)] = V("x" + std::to_string(j));
  Formula phi_inst = substitute(phi, slots);
  std::vector<Term> args;
  args.push_back(V("y"));
  for (auto& t : var_args("x", 1, k)) args.push_back(t);
  Term sep_term = Term::app(sym, args);
  Formula member = atom2("in", V("z"), sep_term);
  std::vector<Implication> out;
  out.push_back({Formula::conj(atom2("in", V("z"), V("y")), phi_inst), member});
  out.push_back({member, atom2("in", V("z"), V("y"))});
  out.push_back({member, phi_inst});
  return out;
}

// ---------------------------------------------------------------------------
// Symbol family axioms

static Result<Implication> proj_axiom(const Vocabulary& v, int k, int i) {
  FuncSym p = FuncSym::proj(k, i);
  if (auto ar = symbol_arity(v, p); !ar) return ar.error();
  std::vector<Term> xs = var_args("x", 1, k);
  return Implication{Formula::top(), atom2("=", Term::app(p, xs), V("x" + std::to_string(i)))};
}

static Result<Implication> compose_axiom(const Vocabulary& v, const std::vector<FuncSym>& syms) {
  if (syms.size() < 2) return Diag{"composition axiom needs an outer and inner symbols"};
  FuncSym c = FuncSym::make(FuncSym::Kind::Compose, syms);
  auto ar = symbol_arity(v, c);
  if (!ar) return ar.error();
  int k = *ar;
  std::vector<Term> xs = var_args("x", 1, k);
  std::vector<Term> inner;
  for (size_t j = 1; j < syms.size(); ++j) inner.push_back(Term::app(syms[j], xs));
  return Implication{Formula::top(),
                     atom2("=", Term::app(c, xs), Term::app(syms[0], inner))};
}

static Result<Implication> primrec_axiom(const Vocabulary& v, const std::vector<FuncSym>& syms,
                                         bool step_case) {
  if (syms.size() != 2) return Diag{"recursion axiom takes two symbols"};
  FuncSym r = FuncSym::make(FuncSym::Kind::PrimRec, syms);
  auto ar = symbol_arity(v, r);
  if (!ar) return ar.error();
  int k = *ar - 1;
  std::vector<Term> xs = var_args("x", 1, k);
  auto r_at = [&](Term first) {
    std::vector<Term> args{std::move(first)};
    for (const auto& x : xs) args.push_back(x);
    return Term::app(r, args);
  };
  if (!step_case)
    return Implication{Formula::top(), atom2("=", r_at(zero()), Term::app(syms[0], xs))};
  std::vector<Term> hargs{V("y"), r_at(V("y"))};
  for (const auto& x : xs) hargs.push_back(x);
  return Implication{Formula::top(),
                     atom2("=", r_at(succ(V("y"))), Term::app(syms[1], hargs))};
}

static Result<Implication> image_axiom(const Vocabulary& v, const FuncSym& f, bool out_dir) {
  FuncSym img = FuncSym::make(FuncSym::Kind::SetImage, {f});
  auto ar = symbol_arity(v, img);
  if (!ar) return ar.error();
  int k = *ar - 1;
  std::vector<Term> xs = var_args("x", 1, k);
  auto f_at = [&](Term first) {
    std::vector<Term> args{std::move(first)};
    for (const auto& x : xs) args.push_back(x);
    return Term::app(f, args);
  };
  std::vector<Term> iargs{V("y")};
  for (const auto& x : xs) iargs.push_back(x);
  Term image = Term::app(img, iargs);
  if (!out_dir)
    return Implication{atom2("in", V("w"), V("y")), atom2("in", f_at(V("w")), image)};
  // z in I(f)(y, xs)  =>  exists w in y. z = f(w, xs)
  Formula body = Formula::conj(atom2("in", V("w"), V("y")), atom2("=", V("z"), f_at(V("w"))));
  return Implication{atom2("in", V("z"), image), Formula::exists("w", body)};
}

static Result<Implication> setrec_axiom(const Vocabulary& v, const FuncSym& f) {
  FuncSym rec = FuncSym::make(FuncSym::Kind::SetRec, {f});
  auto ar = symbol_arity(v, rec);
  if (!ar) return ar.error();
  int k = *ar - 1;
  std::vector<Term> xs = var_args("x", 1, k);
  std::vector<Term> rargs{V("y")};
  for (const auto& x : xs) rargs.push_back(x);
  Term rec_term = Term::app(rec, rargs);
  Term img = Term::app(FuncSym::make(FuncSym::Kind::SetImage, {rec}), rargs);
  std::vector<Term> fargs{img, V("y")};
  for (const auto& x : xs) fargs.push_back(x);
  return Implication{Formula::top(), atom2("=", rec_term, Term::app(f, fargs))};
}

// ---------------------------------------------------------------------------
// Theory

Result<Implication> Theory::resolve(const AxiomRef& ref) const {
  if (const Implication* c = find_concrete(ref.name)) {
    if (ref.formula || !ref.syms.empty())
      return Diag{"axiom " + ref.name + " is concrete and takes no parameters"};
    return *c;
  }
  bool pra = vocab.grammar == SymbolGrammar::Pra;
  bool prs = vocab.grammar == SymbolGrammar::Prs;
  if (ref.name == "4" && gen_congruence) {
    if (!ref.formula) return Diag{"congruence instance needs a parameter formula"};
    return congruence_instance(vocab, *ref.formula);
  }
  if (ref.name == "19" && pra && gen_induction) {
    if (!ref.formula) return Diag{"induction instance needs a parameter formula"};
    return induction_instance(vocab, *ref.formula);
  }
  if (gen_symbol_families) {
    if (ref.name == "15") return proj_axiom(vocab, ref.k, ref.i);
    if (ref.name == "16") return compose_axiom(vocab, ref.syms);
    if (pra && ref.name == "17") return primrec_axiom(vocab, ref.syms, false);
    if (pra && ref.name == "18") return primrec_axiom(vocab, ref.syms, true);
    if (prs && ref.name == "17") {
      if (ref.syms.size() != 1) return Diag{"axiom 17 takes one symbol"};
      return image_axiom(vocab, ref.syms[0], false);
    }
    if (prs && ref.name == "18") {
      if (ref.syms.size() != 1) return Diag{"axiom 18 takes one symbol"};
      return image_axiom(vocab, ref.syms[0], true);
    }
    if (prs && ref.name == "19") {
      if (ref.syms.size() != 1) return Diag{"axiom 19 takes one symbol"};
      return setrec_axiom(vocab, ref.syms[0]);
    }
  }
  if (gen_separation && (ref.name == "20" || ref.name == "21" || ref.name == "22")) {
    if (!ref.formula) return Diag{"separation instance needs a parameter formula"};
    auto insts = separation_instances(vocab, ref.k, *ref.formula);
    if (!insts) return insts.error();
    int which = ref.name == "20" ? 0 : ref.name == "21" ? 1 : 2;
    return (*insts)[which];
  }
  return Diag{"unknown axiom " + ref.str() + " in theory " + name};
}

// ---------------------------------------------------------------------------
// Builtins

static void add_equality_axioms(Theory& t) {
  Formula x_eq_y = atom2("=", V("x"), V("y"));
  t.axioms.push_back({"1", {Formula::top(), atom2("=", V("x"), V("x"))}});
  t.axioms.push_back({"2", {x_eq_y, atom2("=", V("y"), V("x"))}});
  t.axioms.push_back(
      {"3", {Formula::conj(x_eq_y, atom2("=", V("y"), V("z"))), atom2("=", V("x"), V("z"))}});
  t.gen_congruence = true;  // (4)
  t.axioms.push_back({"5", {Formula::top(), Formula::disj(x_eq_y, atom2("neq", V("x"), V("y")))}});
  t.axioms.push_back({"6", {Formula::conj(x_eq_y, atom2("neq", V("x"), V("y"))), Formula::bottom()}});
}

Theory builtin_equality(const Vocabulary& v) {
  Theory t;
  t.name = "equality";
  t.vocab = v;
  t.vocab.relations.emplace("=", 2);
  t.vocab.relations.emplace("neq", 2);
  t.vocab.duals["="] = "neq";
  t.vocab.duals["neq"] = "=";
  add_equality_axioms(t);
  return t;
}

Theory builtin_pra() {
  Theory t;
  t.name = "pra";
  t.vocab.relations = {{"=", 2}, {"neq", 2}, {"<", 2}, {"nless", 2}};
  t.vocab.functions = {{"0", 0}};
  t.vocab.notin = "nless";
  t.vocab.duals = {{"=", "neq"}, {"neq", "="}, {"<", "nless"}, {"nless", "<"}};
  t.vocab.grammar = SymbolGrammar::Pra;
  add_equality_axioms(t);
  Formula x_lt_y = atom2("<", V("x"), V("y"));
  t.axioms.push_back(
      {"7", {Formula::top(), Formula::disj(x_lt_y, atom2("nless", V("x"), V("y")))}});
  t.axioms.push_back(
      {"8", {Formula::conj(x_lt_y, atom2("nless", V("x"), V("y"))), Formula::bottom()}});
  t.axioms.push_back({"9", {atom2("<", V("x"), zero()), Formula::bottom()}});
  t.axioms.push_back({"10", {Formula::top(), atom2("<", V("x"), succ(V("x")))}});
  t.axioms.push_back({"11",
                      {atom2("<", V("x"), succ(V("y"))),
                       Formula::disj(x_lt_y, atom2("=", V("x"), V("y")))}});
  t.axioms.push_back({"12", {atom2("=", succ(V("x")), succ(V("y"))), atom2("=", V("x"), V("y"))}});
  t.axioms.push_back({"13",
                      {atom2("neq", V("x"), zero()),
                       Formula::exists("y", atom2("=", V("x"), succ(V("y"))))}});
  t.axioms.push_back(
      {"14", {Formula::top(),
              atom2("=", Term::app(FuncSym::make(FuncSym::Kind::Zero), {V("x")}), zero())}});
  t.gen_symbol_families = true;  // (15)-(18)
  t.gen_induction = true;        // (19)
  return t;
}

Theory builtin_prs() {
  Theory t;
  t.name = "prs";
  t.vocab.relations = {{"=", 2}, {"neq", 2}, {"in", 2}, {"notin", 2}};
  t.vocab.notin = "notin";
  t.vocab.duals = {{"=", "neq"}, {"neq", "="}, {"in", "notin"}, {"notin", "in"}};
  t.vocab.grammar = SymbolGrammar::Prs;
  add_equality_axioms(t);
  auto mem = [&](Term a, Term b) { return atom2("in", std::move(a), std::move(b)); };
  Term U_x = Term::app(FuncSym::make(FuncSym::Kind::SetUnion), {V("x")});
  Term A_xy = Term::app(FuncSym::make(FuncSym::Kind::SetPair), {V("x"), V("y")});
  t.axioms.push_back(
      {"7", {Formula::top(), Formula::disj(mem(V("x"), V("y")), atom2("notin", V("x"), V("y")))}});
  t.axioms.push_back(
      {"8", {Formula::conj(mem(V("x"), V("y")), atom2("notin", V("x"), V("y"))), Formula::bottom()}});
  t.axioms.push_back(
      {"9",
       {Formula::conj(Formula::forall_in("z", V("x"), mem(V("z"), V("y"))),
                      Formula::forall_in("z", V("y"), mem(V("z"), V("x")))),
        atom2("=", V("x"), V("y"))}});
  t.axioms.push_back(
      {"10", {Formula::conj(mem(V("z"), V("y")), mem(V("y"), V("x"))), mem(V("z"), U_x)}});
  t.axioms.push_back(
      {"11",
       {mem(V("z"), U_x),
        Formula::exists("y", Formula::conj(mem(V("y"), V("x")), mem(V("z"), V("y"))))}});
  t.axioms.push_back({"12", {Formula::top(), mem(V("x"), A_xy)}});
  t.axioms.push_back({"13", {Formula::top(), mem(V("y"), A_xy)}});
  t.axioms.push_back(
      {"14",
       {mem(V("z"), A_xy),
        Formula::disj(atom2("=", V("z"), V("x")), atom2("=", V("z"), V("y")))}});
  t.gen_symbol_families = true;  // (15)-(19)
  t.gen_separation = true;       // (20)-(22)
  // (23) foundation
  t.axioms.push_back(
      {"23",
       {Formula::exists("z", Formula::conj(mem(V("z"), V("x")), Formula::top())),
        Formula::exists(
            "z", Formula::conj(mem(V("z"), V("x")),
                               Formula::forall_in("y", V("x"),
                                                  atom2("notin", V("z"), V("y")))))}});
  return t;
}

Theory builtin_prs_infinity() {
  Theory t = builtin_prs();
  t.name = "prs-infinity";
  t.vocab.with_infinity = true;
  auto mem = [&](Term a, Term b) { return atom2("in", std::move(a), std::move(b)); };
  Term N_w = Term::app(FuncSym::make(FuncSym::Kind::SetNat), {V("w")});
  t.axioms.push_back(
      {"24",
       {Formula::top(),
        Formula::exists("x", Formula::conj(mem(V("x"), N_w), Formula::top()))}});
  t.axioms.push_back(
      {"25", {Formula::conj(mem(V("y"), V("x")), mem(V("x"), N_w)), mem(V("y"), N_w)}});
  t.axioms.push_back(
      {"26",
       {Formula::conj(Formula::conj(mem(V("z"), V("y")), mem(V("y"), V("x"))), mem(V("x"), N_w)),
        mem(V("z"), V("x"))}});
  t.axioms.push_back(
      {"27",
       {mem(V("x"), N_w),
        Formula::exists(
            "y", Formula::conj(mem(V("y"), V("x")),
                               Formula::forall_in(
                                   "z", V("x"),
                                   Formula::disj(mem(V("z"), V("y")),
                                                 atom2("=", V("z"), V("y"))))))}});
  return t;
}

std::optional<Theory> builtin_theory(const std::string& name) {
  if (name == "pra") return builtin_pra();
  if (name == "prs") return builtin_prs();
  if (name == "prs-infinity") return builtin_prs_infinity();
  if (name == "equality") {
    Vocabulary v;
    v.relations = {{"notin", 2}};
    v.notin = "notin";
    return builtin_equality(v);
  }
  return std::nullopt;
}

}  // namespace sigma
