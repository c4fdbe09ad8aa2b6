#include "combalg/omega.hpp"

#include "combalg/error.hpp"

namespace combalg {

namespace {

bool is_two(const Term& t) {
  return t.is(Kind::plus) && t.lhs().is(Kind::one) && t.rhs().is(Kind::one);
}

Term two() { return Term::plus(Term::one(), Term::one()); }

}  // namespace

const std::vector<OmegaRule>& omega_rules() {
  static const std::vector<OmegaRule> rules = [] {
    auto eq = [](const char* text) { return parse_equation(text); };
    return std::vector<OmegaRule>{
        {"times-one-left", eq("1*x = x")},   {"times-one-right", eq("x*1 = x")},
        {"choose-zero-right", eq("(x C 0) = 1")}, {"choose-zero-left", eq("(0 C x) = 1")},
        {"plus-zero-left", eq("0 + x = x")}, {"plus-zero-right", eq("x + 0 = x")},
        {"times-zero-left", eq("0*x = 0")},  {"times-zero-right", eq("x*0 = 0")},
        {"fact-zero", eq("0! = 1")},         {"fact-one", eq("1! = 1")},
        {"exp2-zero", eq("exp2(0) = 1")},    {"exp2-one", eq("exp2(1) = 1 + 1")},
        {"fact-two", eq("(1 + 1)! = 1 + 1")},
    };
  }();
  return rules;
}

std::vector<Equation> omega_laws() {
  std::vector<Equation> out;
  for (const auto& r : omega_rules()) out.push_back(r.law);
  return out;
}

std::optional<Term> omega_root_step(const Term& t) {
  const Term& l = t.lhs();
  const Term& r = t.rhs();
  switch (t.kind()) {
    case Kind::times:
      if (l.is(Kind::one)) return r;
      if (r.is(Kind::one)) return l;
      if (l.is(Kind::zero) || r.is(Kind::zero)) return Term::zero();
      return std::nullopt;
    case Kind::choose:
      if (l.is(Kind::zero) || r.is(Kind::zero)) return Term::one();
      return std::nullopt;
    case Kind::plus:
      if (l.is(Kind::zero)) return r;
      if (r.is(Kind::zero)) return l;
      return std::nullopt;
    case Kind::fact:
      if (l.is(Kind::zero) || l.is(Kind::one)) return Term::one();
      if (is_two(l)) return two();
      return std::nullopt;
    case Kind::exp2:
      if (l.is(Kind::zero)) return Term::one();
      if (l.is(Kind::one)) return two();
      return std::nullopt;
    default: return std::nullopt;
  }
}

std::vector<Term> omega_successors(const Term& t) {
  std::vector<Term> out;
  // Distinct rules can fire at one root (1*0 matches two rules), so collect
  // every root rewrite rather than the first.
  const Term& l = t.lhs();
  const Term& r = t.rhs();
  auto add = [&](Term s) {
    for (const Term& seen : out) {
      if (seen == s) return;
    }
    out.push_back(std::move(s));
  };
  switch (t.kind()) {
    case Kind::times:
      if (l.is(Kind::one)) add(r);
      if (r.is(Kind::one)) add(l);
      if (l.is(Kind::zero) || r.is(Kind::zero)) add(Term::zero());
      break;
    case Kind::plus:
      if (l.is(Kind::zero)) add(r);
      if (r.is(Kind::zero)) add(l);
      break;
    default:
      if (auto s = omega_root_step(t)) add(*s);
      break;
  }
  if (is_binary(t.kind())) {
    for (Term& s : omega_successors(l)) add(Term::binary(t.kind(), std::move(s), r));
    for (Term& s : omega_successors(r)) add(Term::binary(t.kind(), l, std::move(s)));
  } else if (is_unary(t.kind())) {
    for (Term& s : omega_successors(l)) add(Term::unary(t.kind(), std::move(s)));
  }
  return out;
}

bool is_omega_normal(const Term& t) {
  if (omega_root_step(t)) return false;
  if (is_binary(t.kind())) return is_omega_normal(t.lhs()) && is_omega_normal(t.rhs());
  if (is_unary(t.kind())) return is_omega_normal(t.arg());
  return true;
}

Term omega_normalize(const Term& t) {
  switch (t.kind()) {
    case Kind::var:
    case Kind::zero:
    case Kind::one: return t;
    case Kind::pow: throw PreconditionError("Omega rewriting is undefined for terms containing ^");
    default: break;
  }
  Term n;
  if (is_unary(t.kind())) {
    Term a = omega_normalize(t.arg());
    n = a.same_node(t.arg()) ? t : Term::unary(t.kind(), std::move(a));
  } else {
    Term l = omega_normalize(t.lhs());
    Term r = omega_normalize(t.rhs());
    n = l.same_node(t.lhs()) && r.same_node(t.rhs()) ? t
                                                       : Term::binary(t.kind(), std::move(l), std::move(r));
  }
  // Children are normal and every right-hand side built from normal children
  // is normal, so a single root step finishes.
  if (auto s = omega_root_step(n)) return *s;
  return n;
}

}  // namespace combalg
