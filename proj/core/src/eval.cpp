#include "combalg/eval.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "combalg/error.hpp"

namespace combalg {

namespace {

std::size_t bits(const mpz_class& v) { return v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2); }

[[noreturn]] void overflow(const char* what, const EvalLimits& limits) {
  throw EvalOverflow(std::string(what) + " exceeds " + std::to_string(limits.max_bits) + " bits");
}

void check(const mpz_class& v, const EvalLimits& limits) {
  if (bits(v) > limits.max_bits) overflow("value", limits);
}

// Upper estimate of log2(n!) without computing it.
double log2_factorial(double n) { return std::lgamma(n + 1.0) / std::log(2.0); }

mpz_class nat_pow(const mpz_class& base, const mpz_class& exp, const EvalLimits& limits) {
  if (exp == 0) return 1;
  if (base == 0) return 0;
  if (base == 1) return 1;
  if (!exp.fits_ulong_p()) overflow("power", limits);
  unsigned long e = exp.get_ui();
  if (static_cast<double>(e) * static_cast<double>(bits(base) - 1) > limits.max_bits) {
    overflow("power", limits);
  }
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  check(r, limits);
  return r;
}

mpz_class nat_choose(const mpz_class& x, const mpz_class& y, const EvalLimits& limits) {
  mpz_class n = x + y;
  mpz_class k = x < y ? x : y;
  if (k == 0) return 1;
  if (!n.fits_ulong_p() || !k.fits_ulong_p()) overflow("binomial", limits);
  // binom(n, k) <= min(2^n, n^k)
  double nd = static_cast<double>(n.get_ui());
  double kd = static_cast<double>(k.get_ui());
  if (nd > limits.max_bits && kd * std::log2(nd) > limits.max_bits) overflow("binomial", limits);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n.get_ui(), k.get_ui());
  check(r, limits);
  return r;
}

mpz_class nat_fact(const mpz_class& x, const EvalLimits& limits) {
  if (!x.fits_ulong_p() || static_cast<double>(x.get_ui()) > limits.max_bits ||
      log2_factorial(static_cast<double>(x.get_ui())) > limits.max_bits) {
    overflow("factorial", limits);
  }
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), x.get_ui());
  return r;
}

mpz_class nat_exp2(const mpz_class& x, const EvalLimits& limits) {
  if (!x.fits_ulong_p() || x.get_ui() >= limits.max_bits) overflow("exp2", limits);
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, x.get_ui());
  return r;
}

mpz_class eval_rec(const Term& t, const NatAssignment& a, const EvalLimits& limits) {
  switch (t.kind()) {
    case Kind::var:
      if (t.var_index() > a.size()) {
        throw PreconditionError("no value for x" + std::to_string(t.var_index()));
      }
      return a[t.var_index() - 1];
    case Kind::zero: return 0;
    case Kind::one: return 1;
    case Kind::fact:
    case Kind::exp2: return nat_apply(t.kind(), eval_rec(t.arg(), a, limits), 0, limits);
    default: break;
  }
  mpz_class l = eval_rec(t.lhs(), a, limits);
  // Absorbing left operands avoid evaluating a possibly huge right side.
  if (t.is(Kind::times) && l == 0) return 0;
  if (t.is(Kind::pow) && l == 1) return 1;
  return nat_apply(t.kind(), l, eval_rec(t.rhs(), a, limits), limits);
}

__extension__ using u128 = unsigned __int128;

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b, std::uint64_t top) {
  return a >= top || b >= top || a + b >= top ? top : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b, std::uint64_t top) {
  if (a == 0 || b == 0) return 0;
  if (a >= top || b >= top) return top;
  return a > (top - 1) / b ? top : std::min(a * b, top);
}

std::uint64_t capped_rec(const Term& t, const std::vector<std::uint64_t>& a, std::uint64_t top) {
  switch (t.kind()) {
    case Kind::var:
      if (t.var_index() > a.size()) {
        throw PreconditionError("no value for x" + std::to_string(t.var_index()));
      }
      return std::min(a[t.var_index() - 1], top);
    case Kind::zero: return 0;
    case Kind::one: return std::min<std::uint64_t>(1, top);
    case Kind::fact: {
      std::uint64_t x = capped_rec(t.arg(), a, top);
      std::uint64_t r = 1;
      for (std::uint64_t i = 2; i <= x && r < top; ++i) r = sat_mul(r, i, top);
      return r;
    }
    case Kind::exp2: {
      std::uint64_t x = capped_rec(t.arg(), a, top);
      std::uint64_t r = 1;
      for (std::uint64_t i = 0; i < x && r < top; ++i) r = sat_mul(r, 2, top);
      return r;
    }
    case Kind::plus: return sat_add(capped_rec(t.lhs(), a, top), capped_rec(t.rhs(), a, top), top);
    case Kind::times: return sat_mul(capped_rec(t.lhs(), a, top), capped_rec(t.rhs(), a, top), top);
    case Kind::pow: {
      std::uint64_t b = capped_rec(t.lhs(), a, top);
      std::uint64_t e = capped_rec(t.rhs(), a, top);
      if (e == 0) return 1;
      if (b <= 1) return b;
      std::uint64_t r = 1;
      for (std::uint64_t i = 0; i < e && r < top; ++i) r = sat_mul(r, b, top);
      return r;
    }
    case Kind::choose: {
      std::uint64_t x = capped_rec(t.lhs(), a, top);
      std::uint64_t y = capped_rec(t.rhs(), a, top);
      if (x == 0 || y == 0) return 1;
      if (x >= top || y >= top) return top;
      // binom(x+y, k) built incrementally; every prefix is itself a binomial.
      std::uint64_t k = std::min(x, y);
      std::uint64_t n = x + y;
      u128 r = 1;
      for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r >= top) return top;
      }
      return static_cast<std::uint64_t>(r);
    }
  }
  throw InvariantViolation("unhandled term kind");
}

void reject_pow(const Term& t) {
  for_each_subterm(t, [](const Term& s) {
    if (s.is(Kind::pow)) throw PreconditionError("weight is undefined for terms containing ^");
  });
}

}  // namespace

mpz_class nat_apply(Kind kind, const mpz_class& x, const mpz_class& y, const EvalLimits& limits) {
  switch (kind) {
    case Kind::plus: {
      mpz_class s = x + y;
      check(s, limits);
      return s;
    }
    case Kind::times: {
      if (x == 0 || y == 0) return 0;
      if (bits(x) + bits(y) > limits.max_bits + 1) overflow("product", limits);
      return x * y;
    }
    case Kind::pow: return nat_pow(x, y, limits);
    case Kind::choose: return nat_choose(x, y, limits);
    case Kind::fact: return nat_fact(x, limits);
    case Kind::exp2: return nat_exp2(x, limits);
    default: throw PreconditionError("nat_apply needs an operation kind");
  }
}

mpz_class eval_nat(const Term& t, const NatAssignment& a, const EvalLimits& limits) {
  return eval_rec(t, a, limits);
}

std::uint64_t eval_nat_capped(const Term& t, const std::vector<std::uint64_t>& a,
                              std::uint64_t cap) {
  if (cap == UINT64_MAX) throw PreconditionError("cap must leave room for cap + 1");
  return capped_rec(t, a, cap + 1);
}

mpz_class weight(const Term& t, const EvalLimits& limits) {
  reject_pow(t);
  return eval_rec(t, NatAssignment(t.max_var(), 3), limits);
}

std::optional<std::uint64_t> weight_at_most(const Term& t, std::uint64_t cap) {
  reject_pow(t);
  std::uint64_t w = eval_nat_capped(t, std::vector<std::uint64_t>(t.max_var(), 3), cap);
  if (w > cap) return std::nullopt;
  return w;
}

}  // namespace combalg
