#include <doctest.h>

#include <set>

#include "combalg/error.hpp"
#include "combalg/free_quotient.hpp"
#include "combalg/omega.hpp"
#include "support.hpp"

using namespace combalg;

namespace {

Equation E(const char* s) { return parse_equation(s); }

const Signature kNoChoose = Signature::combinatorial().without({Op::choose});

bool root_reducible(const Term& t) {
  auto is1 = [](const Term& u) { return u.is(Kind::one); };
  auto is0 = [](const Term& u) { return u.is(Kind::zero); };
  switch (t.kind()) {
    case Kind::times: return is1(t.lhs()) || is1(t.rhs()) || is0(t.lhs()) || is0(t.rhs());
    case Kind::plus:
    case Kind::choose: return is0(t.lhs()) || is0(t.rhs());
    case Kind::fact:
      return is0(t.arg()) || is1(t.arg()) ||
             (t.arg().is(Kind::plus) && is1(t.arg().lhs()) && is1(t.arg().rhs()));
    case Kind::exp2: return is0(t.arg()) || is1(t.arg());
    default: return false;
  }
}

// Saturation: combine everything found so far until nothing new appears.
std::set<Term> normal_forms_oracle(unsigned m, unsigned K, Signature sig, std::size_t node_cap) {
  std::set<Term> found{Term::zero(), Term::one()};
  for (unsigned v = 1; v <= m; ++v) found.insert(Term::var(v));
  auto keep = [&](const Term& t) {
    if (t.node_count() > node_cap || root_reducible(t)) return false;
    auto w = weight_at_most(t, K);
    return w.has_value();
  };
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Term> cur(found.begin(), found.end());
    for (Op op : sig.ops()) {
      if (arity(op) == 1)
        for (const Term& a : cur) {
          Term t = Term::unary(kind_of(op), a);
          if (keep(t) && found.insert(t).second) grew = true;
        }
      if (arity(op) == 2)
        for (const Term& a : cur)
          for (const Term& b : cur) {
            Term t = Term::binary(kind_of(op), a, b);
            if (keep(t) && found.insert(t).second) grew = true;
          }
    }
  }
  return found;
}

std::vector<Equation> omega_laws_in(Signature sig) {
  std::vector<Equation> out;
  for (const auto& e : omega_laws())
    if (sig.includes(signature_of(e))) out.push_back(e);
  return out;
}

}  // namespace

TEST_SUITE("free_quotient") {
  TEST_CASE("bound examples") {
    auto x = bound_B(parse_term("x"), parse_term("x"));
    CHECK(x.m == 1);
    CHECK(x.K == 3);
    CHECK(x.bound == 7);
    CHECK(bound_b(4, 1) == 126);
    CHECK(bound_b(1, 5) == 2);
    CHECK(bound_b(2, 5) == 3);

    auto c = bound_B(parse_term("x + y"), parse_term("y + x"));
    CHECK(c.m == 2);
    CHECK(c.w1 == 6);
    CHECK(c.K == 6);
    REQUIRE(c.bound_known);
    mpz_class b = 7;  // b_3(2)
    for (int k = 3; k < 6; ++k) b = 3 * b + 3 * b * b;
    CHECK(c.bound == b + 1);
    CHECK(c.bound == mpz_class("21765108457"));

    auto huge = bound_B(parse_term("exp2(exp2(x))"), parse_term("x"));
    CHECK(huge.K == 256);
    CHECK_FALSE(huge.bound_known);
    CHECK_THROWS_AS(bound_B(parse_term("x^y"), parse_term("x")), PreconditionError);
  }

  TEST_CASE("the recurrence is strictly increasing from k = 2") {
    for (unsigned m = 1; m <= 4; ++m)
      for (unsigned k = 2; k < 10; ++k) CHECK(bound_b(k, m) < bound_b(k + 1, m));
  }

  TEST_CASE("normal form counts match saturation and stay under the bound") {
    for (unsigned m = 1; m <= 2; ++m)
      for (unsigned K = 3; K <= 6; ++K) {
        TruncationParams p;
        p.m = m;
        p.K = K;
        p.sig = kNoChoose;
        auto got = normal_forms(p);
        auto want = normal_forms_oracle(m, K, kNoChoose, SIZE_MAX);
        CHECK(std::set<Term>(got.begin(), got.end()) == want);
        CHECK(got.size() == want.size());
        CHECK(mpz_class(static_cast<unsigned long>(got.size())) <= bound_b(K, m));
      }
    TruncationParams p;
    p.K = 3;
    p.sig = kNoChoose;
    CHECK(normal_forms(p).size() == 6);
  }

  TEST_CASE("with both choose and factorial the weight alone does not bound") {
    CHECK(needs_node_cap(Signature::combinatorial()));
    CHECK_FALSE(needs_node_cap(kNoChoose));
    CHECK_FALSE(needs_node_cap(Signature::combinatorial().without({Op::fact})));
    Term c = parse_term("(1 C 1)");
    for (int i = 0; i < 5; ++i) {
      REQUIRE(is_omega_normal(c));
      REQUIRE(weight(c) == 2);
      c = Term::fact(c);
    }
    TruncationParams p;
    p.K = 3;
    CHECK_THROWS_AS(normal_forms(p), PreconditionError);
    for (std::size_t cap : {3, 5, 7}) {
      p.node_cap = cap;
      auto got = normal_forms(p);
      CHECK(std::set<Term>(got.begin(), got.end()) ==
            normal_forms_oracle(1, 3, Signature::combinatorial(), cap));
    }
  }

  TEST_CASE("the smallest truncated algebra") {
    TruncationParams p;
    p.K = 3;
    p.sig = kNoChoose;
    auto T = build_truncated(p);
    CHECK(T.algebra.size() == 7);
    CHECK(T.top == 6);
    std::set<Term> want{parse_term("0"), parse_term("1"), parse_term("1 + 1"),
                        parse_term("1 + (1 + 1)"), parse_term("(1 + 1) + 1"), parse_term("x")};
    CHECK(std::set<Term>(T.terms.begin(), T.terms.end()) == want);
    Elem x = *T.element_of(parse_term("x"));
    Elem one = *T.element_of(parse_term("1"));
    CHECK(T.algebra.apply(Op::plus, x, one) == T.top);
    CHECK(T.algebra.apply(Op::times, one, T.top) == T.top);
    CHECK(T.algebra.apply(Op::times, *T.element_of(Term::zero()), T.top) == *T.element_of(Term::zero()));
  }

  TEST_CASE("truncated algebras satisfy the omega laws") {
    for (unsigned m = 1; m <= 2; ++m)
      for (std::uint64_t K : {3, 4}) {
        TruncationParams p;
        p.m = m;
        p.K = K;
        p.node_cap = 5;
        auto T = build_truncated(p);
        auto laws = omega_laws_in(T.algebra.signature());
        CHECK(laws.size() == 13);
        for (const auto& law : laws) CHECK_MESSAGE(satisfies(T.algebra, law).satisfied, print(law));
      }
    TruncationParams p;
    p.m = 2;
    p.K = 6;
    p.sig = kNoChoose;
    auto T = build_truncated(p);
    CHECK(T.element_of(parse_term("x + y")) != T.element_of(parse_term("y + x")));
    for (const auto& law : omega_laws_in(kNoChoose)) CHECK(satisfies(T.algebra, law).satisfied);
  }

  TEST_CASE("refutation through the truncated algebra") {
    auto r = refute_via_truncation(E("x + y = y + x"));
    REQUIRE(r);
    CHECK(r->bound.bound == mpz_class("21765108457"));
    const auto& A = r->model.algebra;
    CHECK(A.size() <= 200);
    CHECK(eval_alg(r->renamed.lhs, A, r->witness.assignment) !=
          eval_alg(r->renamed.rhs, A, r->witness.assignment));
    for (const auto& law : omega_laws_in(A.signature())) CHECK(satisfies(A, law).satisfied);

    CHECK_FALSE(refute_via_truncation(E("exp2(1)! = 1 + 1")));
    CHECK_FALSE(refute_via_truncation(E("0 + x = x")));
    CHECK(compact_variables(E("x3 + x7 = x7")) == E("x1 + x2 = x2"));
  }

  TEST_CASE("refutation happens exactly when normal forms differ") {
    testing::Gen g(31);
    int refuted = 0;
    for (int i = 0; i < 40; ++i) {
      Equation e = g.equation(kNoChoose, 2, 2);
      bool same = omega_normalize(e.lhs) == omega_normalize(e.rhs);
      std::optional<TruncationRefutation> r;
      try {
        r = refute_via_truncation(e, 20'000);
      } catch (const BudgetExceeded&) {
        continue;
      }
      REQUIRE(r.has_value() == !same);
      if (!r) continue;
      ++refuted;
      const auto& A = r->model.algebra;
      REQUIRE(eval_alg(r->renamed.lhs, A, r->witness.assignment) !=
              eval_alg(r->renamed.rhs, A, r->witness.assignment));
    }
    CHECK(refuted > 5);
  }

  TEST_CASE("entailment examples") {
    EntailmentOptions o;
    o.sig = {Op::plus, Op::const0};
    o.max_size = 3;
    auto r = decide_entailment({E("0 + x = x"), E("x + 0 = x")}, E("x + y = y + x"), o);
    REQUIRE(r.verdict == Entailment::NotEntailed);
    REQUIRE(r.model);
    CHECK(r.model->size() == 3);
    CHECK(satisfies(*r.model, E("0 + x = x")).satisfied);
    CHECK(satisfies(*r.model, E("x + 0 = x")).satisfied);
    CHECK_FALSE(satisfies(*r.model, E("x + y = y + x")).satisfied);

    CHECK(decide_entailment({}, E("0! = 1")).verdict == Entailment::Entailed);

    EntailmentOptions two;
    two.max_size = 2;
    auto inc = decide_entailment({}, E("x + y = y + x"), two);
    CHECK(inc.verdict == Entailment::Inconclusive);
    REQUIRE(inc.bound);
    CHECK(inc.bound->bound == mpz_class("21765108457"));

    CHECK_THROWS_AS(decide_entailment({E("x + 1 = x")}, E("x = x")), PreconditionError);
  }
}
