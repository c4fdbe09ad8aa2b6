#include <doctest.h>

#include <fstream>
#include <sstream>

#include "combalg/builtins.hpp"
#include "combalg/error.hpp"
#include "combalg/finite_algebra.hpp"
#include "support.hpp"

using namespace combalg;

namespace {

Equation E(const char* s) { return parse_equation(s); }

Elem naive_eval(const Term& t, const FiniteAlgebra& A, const ElemAssignment& a) {
  if (t.is(Kind::var)) return a[t.var_index() - 1];
  if (t.is(Kind::zero)) return A.table(Op::const0)[0];
  if (t.is(Kind::one)) return A.table(Op::const1)[0];
  Op op = *op_of(t.kind());
  Elem x = naive_eval(t.lhs(), A, a);
  if (is_unary(t.kind())) return A.table(op)[x];
  Elem y = naive_eval(t.rhs(), A, a);
  return A.table(op)[x * A.size() + y];
}

// Odometer over all assignments, first variable most significant.
std::optional<ElemAssignment> naive_counterexample(const FiniteAlgebra& A, const Equation& e) {
  unsigned k = std::max(e.lhs.max_var(), e.rhs.max_var());
  ElemAssignment a(k, 0);
  while (true) {
    if (naive_eval(e.lhs, A, a) != naive_eval(e.rhs, A, a)) return a;
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && ++a[i] == A.size()) a[i--] = 0;
    if (i < 0) return std::nullopt;
  }
}

// B with its elements listed in another order.
FiniteAlgebra permuted(const FiniteAlgebra& A, const std::vector<Elem>& perm) {
  std::vector<std::string> names(A.size());
  for (Elem e = 0; e < A.size(); ++e) names[perm[e]] = A.element_name(e);
  FiniteAlgebra P("P", names, A.signature());
  for (Op op : A.signature().ops()) {
    if (arity(op) == 0) P.set_constant(op, perm[A.constant(op)]);
    for (Elem x = 0; x < A.size(); ++x) {
      if (arity(op) == 1) P.set(op, perm[x], perm[A.apply(op, x)]);
      if (arity(op) == 2)
        for (Elem y = 0; y < A.size(); ++y) P.set(op, perm[x], perm[y], perm[A.apply(op, x, y)]);
    }
  }
  return P;
}

}  // namespace

TEST_SUITE("finite_algebra") {
  TEST_CASE("satisfaction examples in B") {
    FiniteAlgebra B = algebra_B();
    auto r = satisfies(B, E("x*x = x"));
    REQUIRE_FALSE(r.satisfied);
    REQUIRE(r.witness);
    CHECK(describe(*r.witness, B) == "x1=a: inf vs a");
    CHECK(satisfies(B, E("(x C 0) = 1")).satisfied);
    CHECK(satisfies(B, E("x + y = y + x")).satisfied);
    CHECK(r.assignments <= 5);
  }

  TEST_CASE("satisfaction matches an odometer search on random algebras") {
    testing::Gen g(21);
    Signature sig{Op::plus, Op::times, Op::fact, Op::const0, Op::const1};
    for (int i = 0; i < 300; ++i) {
      FiniteAlgebra A = g.algebra(2 + g.below(3), sig);
      Equation e = g.equation(sig, 3, 1 + static_cast<unsigned>(g.below(4)));
      auto want = naive_counterexample(A, e);
      for (unsigned jobs : {1u, 4u}) {
        SatOptions opts;
        opts.jobs = jobs;
        auto got = satisfies(A, e, opts);
        REQUIRE(got.satisfied == !want.has_value());
        if (want) {
          REQUIRE(got.witness->assignment == *want);
          CHECK(got.witness->lhs == naive_eval(e.lhs, A, *want));
        }
      }
    }
  }

  TEST_CASE("compiled terms agree with recursive evaluation") {
    testing::Gen g(22);
    for (int i = 0; i < 300; ++i) {
      FiniteAlgebra A = g.algebra(4, Signature::full());
      Term t = g.term(Signature::full(), 3, 8);
      CompiledTerm c(t);
      ElemAssignment a{static_cast<Elem>(g.below(4)), static_cast<Elem>(g.below(4)),
                       static_cast<Elem>(g.below(4))};
      REQUIRE(c.eval(A, a) == naive_eval(t, A, a));
      REQUIRE(eval_alg(t, A, a) == naive_eval(t, A, a));
    }
  }

  TEST_CASE("signature mismatch is reported") {
    FiniteAlgebra S = algebra_S7_0();
    CHECK_THROWS_AS(satisfies(S, E("x^1 = x")), SignatureError);
    CHECK_THROWS_AS(require_signature(parse_term("x^y"), S), SignatureError);
  }

  TEST_CASE("congruences and quotients") {
    FiniteAlgebra B = algebra_B();
    Partition P = collapse_one_two(B);
    auto v = find_congruence_violation(B, P);
    REQUIRE(v);
    CHECK(describe(*v, B) == "pow: 1^a = 1 vs 2^a = inf");

    FiniteAlgebra comb = reduct(B, Signature::combinatorial());
    REQUIRE(is_congruence(comb, P));
    FiniteAlgebra Q = quotient(comb, P);
    CHECK(Q.size() == 4);
    auto iso = find_isomorphism(Q, algebra_S7_0());
    REQUIRE(iso);
    CHECK(verify_isomorphism(Q, algebra_S7_0(), *iso));
    CHECK(Q.element_name(1) == "[1]");

    CHECK_THROWS_AS(Partition(3, {{0, 1}}), PreconditionError);
    CHECK_THROWS_AS(Partition(3, {{0, 1}, {1, 2}}), PreconditionError);
  }

  TEST_CASE("projection kernels of a square are congruences with the base as quotient") {
    testing::Gen g(23);
    Signature sig{Op::plus, Op::fact, Op::const1};
    for (int i = 0; i < 30; ++i) {
      FiniteAlgebra A = g.algebra(3, sig);
      DirectPower sq(A, 2);
      std::vector<DirectPower::Tuple> gens;
      for (Elem x = 0; x < 3; ++x)
        for (Elem y = 0; y < 3; ++y) gens.push_back({x, y});
      auto G = sq.generate(gens, "A2");
      REQUIRE(G.algebra.size() == 9);
      std::vector<std::vector<Elem>> blocks(3);
      for (Elem e = 0; e < 9; ++e) blocks[G.tuples[e][0]].push_back(e);
      Partition P(9, blocks);
      REQUIRE(is_congruence(G.algebra, P));
      FiniteAlgebra Q = quotient(G.algebra, P);
      auto iso = find_isomorphism(Q, A);
      REQUIRE(iso);
      // Each equation A satisfies survives in the quotient.
      Equation e = g.equation(sig, 2, 3);
      CHECK(satisfies(A, e).satisfied == satisfies(Q, e).satisfied);
    }
  }

  TEST_CASE("generated subalgebras") {
    FiniteAlgebra B = algebra_B();
    auto S = subalgebra_generated(B, {B.element("a")});
    CHECK(S.algebra.size() == 5);

    FiniteAlgebra no_zero = reduct(B, Signature::full().without({Op::const0}));
    auto M = subalgebra_generated(no_zero, {B.element("a")});
    CHECK(M.algebra.size() == 4);
    CHECK(M.embedding == std::vector<Elem>{1, 2, 3, 4});
    CHECK(M.algebra.same_structure(algebra_B_minus()));

    auto T = subalgebra_generated(reduct(B, {Op::plus, Op::const1}), {});
    CHECK(T.algebra.elements() == std::vector<std::string>{"1", "2"});
  }

  TEST_CASE("direct powers act coordinatewise") {
    FiniteAlgebra B = algebra_B();
    DirectPower P(B, 2);
    Elem a = B.element("a"), inf = B.element("inf");
    CHECK(P.apply(Op::plus, {a, 2}, {1, 1}) == DirectPower::Tuple{inf, 2});
    CHECK(P.apply(Op::fact, {2, 0}) == DirectPower::Tuple{2, 1});
    CHECK(P.constant(Op::const1) == DirectPower::Tuple{1, 1});
    auto G = P.generate({{a, 1}}, "C");
    CHECK(G.tuples[0] == DirectPower::Tuple{0, 0});
    CHECK_THROWS_AS(P.generate({{a, 1}, {1, a}}, "C", 10), BudgetExceeded);
  }

  TEST_CASE("isomorphism search") {
    FiniteAlgebra B = algebra_B();
    auto id = find_isomorphism(B, B);
    REQUIRE(id);
    CHECK(*id == std::vector<Elem>{0, 1, 2, 3, 4});

    std::vector<Elem> perm{4, 2, 0, 3, 1};
    FiniteAlgebra P = permuted(B, perm);
    auto f = find_isomorphism(B, P);
    REQUIRE(f);
    CHECK(*f == perm);
    CHECK(verify_isomorphism(B, P, *f));
    CHECK_FALSE(verify_isomorphism(B, P, {0, 1, 2, 3, 4}));

    FiniteAlgebra broken = B;
    broken.set(Op::plus, B.element("a"), B.element("a"), B.element("inf"));
    CHECK_FALSE(find_isomorphism(B, broken));
    CHECK_FALSE(find_isomorphism(B, algebra_B_minus()));
    CHECK_THROWS_AS(find_isomorphism(B, B, IsoOptions{4}), BudgetExceeded);
  }

  TEST_CASE("model enumeration") {
    Signature monoid{Op::plus, Op::const0};
    std::vector<Equation> laws{E("0 + x = x"), E("x + 0 = x"), E("x + y = y + x"),
                               E("x + (y + z) = (x + y) + z")};
    auto count = [&](std::size_t n, Signature sig, const std::vector<Equation>& eqs) {
      std::uint64_t models = 0;
      enumerate_models(n, sig, eqs, [&](const FiniteAlgebra& A) {
        for (const auto& e : eqs) REQUIRE(satisfies(A, e).satisfied);
        ++models;
        return true;
      });
      return models;
    };
    CHECK(count(1, monoid, laws) == 1);
    CHECK(count(2, monoid, laws) == 2);
    // Labelled semigroups of order 2 and 3.
    Signature mul{Op::times};
    std::vector<Equation> assoc{E("x*(y*z) = (x*y)*z")};
    CHECK(count(2, mul, assoc) == 8);
    CHECK(count(3, mul, assoc) == 113);

    bool noncommutative = false;
    enumerate_models(3, mul, assoc, [&](const FiniteAlgebra& A) {
      noncommutative = !satisfies(A, E("x*y = y*x")).satisfied;
      return !noncommutative;
    });
    CHECK(noncommutative);
    CHECK_THROWS_AS(enumerate_models(3, mul, assoc, [](const FiniteAlgebra&) { return true; },
                                     ModelSearchOptions{10}),
                    BudgetExceeded);
  }

  TEST_CASE("algebra files") {
    FiniteAlgebra typed = read_algebra_file(COMBALG_TEST_DATA "/algebra_B.txt");
    CHECK(typed.same_structure(algebra_B()));
    CHECK(typed.notes().size() == 1);

    FiniteAlgebra B = algebra_B();
    B.add_note("kept through the round trip");
    FiniteAlgebra back = parse_algebra(write_algebra(B));
    CHECK(back.same_structure(B));
    CHECK(back.name() == "B");
    CHECK(back.notes() == B.notes());

    testing::Gen g(24);
    for (int i = 0; i < 20; ++i) {
      FiniteAlgebra R = g.algebra(1 + g.below(5), Signature::full());
      CHECK(parse_algebra(write_algebra(R)).same_structure(R));
    }

    CHECK_THROWS_AS(parse_algebra("algebra X\nsignature plus\nelements p q\nbinop plus:\np q\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_algebra("algebra X\nsignature plus\nelements p\nbinop plus:\nr\n"),
                    ParseError);
    CHECK_THROWS_AS(read_algebra_file("/nonexistent/algebra.txt"), PreconditionError);
  }
}
