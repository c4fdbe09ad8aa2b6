#pragma once

// Seeded generators and small independent oracles shared by the tests.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "combalg/dominance.hpp"
#include "combalg/finite_algebra.hpp"
#include "combalg/term.hpp"

namespace combalg::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_); }
  bool coin() { return below(2) == 1; }
  template <class T>
  const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }

  // Random term in the signature with roughly `size` internal nodes.
  Term term(Signature sig, unsigned vars, unsigned size) {
    std::vector<Kind> un, bin;
    for (Op op : sig.ops()) {
      if (arity(op) == 1) un.push_back(kind_of(op));
      if (arity(op) == 2) bin.push_back(kind_of(op));
    }
    return grow(sig, vars, size, un, bin);
  }

  Equation equation(Signature sig, unsigned vars, unsigned size) {
    return {term(sig, vars, size), term(sig, vars, size)};
  }

  // Random algebra with every table filled uniformly.
  FiniteAlgebra algebra(std::size_t n, Signature sig) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("e" + std::to_string(i));
    FiniteAlgebra A("R", names, sig);
    for (Op op : sig.ops()) {
      std::vector<Elem> cells(arity(op) == 2 ? n * n : arity(op) == 1 ? n : 1);
      for (auto& c : cells) c = static_cast<Elem>(below(n));
      A.set_table(op, cells);
    }
    return A;
  }

  // Random CNF with nesting height at most `depth`.
  Ordinal ordinal(unsigned depth) {
    if (depth == 0) return Ordinal::finite(1 + below(4));
    std::vector<Ordinal> exps;
    std::size_t parts = 1 + below(3);
    for (std::size_t i = 0; i < parts; ++i) exps.push_back(coin() ? Ordinal{} : ordinal(depth - 1));
    std::sort(exps.begin(), exps.end(), [](const Ordinal& a, const Ordinal& b) { return a > b; });
    exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
    std::vector<Ordinal::Part> out;
    for (auto& e : exps) out.push_back({e, 1 + below(3)});
    return Ordinal::from_parts(out);
  }

  // Random one-variable {+, box} term with box nesting at most `depth`.
  Term fragment(Box box, unsigned depth, unsigned width) {
    Term t = atom(box, depth);
    std::size_t extra = below(width);
    for (std::size_t i = 0; i < extra; ++i) t = Term::plus(t, atom(box, depth));
    return t;
  }

 private:
  Term atom(Box box, unsigned depth) {
    if (depth == 0 || below(3) == 0) return Term::var(1);
    return Term::unary(kind_of(box), fragment(box, depth - 1, 3));
  }

  Term grow(Signature sig, unsigned vars, unsigned size, const std::vector<Kind>& un,
            const std::vector<Kind>& bin) {
    if (size == 0 || (un.empty() && bin.empty())) {
      std::vector<Term> leaves;
      for (unsigned v = 1; v <= vars; ++v) leaves.push_back(Term::var(v));
      if (sig.contains(Op::const0)) leaves.push_back(Term::zero());
      if (sig.contains(Op::const1)) leaves.push_back(Term::one());
      return pick(leaves);
    }
    if (!un.empty() && (bin.empty() || below(4) == 0))
      return Term::unary(pick(un), grow(sig, vars, size - 1, un, bin));
    unsigned left = static_cast<unsigned>(below(size));
    return Term::binary(pick(bin), grow(sig, vars, left, un, bin),
                        grow(sig, vars, size - 1 - left, un, bin));
  }

  std::mt19937_64 rng_;
};

}  // namespace combalg::testing
