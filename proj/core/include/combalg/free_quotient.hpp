#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "combalg/finite_algebra.hpp"
#include "combalg/term.hpp"

namespace combalg {

// b_1 = 2, b_2 = 3, b_3 = 5 + m, b_{k+1} = 3 b_k + 3 b_k^2.
mpz_class bound_b(unsigned k, unsigned m);

struct BoundInfo {
  unsigned m = 0;              // number of distinct variables
  mpz_class w1, w2;            // weights of the two sides
  mpz_class K;                 // max(w1, w2, 3)
  bool bound_known = false;    // false when K > kMaxBoundK
  mpz_class bound;             // b_K(m) + 1
};

// Largest K for which b_K(m) is expanded; b_24 already has millions of digits.
inline constexpr unsigned kMaxBoundK = 24;

// Throws PreconditionError on ^.
BoundInfo bound_B(const Term& t1, const Term& t2);

struct TruncationParams {
  unsigned m = 1;
  std::uint64_t K = 3;
  // Operations of the free algebra; must lie inside the combinatorial
  // signature and contain 0, 1 and +.
  Signature sig = Signature::combinatorial();
  // Maximum node count of an element. Required when sig has both C and !,
  // because 1 C 1, (1 C 1)!, ((1 C 1)!)!, ... are distinct normal forms of
  // weight 2 and the weight alone leaves the algebra infinite.
  std::optional<std::size_t> node_cap;
  std::size_t max_elements = 2'000'000;
};

// Omega-normal forms in x1..xm of weight <= K (and at most node_cap nodes),
// ordered by weight, then by node count and the structural order.
std::vector<Term> normal_forms(const TruncationParams& p);

// True when sig admits infinitely many normal forms of bounded weight.
bool needs_node_cap(Signature sig);

struct TruncatedFreeAlgebra {
  TruncationParams params;
  std::vector<Term> terms;   // element i < terms.size() is terms[i]
  Elem top = 0;              // the sink, always the last element
  FiniteAlgebra algebra;

  std::optional<Elem> element_of(const Term& normal_form) const;
};

// Truncated free algebra T_m: operations normalise the combined term and
// send anything over the caps to the sink, except that 1*T = T*1 = T,
// 0+T = T+0 = T, 0*T = T*0 = 0 and T C 0 = 0 C T = 1.
TruncatedFreeAlgebra build_truncated(const TruncationParams& p);

struct TruncationRefutation {
  BoundInfo bound;
  Term lhs_normal, rhs_normal;
  TruncatedFreeAlgebra model;
  Witness witness;  // in model.algebra, variables renamed to x1..xm
  Equation renamed;
};

// nullopt iff both sides share an Omega-normal form. The model is built over
// the combinatorial signature with K = max(w1, w2, 3) and node cap
// max(3, nodes of either normal form).
std::optional<TruncationRefutation> refute_via_truncation(const Equation& e,
                                                          std::size_t max_elements = 2'000'000);

// Variables renamed to x1..xm in order of first index.
Equation compact_variables(const Equation& e);

// ---------------------------------------------------------------- entailment

enum class Entailment { Entailed, NotEntailed, Inconclusive };
std::string to_string(Entailment e);

struct EntailmentOptions {
  Signature sig = Signature::combinatorial();
  std::size_t max_size = 2;
  std::uint64_t budget = 50'000'000;  // model search nodes per size
};

struct EntailmentResult {
  Entailment verdict = Entailment::Inconclusive;
  std::string reason;
  std::optional<BoundInfo> bound;     // absent for terms with ^
  std::optional<FiniteAlgebra> model; // counterexample when NotEntailed
  std::optional<Witness> witness;
  std::size_t sizes_searched = 0;
  std::uint64_t models_checked = 0;
};

// Searches models of sigma plus the Omega laws expressible in opts.sig, of
// every size up to max_size. Entailed when both sides share a normal form,
// or when the search is exhaustive up to the bound. Throws PreconditionError
// when some member of sigma fails the N0 oracle.
EntailmentResult decide_entailment(const std::vector<Equation>& sigma, const Equation& e,
                                   const EntailmentOptions& opts = {});

}  // namespace combalg
