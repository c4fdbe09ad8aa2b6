#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "combalg/eval.hpp"
#include "combalg/finite_algebra.hpp"

namespace combalg {

// The five-element model on {0, 1, 2, a, inf} in the full signature.
FiniteAlgebra algebra_B();
// Subalgebra of B on {1, 2, a, inf}: every operation except the constant 0.
FiniteAlgebra algebra_B_minus();
// B in the combinatorial signature with 1 and 2 identified; elements 0, 1, a, inf.
FiniteAlgebra algebra_S7_0();
// The partition {{0},{1,2},{a},{inf}} of B.
Partition collapse_one_two(const FiniteAlgebra& B);

// "B", "Bminus" or "S7_0", optionally followed by ":<signature>" (for
// example "B:comb" or "B:plus-times"), or "@<path>" for an algebra file.
FiniteAlgebra builtin_model(const std::string& spec);

// ---------------------------------------------------------------- the N0 oracle

struct NatSampleConfig {
  unsigned small_max = 6;          // exhaustive over [0..small_max]^vars
  unsigned trials = 16;            // extra random assignments
  unsigned random_bits = 16;       // random values lie in [0, 2^random_bits]
  std::uint64_t seed = 0x5eed;
  EvalLimits limits{};
};

enum class NatVerdict { ValidOnSample, RefutedOnNat, Unevaluable };

struct LawVerdict {
  Equation equation;
  NatVerdict verdict = NatVerdict::ValidOnSample;
  NatAssignment witness;           // set when refuted
  mpz_class lhs, rhs;              // values at the witness
  std::uint64_t checked = 0;       // points where both sides evaluated
  std::uint64_t skipped = 0;       // points lost to the value cap
};

// The shared sample: the exhaustive grid in lexicographic order followed by
// the seeded random points.
std::vector<NatAssignment> nat_sample(unsigned vars, const NatSampleConfig& cfg);

LawVerdict valid_on_nat(const Equation& e, const NatSampleConfig& cfg = {});

std::string to_string(NatVerdict v);

// ---------------------------------------------------------------- blocks

enum class BlockTag { B0, B1, B2, Ba, Binf, Anomalous };

struct BlockClass {
  BlockTag tag = BlockTag::Anomalous;
  mpz_class multiplier;  // n for Ba(n)

  friend bool operator==(const BlockClass&, const BlockClass&) = default;
};

// Block of the one-variable function of t: constant 0, constant 1, a
// constant >= 2, x -> n*x, or anything else (inf). Functions that match
// none of these shapes, such as 0^x, are Anomalous.
BlockClass classify_block(const Term& t, const EvalLimits& limits = {});
std::string to_string(const BlockClass& b);
// Name of the element of B the block corresponds to; empty for Anomalous.
std::string block_element(const BlockClass& b);

// ---------------------------------------------------------------- sweep

struct Prop1Options {
  std::size_t max_nodes = 4;
  unsigned variables = 1;
  NatSampleConfig sample{};
  std::size_t max_terms = 20'000;
  unsigned jobs = 0;
};

struct Prop1Disagreement {
  Term lhs, rhs;
  Witness witness;  // failing assignment in B
};

struct Prop1Report {
  std::size_t terms = 0;
  std::uint64_t pairs = 0;
  std::uint64_t nat_agreeing_pairs = 0;
  std::vector<Prop1Disagreement> disagreements;  // ordered by (lhs, rhs)
};

// Every pair of distinct terms (full signature) agreeing on the N0 sample is
// checked in B; pairs B refutes are reported.
Prop1Report prop1_sweep(const Prop1Options& opts = {});

}  // namespace combalg
