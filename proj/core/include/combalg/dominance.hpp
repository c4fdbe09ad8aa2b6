#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "combalg/eval.hpp"
#include "combalg/term.hpp"

namespace combalg {

// An ordinal below epsilon_0 in Cantor normal form: exponents strictly
// decreasing, coefficients positive. The empty list is 0.
class Ordinal {
 public:
  struct Part;

  Ordinal() = default;
  static Ordinal finite(std::uint64_t n);
  static Ordinal omega_pow(Ordinal exponent, std::uint64_t coefficient = 1);
  // Throws PreconditionError unless exponents descend and coefficients are positive.
  static Ordinal from_parts(std::vector<Part> parts);

  const std::vector<Part>& parts() const noexcept { return parts_; }
  bool is_zero() const noexcept;
  std::size_t height() const;  // 0 for finite ordinals, 1 for omega, ...

 private:
  std::vector<Part> parts_;
};

struct Ordinal::Part {
  Ordinal exponent;
  std::uint64_t coefficient = 1;
};

std::strong_ordering ordinal_cmp(const Ordinal& a, const Ordinal& b);
inline bool operator==(const Ordinal& a, const Ordinal& b) { return ordinal_cmp(a, b) == 0; }
inline std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  return ordinal_cmp(a, b);
}

// Natural (Hessenberg) sum: merges the exponent multisets.
Ordinal ordinal_nat_sum(const Ordinal& a, const Ordinal& b);

// E.g. "0", "3", "ω", "ω·2 + 1", "ω^ω", "ω^(ω + 1)·3".
std::string to_string(const Ordinal& a);

// ---------------------------------------------------------------- terms

// The unary symbol of a {+, box} fragment.
enum class Box { fact, exp2 };
std::string to_string(Box b);
Kind kind_of(Box b);

// x -> 1, s + t -> natural sum, box(s) -> omega^(ordinal of s). Throws
// PreconditionError for terms outside the one-variable {+, box} fragment
// over x1.
Ordinal to_ordinal(const Term& t, Box box);
// Inverse up to associativity and commutativity of +: omega^0 maps to x,
// omega^b (b > 0) to box(term of b), and c copies are summed left-nested in
// CNF order. Throws PreconditionError for 0.
Term from_ordinal(const Ordinal& a, Box box);

enum class Cmp { Less, Equal, Greater };
std::string to_string(Cmp c);

// Eventual dominance of two fragment terms, read off their ordinals.
Cmp compare(const Term& s, const Term& t, Box box);

// Rewrites 1^s -> 1, 1*s -> s, s*1 -> s and 1! -> 1 everywhere.
Term reduce_term(const Term& t);
bool is_reduced(const Term& t);

// Homeomorphic embedding: s embeds into a subterm of t, or the roots carry
// the same symbol and the children of s embed into distinct children of t.
// Children of +, *, C are unordered; the base and exponent of ^ keep their
// roles. Leaves match only identical leaves.
bool tree_embed(const Term& s, const Term& t);

// ---------------------------------------------------------------- probing

struct ProbeOptions {
  std::size_t max_points = 16;          // x = 1, 2, 4, ..., 2^(max_points-1)
  EvalLimits limits{std::size_t{1} << 20};
  std::size_t run = 3;                  // trailing equal signs needed for a verdict
};

// Values of a one-variable term at the probe points, stopping at the first
// point where evaluation overflows.
struct ProbeSeries {
  std::vector<std::uint64_t> points;
  std::vector<mpz_class> values;
  bool truncated = false;  // overflow before max_points
};
ProbeSeries probe_series(const Term& t, const ProbeOptions& opts = {});

struct ProbeResult {
  enum class Verdict { Less, Greater, Tied };
  Verdict verdict = Verdict::Tied;
  // First probe point of the trailing run that decided the verdict.
  std::optional<std::uint64_t> crossover;
  std::vector<std::uint64_t> points;  // points where both sides evaluated
  std::vector<int> signs;             // sign of s - t at each point
  bool truncated = false;             // stopped early on overflow
};
std::string to_string(ProbeResult::Verdict v);

// Dominance within budget only: Less or Greater when the last `run` points
// agree strictly, Tied otherwise.
ProbeResult probe_compare(const ProbeSeries& s, const ProbeSeries& t, const ProbeOptions& opts = {});
ProbeResult numeric_probe(const Term& s, const Term& t, const ProbeOptions& opts = {});

}  // namespace combalg
