#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "combalg/builtins.hpp"
#include "combalg/finite_algebra.hpp"
#include "combalg/term.hpp"

namespace combalg {

enum class AxiomGroup { semiring, exp2, factorial, binomial, mixed, derived };
std::string to_string(AxiomGroup g);
std::optional<AxiomGroup> axiom_group_from_name(const std::string& name);

struct Axiom {
  std::string id;
  Equation equation;
  AxiomGroup group = AxiomGroup::semiring;
};

// The 20 axioms in the combinatorial signature: 10 semiring, 3 exp2,
// 2 factorial, 4 binomial and the mixed factorial/binomial law.
const std::vector<Axiom>& axioms();
// Consequences kept outside the axiom list: commutativity of C and the
// committee/chair law.
const std::vector<Axiom>& derived_laws();
// Looks up an id in axioms() and derived_laws().
std::optional<Axiom> find_axiom(const std::string& id);

// prod_{k=n-1..1} ((x1 + ... + xk) C x(k+1)) = the same with x(pi(i)) for xi.
// perm lists pi(1..n). Products and sums nest to the left. Throws
// PreconditionError unless 3 <= n <= 6 and perm is a permutation of 1..n.
Equation multinomial_law(const std::vector<unsigned>& perm);

struct AxiomVerdict {
  Axiom axiom;
  bool satisfied = true;
  std::optional<Witness> witness;
};

// Exhaustive check of every axiom (of one group when given) in A. Throws
// SignatureError naming the missing operations when A lacks one the
// selected axioms use.
std::vector<AxiomVerdict> run_suite(const FiniteAlgebra& A,
                                    std::optional<AxiomGroup> group = std::nullopt,
                                    const SatOptions& opts = {});
// The same axioms against the sampled naturals.
std::vector<LawVerdict> run_suite_nat(std::optional<AxiomGroup> group = std::nullopt,
                                      const NatSampleConfig& cfg = {});

// Equation files: one "s = t" per line, blank lines and '#' comments ignored.
std::vector<Equation> read_equations(std::istream& in, Signature sig = Signature::full());
std::vector<Equation> read_equations_file(const std::string& path,
                                          Signature sig = Signature::full());
std::string write_equations(const std::vector<Axiom>& list);

}  // namespace combalg
