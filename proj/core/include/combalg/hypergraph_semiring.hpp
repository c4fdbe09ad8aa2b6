#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "combalg/finite_algebra.hpp"
#include "combalg/hypergraph.hpp"

namespace combalg {

struct SemiringElement {
  enum class Kind { Zero, One, Two, Inf, Gen, PairClass, Triple };
  Kind kind = Kind::Inf;
  std::size_t index = 0;  // vertex for Gen, class id for PairClass
};

struct HypergraphAlgebra {
  Hypergraph3 source;
  FiniteAlgebra algebra;
  std::vector<SemiringElement> legend;                       // per element
  std::vector<std::vector<std::pair<Vertex, Vertex>>> pair_classes;  // members, sorted
};

// The semiring on inf, one generator per vertex, the classes of 2-subsets of
// edges and the common triple product, over {+, *}. Elements appear in that
// order and are named inf, a<v>, a<u>.a<v> (least member of the class) and a.
// Throws PreconditionError for girth < 5 or isolated vertices, and
// InvariantViolation if a generator times a pair class is not well defined.
HypergraphAlgebra build_SH(const Hypergraph3& H);

// build_SH extended by 0, 1, 2 (listed first) to the full signature.
HypergraphAlgebra build_BH(const Hypergraph3& H);

// sum over edges of x_u*x_v*x_w = (same sum) + product of all x_v, with
// vertex v read as x<v+1> and sums and products nested to the left.
// Throws PreconditionError when H has no edges.
Equation tau_law(const Hypergraph3& H);

struct Lemma2Report {
  Equation tau;
  SatResult sat;             // B against tau
  std::optional<Hom> hom;    // least homomorphism to the template
  bool agree = false;        // B satisfies tau exactly when there is no hom
  // Whether sending x_v to the label of v refutes tau; unset without a hom.
  std::optional<bool> hom_image_refutes;
};

// Throws PreconditionError for isolated vertices or more than 10 vertices.
Lemma2Report check_lemma2(const Hypergraph3& H, const SatOptions& opts = {});

struct Lemma3Options {
  std::size_t max_homs = 8;
  std::size_t max_elements = 200'000;  // size cap for the generated power subalgebra
  IsoOptions iso{64};
};

struct Lemma3Report {
  std::size_t homs = 0;
  std::size_t generated_size = 0;   // |C_H|
  std::size_t collapsed = 0;        // tuples with an inf coordinate
  std::optional<std::string> congruence_violation;
  std::size_t quotient_size = 0;
  FiniteAlgebra quotient;           // C_H / theta, empty on a violation
  std::size_t bh_size = 0;
  std::optional<std::vector<Elem>> isomorphism;  // quotient -> B_H
  bool holds() const { return !congruence_violation && isomorphism.has_value(); }
};

// Generates C_H inside B^hom(H) from the constant tuples 0, 1, 2, inf and the
// tuples b_u, collapses the tuples with an inf coordinate and compares the
// quotient with B_H. Throws PreconditionError unless girth >= 5 and H is
// robustly satisfiable, and BudgetExceeded past max_homs homomorphisms or
// max_elements generated tuples.
Lemma3Report check_lemma3(const Hypergraph3& H, const Lemma3Options& opts = {});

}  // namespace combalg
