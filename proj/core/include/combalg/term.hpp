#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "combalg/signature.hpp"

namespace combalg {

enum class Kind : std::uint8_t { var, zero, one, plus, times, pow, choose, fact, exp2 };

constexpr bool is_binary(Kind k) noexcept {
  return k == Kind::plus || k == Kind::times || k == Kind::pow || k == Kind::choose;
}
constexpr bool is_unary(Kind k) noexcept { return k == Kind::fact || k == Kind::exp2; }
constexpr bool is_leaf(Kind k) noexcept {
  return k == Kind::var || k == Kind::zero || k == Kind::one;
}

// The signature symbol a node kind stands for; variables have none.
std::optional<Op> op_of(Kind k) noexcept;
Kind kind_of(Op op) noexcept;

struct TermNode;

// Immutable term tree with structural equality. Copies share nodes, so a Term
// is cheap to pass by value and safe to read from several threads.
class Term {
 public:
  // A default-constructed Term is the constant 0.
  Term() = default;

  static Term var(unsigned index);  // index >= 1
  static Term zero();
  static Term one();
  static Term numeral(unsigned long value);  // left-nested sum of ones
  static Term binary(Kind kind, Term lhs, Term rhs);
  static Term unary(Kind kind, Term arg);

  static Term plus(Term l, Term r) { return binary(Kind::plus, std::move(l), std::move(r)); }
  static Term times(Term l, Term r) { return binary(Kind::times, std::move(l), std::move(r)); }
  static Term pow(Term l, Term r) { return binary(Kind::pow, std::move(l), std::move(r)); }
  static Term choose(Term l, Term r) { return binary(Kind::choose, std::move(l), std::move(r)); }
  static Term fact(Term a) { return unary(Kind::fact, std::move(a)); }
  static Term exp2(Term a) { return unary(Kind::exp2, std::move(a)); }

  Kind kind() const noexcept;
  unsigned var_index() const noexcept;  // 0 unless kind() == Kind::var
  const Term& lhs() const noexcept;     // binary left operand / unary argument
  const Term& rhs() const noexcept;
  const Term& arg() const noexcept { return lhs(); }

  std::size_t node_count() const noexcept;
  std::size_t depth() const noexcept;
  unsigned max_var() const noexcept;
  std::size_t hash() const noexcept;

  bool is(Kind k) const noexcept { return kind() == k; }
  bool same_node(const Term& other) const noexcept { return node_ == other.node_; }

  friend bool operator==(const Term& a, const Term& b) noexcept;
  // Structural total order: by node count, then kind, then children.
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) noexcept;

 private:
  explicit Term(std::shared_ptr<const TermNode> node) : node_(std::move(node)) {}
  // Null node encodes the constant 0.
  std::shared_ptr<const TermNode> node_;
};

struct TermNode {
  Kind kind = Kind::zero;
  unsigned var = 0;
  Term children[2];
  std::size_t nodes = 1;
  std::size_t depth = 1;
  unsigned max_var = 0;
  std::size_t hash = 0;
};

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept { return t.hash(); }
};

struct Equation {
  Term lhs;
  Term rhs;

  friend bool operator==(const Equation&, const Equation&) = default;
};

// Sorted distinct variable indices occurring in a term or equation.
std::vector<unsigned> variables(const Term& t);
std::vector<unsigned> variables(const Equation& e);

// Operations occurring in a term (variables excluded).
Signature signature_of(const Term& t);
Signature signature_of(const Equation& e);

// Renames variables through `mapping` (old index -> new index).
Term rename_variables(const Term& t, const std::function<unsigned(unsigned)>& mapping);

// Calls `visit` on every subterm in post-order (children before parents).
void for_each_subterm(const Term& t, const std::function<void(const Term&)>& visit);

// ---------------------------------------------------------------- text

// Grammar (loosest to tightest): sum of products, products of powers,
// right-associative powers, postfix factorial, atoms. The choose operation is
// written "(s C t)" and is always parenthesised. Numerals k >= 2 expand to
// left-nested sums of ones. x, y, z, w alias x1..x4.
Term parse_term(std::string_view text, Signature sig = Signature::full());
Equation parse_equation(std::string_view text, Signature sig = Signature::full());

// Inverse of parse_term up to whitespace: parse_term(print(t)) == t.
std::string print(const Term& t);
std::string print(const Equation& e);
// Same text without spaces; usable as a single token (element names).
std::string print_compact(const Term& t);

// ---------------------------------------------------------------- enumeration

struct TermShape {
  unsigned variables = 1;      // leaves x1..x<variables>
  bool zero = true;            // leaf 0
  bool one = true;             // leaf 1
  std::vector<Kind> unary;     // fact / exp2
  std::vector<Kind> binary;    // plus / times / pow / choose

  static TermShape from_signature(Signature sig, unsigned variables);
};

// Every term of the shape with at most `max_nodes` nodes, ordered by node
// count and then by the structural order. Throws BudgetExceeded past `limit`.
std::vector<Term> enumerate_terms(const TermShape& shape, std::size_t max_nodes,
                                  std::size_t limit = 5'000'000);

}  // namespace combalg

template <>
struct std::hash<combalg::Term> {
  std::size_t operator()(const combalg::Term& t) const noexcept { return t.hash(); }
};
