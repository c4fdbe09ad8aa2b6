#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "combalg/signature.hpp"
#include "combalg/term.hpp"

namespace combalg {

using Elem = std::uint32_t;

// Marks a table cell that has not been filled in yet (model search only).
inline constexpr Elem kUndef = UINT32_MAX;

class FiniteAlgebra {
 public:
  FiniteAlgebra() = default;
  // Tables for every op in `sig` start out filled with kUndef.
  FiniteAlgebra(std::string name, std::vector<std::string> elements, Signature sig);

  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<std::string>& elements() const noexcept { return elements_; }
  const std::string& element_name(Elem e) const { return elements_.at(e); }
  std::optional<Elem> find(std::string_view name) const;
  Elem element(std::string_view name) const;  // throws PreconditionError if unknown
  void rename(std::vector<std::string> names);
  Signature signature() const noexcept { return sig_; }

  // Free-text lines kept through file round trips.
  const std::vector<std::string>& notes() const noexcept { return notes_; }
  void add_note(std::string line) { notes_.push_back(std::move(line)); }

  Elem apply(Op op, Elem x, Elem y) const noexcept {
    return tables_[index_of(op)][static_cast<std::size_t>(x) * elements_.size() + y];
  }
  Elem apply(Op op, Elem x) const noexcept { return tables_[index_of(op)][x]; }
  Elem constant(Op op) const noexcept { return tables_[index_of(op)][0]; }

  void set(Op op, Elem x, Elem y, Elem value);
  void set(Op op, Elem x, Elem value);
  void set_constant(Op op, Elem value);
  // Raw table: n*n row-major for binary ops, n for unary ops, 1 for constants.
  const std::vector<Elem>& table(Op op) const { return tables_[index_of(op)]; }
  void set_table(Op op, std::vector<Elem> cells);

  // Throws PreconditionError unless every table cell holds a valid element.
  void validate() const;

  // Same signature and element names, identical tables. Name and notes ignored.
  bool same_structure(const FiniteAlgebra& other) const;

 private:
  void require_op(Op op, unsigned want_arity) const;

  std::string name_;
  std::vector<std::string> elements_;
  Signature sig_;
  std::array<std::vector<Elem>, kOpCount> tables_;
  std::vector<std::string> notes_;
};

// Values for x1, x2, ...: element i is the value of x<i+1>.
using ElemAssignment = std::vector<Elem>;

// Throws SignatureError if t uses an operation the algebra lacks.
void require_signature(const Term& t, const FiniteAlgebra& A);

Elem eval_alg(const Term& t, const FiniteAlgebra& A, const ElemAssignment& a);

// A term flattened to straight-line code for repeated evaluation. Evaluation
// propagates kUndef, which lets model search test partially filled tables.
class CompiledTerm {
 public:
  CompiledTerm() = default;
  explicit CompiledTerm(const Term& t);

  Elem eval(const FiniteAlgebra& A, const Elem* values, Elem* scratch) const;
  Elem eval(const FiniteAlgebra& A, const ElemAssignment& a) const;
  std::size_t scratch_size() const noexcept { return code_.size(); }

 private:
  struct Instr {
    Kind kind;
    std::uint32_t a;  // variable slot (0-based) or operand register
    std::uint32_t b;
  };
  std::vector<Instr> code_;
};

// ---------------------------------------------------------------- satisfaction

struct Witness {
  Equation equation;
  ElemAssignment assignment;  // length = max variable index; unused slots 0
  Elem lhs = 0;
  Elem rhs = 0;
};

struct SatOptions {
  std::uint64_t budget = 100'000'000;  // assignments
  unsigned jobs = 0;                    // 0: hardware concurrency
};

struct SatResult {
  bool satisfied = true;
  std::optional<Witness> witness;  // least counterexample in lexicographic order
  std::uint64_t assignments = 0;
};

// Exhaustive check of all assignments to the variables of e. Lexicographic
// order: the variable with the smallest index is most significant.
SatResult satisfies(const FiniteAlgebra& A, const Equation& e, const SatOptions& opts = {});

// Readable witness, e.g. "x1=a, x2=1: a vs inf".
std::string describe(const Witness& w, const FiniteAlgebra& A);

// ---------------------------------------------------------------- partitions

class Partition {
 public:
  Partition() = default;
  // Throws PreconditionError unless `blocks` exactly covers 0..n-1.
  Partition(std::size_t n, std::vector<std::vector<Elem>> blocks);
  static Partition singletons(std::size_t n);
  // Blocks given by element names of A.
  static Partition of_names(const FiniteAlgebra& A,
                            const std::vector<std::vector<std::string>>& blocks);

  std::size_t universe() const noexcept { return block_of_.size(); }
  std::size_t size() const noexcept { return blocks_.size(); }
  const std::vector<std::vector<Elem>>& blocks() const noexcept { return blocks_; }
  std::size_t block_of(Elem e) const { return block_of_.at(e); }

 private:
  std::vector<std::vector<Elem>> blocks_;
  std::vector<std::size_t> block_of_;
};

struct CongruenceViolation {
  Op op;
  std::vector<Elem> first;   // arguments with the representative image
  std::vector<Elem> second;  // related arguments landing in another block
  Elem first_value = 0;
  Elem second_value = 0;
};

std::optional<CongruenceViolation> find_congruence_violation(const FiniteAlgebra& A,
                                                             const Partition& P);
inline bool is_congruence(const FiniteAlgebra& A, const Partition& P) {
  return !find_congruence_violation(A, P).has_value();
}
// E.g. "pow: 1^a = 1 vs 2^a = inf".
std::string describe(const CongruenceViolation& v, const FiniteAlgebra& A);

// Singleton blocks keep the element name, larger blocks become "[first]".
FiniteAlgebra quotient(const FiniteAlgebra& A, const Partition& P);

// ---------------------------------------------------------------- generation

struct Subalgebra {
  FiniteAlgebra algebra;
  std::vector<Elem> embedding;  // sub element -> element of the parent
};

// Closure of gens and the constants under every operation of A. Elements
// keep the parent's order.
Subalgebra subalgebra_generated(const FiniteAlgebra& A, const std::vector<Elem>& gens);

// Drops the tables of operations outside tau.
FiniteAlgebra reduct(const FiniteAlgebra& A, Signature tau);

// A^k with coordinatewise operations; tuples are only built on demand.
class DirectPower {
 public:
  using Tuple = std::vector<Elem>;

  DirectPower(const FiniteAlgebra& base, std::size_t k);

  const FiniteAlgebra& base() const noexcept { return *base_; }
  std::size_t arity() const noexcept { return k_; }

  Tuple constant_tuple(Elem e) const { return Tuple(k_, e); }
  Tuple apply(Op op, const Tuple& x, const Tuple& y) const;
  Tuple apply(Op op, const Tuple& x) const;
  Tuple constant(Op op) const { return constant_tuple(base_->constant(op)); }
  std::string tuple_name(const Tuple& t) const;

  struct Generated {
    FiniteAlgebra algebra;
    std::vector<Tuple> tuples;  // element id -> tuple
  };
  // Closure of gens and the constants inside the power, in discovery order
  // (constants, then gens, then new tuples). Throws BudgetExceeded once
  // more than max_elements tuples appear.
  Generated generate(const std::vector<Tuple>& gens, std::string name,
                     std::size_t max_elements = 200'000) const;

 private:
  const FiniteAlgebra* base_;
  std::size_t k_;
};

// ---------------------------------------------------------------- isomorphism

struct IsoOptions {
  std::size_t max_size = 40;
};

// An isomorphism A -> B as map[a] = b, or nullopt. Throws BudgetExceeded
// past max_size.
std::optional<std::vector<Elem>> find_isomorphism(const FiniteAlgebra& A, const FiniteAlgebra& B,
                                                  const IsoOptions& opts = {});
// Checks bijectivity and that the map commutes with every table.
bool verify_isomorphism(const FiniteAlgebra& A, const FiniteAlgebra& B,
                        const std::vector<Elem>& map);

// ---------------------------------------------------------------- model search

struct ModelSearchOptions {
  std::uint64_t budget = 50'000'000;  // search nodes
};

struct ModelSearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t models = 0;
  bool stopped = false;  // the visitor asked to stop
};

// Visits every algebra on {0..n-1} over sig satisfying all constraints.
// Constants are assigned in restricted-growth order (the first constant is 0,
// each later one reuses an earlier value or takes the next fresh one), which
// removes relabellings of constants only; the remaining cells are filled
// row-major per operation and pruned by partial evaluation. Deterministic.
// The visitor returns false to stop. Throws BudgetExceeded.
ModelSearchStats enumerate_models(std::size_t n, Signature sig,
                                  const std::vector<Equation>& constraints,
                                  const std::function<bool(const FiniteAlgebra&)>& visit,
                                  const ModelSearchOptions& opts = {});

// ---------------------------------------------------------------- files

// Line format: "algebra <name>", "# note", "signature <ops>", "elements <names>",
// "const <op> = <e>", "unop <op>: <e>-><e> ...", "binop <op>:" plus n rows.
FiniteAlgebra read_algebra(std::istream& in);
FiniteAlgebra read_algebra_file(const std::string& path);
FiniteAlgebra parse_algebra(std::string_view text);
std::string write_algebra(const FiniteAlgebra& A);

}  // namespace combalg
