#include "combalg/finite_algebra.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "combalg/error.hpp"

namespace combalg {

FiniteAlgebra::FiniteAlgebra(std::string name, std::vector<std::string> elements, Signature sig)
    : name_(std::move(name)), elements_(std::move(elements)), sig_(sig) {
  if (elements_.empty()) throw PreconditionError("an algebra needs at least one element");
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (elements_[i] == elements_[j]) {
        throw PreconditionError("duplicate element name '" + elements_[i] + "'");
      }
    }
  }
  const std::size_t n = elements_.size();
  for (Op op : sig_.ops()) {
    std::size_t cells = arity(op) == 2 ? n * n : arity(op) == 1 ? n : 1;
    tables_[index_of(op)].assign(cells, kUndef);
  }
}

std::optional<Elem> FiniteAlgebra::find(std::string_view name) const {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i] == name) return static_cast<Elem>(i);
  }
  return std::nullopt;
}

Elem FiniteAlgebra::element(std::string_view name) const {
  if (auto e = find(name)) return *e;
  throw PreconditionError("no element named '" + std::string(name) + "' in " + name_);
}

void FiniteAlgebra::rename(std::vector<std::string> names) {
  if (names.size() != elements_.size()) throw PreconditionError("rename: wrong number of names");
  elements_ = std::move(names);
}

void FiniteAlgebra::require_op(Op op, unsigned want_arity) const {
  if (!sig_.contains(op)) {
    throw SignatureError("algebra " + name_ + " has no operation " + std::string(op_name(op)));
  }
  if (arity(op) != want_arity) throw PreconditionError("wrong arity for " + std::string(op_name(op)));
}

void FiniteAlgebra::set(Op op, Elem x, Elem y, Elem value) {
  require_op(op, 2);
  tables_[index_of(op)].at(static_cast<std::size_t>(x) * size() + y) = value;
}

void FiniteAlgebra::set(Op op, Elem x, Elem value) {
  require_op(op, 1);
  tables_[index_of(op)].at(x) = value;
}

void FiniteAlgebra::set_constant(Op op, Elem value) {
  require_op(op, 0);
  tables_[index_of(op)][0] = value;
}

void FiniteAlgebra::set_table(Op op, std::vector<Elem> cells) {
  require_op(op, arity(op));
  if (cells.size() != tables_[index_of(op)].size()) {
    throw PreconditionError("table for " + std::string(op_name(op)) + " has the wrong size");
  }
  tables_[index_of(op)] = std::move(cells);
}

void FiniteAlgebra::validate() const {
  for (Op op : sig_.ops()) {
    for (Elem v : tables_[index_of(op)]) {
      if (v >= size()) {
        throw PreconditionError("table " + std::string(op_name(op)) + " of " + name_ +
                                " has an undefined or out-of-range cell");
      }
    }
  }
}

bool FiniteAlgebra::same_structure(const FiniteAlgebra& other) const {
  return sig_ == other.sig_ && elements_ == other.elements_ && tables_ == other.tables_;
}

// ---------------------------------------------------------------- evaluation

void require_signature(const Term& t, const FiniteAlgebra& A) {
  Signature missing = signature_of(t).without(A.signature());
  if (!missing.empty()) {
    throw SignatureError("algebra " + A.name() + " lacks " + missing.to_string());
  }
}

Elem eval_alg(const Term& t, const FiniteAlgebra& A, const ElemAssignment& a) {
  require_signature(t, A);
  if (t.max_var() > a.size()) throw PreconditionError("assignment does not cover every variable");
  return CompiledTerm(t).eval(A, a);
}

CompiledTerm::CompiledTerm(const Term& t) {
  // Post-order emission: each instruction writes register == its index.
  std::function<std::uint32_t(const Term&)> emit = [&](const Term& s) -> std::uint32_t {
    Instr in{s.kind(), 0, 0};
    if (s.is(Kind::var)) {
      in.a = s.var_index() - 1;
    } else if (is_unary(s.kind())) {
      in.a = emit(s.arg());
    } else if (is_binary(s.kind())) {
      in.a = emit(s.lhs());
      in.b = emit(s.rhs());
    }
    code_.push_back(in);
    return static_cast<std::uint32_t>(code_.size() - 1);
  };
  emit(t);
}

Elem CompiledTerm::eval(const FiniteAlgebra& A, const Elem* values, Elem* r) const {
  for (std::size_t i = 0; i < code_.size(); ++i) {
    const Instr& in = code_[i];
    Elem v;
    switch (in.kind) {
      case Kind::var: v = values[in.a]; break;
      case Kind::zero: v = A.constant(Op::const0); break;
      case Kind::one: v = A.constant(Op::const1); break;
      case Kind::fact:
      case Kind::exp2: {
        Elem x = r[in.a];
        v = x == kUndef ? kUndef : A.apply(*op_of(in.kind), x);
        break;
      }
      default: {
        Elem x = r[in.a];
        Elem y = r[in.b];
        v = x == kUndef || y == kUndef ? kUndef : A.apply(*op_of(in.kind), x, y);
        break;
      }
    }
    r[i] = v;
  }
  return code_.empty() ? kUndef : r[code_.size() - 1];
}

Elem CompiledTerm::eval(const FiniteAlgebra& A, const ElemAssignment& a) const {
  std::vector<Elem> scratch(code_.size());
  return eval(A, a.data(), scratch.data());
}

// ---------------------------------------------------------------- satisfaction

namespace {

std::uint64_t checked_power(std::uint64_t base, std::size_t exp, std::uint64_t budget) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && total > budget / base) {
      throw BudgetExceeded("assignment space " + std::to_string(base) + "^" +
                           std::to_string(exp) + " exceeds the budget of " +
                           std::to_string(budget));
    }
    total *= base;
  }
  return total;
}

unsigned worker_count(unsigned jobs, std::size_t tasks) {
  unsigned hw = jobs != 0 ? jobs : std::max(1U, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(hw, std::max<std::size_t>(tasks, 1)));
}

}  // namespace

SatResult satisfies(const FiniteAlgebra& A, const Equation& e, const SatOptions& opts) {
  require_signature(e.lhs, A);
  require_signature(e.rhs, A);
  const std::vector<unsigned> vars = variables(e);
  const std::size_t n = A.size();
  const std::uint64_t total = checked_power(n, vars.size(), opts.budget);
  const unsigned width = std::max(e.lhs.max_var(), e.rhs.max_var());
  const CompiledTerm lhs(e.lhs);
  const CompiledTerm rhs(e.rhs);

  SatResult result;
  result.assignments = total;

  // Search the slice whose first variable equals `lead` (or everything when
  // there are no variables) and return the least counterexample in it.
  auto search = [&](Elem lead) -> std::optional<Witness> {
    ElemAssignment a(width, 0);
    std::vector<Elem> sl(lhs.scratch_size());
    std::vector<Elem> sr(rhs.scratch_size());
    if (!vars.empty()) a[vars[0] - 1] = lead;
    for (;;) {
      Elem l = lhs.eval(A, a.data(), sl.data());
      Elem r = rhs.eval(A, a.data(), sr.data());
      if (l != r) return Witness{e, a, l, r};
      // Odometer over the remaining variables, last one fastest.
      std::size_t k = vars.size();
      while (k > 1) {
        Elem& slot = a[vars[k - 1] - 1];
        if (++slot < n) break;
        slot = 0;
        --k;
      }
      if (k <= 1) return std::nullopt;
    }
  };

  if (vars.empty()) {
    if (auto w = search(0)) {
      result.satisfied = false;
      result.witness = std::move(w);
    }
    return result;
  }

  std::vector<std::optional<Witness>> found(n);
  std::atomic<std::size_t> next{0};
  // Slices past an already found witness cannot yield the least one.
  std::atomic<std::size_t> best{n};
  auto worker = [&] {
    for (;;) {
      std::size_t lead = next.fetch_add(1);
      if (lead >= n || lead > best.load()) return;
      found[lead] = search(static_cast<Elem>(lead));
      if (found[lead]) {
        std::size_t cur = best.load();
        while (lead < cur && !best.compare_exchange_weak(cur, lead)) {
        }
      }
    }
  };
  unsigned workers = worker_count(opts.jobs, total >= 4096 ? n : 1);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& w : found) {
    if (w) {
      result.satisfied = false;
      result.witness = std::move(w);
      break;
    }
  }
  return result;
}

std::string describe(const Witness& w, const FiniteAlgebra& A) {
  std::string out;
  for (unsigned v : variables(w.equation)) {
    if (!out.empty()) out += ", ";
    out += "x" + std::to_string(v) + "=" + A.element_name(w.assignment[v - 1]);
  }
  if (!out.empty()) out += ": ";
  return out + A.element_name(w.lhs) + " vs " + A.element_name(w.rhs);
}

}  // namespace combalg
