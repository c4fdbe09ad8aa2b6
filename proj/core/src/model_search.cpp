#include <cmath>

#include "combalg/error.hpp"
#include "combalg/finite_algebra.hpp"

namespace combalg {

namespace {

struct Cell {
  Op op;
  Elem x;
  Elem y;  // unused for unary ops
};

class ModelSearch {
 public:
  ModelSearch(std::size_t n, Signature sig, const std::vector<Equation>& constraints,
              const std::function<bool(const FiniteAlgebra&)>& visit,
              const ModelSearchOptions& opts)
      : n_(n), sig_(sig), visit_(visit), opts_(opts) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
    alg_ = FiniteAlgebra("model", std::move(names), sig);
    for (const Equation& e : constraints) {
      Signature missing = signature_of(e).without(sig);
      if (!missing.empty()) {
        throw SignatureError("constraint " + print(e) + " uses " + missing.to_string() +
                             " outside the search signature");
      }
      Constraint c{CompiledTerm(e.lhs), CompiledTerm(e.rhs), variables(e),
                   std::max(e.lhs.max_var(), e.rhs.max_var())};
      constraints_.push_back(std::move(c));
    }
    for (Op op : sig.ops()) {
      if (arity(op) == 2) {
        for (Elem x = 0; x < n; ++x) {
          for (Elem y = 0; y < n; ++y) cells_.push_back({op, x, y});
        }
      } else if (arity(op) == 1) {
        for (Elem x = 0; x < n; ++x) cells_.push_back({op, x, 0});
      }
    }
    consts_ = sig.ops_of_arity(0);
  }

  ModelSearchStats run() {
    assign_constants(0, 0);
    return stats_;
  }

 private:
  struct Constraint {
    CompiledTerm lhs, rhs;
    std::vector<unsigned> vars;
    unsigned width;
  };

  void tick() {
    if (++stats_.nodes > opts_.budget) {
      double space = static_cast<double>(cells_.size()) * std::log10(static_cast<double>(n_));
      throw BudgetExceeded("model search over " + std::to_string(n_) +
                           " elements exceeded " + std::to_string(opts_.budget) +
                           " nodes (table space about 10^" +
                           std::to_string(static_cast<long>(std::ceil(space))) + ")");
    }
  }

  // Restricted growth: constant i takes an earlier value or the next fresh one.
  void assign_constants(std::size_t i, Elem fresh) {
    if (stats_.stopped) return;
    if (i == consts_.size()) {
      if (consistent()) fill(0);
      return;
    }
    for (Elem v = 0; v <= fresh && v < n_; ++v) {
      tick();
      alg_.set_constant(consts_[i], v);
      assign_constants(i + 1, v == fresh ? fresh + 1 : fresh);
      if (stats_.stopped) return;
    }
  }

  void fill(std::size_t k) {
    if (stats_.stopped) return;
    if (k == cells_.size()) {
      ++stats_.models;
      if (!visit_(alg_)) stats_.stopped = true;
      return;
    }
    const Cell& c = cells_[k];
    for (Elem v = 0; v < n_; ++v) {
      tick();
      set(c, v);
      if (consistent()) fill(k + 1);
      if (stats_.stopped) break;
    }
    set(c, kUndef);
  }

  void set(const Cell& c, Elem v) {
    if (arity(c.op) == 2) {
      alg_.set(c.op, c.x, c.y, v);
    } else {
      alg_.set(c.op, c.x, v);
    }
  }

  // False if some constraint already evaluates to two different defined values.
  bool consistent() {
    for (const Constraint& c : constraints_) {
      std::vector<Elem> a(c.width, 0);
      std::vector<Elem> sl(c.lhs.scratch_size()), sr(c.rhs.scratch_size());
      for (;;) {
        Elem l = c.lhs.eval(alg_, a.data(), sl.data());
        if (l != kUndef) {
          Elem r = c.rhs.eval(alg_, a.data(), sr.data());
          if (r != kUndef && r != l) return false;
        }
        std::size_t k = c.vars.size();
        while (k > 0) {
          Elem& slot = a[c.vars[k - 1] - 1];
          if (++slot < n_) break;
          slot = 0;
          --k;
        }
        if (k == 0) break;
      }
    }
    return true;
  }

  std::size_t n_;
  Signature sig_;
  const std::function<bool(const FiniteAlgebra&)>& visit_;
  ModelSearchOptions opts_;
  FiniteAlgebra alg_;
  std::vector<Constraint> constraints_;
  std::vector<Cell> cells_;
  std::vector<Op> consts_;
  ModelSearchStats stats_;
};

}  // namespace

ModelSearchStats enumerate_models(std::size_t n, Signature sig,
                                  const std::vector<Equation>& constraints,
                                  const std::function<bool(const FiniteAlgebra&)>& visit,
                                  const ModelSearchOptions& opts) {
  if (n == 0) throw PreconditionError("models need at least one element");
  if (sig.empty()) throw PreconditionError("empty signature");
  return ModelSearch(n, sig, constraints, visit, opts).run();
}

}  // namespace combalg
