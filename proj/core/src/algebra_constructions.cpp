#include <algorithm>
#include <unordered_map>

#include "combalg/error.hpp"
#include "combalg/finite_algebra.hpp"

namespace combalg {

// ---------------------------------------------------------------- partitions

Partition::Partition(std::size_t n, std::vector<std::vector<Elem>> blocks)
    : blocks_(std::move(blocks)), block_of_(n, SIZE_MAX) {
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (blocks_[b].empty()) throw PreconditionError("partition has an empty block");
    for (Elem e : blocks_[b]) {
      if (e >= n) throw PreconditionError("partition mentions an element outside the universe");
      if (block_of_[e] != SIZE_MAX) throw PreconditionError("partition blocks overlap");
      block_of_[e] = b;
    }
  }
  if (std::find(block_of_.begin(), block_of_.end(), SIZE_MAX) != block_of_.end()) {
    throw PreconditionError("partition does not cover the universe");
  }
}

Partition Partition::singletons(std::size_t n) {
  std::vector<std::vector<Elem>> blocks;
  for (std::size_t i = 0; i < n; ++i) blocks.push_back({static_cast<Elem>(i)});
  return Partition(n, std::move(blocks));
}

Partition Partition::of_names(const FiniteAlgebra& A,
                              const std::vector<std::vector<std::string>>& blocks) {
  std::vector<std::vector<Elem>> ids;
  for (const auto& block : blocks) {
    auto& out = ids.emplace_back();
    for (const auto& name : block) out.push_back(A.element(name));
  }
  return Partition(A.size(), std::move(ids));
}

// ---------------------------------------------------------------- congruences

std::optional<CongruenceViolation> find_congruence_violation(const FiniteAlgebra& A,
                                                             const Partition& P) {
  if (P.universe() != A.size()) throw PreconditionError("partition is over a different universe");
  const auto& blocks = P.blocks();
  for (Op op : A.signature().ops()) {
    if (arity(op) == 1) {
      for (const auto& block : blocks) {
        Elem rep = block.front();
        Elem image = A.apply(op, rep);
        for (Elem e : block) {
          Elem other = A.apply(op, e);
          if (P.block_of(other) != P.block_of(image)) {
            return CongruenceViolation{op, {rep}, {e}, image, other};
          }
        }
      }
    } else if (arity(op) == 2) {
      for (const auto& bi : blocks) {
        for (const auto& bj : blocks) {
          Elem image = A.apply(op, bi.front(), bj.front());
          for (Elem x : bi) {
            for (Elem y : bj) {
              Elem other = A.apply(op, x, y);
              if (P.block_of(other) != P.block_of(image)) {
                return CongruenceViolation{op, {bi.front(), bj.front()}, {x, y}, image, other};
              }
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

namespace {

std::string op_symbol_text(Op op, const std::vector<std::string>& args) {
  switch (op) {
    case Op::plus: return args[0] + "+" + args[1];
    case Op::times: return args[0] + "*" + args[1];
    case Op::pow: return args[0] + "^" + args[1];
    case Op::choose: return "(" + args[0] + " C " + args[1] + ")";
    case Op::fact: return args[0] + "!";
    case Op::exp2: return "exp2(" + args[0] + ")";
    default: return std::string(op_name(op));
  }
}

}  // namespace

std::string describe(const CongruenceViolation& v, const FiniteAlgebra& A) {
  auto names = [&](const std::vector<Elem>& xs) {
    std::vector<std::string> out;
    for (Elem x : xs) out.push_back(A.element_name(x));
    return out;
  };
  return std::string(op_name(v.op)) + ": " + op_symbol_text(v.op, names(v.first)) + " = " +
         A.element_name(v.first_value) + " vs " + op_symbol_text(v.op, names(v.second)) + " = " +
         A.element_name(v.second_value);
}

FiniteAlgebra quotient(const FiniteAlgebra& A, const Partition& P) {
  if (auto v = find_congruence_violation(A, P)) {
    throw PreconditionError("partition is not a congruence (" + describe(*v, A) + ")");
  }
  std::vector<std::string> names;
  for (const auto& block : P.blocks()) {
    const std::string& first = A.element_name(block.front());
    names.push_back(block.size() == 1 ? first : "[" + first + "]");
  }
  FiniteAlgebra Q(A.name() + "/P", std::move(names), A.signature());
  auto cls = [&](Elem e) { return static_cast<Elem>(P.block_of(e)); };
  const auto& blocks = P.blocks();
  for (Op op : A.signature().ops()) {
    switch (arity(op)) {
      case 0: Q.set_constant(op, cls(A.constant(op))); break;
      case 1:
        for (Elem b = 0; b < blocks.size(); ++b) Q.set(op, b, cls(A.apply(op, blocks[b].front())));
        break;
      default:
        for (Elem b = 0; b < blocks.size(); ++b) {
          for (Elem c = 0; c < blocks.size(); ++c) {
            Q.set(op, b, c, cls(A.apply(op, blocks[b].front(), blocks[c].front())));
          }
        }
    }
  }
  return Q;
}

// ---------------------------------------------------------------- subalgebras

Subalgebra subalgebra_generated(const FiniteAlgebra& A, const std::vector<Elem>& gens) {
  const std::size_t n = A.size();
  std::vector<bool> in(n, false);
  std::vector<Elem> found;
  auto add = [&](Elem e) {
    if (e >= n) throw PreconditionError("generator outside the algebra");
    if (!in[e]) {
      in[e] = true;
      found.push_back(e);
    }
  };
  const Signature sig = A.signature();
  for (Op op : sig.ops_of_arity(0)) add(A.constant(op));
  for (Elem g : gens) add(g);
  for (std::size_t i = 0; i < found.size(); ++i) {
    Elem x = found[i];
    for (Op op : sig.ops_of_arity(1)) add(A.apply(op, x));
    for (Op op : sig.ops_of_arity(2)) {
      for (std::size_t j = 0; j <= i; ++j) {
        add(A.apply(op, x, found[j]));
        add(A.apply(op, found[j], x));
      }
    }
  }
  std::vector<Elem> embedding = found;
  std::sort(embedding.begin(), embedding.end());
  std::vector<Elem> local(n, kUndef);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < embedding.size(); ++i) {
    local[embedding[i]] = static_cast<Elem>(i);
    names.push_back(A.element_name(embedding[i]));
  }
  FiniteAlgebra S(A.name() + "/sub", std::move(names), sig);
  const Elem m = static_cast<Elem>(embedding.size());
  for (Op op : sig.ops()) {
    switch (arity(op)) {
      case 0: S.set_constant(op, local[A.constant(op)]); break;
      case 1:
        for (Elem x = 0; x < m; ++x) S.set(op, x, local[A.apply(op, embedding[x])]);
        break;
      default:
        for (Elem x = 0; x < m; ++x) {
          for (Elem y = 0; y < m; ++y) {
            S.set(op, x, y, local[A.apply(op, embedding[x], embedding[y])]);
          }
        }
    }
  }
  return {std::move(S), std::move(embedding)};
}

FiniteAlgebra reduct(const FiniteAlgebra& A, Signature tau) {
  if (!A.signature().includes(tau)) {
    throw SignatureError("reduct needs " + tau.without(A.signature()).to_string() +
                         " which " + A.name() + " lacks");
  }
  FiniteAlgebra R(A.name(), A.elements(), tau);
  for (Op op : tau.ops()) R.set_table(op, A.table(op));
  for (const auto& note : A.notes()) R.add_note(note);
  return R;
}

// ---------------------------------------------------------------- direct powers

DirectPower::DirectPower(const FiniteAlgebra& base, std::size_t k) : base_(&base), k_(k) {
  if (k == 0) throw PreconditionError("direct power needs k >= 1");
}

DirectPower::Tuple DirectPower::apply(Op op, const Tuple& x, const Tuple& y) const {
  Tuple out(k_);
  for (std::size_t i = 0; i < k_; ++i) out[i] = base_->apply(op, x[i], y[i]);
  return out;
}

DirectPower::Tuple DirectPower::apply(Op op, const Tuple& x) const {
  Tuple out(k_);
  for (std::size_t i = 0; i < k_; ++i) out[i] = base_->apply(op, x[i]);
  return out;
}

std::string DirectPower::tuple_name(const Tuple& t) const {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ',';
    out += base_->element_name(t[i]);
  }
  return out + ")";
}

namespace {

struct TupleHash {
  std::size_t operator()(const std::vector<Elem>& t) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (Elem e : t) h = (h ^ e) * 0x100000001b3ULL;
    return h;
  }
};

}  // namespace

DirectPower::Generated DirectPower::generate(const std::vector<Tuple>& gens, std::string name,
                                             std::size_t max_elements) const {
  std::unordered_map<Tuple, Elem, TupleHash> ids;
  std::vector<Tuple> tuples;
  auto add = [&](Tuple t) -> Elem {
    if (t.size() != k_) throw PreconditionError("generator tuple has the wrong length");
    auto [it, inserted] = ids.try_emplace(t, static_cast<Elem>(tuples.size()));
    if (inserted) {
      if (tuples.size() >= max_elements) {
        throw BudgetExceeded("generated subalgebra exceeds " + std::to_string(max_elements) +
                             " elements");
      }
      tuples.push_back(std::move(t));
    }
    return it->second;
  };
  const Signature sig = base_->signature();
  for (Op op : sig.ops_of_arity(0)) add(constant(op));
  for (const Tuple& g : gens) add(g);
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    for (Op op : sig.ops_of_arity(1)) add(apply(op, tuples[i]));
    for (Op op : sig.ops_of_arity(2)) {
      for (std::size_t j = 0; j <= i; ++j) {
        add(apply(op, tuples[i], tuples[j]));
        add(apply(op, tuples[j], tuples[i]));
      }
    }
  }
  std::vector<std::string> names;
  names.reserve(tuples.size());
  for (const Tuple& t : tuples) names.push_back(tuple_name(t));
  FiniteAlgebra C(std::move(name), std::move(names), sig);
  const Elem m = static_cast<Elem>(tuples.size());
  for (Op op : sig.ops()) {
    switch (combalg::arity(op)) {
      case 0: C.set_constant(op, ids.at(constant(op))); break;
      case 1:
        for (Elem x = 0; x < m; ++x) C.set(op, x, ids.at(apply(op, tuples[x])));
        break;
      default:
        for (Elem x = 0; x < m; ++x) {
          for (Elem y = 0; y < m; ++y) C.set(op, x, y, ids.at(apply(op, tuples[x], tuples[y])));
        }
    }
  }
  return {std::move(C), std::move(tuples)};
}

}  // namespace combalg
