#include "combalg/free_quotient.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "combalg/builtins.hpp"
#include "combalg/error.hpp"
#include "combalg/eval.hpp"
#include "combalg/omega.hpp"

namespace combalg {

mpz_class bound_b(unsigned k, unsigned m) {
  if (k == 0) throw PreconditionError("b_k is defined for k >= 1");
  if (k == 1) return 2;
  if (k == 2) return 3;
  mpz_class b = 5 + m;
  for (unsigned i = 3; i < k; ++i) b = 3 * b + 3 * b * b;
  return b;
}

BoundInfo bound_B(const Term& t1, const Term& t2) {
  BoundInfo info;
  info.m = static_cast<unsigned>(variables(Equation{t1, t2}).size());
  info.w1 = weight(t1);
  info.w2 = weight(t2);
  info.K = std::max({info.w1, info.w2, mpz_class(3)});
  if (info.K <= kMaxBoundK) {
    info.bound_known = true;
    info.bound = bound_b(static_cast<unsigned>(info.K.get_ui()), info.m) + 1;
  }
  return info;
}

bool needs_node_cap(Signature sig) { return sig.contains(Op::choose) && sig.contains(Op::fact); }

namespace {

void check_params(const TruncationParams& p) {
  if (!Signature::combinatorial().includes(p.sig)) {
    throw SignatureError("truncated free algebras use operations from {+, *, C, !, exp2, 0, 1}");
  }
  if (!p.sig.includes({Op::plus, Op::const0, Op::const1})) {
    throw SignatureError("truncated free algebras need +, 0 and 1");
  }
  if (p.K < 3) throw PreconditionError("K must be at least 3");
  if (p.node_cap && *p.node_cap < 3) throw PreconditionError("the node cap must be at least 3");
  if (!p.node_cap && needs_node_cap(p.sig)) {
    throw PreconditionError(
        "with both C and ! the normal forms of bounded weight are infinite "
        "(1 C 1, (1 C 1)!, ((1 C 1)!)!, ... all weigh 2); a node cap is required");
  }
  if (p.K > (std::uint64_t{1} << 62)) throw BudgetExceeded("K too large for truncation");
}

struct Entry {
  Term term;
  std::uint64_t weight;
};

}  // namespace

std::vector<Term> normal_forms(const TruncationParams& p) {
  check_params(p);
  // Without a node cap (C or ! absent), an irreducible term weighs at least
  // its leaves plus its unary nodes, so it has at most 2K + 1 nodes.
  const std::size_t max_nodes = p.node_cap ? *p.node_cap : static_cast<std::size_t>(2 * p.K + 1);
  const std::uint64_t K = p.K;
  std::vector<std::vector<Entry>> level(max_nodes + 1);
  std::size_t total = 0;
  auto push = [&](std::size_t n, Term t, std::uint64_t w) {
    if (++total > p.max_elements) {
      throw BudgetExceeded("more than " + std::to_string(p.max_elements) + " normal forms");
    }
    level[n].push_back({std::move(t), w});
  };
  push(1, Term::zero(), 0);
  push(1, Term::one(), 1);
  for (unsigned v = 1; v <= p.m; ++v) push(1, Term::var(v), 3);

  std::vector<Kind> unary, binary;
  for (Op op : p.sig.ops()) {
    if (arity(op) == 1) unary.push_back(kind_of(op));
    if (arity(op) == 2) binary.push_back(kind_of(op));
  }
  // Subterms of irreducible terms never weigh more than the whole term, and
  // 0 never occurs below the root, so children range over smaller levels.
  std::vector<std::uint64_t> probe(p.m, 3);
  for (std::size_t n = 2; n <= max_nodes; ++n) {
    for (Kind k : unary) {
      for (const Entry& a : level[n - 1]) {
        Term t = Term::unary(k, a.term);
        if (omega_root_step(t)) continue;
        std::uint64_t w = eval_nat_capped(t, probe, K);
        if (w <= K) push(n, std::move(t), w);
      }
    }
    for (Kind k : binary) {
      for (std::size_t left = 1; left + 1 < n; ++left) {
        for (const Entry& l : level[left]) {
          if (l.term.is(Kind::zero)) continue;
          for (const Entry& r : level[n - 1 - left]) {
            if (r.term.is(Kind::zero)) continue;
            Term t = Term::binary(k, l.term, r.term);
            if (omega_root_step(t)) continue;
            std::uint64_t w = eval_nat_capped(t, probe, K);
            if (w <= K) push(n, std::move(t), w);
          }
        }
      }
    }
  }
  std::vector<Entry> all;
  for (auto& lv : level) {
    for (auto& e : lv) all.push_back(std::move(e));
  }
  std::sort(all.begin(), all.end(), [](const Entry& a, const Entry& b) {
    if (a.weight != b.weight) return a.weight < b.weight;
    return a.term < b.term;
  });
  std::vector<Term> out;
  out.reserve(all.size());
  for (auto& e : all) out.push_back(std::move(e.term));
  return out;
}

std::optional<Elem> TruncatedFreeAlgebra::element_of(const Term& normal_form) const {
  auto it = std::find(terms.begin(), terms.end(), normal_form);
  if (it == terms.end()) return std::nullopt;
  return static_cast<Elem>(it - terms.begin());
}

TruncatedFreeAlgebra build_truncated(const TruncationParams& p) {
  TruncatedFreeAlgebra T;
  T.params = p;
  T.terms = normal_forms(p);
  const std::size_t n = T.terms.size();
  T.top = static_cast<Elem>(n);
  const std::size_t max_nodes = p.node_cap ? *p.node_cap : SIZE_MAX;

  std::unordered_map<Term, Elem, TermHash> id;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    id.emplace(T.terms[i], static_cast<Elem>(i));
    names.push_back(print_compact(T.terms[i]));
  }
  names.push_back("top");
  const Elem zero = id.at(Term::zero());
  const Elem one = id.at(Term::one());
  const Elem top = T.top;

  // Normal form of a combination of two normal forms: one root step at most.
  auto close = [&](Term t) -> Elem {
    if (auto s = omega_root_step(t)) t = std::move(*s);
    if (t.node_count() > max_nodes) return top;
    auto w = weight_at_most(t, p.K);
    if (!w) return top;
    auto it = id.find(t);
    if (it == id.end()) throw InvariantViolation("normal form " + print(t) + " missing");
    return it->second;
  };

  FiniteAlgebra A("T" + std::to_string(p.m) + "_K" + std::to_string(p.K), std::move(names), p.sig);
  A.set_constant(Op::const0, zero);
  A.set_constant(Op::const1, one);
  for (Op op : p.sig.ops()) {
    const Kind k = kind_of(op);
    if (arity(op) == 1) {
      for (Elem x = 0; x < n; ++x) A.set(op, x, close(Term::unary(k, T.terms[x])));
      A.set(op, top, top);
    } else if (arity(op) == 2) {
      for (Elem x = 0; x <= n; ++x) {
        for (Elem y = 0; y <= n; ++y) {
          Elem v;
          if (x != top && y != top) {
            v = close(Term::binary(k, T.terms[x], T.terms[y]));
          } else {
            Elem other = x == top ? y : x;
            v = top;
            if (op == Op::times && other == zero) v = zero;
            if (op == Op::choose && other == zero) v = one;
          }
          A.set(op, x, y, v);
        }
      }
    }
  }
  A.add_note("truncated free algebra: m=" + std::to_string(p.m) + " K=" + std::to_string(p.K) +
             (p.node_cap ? " node cap=" + std::to_string(*p.node_cap) : std::string()));
  T.algebra = std::move(A);
  return T;
}

Equation compact_variables(const Equation& e) {
  std::vector<unsigned> vars = variables(e);
  auto map = [&](unsigned v) {
    return static_cast<unsigned>(std::lower_bound(vars.begin(), vars.end(), v) - vars.begin()) + 1;
  };
  return {rename_variables(e.lhs, map), rename_variables(e.rhs, map)};
}

std::optional<TruncationRefutation> refute_via_truncation(const Equation& e,
                                                          std::size_t max_elements) {
  Equation c = compact_variables(e);
  Term l = omega_normalize(c.lhs);
  Term r = omega_normalize(c.rhs);
  if (l == r) return std::nullopt;
  TruncationRefutation out;
  out.bound = bound_B(c.lhs, c.rhs);
  if (!out.bound.K.fits_ulong_p() || out.bound.K > (mpz_class(1) << 62)) {
    throw BudgetExceeded("weight too large for truncation");
  }
  TruncationParams p;
  p.m = out.bound.m;
  p.K = out.bound.K.get_ui();
  p.sig = Signature::combinatorial();
  p.node_cap = std::max<std::size_t>({3, l.node_count(), r.node_count()});
  p.max_elements = max_elements;
  out.model = build_truncated(p);
  ElemAssignment a;
  for (unsigned v = 1; v <= p.m; ++v) {
    auto x = out.model.element_of(Term::var(v));
    if (!x) throw InvariantViolation("variable missing from the truncated algebra");
    a.push_back(*x);
  }
  Elem lv = eval_alg(c.lhs, out.model.algebra, a);
  Elem rv = eval_alg(c.rhs, out.model.algebra, a);
  if (lv == rv) throw InvariantViolation("truncated model does not separate the two sides");
  out.lhs_normal = std::move(l);
  out.rhs_normal = std::move(r);
  out.witness = Witness{c, a, lv, rv};
  out.renamed = std::move(c);
  return out;
}

// ---------------------------------------------------------------- entailment

std::string to_string(Entailment e) {
  switch (e) {
    case Entailment::Entailed: return "Entailed";
    case Entailment::NotEntailed: return "NotEntailed";
    case Entailment::Inconclusive: return "Inconclusive";
  }
  return "?";
}

namespace {

bool has_pow(const Equation& e) { return signature_of(e).contains(Op::pow); }

}  // namespace

EntailmentResult decide_entailment(const std::vector<Equation>& sigma, const Equation& e,
                                   const EntailmentOptions& opts) {
  for (const Equation& s : sigma) {
    LawVerdict v = valid_on_nat(s);
    if (v.verdict != NatVerdict::ValidOnSample) {
      throw PreconditionError("hypothesis " + print(s) + " is not valid on N0 (" +
                              to_string(v.verdict) + ")");
    }
    if (!opts.sig.includes(signature_of(s))) {
      throw SignatureError("hypothesis " + print(s) + " leaves the search signature");
    }
  }
  if (!opts.sig.includes(signature_of(e))) {
    throw SignatureError("equation " + print(e) + " leaves the search signature");
  }

  EntailmentResult out;
  if (e.lhs == e.rhs) {
    out.verdict = Entailment::Entailed;
    out.reason = "both sides are identical";
    return out;
  }
  if (!has_pow(e)) {
    out.bound = bound_B(e.lhs, e.rhs);
    if (omega_normalize(e.lhs) == omega_normalize(e.rhs)) {
      out.verdict = Entailment::Entailed;
      out.reason = "both sides share an Omega-normal form";
      return out;
    }
  }

  std::vector<Equation> constraints = sigma;
  for (const Equation& law : omega_laws()) {
    if (opts.sig.includes(signature_of(law))) constraints.push_back(law);
  }
  for (std::size_t n = 1; n <= opts.max_size; ++n) {
    out.sizes_searched = n;
    std::optional<FiniteAlgebra> found;
    std::optional<Witness> witness;
    ModelSearchStats stats = enumerate_models(
        n, opts.sig, constraints,
        [&](const FiniteAlgebra& M) {
          SatResult r = satisfies(M, e, SatOptions{opts.budget, 1});
          if (r.satisfied) return true;
          found = M;
          witness = r.witness;
          return false;
        },
        ModelSearchOptions{opts.budget});
    out.models_checked += stats.models;
    if (found) {
      found->set_name("M" + std::to_string(n));
      out.verdict = Entailment::NotEntailed;
      out.reason = "a model of size " + std::to_string(n) + " satisfies the hypotheses and fails";
      out.model = std::move(found);
      out.witness = std::move(witness);
      return out;
    }
  }
  if (out.bound && out.bound->bound_known && out.bound->bound <= opts.max_size) {
    out.verdict = Entailment::Entailed;
    out.reason = "no counterexample up to the bound";
  } else {
    out.verdict = Entailment::Inconclusive;
    out.reason = "no counterexample up to size " + std::to_string(opts.max_size) +
                 (out.bound ? ", below the bound" : ", and no bound is known for terms with ^");
  }
  return out;
}

}  // namespace combalg
