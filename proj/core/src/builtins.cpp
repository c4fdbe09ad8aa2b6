#include "combalg/builtins.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <thread>

#include "combalg/error.hpp"

namespace combalg {

namespace {

// Rows are the left operand (or the base for ^).
constexpr const char* kBText = R"(algebra B
signature full
elements 0 1 2 a inf
binop plus:
0 1 2 a inf
1 2 2 inf inf
2 2 2 inf inf
a inf inf a inf
inf inf inf inf inf
binop times:
0 0 0 0 0
0 1 2 a inf
0 2 2 a inf
0 a a inf inf
0 inf inf inf inf
binop pow:
1 0 0 0 0
1 1 1 1 1
1 2 2 inf inf
1 a inf inf inf
1 inf inf inf inf
binop choose:
1 1 1 1 1
1 2 2 inf inf
1 2 2 inf inf
1 inf inf inf inf
1 inf inf inf inf
unop fact: 0->1 1->1 2->2 a->inf inf->inf
unop exp2: 0->1 1->2 2->2 a->inf inf->inf
const const0 = 0
const const1 = 1
)";

}  // namespace

FiniteAlgebra algebra_B() {
  static const FiniteAlgebra B = parse_algebra(kBText);
  return B;
}

FiniteAlgebra algebra_B_minus() {
  FiniteAlgebra B = algebra_B();
  FiniteAlgebra R = reduct(B, Signature::full().without({Op::const0}));
  Subalgebra sub = subalgebra_generated(R, {R.element("a")});
  sub.algebra.set_name("Bminus");
  return std::move(sub.algebra);
}

Partition collapse_one_two(const FiniteAlgebra& B) {
  return Partition::of_names(B, {{"0"}, {"1", "2"}, {"a"}, {"inf"}});
}

FiniteAlgebra algebra_S7_0() {
  FiniteAlgebra comb = reduct(algebra_B(), Signature::combinatorial());
  FiniteAlgebra Q = quotient(comb, collapse_one_two(comb));
  Q.rename({"0", "1", "a", "inf"});
  Q.set_name("S7_0");
  return Q;
}

FiniteAlgebra builtin_model(const std::string& spec) {
  if (!spec.empty() && spec[0] == '@') return read_algebra_file(spec.substr(1));
  auto colon = spec.find(':');
  std::string base = spec.substr(0, colon);
  FiniteAlgebra A;
  if (base == "B") {
    A = algebra_B();
  } else if (base == "Bminus") {
    A = algebra_B_minus();
  } else if (base == "S7_0") {
    A = algebra_S7_0();
  } else {
    throw PreconditionError("unknown model '" + base + "' (expected B, Bminus, S7_0 or @file)");
  }
  if (colon == std::string::npos) return A;
  Signature tau = Signature::parse(spec.substr(colon + 1));
  FiniteAlgebra R = reduct(A, tau);
  R.set_name(spec);
  return R;
}

// ---------------------------------------------------------------- N0 oracle

std::vector<NatAssignment> nat_sample(unsigned vars, const NatSampleConfig& cfg) {
  std::vector<NatAssignment> out;
  NatAssignment a(vars, 0);
  for (;;) {
    out.push_back(a);
    std::size_t k = vars;
    while (k > 0) {
      if (a[k - 1] < cfg.small_max) {
        ++a[k - 1];
        break;
      }
      a[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
  }
  std::mt19937_64 rng(cfg.seed);
  const std::uint64_t top = cfg.random_bits >= 63 ? (UINT64_MAX >> 1) : (1ULL << cfg.random_bits);
  std::uniform_int_distribution<std::uint64_t> dist(0, top);
  if (vars > 0) {
    for (unsigned t = 0; t < cfg.trials; ++t) {
      NatAssignment r(vars);
      for (auto& v : r) v = static_cast<unsigned long>(dist(rng));
      out.push_back(std::move(r));
    }
  }
  return out;
}

LawVerdict valid_on_nat(const Equation& e, const NatSampleConfig& cfg) {
  LawVerdict out;
  out.equation = e;
  const unsigned width = std::max(e.lhs.max_var(), e.rhs.max_var());
  for (const NatAssignment& a : nat_sample(width, cfg)) {
    mpz_class l, r;
    try {
      l = eval_nat(e.lhs, a, cfg.limits);
      r = eval_nat(e.rhs, a, cfg.limits);
    } catch (const EvalOverflow&) {
      ++out.skipped;
      continue;
    }
    ++out.checked;
    if (l != r) {
      out.verdict = NatVerdict::RefutedOnNat;
      out.witness = a;
      out.lhs = l;
      out.rhs = r;
      return out;
    }
  }
  out.verdict = out.checked > 0 ? NatVerdict::ValidOnSample : NatVerdict::Unevaluable;
  return out;
}

std::string to_string(NatVerdict v) {
  switch (v) {
    case NatVerdict::ValidOnSample: return "ValidOnSample";
    case NatVerdict::RefutedOnNat: return "RefutedOnNat";
    case NatVerdict::Unevaluable: return "Unevaluable";
  }
  return "?";
}

// ---------------------------------------------------------------- blocks

namespace {

// Shape of a one-variable function restricted to x >= 1. On that domain every
// term function is either identically 0 or at least 1 everywhere, which the
// rules below rely on.
struct Shape {
  enum Kind { Const, Lin, Other } kind;
  mpz_class value;  // the constant, or n for x -> n*x
};

Shape konst(mpz_class c) { return {Shape::Const, std::move(c)}; }
Shape other() { return {Shape::Other, 0}; }
bool is_const(const Shape& s, long c) { return s.kind == Shape::Const && s.value == c; }

Shape shape_of(const Term& t, const EvalLimits& limits) {
  switch (t.kind()) {
    case combalg::Kind::var: return {Shape::Lin, 1};
    case combalg::Kind::zero: return konst(0);
    case combalg::Kind::one: return konst(1);
    default: break;
  }
  if (is_unary(t.kind())) {
    Shape a = shape_of(t.arg(), limits);
    if (a.kind == Shape::Const) return konst(nat_apply(t.kind(), a.value, 0, limits));
    return other();
  }
  Shape f = shape_of(t.lhs(), limits);
  Shape g = shape_of(t.rhs(), limits);
  const bool both_const = f.kind == Shape::Const && g.kind == Shape::Const;
  switch (t.kind()) {
    case combalg::Kind::plus:
      if (both_const) return konst(f.value + g.value);
      if (is_const(f, 0)) return g;
      if (is_const(g, 0)) return f;
      if (f.kind == Shape::Lin && g.kind == Shape::Lin) return {Shape::Lin, f.value + g.value};
      return other();
    case combalg::Kind::times:
      if (is_const(f, 0) || is_const(g, 0)) return konst(0);
      if (both_const) return konst(f.value * g.value);
      if (f.kind == Shape::Const && g.kind == Shape::Lin) return {Shape::Lin, f.value * g.value};
      if (f.kind == Shape::Lin && g.kind == Shape::Const) return {Shape::Lin, f.value * g.value};
      return other();
    case combalg::Kind::pow:
      if (is_const(g, 0)) return konst(1);
      if (is_const(f, 0)) return konst(0);  // g >= 1 on x >= 1
      if (is_const(f, 1)) return konst(1);
      if (both_const) return konst(nat_apply(t.kind(), f.value, g.value, limits));
      if (is_const(g, 1)) return f;
      return other();
    case combalg::Kind::choose:
      if (is_const(f, 0) || is_const(g, 0)) return konst(1);
      if (both_const) return konst(nat_apply(t.kind(), f.value, g.value, limits));
      return other();
    default: break;
  }
  throw InvariantViolation("unhandled term kind");
}

}  // namespace

BlockClass classify_block(const Term& t, const EvalLimits& limits) {
  auto vars = variables(t);
  if (vars.size() > 1) throw PreconditionError("classify_block needs at most one variable");
  // Treat the single variable as x1 whatever its index.
  Term u = vars.empty() ? t : rename_variables(t, [](unsigned) { return 1U; });
  const mpz_class at0 = eval_nat(u, NatAssignment{0}, limits);
  const Shape s = shape_of(u, limits);
  switch (s.kind) {
    case Shape::Const:
      if (at0 != s.value) return {BlockTag::Anomalous, 0};
      if (s.value == 0) return {BlockTag::B0, 0};
      if (s.value == 1) return {BlockTag::B1, 0};
      return {BlockTag::B2, 0};
    case Shape::Lin:
      if (at0 != 0) return {BlockTag::Anomalous, 0};
      return {BlockTag::Ba, s.value};
    case Shape::Other: return {BlockTag::Binf, 0};
  }
  return {};
}

std::string to_string(const BlockClass& b) {
  switch (b.tag) {
    case BlockTag::B0: return "B0";
    case BlockTag::B1: return "B1";
    case BlockTag::B2: return "B2";
    case BlockTag::Ba: return "Ba(" + b.multiplier.get_str() + ")";
    case BlockTag::Binf: return "Binf";
    case BlockTag::Anomalous: return "Anomalous";
  }
  return "?";
}

std::string block_element(const BlockClass& b) {
  switch (b.tag) {
    case BlockTag::B0: return "0";
    case BlockTag::B1: return "1";
    case BlockTag::B2: return "2";
    case BlockTag::Ba: return "a";
    case BlockTag::Binf: return "inf";
    case BlockTag::Anomalous: return "";
  }
  return "";
}

// ---------------------------------------------------------------- sweep

Prop1Report prop1_sweep(const Prop1Options& opts) {
  if (opts.variables == 0 || opts.variables > 2) {
    throw PreconditionError("prop1_sweep supports one or two variables");
  }
  const std::vector<Term> terms =
      enumerate_terms(TermShape::from_signature(Signature::full(), opts.variables),
                      opts.max_nodes, opts.max_terms);
  const std::vector<NatAssignment> sample = nat_sample(opts.variables, opts.sample);
  const FiniteAlgebra B = algebra_B();
  const std::size_t n = terms.size();

  // Values on the N0 sample (nullopt past the value cap) and on all of B.
  std::vector<std::vector<std::optional<mpz_class>>> nat(n);
  std::vector<std::vector<Elem>> inB(n);
  std::size_t bpoints = 1;
  for (unsigned v = 0; v < opts.variables; ++v) bpoints *= B.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (const NatAssignment& a : sample) {
      try {
        nat[i].emplace_back(eval_nat(terms[i], a, opts.sample.limits));
      } catch (const EvalOverflow&) {
        nat[i].emplace_back(std::nullopt);
      }
    }
    CompiledTerm c(terms[i]);
    for (std::size_t p = 0; p < bpoints; ++p) {
      ElemAssignment a(opts.variables);
      std::size_t rest = p;
      for (std::size_t k = opts.variables; k-- > 0;) {
        a[k] = static_cast<Elem>(rest % B.size());
        rest /= B.size();
      }
      inB[i].push_back(c.eval(B, a));
    }
  }

  auto agree_on_nat = [&](std::size_t i, std::size_t j) {
    bool any = false;
    for (std::size_t p = 0; p < sample.size(); ++p) {
      if (!nat[i][p] || !nat[j][p]) continue;
      if (*nat[i][p] != *nat[j][p]) return false;
      any = true;
    }
    return any;
  };

  std::vector<std::vector<Prop1Disagreement>> found(n);
  std::vector<std::uint64_t> agreeing(n, 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!agree_on_nat(i, j)) continue;
        ++agreeing[i];
        if (inB[i] == inB[j]) continue;
        SatResult r = satisfies(B, Equation{terms[i], terms[j]}, SatOptions{1'000'000, 1});
        if (r.satisfied) throw InvariantViolation("sweep: table values and satisfies disagree");
        found[i].push_back({terms[i], terms[j], *r.witness});
      }
    }
  };
  unsigned workers = opts.jobs != 0 ? opts.jobs : std::max(1U, std::thread::hardware_concurrency());
  {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          worker();
        } catch (...) {
          errors[w] = std::current_exception();
          next.store(n);
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  Prop1Report report;
  report.terms = n;
  report.pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  for (std::size_t i = 0; i < n; ++i) {
    report.nat_agreeing_pairs += agreeing[i];
    for (auto& d : found[i]) report.disagreements.push_back(std::move(d));
  }
  return report;
}

}  // namespace combalg
