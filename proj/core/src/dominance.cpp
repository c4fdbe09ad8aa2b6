#include "combalg/dominance.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <unordered_map>

#include "combalg/error.hpp"

namespace combalg {

// ---------------------------------------------------------------- ordinals

Ordinal Ordinal::finite(std::uint64_t n) {
  Ordinal a;
  if (n) a.parts_.push_back({Ordinal{}, n});
  return a;
}

Ordinal Ordinal::omega_pow(Ordinal exponent, std::uint64_t coefficient) {
  if (coefficient == 0) throw PreconditionError("ordinal coefficient must be positive");
  Ordinal a;
  a.parts_.push_back({std::move(exponent), coefficient});
  return a;
}

Ordinal Ordinal::from_parts(std::vector<Part> parts) {
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].coefficient == 0) throw PreconditionError("ordinal coefficient must be positive");
    if (i && ordinal_cmp(parts[i - 1].exponent, parts[i].exponent) != std::strong_ordering::greater)
      throw PreconditionError("ordinal exponents must strictly decrease");
  }
  Ordinal a;
  a.parts_ = std::move(parts);
  return a;
}

bool Ordinal::is_zero() const noexcept { return parts_.empty(); }

std::size_t Ordinal::height() const {
  if (parts_.empty() || parts_.front().exponent.is_zero()) return 0;
  return 1 + parts_.front().exponent.height();
}

std::strong_ordering ordinal_cmp(const Ordinal& a, const Ordinal& b) {
  const auto& x = a.parts();
  const auto& y = b.parts();
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (auto c = ordinal_cmp(x[i].exponent, y[i].exponent); c != 0) return c;
    if (auto c = x[i].coefficient <=> y[i].coefficient; c != 0) return c;
  }
  return x.size() <=> y.size();
}

Ordinal ordinal_nat_sum(const Ordinal& a, const Ordinal& b) {
  std::vector<Ordinal::Part> out;
  const auto& x = a.parts();
  const auto& y = b.parts();
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && ordinal_cmp(x[i].exponent, y[j].exponent) > 0)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || ordinal_cmp(x[i].exponent, y[j].exponent) < 0) {
      out.push_back(y[j++]);
    } else {
      std::uint64_t c = x[i].coefficient + y[j].coefficient;
      if (c < x[i].coefficient) throw EvalOverflow("ordinal coefficient overflow");
      out.push_back({x[i].exponent, c});
      ++i;
      ++j;
    }
  }
  return Ordinal::from_parts(std::move(out));
}

std::string to_string(const Ordinal& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& p : a.parts()) {
    if (!out.empty()) out += " + ";
    if (p.exponent.is_zero()) {
      out += std::to_string(p.coefficient);
      continue;
    }
    out += "ω";
    if (p.exponent != Ordinal::finite(1)) {
      std::string e = to_string(p.exponent);
      bool atomic = p.exponent.parts().size() == 1 && p.exponent.parts()[0].coefficient == 1;
      bool plain_number = p.exponent.parts().size() == 1 && p.exponent.parts()[0].exponent.is_zero();
      out += "^" + (atomic || plain_number ? e : "(" + e + ")");
    }
    if (p.coefficient != 1) out += "·" + std::to_string(p.coefficient);
  }
  return out;
}

// ---------------------------------------------------------------- terms

std::string to_string(Box b) { return b == Box::fact ? "fact" : "exp2"; }
Kind kind_of(Box b) { return b == Box::fact ? Kind::fact : Kind::exp2; }

Ordinal to_ordinal(const Term& t, Box box) {
  switch (t.kind()) {
    case Kind::var:
      if (t.var_index() != 1) break;
      return Ordinal::finite(1);
    case Kind::plus:
      return ordinal_nat_sum(to_ordinal(t.lhs(), box), to_ordinal(t.rhs(), box));
    case Kind::fact:
    case Kind::exp2:
      if (t.kind() != kind_of(box)) break;
      return Ordinal::omega_pow(to_ordinal(t.arg(), box));
    default:
      break;
  }
  throw PreconditionError("term " + print(t) + " lies outside the {+, " + to_string(box) +
                          "} fragment over x");
}

Term from_ordinal(const Ordinal& a, Box box) {
  if (a.is_zero()) throw PreconditionError("the ordinal 0 has no term");
  std::optional<Term> sum;
  for (const auto& p : a.parts()) {
    Term atom = p.exponent.is_zero() ? Term::var(1)
                                     : Term::unary(kind_of(box), from_ordinal(p.exponent, box));
    for (std::uint64_t c = 0; c < p.coefficient; ++c)
      sum = sum ? Term::plus(*sum, atom) : atom;
  }
  return *sum;
}

std::string to_string(Cmp c) {
  switch (c) {
    case Cmp::Less: return "Less";
    case Cmp::Equal: return "Equal";
    case Cmp::Greater: return "Greater";
  }
  return "?";
}

Cmp compare(const Term& s, const Term& t, Box box) {
  auto c = ordinal_cmp(to_ordinal(s, box), to_ordinal(t, box));
  if (c < 0) return Cmp::Less;
  if (c > 0) return Cmp::Greater;
  return Cmp::Equal;
}

Term reduce_term(const Term& t) {
  if (is_leaf(t.kind())) return t;
  if (is_unary(t.kind())) {
    Term a = reduce_term(t.arg());
    if (t.is(Kind::fact) && a.is(Kind::one)) return a;
    return a.same_node(t.arg()) ? t : Term::unary(t.kind(), a);
  }
  Term l = reduce_term(t.lhs());
  Term r = reduce_term(t.rhs());
  if (t.is(Kind::pow) && l.is(Kind::one)) return l;
  if (t.is(Kind::times) && l.is(Kind::one)) return r;
  if (t.is(Kind::times) && r.is(Kind::one)) return l;
  if (l.same_node(t.lhs()) && r.same_node(t.rhs())) return t;
  return Term::binary(t.kind(), l, r);
}

bool is_reduced(const Term& t) { return reduce_term(t) == t; }

namespace {

// Subterms in post-order with child positions.
struct Flat {
  std::vector<Term> nodes;
  std::vector<std::array<int, 2>> kids;  // -1 when absent
};

Flat flatten(const Term& t) {
  Flat f;
  std::function<int(const Term&)> go = [&](const Term& u) -> int {
    std::array<int, 2> k{-1, -1};
    if (is_unary(u.kind())) k[0] = go(u.arg());
    if (is_binary(u.kind())) {
      k[0] = go(u.lhs());
      k[1] = go(u.rhs());
    }
    f.nodes.push_back(u);
    f.kids.push_back(k);
    return static_cast<int>(f.nodes.size()) - 1;
  };
  go(t);
  return f;
}

bool same_label(const Term& a, const Term& b) {
  return a.kind() == b.kind() && (!a.is(Kind::var) || a.var_index() == b.var_index());
}

}  // namespace

bool tree_embed(const Term& s, const Term& t) {
  if (s.node_count() > t.node_count()) return false;
  Flat fs = flatten(s), ft = flatten(t);
  const std::size_t m = fs.nodes.size(), n = ft.nodes.size();
  // emb[i * n + j]: subterm i of s embeds into subterm j of t. Post-order
  // makes every child index smaller than its parent's.
  std::vector<char> emb(m * n, 0);
  auto E = [&](int i, int j) { return emb[static_cast<std::size_t>(i) * n + j] != 0; };
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      const auto& ks = fs.kids[i];
      const auto& kt = ft.kids[j];
      bool ok = (kt[0] >= 0 && E(i, kt[0])) || (kt[1] >= 0 && E(i, kt[1]));
      if (!ok && same_label(fs.nodes[i], ft.nodes[j])) {
        Kind k = fs.nodes[i].kind();
        if (is_leaf(k)) ok = true;
        else if (is_unary(k)) ok = E(ks[0], kt[0]);
        else if (k == Kind::pow) ok = E(ks[0], kt[0]) && E(ks[1], kt[1]);
        else
          ok = (E(ks[0], kt[0]) && E(ks[1], kt[1])) || (E(ks[0], kt[1]) && E(ks[1], kt[0]));
      }
      emb[i * n + j] = ok;
    }
  }
  return E(static_cast<int>(m) - 1, static_cast<int>(n) - 1);
}

// ---------------------------------------------------------------- probing

ProbeSeries probe_series(const Term& t, const ProbeOptions& opts) {
  ProbeSeries s;
  for (std::size_t i = 0; i < opts.max_points && i < 63; ++i) {
    std::uint64_t x = std::uint64_t{1} << i;
    try {
      s.values.push_back(eval_nat(t, {mpz_class(static_cast<unsigned long>(x))}, opts.limits));
    } catch (const EvalOverflow&) {
      s.truncated = true;
      break;
    }
    s.points.push_back(x);
  }
  return s;
}

std::string to_string(ProbeResult::Verdict v) {
  switch (v) {
    case ProbeResult::Verdict::Less: return "Less";
    case ProbeResult::Verdict::Greater: return "Greater";
    case ProbeResult::Verdict::Tied: return "Tied";
  }
  return "?";
}

ProbeResult probe_compare(const ProbeSeries& s, const ProbeSeries& t, const ProbeOptions& opts) {
  ProbeResult r;
  const std::size_t k = std::min(s.values.size(), t.values.size());
  r.truncated = s.truncated || t.truncated;
  for (std::size_t i = 0; i < k; ++i) {
    r.points.push_back(s.points[i]);
    int c = cmp(s.values[i], t.values[i]);
    r.signs.push_back((c > 0) - (c < 0));
  }
  if (k == 0 || r.signs.back() == 0) return r;
  std::size_t start = k - 1;
  while (start > 0 && r.signs[start - 1] == r.signs.back()) --start;
  if (k - start < std::max<std::size_t>(opts.run, 1)) return r;
  r.verdict = r.signs.back() < 0 ? ProbeResult::Verdict::Less : ProbeResult::Verdict::Greater;
  r.crossover = r.points[start];
  return r;
}

ProbeResult numeric_probe(const Term& s, const Term& t, const ProbeOptions& opts) {
  return probe_compare(probe_series(s, opts), probe_series(t, opts), opts);
}

}  // namespace combalg
