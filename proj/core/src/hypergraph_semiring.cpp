#include "combalg/hypergraph_semiring.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "combalg/builtins.hpp"
#include "combalg/error.hpp"

namespace combalg {

namespace {

using Pair = std::pair<Vertex, Vertex>;

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

std::string gen_name(Vertex v) { return "a" + std::to_string(v); }

}  // namespace

HypergraphAlgebra build_SH(const Hypergraph3& H) {
  if (auto g = girth(H); g && *g < 5)
    throw PreconditionError("hypergraph has girth " + std::to_string(*g) + ", need at least 5");
  if (auto iso = H.isolated_vertices(); !iso.empty())
    throw PreconditionError("vertex " + std::to_string(iso.front()) + " is isolated");

  // 2-subsets of edges, merged when they complete edges through a common vertex.
  std::vector<Pair> pairs;
  for (const Edge& e : H.edges()) {
    pairs.emplace_back(e[0], e[1]);
    pairs.emplace_back(e[0], e[2]);
    pairs.emplace_back(e[1], e[2]);
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  auto pair_index = [&](Vertex u, Vertex v) {
    return static_cast<std::size_t>(
        std::lower_bound(pairs.begin(), pairs.end(), Pair{u, v}) - pairs.begin());
  };
  std::vector<std::size_t> parent(pairs.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (Vertex w = 0; w < H.vertex_count(); ++w) {
    std::optional<std::size_t> first;
    for (std::size_t ei : H.edges_at(w)) {
      const Edge& e = H.edges()[ei];
      Vertex u = e[0] == w ? e[1] : e[0];
      Vertex v = e[2] == w ? e[1] : e[2];
      std::size_t p = pair_index(u, v);
      if (!first) first = p;
      else parent[find_root(parent, p)] = find_root(parent, *first);
    }
  }

  HypergraphAlgebra out;
  out.source = H;
  std::map<std::size_t, std::size_t> class_of_root;  // ordered by least member
  std::vector<std::size_t> class_of_pair(pairs.size());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    auto [it, fresh] = class_of_root.try_emplace(find_root(parent, p), out.pair_classes.size());
    if (fresh) out.pair_classes.emplace_back();
    out.pair_classes[it->second].push_back(pairs[p]);
    class_of_pair[p] = it->second;
  }

  using K = SemiringElement::Kind;
  std::vector<std::string> names{"inf"};
  out.legend.push_back({K::Inf, 0});
  for (Vertex v = 0; v < H.vertex_count(); ++v) {
    names.push_back(gen_name(v));
    out.legend.push_back({K::Gen, v});
  }
  for (std::size_t c = 0; c < out.pair_classes.size(); ++c) {
    auto [u, v] = out.pair_classes[c].front();
    names.push_back(gen_name(u) + "." + gen_name(v));
    out.legend.push_back({K::PairClass, c});
  }
  if (!H.edges().empty()) {
    names.push_back("a");
    out.legend.push_back({K::Triple, 0});
  }

  const Elem inf = 0;
  const Elem gen0 = 1;
  const Elem class0 = gen0 + static_cast<Elem>(H.vertex_count());
  const Elem triple = class0 + static_cast<Elem>(out.pair_classes.size());
  const std::size_t n = names.size();
  FiniteAlgebra S("S_H", names, Signature{Op::plus, Op::times});
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) S.set(Op::plus, x, y, x == y ? x : inf);

  // Generator times pair class: the triple if every member completes an edge
  // with the generator, inf if none does.
  auto gen_times_class = [&](Vertex w, std::size_t c) -> Elem {
    std::size_t hits = 0;
    for (auto [u, v] : out.pair_classes[c])
      if (u != w && v != w && H.has_edge(u, v, w)) ++hits;
    if (hits == 0) return inf;
    if (hits == out.pair_classes[c].size()) return triple;
    throw InvariantViolation("generator " + gen_name(w) + " times pair class " +
                             names[class0 + c] + " is not well defined");
  };

  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      Elem r = inf;
      const SemiringElement& lx = out.legend[x];
      const SemiringElement& ly = out.legend[y];
      if (lx.kind == K::Gen && ly.kind == K::Gen) {
        auto u = static_cast<Vertex>(lx.index), v = static_cast<Vertex>(ly.index);
        if (H.share_edge(u, v)) r = class0 + static_cast<Elem>(class_of_pair[pair_index(std::min(u, v), std::max(u, v))]);
      } else if (lx.kind == K::Gen && ly.kind == K::PairClass) {
        r = gen_times_class(static_cast<Vertex>(lx.index), ly.index);
      } else if (lx.kind == K::PairClass && ly.kind == K::Gen) {
        r = gen_times_class(static_cast<Vertex>(ly.index), lx.index);
      }
      S.set(Op::times, x, y, r);
    }
  S.validate();
  out.algebra = std::move(S);
  return out;
}

HypergraphAlgebra build_BH(const Hypergraph3& H) {
  HypergraphAlgebra sh = build_SH(H);
  const FiniteAlgebra& S = sh.algebra;
  const Elem zero = 0, one = 1, two = 2, off = 3;  // S element s becomes off + s
  const Elem inf = off;

  std::vector<std::string> names{"0", "1", "2"};
  names.insert(names.end(), S.elements().begin(), S.elements().end());
  const auto n = static_cast<Elem>(names.size());
  FiniteAlgebra B("B_H", names, Signature::full());
  auto in_s = [&](Elem x) { return x >= off; };

  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      Elem plus, times, pow;
      if (in_s(x) && in_s(y)) {
        plus = off + S.apply(Op::plus, x - off, y - off);
        times = off + S.apply(Op::times, x - off, y - off);
      } else if (x == zero || y == zero) {
        plus = x == zero ? y : x;
        times = zero;
      } else if (in_s(x) || in_s(y)) {  // b with 1 or 2
        plus = inf;
        times = in_s(x) ? x : y;
      } else {  // both in {1, 2}
        plus = two;
        times = x == one && y == one ? one : two;
      }
      // Rows are the base.
      if (y == zero) pow = one;
      else if (x == zero) pow = zero;
      else if (x == one) pow = one;
      else if (y == one) pow = x;
      else if (x == two && y == two) pow = two;
      else pow = inf;
      B.set(Op::plus, x, y, plus);
      B.set(Op::times, x, y, times);
      B.set(Op::pow, x, y, pow);
    }
  for (Elem x = 0; x < n; ++x) {
    B.set(Op::exp2, x, B.apply(Op::plus, one, x));
    B.set(Op::fact, x, x == zero ? one : B.apply(Op::times, x, x));
    for (Elem y = 0; y < n; ++y)
      B.set(Op::choose, x, y,
            x == zero || y == zero ? one : B.apply(Op::plus, B.apply(Op::plus, x, y), one));
  }
  B.set_constant(Op::const0, zero);
  B.set_constant(Op::const1, one);
  B.validate();

  using K = SemiringElement::Kind;
  std::vector<SemiringElement> legend{{K::Zero, 0}, {K::One, 0}, {K::Two, 0}};
  legend.insert(legend.end(), sh.legend.begin(), sh.legend.end());
  sh.legend = std::move(legend);
  sh.algebra = std::move(B);
  return sh;
}

Equation tau_law(const Hypergraph3& H) {
  if (H.edges().empty()) throw PreconditionError("tau needs at least one edge");
  auto x = [](Vertex v) { return Term::var(v + 1); };
  Term sum;
  bool first = true;
  for (const Edge& e : H.edges()) {
    Term prod = Term::times(Term::times(x(e[0]), x(e[1])), x(e[2]));
    sum = first ? prod : Term::plus(sum, prod);
    first = false;
  }
  Term all = x(0);
  for (Vertex v = 1; v < H.vertex_count(); ++v) all = Term::times(all, x(v));
  return {sum, Term::plus(sum, all)};
}

Lemma2Report check_lemma2(const Hypergraph3& H, const SatOptions& opts) {
  if (auto iso = H.isolated_vertices(); !iso.empty())
    throw PreconditionError("vertex " + std::to_string(iso.front()) + " is isolated");
  if (H.vertex_count() > 10)
    throw PreconditionError("at most 10 vertices supported, got " + std::to_string(H.vertex_count()));
  Lemma2Report r;
  r.tau = tau_law(H);
  FiniteAlgebra B = algebra_B();
  r.sat = satisfies(B, r.tau, opts);
  r.hom = find_hom(H);
  r.agree = r.sat.satisfied == !r.hom.has_value();
  if (r.hom) {
    ElemAssignment a(H.vertex_count());
    for (Vertex v = 0; v < H.vertex_count(); ++v)
      a[v] = B.element((*r.hom)[v] == Label::a ? "a" : "1");
    r.hom_image_refutes = eval_alg(r.tau.lhs, B, a) != eval_alg(r.tau.rhs, B, a);
  }
  return r;
}

Lemma3Report check_lemma3(const Hypergraph3& H, const Lemma3Options& opts) {
  if (auto g = girth(H); g && *g < 5)
    throw PreconditionError("hypergraph has girth " + std::to_string(*g) + ", need at least 5");
  if (auto iso = H.isolated_vertices(); !iso.empty())
    throw PreconditionError("vertex " + std::to_string(iso.front()) + " is isolated");
  if (!is_robustly_satisfiable(H).robust)
    throw PreconditionError("hypergraph is not robustly 1-in-3 satisfiable");
  std::vector<Hom> homs = all_homs(H, opts.max_homs);

  Lemma3Report r;
  r.homs = homs.size();
  const FiniteAlgebra B = algebra_B();
  const Elem b0 = B.element("0"), b1 = B.element("1"), b2 = B.element("2"),
             ba = B.element("a"), binf = B.element("inf");
  DirectPower P(B, homs.size());
  std::vector<DirectPower::Tuple> gens{P.constant_tuple(b2), P.constant_tuple(binf)};
  for (Vertex u = 0; u < H.vertex_count(); ++u) {
    DirectPower::Tuple t(homs.size());
    for (std::size_t i = 0; i < homs.size(); ++i) t[i] = homs[i][u] == Label::a ? ba : b2;
    gens.push_back(std::move(t));
  }
  auto C = P.generate(gens, "C_H", opts.max_elements);
  r.generated_size = C.tuples.size();

  // Collapse the tuples with an inf coordinate; check the shape of the rest.
  std::vector<Elem> ideal;
  std::vector<std::vector<Elem>> blocks;
  std::optional<std::size_t> ideal_block;
  const auto zero_t = P.constant_tuple(b0), one_t = P.constant_tuple(b1);
  for (Elem e = 0; e < C.tuples.size(); ++e) {
    const auto& t = C.tuples[e];
    auto has = [&](Elem v) { return std::find(t.begin(), t.end(), v) != t.end(); };
    if (has(binf)) {
      if (!ideal_block) {
        ideal_block = blocks.size();
        blocks.emplace_back();
      }
      blocks[*ideal_block].push_back(e);
      continue;
    }
    if ((has(b0) && t != zero_t) || (has(b1) && t != one_t))
      throw InvariantViolation("tuple " + P.tuple_name(t) + " mixes 0 or 1 with other values");
    blocks.push_back({e});
  }
  r.collapsed = ideal_block ? blocks[*ideal_block].size() : 0;
  Partition theta(C.tuples.size(), std::move(blocks));
  if (auto v = find_congruence_violation(C.algebra, theta)) {
    r.congruence_violation = describe(*v, C.algebra);
    return r;
  }
  FiniteAlgebra Q = quotient(C.algebra, theta);
  FiniteAlgebra BH = build_BH(H).algebra;
  r.quotient_size = Q.size();
  r.bh_size = BH.size();
  if (Q.size() == BH.size()) r.isomorphism = find_isomorphism(Q, BH, opts.iso);
  r.quotient = std::move(Q);
  return r;
}

}  // namespace combalg
