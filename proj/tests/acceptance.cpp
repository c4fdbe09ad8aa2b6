// Acceptance checks, one per criterion: `combalg_acceptance N` runs
// criterion N, no argument runs all ten. Exit status 0 iff all selected pass.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "combalg/axioms.hpp"
#include "combalg/builtins.hpp"
#include "combalg/dominance.hpp"
#include "combalg/free_quotient.hpp"
#include "combalg/hypergraph_semiring.hpp"
#include "combalg/omega.hpp"
#include "support.hpp"

using namespace combalg;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<Outcome()> run;
};

std::string str(const auto& x) {
  std::ostringstream o;
  o << x;
  return o.str();
}

// ---------------------------------------------------------------- 1

Outcome golden_tables() {
  // Rows are the left operand (the base for pow), columns the right one.
  const std::vector<std::string> names{"0", "1", "2", "a", "inf"};
  const char* plus[5][5] = {{"0", "1", "2", "a", "inf"},
                            {"1", "2", "2", "inf", "inf"},
                            {"2", "2", "2", "inf", "inf"},
                            {"a", "inf", "inf", "a", "inf"},
                            {"inf", "inf", "inf", "inf", "inf"}};
  const char* times[5][5] = {{"0", "0", "0", "0", "0"},
                             {"0", "1", "2", "a", "inf"},
                             {"0", "2", "2", "a", "inf"},
                             {"0", "a", "a", "inf", "inf"},
                             {"0", "inf", "inf", "inf", "inf"}};
  const char* pow[5][5] = {{"1", "0", "0", "0", "0"},
                           {"1", "1", "1", "1", "1"},
                           {"1", "2", "2", "inf", "inf"},
                           {"1", "a", "inf", "inf", "inf"},
                           {"1", "inf", "inf", "inf", "inf"}};
  const char* choose[5][5] = {{"1", "1", "1", "1", "1"},
                              {"1", "2", "2", "inf", "inf"},
                              {"1", "2", "2", "inf", "inf"},
                              {"1", "inf", "inf", "inf", "inf"},
                              {"1", "inf", "inf", "inf", "inf"}};
  const char* fact[5] = {"1", "1", "2", "inf", "inf"};
  const char* exp2[5] = {"1", "2", "2", "inf", "inf"};

  FiniteAlgebra B = algebra_B();
  if (B.elements() != names) return {false, "element list differs"};
  std::size_t cells = 0, wrong = 0;
  auto cmp = [&](Elem got, const char* want) {
    ++cells;
    wrong += B.element_name(got) != want;
  };
  for (Elem x = 0; x < 5; ++x) {
    for (Elem y = 0; y < 5; ++y) {
      cmp(B.apply(Op::plus, x, y), plus[x][y]);
      cmp(B.apply(Op::times, x, y), times[x][y]);
      cmp(B.apply(Op::pow, x, y), pow[x][y]);
      cmp(B.apply(Op::choose, x, y), choose[x][y]);
    }
    cmp(B.apply(Op::fact, x), fact[x]);
    cmp(B.apply(Op::exp2, x), exp2[x]);
  }
  cmp(B.constant(Op::const0), "0");
  cmp(B.constant(Op::const1), "1");
  return {wrong == 0 && cells == 112,
          str(cells) + " cells compared (100 binary, 10 unary, 2 constants), " + str(wrong) +
              " differ"};
}

// ---------------------------------------------------------------- 2

Outcome axiom_suite() {
  NatSampleConfig cfg;  // exhaustive [0..6]^vars plus seeded random points
  auto nat = run_suite_nat(std::nullopt, cfg);
  std::size_t nat_ok = 0;
  std::string bad;
  for (const auto& v : nat) {
    // Every point of the exhaustive grid must have been evaluated.
    std::uint64_t grid = 1;
    for (std::size_t i = 0; i < variables(v.equation).size(); ++i) grid *= cfg.small_max + 1;
    if (v.verdict == NatVerdict::ValidOnSample && v.checked >= grid) ++nat_ok;
    else bad += " nat:" + print(v.equation);
  }
  FiniteAlgebra B = algebra_B();
  auto inB = run_suite(B);
  std::size_t b_ok = 0;
  for (const auto& v : inB) {
    unsigned vars = static_cast<unsigned>(variables(v.axiom.equation).size());
    std::uint64_t full = 1;
    for (unsigned i = 0; i < vars; ++i) full *= 5;
    if (v.satisfied && satisfies(B, v.axiom.equation).assignments == full) ++b_ok;
    else bad += " B:" + v.axiom.id;
  }
  return {nat.size() == 20 && inB.size() == 20 && nat_ok == 20 && b_ok == 20,
          "naturals " + str(nat_ok) + "/20 valid on sample, B " + str(b_ok) +
              "/20 satisfied exhaustively" + bad};
}

// ---------------------------------------------------------------- 3

Outcome normal_form_count() {
  // Normal forms of weight <= 3 in one variable over the full combinatorial
  // signature. Both C and ! are present, so count under growing node caps
  // and see whether the count settles.
  std::vector<std::size_t> counts;
  std::string growth;
  for (std::size_t cap : {3, 5, 7, 9, 11}) {
    TruncationParams p;
    p.m = 1;
    p.K = 3;
    p.node_cap = cap;
    counts.push_back(normal_forms(p).size());
    growth += (growth.empty() ? "" : ", ") + str(cap) + ":" + str(counts.back());
  }
  bool settled = counts[counts.size() - 1] == counts[counts.size() - 2];
  bool six = settled && counts.back() == 6;

  // For m <= 2 and k <= 6 the count must stay within b_k(m); at the largest
  // cap the comb count already passes b_3(1) = 6.
  bool within = settled;
  std::string free_of_c;
  for (unsigned m = 1; m <= 2; ++m) {
    free_of_c += " m=" + str(m) + ":";
    for (unsigned k = 3; k <= 6; ++k) {
      TruncationParams p;
      p.m = m;
      p.K = k;
      p.sig = Signature::combinatorial().without({Op::choose});
      std::size_t n = normal_forms(p).size();
      free_of_c += " " + str(n);
      if (mpz_class(static_cast<unsigned long>(n)) > bound_b(k, m)) within = false;
    }
  }
  std::string detail =
      "weight<=3, m=1 count by node cap {" + growth + "}" +
      (settled ? "" : " keeps growing: (1 C 1) and its ! iterates all have weight 2") +
      "; without C, counts for k=3..6" + free_of_c + " (all within b_k(m))";
  return {six && within, detail};
}

// ---------------------------------------------------------------- 4

Outcome truncated_refutation() {
  Equation e = parse_equation("x + y = y + x");
  auto r = refute_via_truncation(e);
  if (!r) return {false, "no refutation returned"};
  const FiniteAlgebra& A = r->model.algebra;
  std::size_t laws_ok = 0, laws = 0;
  for (const auto& law : omega_laws()) {
    if (!A.signature().includes(signature_of(law))) continue;
    ++laws;
    laws_ok += satisfies(A, law).satisfied;
  }
  Elem l = eval_alg(r->renamed.lhs, A, r->witness.assignment);
  Elem rr = eval_alg(r->renamed.rhs, A, r->witness.assignment);
  mpz_class size = static_cast<unsigned long>(A.size());
  bool ok = laws == 13 && laws_ok == 13 && l != rr && A.size() <= 200 && r->bound.bound_known &&
            size <= r->bound.bound;
  return {ok, "model size " + str(A.size()) + ", omega laws " + str(laws_ok) + "/" + str(laws) +
                  ", sides " + A.element_name(l) + " vs " + A.element_name(rr) +
                  ", bound b_6(2)+1 = " + r->bound.bound.get_str()};
}

// ---------------------------------------------------------------- 5

Outcome units_entailment() {
  std::vector<Equation> sigma{parse_equation("0 + x = x"), parse_equation("x + 0 = x")};
  Equation e = parse_equation("x + y = y + x");
  EntailmentOptions o;
  o.sig = {Op::plus, Op::const0};
  o.max_size = 3;
  auto r = decide_entailment(sigma, e, o);
  if (r.verdict != Entailment::NotEntailed || !r.model || !r.witness)
    return {false, "verdict " + to_string(r.verdict)};
  const FiniteAlgebra& M = *r.model;
  bool models_sigma = true;
  for (const auto& s : sigma) models_sigma = models_sigma && satisfies(M, s).satisfied;
  for (const auto& law : omega_laws())
    if (M.signature().includes(signature_of(law)))
      models_sigma = models_sigma && satisfies(M, law).satisfied;
  const Witness& w = *r.witness;
  Elem l = eval_alg(w.equation.lhs, M, w.assignment), rr = eval_alg(w.equation.rhs, M, w.assignment);
  bool ok = M.size() == 3 && models_sigma && w.equation == e && l != rr;
  return {ok, "NotEntailed, " + str(M.size()) + "-element model, witness " +
                  describe(*r.witness, M) + ", models checked " + str(r.models_checked)};
}

// ---------------------------------------------------------------- 6

Outcome hypergraph_law() {
  std::size_t checked = 0, agreed = 0;
  std::string notes;
  bool pins = true;
  for (const auto& [name, H] : corpus()) {
    if (H.vertex_count() > 10 || !H.isolated_vertices().empty()) continue;
    auto r = check_lemma2(H);
    ++checked;
    agreed += r.agree;
    if (name == "K5_3")
      pins = pins && r.sat.satisfied && !r.hom && r.sat.assignments == 3125;
    if (name == "single_edge" || name == "path2") pins = pins && !r.sat.satisfied && r.hom;
    if (r.hom_image_refutes == false) notes += " " + name;
  }
  return {checked == agreed && checked == corpus().size() && pins,
          str(agreed) + "/" + str(checked) + " corpus entries agree" +
              (notes.empty() ? "" : "; hom image does not refute for" + notes)};
}

// ---------------------------------------------------------------- 7

bool validates(const FiniteAlgebra& Q, const FiniteAlgebra& BH, const std::vector<Elem>& f) {
  if (Q.size() != BH.size() || f.size() != Q.size()) return false;
  if (std::set<Elem>(f.begin(), f.end()).size() != f.size()) return false;
  for (Op op : Signature::full().ops()) {
    if (!Q.signature().contains(op) || !BH.signature().contains(op)) return false;
    if (arity(op) == 0 && f[Q.constant(op)] != BH.constant(op)) return false;
    for (Elem x = 0; x < Q.size(); ++x) {
      if (arity(op) == 1 && f[Q.apply(op, x)] != BH.apply(op, f[x])) return false;
      if (arity(op) == 2)
        for (Elem y = 0; y < Q.size(); ++y)
          if (f[Q.apply(op, x, y)] != BH.apply(op, f[x], f[y])) return false;
    }
  }
  return true;
}

Outcome power_construction() {
  bool ok = true;
  std::string detail;
  for (const char* name : {"single_edge", "path2"}) {
    Hypergraph3 H = *corpus_entry(name);
    auto r = check_lemma3(H);
    bool good = !r.congruence_violation && r.isomorphism &&
                validates(r.quotient, build_BH(H).algebra, *r.isomorphism);
    ok = ok && good;
    detail += std::string(detail.empty() ? "" : "; ") + name + ": " + str(r.homs) + " homs, |C_H|=" +
              str(r.generated_size) + ", collapsed " + str(r.collapsed) + ", |quotient|=" +
              str(r.quotient_size) + ", |B_H|=" + str(r.bh_size) +
              (good ? ", map checked on every table" : ", FAILED");
  }
  return {ok, detail};
}

// ---------------------------------------------------------------- 8

Outcome s7_collapse() {
  FiniteAlgebra B = algebra_B();
  FiniteAlgebra comb = reduct(B, Signature::combinatorial());
  Partition P = collapse_one_two(B);
  bool cong = is_congruence(comb, P);
  auto v = find_congruence_violation(B, P);
  std::string violation = v ? describe(*v, B) : "none";
  FiniteAlgebra Q = quotient(comb, P);

  testing::Gen g(808);
  std::size_t sampled = 0, kept = 0;
  for (std::size_t tries = 0; sampled < 50 && tries < 200'000; ++tries) {
    Equation e = g.equation(Signature::combinatorial(), 2, 1 + static_cast<unsigned>(g.below(3)));
    if (e.lhs == e.rhs || !satisfies(comb, e).satisfied) continue;
    ++sampled;
    kept += satisfies(Q, e).satisfied;
  }
  std::size_t ax = 0;
  for (const auto& r : run_suite(Q)) ax += r.satisfied;
  bool ok = cong && v && violation == "pow: 1^a = 1 vs 2^a = inf" && sampled == 50 && kept == 50 &&
            ax == 20;
  return {ok, std::string("comb congruence ") + (cong ? "yes" : "no") + ", with pow: " + violation +
                  ", quotient keeps " + str(kept) + "/" + str(sampled) +
                  " sampled equations of B and " + str(ax) + "/20 axioms"};
}

// ---------------------------------------------------------------- 9

Outcome dominance() {
  auto P = [](const char* s) { return parse_term(s); };
  Ordinal w = Ordinal::omega_pow(Ordinal::finite(1));
  bool fixtures = to_ordinal(P("x"), Box::fact) == Ordinal::finite(1) &&
                  to_ordinal(P("x!"), Box::fact) == w &&
                  to_ordinal(P("(x!)!"), Box::fact) == Ordinal::omega_pow(w) &&
                  to_ordinal(P("x! + x + x"), Box::fact) == ordinal_nat_sum(w, Ordinal::finite(2));

  testing::Gen g(909);
  std::size_t order_bad = 0;
  for (int i = 0; i < 500; ++i) {
    Box box = g.coin() ? Box::fact : Box::exp2;
    Term s = g.fragment(box, 3, 3), t = g.fragment(box, 3, 3), u = g.fragment(box, 3, 3);
    Cmp st = compare(s, t, box), ts = compare(t, s, box), tu = compare(t, u, box),
        su = compare(s, u, box);
    if ((st == Cmp::Less) != (ts == Cmp::Greater) || (st == Cmp::Equal) != (ts == Cmp::Equal))
      ++order_bad;
    if (st == Cmp::Less && tu == Cmp::Less && su != Cmp::Less) ++order_bad;
    if (st == Cmp::Equal && tu == Cmp::Equal && su != Cmp::Equal) ++order_bad;
  }

  // Exponential fragment at nesting <= 2: deeper towers leave too few probe
  // points under the bit cap.
  std::size_t probe_bad = 0, decided = 0, equal = 0;
  for (int i = 0; i < 100; ++i) {
    Term s = g.fragment(Box::exp2, 2, 3), t = g.fragment(Box::exp2, 2, 3);
    Cmp c = compare(s, t, Box::exp2);
    auto p = numeric_probe(s, t);
    if (c == Cmp::Equal) {
      ++equal;
      bool zero = std::all_of(p.signs.begin(), p.signs.end(), [](int x) { return x == 0; });
      if (p.verdict != ProbeResult::Verdict::Tied || !zero) ++probe_bad;
      continue;
    }
    if (p.verdict == ProbeResult::Verdict::Tied) continue;
    ++decided;
    if ((p.verdict == ProbeResult::Verdict::Less) != (c == Cmp::Less)) ++probe_bad;
  }

  // Reduced one-variable terms over {+, *, !, exp2} with leaves x and 1.
  Signature sig{Op::plus, Op::times, Op::fact, Op::exp2, Op::const1};
  std::vector<Term> reduced;
  for (const Term& t : enumerate_terms(TermShape::from_signature(sig, 1), 7))
    if (is_reduced(t)) reduced.push_back(t);
  std::vector<ProbeSeries> series(reduced.size());
  for (std::size_t i = 0; i < reduced.size(); ++i) series[i] = probe_series(reduced[i]);
  std::size_t embeddings = 0, embed_bad = 0;
  std::string first_bad;
  for (std::size_t i = 0; i < reduced.size(); ++i)
    for (std::size_t j = 0; j < reduced.size(); ++j) {
      if (i == j || reduced[i].node_count() > reduced[j].node_count()) continue;
      if (!tree_embed(reduced[i], reduced[j])) continue;
      ++embeddings;
      if (probe_compare(series[i], series[j]).verdict == ProbeResult::Verdict::Greater) {
        if (embed_bad++ == 0) first_bad = print(reduced[i]) + " into " + print(reduced[j]);
      }
    }

  bool ok = fixtures && order_bad == 0 && probe_bad == 0 && decided >= 90 && embed_bad == 0;
  return {ok, std::string("fixtures ") + (fixtures ? "ok" : "wrong") + ", order violations " +
                  str(order_bad) + "/500, probe mismatches " + str(probe_bad) + " (" +
                  str(decided) + " decided, " + str(equal) + " equal), " + str(embeddings) +
                  " embeddings among " + str(reduced.size()) + " reduced terms, " +
                  str(embed_bad) + " probed Greater" + (first_bad.empty() ? "" : " e.g. " + first_bad)};
}

// ---------------------------------------------------------------- 10

Outcome small_identities() {
  Prop1Options o;
  o.max_nodes = 4;
  o.variables = 1;
  auto r = prop1_sweep(o);
  BlockClass anomalous = classify_block(parse_term("0^x"));
  std::string found;
  for (const auto& d : r.disagreements)
    found += "; " + print(d.lhs) + " = " + print(d.rhs) + " (" + describe(d.witness, algebra_B()) + ")";
  bool ok = r.disagreements.empty() && anomalous.tag == BlockTag::Anomalous;
  return {ok, str(r.terms) + " terms, " + str(r.nat_agreeing_pairs) + " of " + str(r.pairs) +
                  " pairs agree on the sample, " + str(r.disagreements.size()) +
                  " refuted by B; block of 0^x: " + to_string(anomalous) + found};
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {1, "golden tables of B", 0.001, golden_tables},
      {2, "axiom suite on the naturals and in B", 1.0, axiom_suite},
      {3, "normal form count of weight <= 3", 1.0, normal_form_count},
      {4, "truncated free algebra refutes x + y = y + x", 10.0, truncated_refutation},
      {5, "units do not entail commutativity", 30.0, units_entailment},
      {6, "hypergraph law versus homomorphisms", 60.0, hypergraph_law},
      {7, "B_H from a power of B", 120.0, power_construction},
      {8, "collapse of 1 and 2", 1.0, s7_collapse},
      {9, "ordinal comparison, probes and embeddings", 120.0, dominance},
      {10, "small identities of the naturals hold in B", 300.0, small_identities},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::stoi(argv[i]));
  if (ids.empty())
    for (const auto& c : criteria()) ids.push_back(c.id);

  bool all = true;
  for (int id : ids) {
    auto it = std::find_if(criteria().begin(), criteria().end(),
                           [&](const Criterion& c) { return c.id == id; });
    if (it == criteria().end()) {
      std::cerr << "no criterion " << id << "\n";
      return 2;
    }
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = it->run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = secs < it->limit_seconds;
    bool pass = o.pass && in_time;
    all = all && pass;
    std::cout << "criterion " << id << " " << (pass ? "PASS" : "FAIL") << ": " << it->name << ": "
              << o.detail << " [" << secs << " s, limit " << it->limit_seconds << " s"
              << (in_time ? "" : ", too slow") << "]\n";
  }
  return all ? 0 : 1;
}
