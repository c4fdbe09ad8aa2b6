#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "combalg/axioms.hpp"
#include "combalg/builtins.hpp"
#include "combalg/dominance.hpp"
#include "combalg/error.hpp"
#include "combalg/eval.hpp"
#include "combalg/finite_algebra.hpp"
#include "combalg/free_quotient.hpp"
#include "combalg/hypergraph.hpp"
#include "combalg/hypergraph_semiring.hpp"
#include "combalg/omega.hpp"

namespace combalg::cli {

using json = nlohmann::ordered_json;

namespace {

struct Report {
  json j = json::object();
  std::vector<std::string> lines;
  int code = kOk;

  void line(std::string s) { lines.push_back(std::move(s)); }
};

struct Globals {
  bool json = false;
  bool timing = false;
  std::optional<std::uint64_t> budget;
  unsigned jobs = 0;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

json witness_json(const Witness& w, const FiniteAlgebra& A) {
  json assign = json::object();
  for (unsigned v : variables(w.equation))
    assign["x" + std::to_string(v)] = A.element_name(w.assignment[v - 1]);
  return {{"equation", print(w.equation)},
          {"assignment", assign},
          {"lhs", A.element_name(w.lhs)},
          {"rhs", A.element_name(w.rhs)}};
}

// Re-evaluates a reported witness; a mismatch is a library bug.
void revalidate(const Witness& w, const FiniteAlgebra& A) {
  Elem l = eval_alg(w.equation.lhs, A, w.assignment);
  Elem r = eval_alg(w.equation.rhs, A, w.assignment);
  if (l != w.lhs || r != w.rhs || l == r)
    throw InvariantViolation("reported witness does not re-validate");
}

SatOptions sat_options(const Globals& g) {
  SatOptions o;
  if (g.budget) o.budget = *g.budget;
  o.jobs = g.jobs;
  return o;
}

std::string hom_text(const Hom& h) { return to_string(h); }

json hom_json(const Hom& h) {
  json m = json::object();
  for (std::size_t v = 0; v < h.size(); ++v)
    m[std::to_string(v)] = h[v] == Label::a ? "a" : "1";
  return m;
}

std::string label(Label l) { return l == Label::a ? "a" : "1"; }

// ---------------------------------------------------------------- commands

Report cmd_parse(const std::string& text, const std::string& sig_text) {
  Report r;
  Signature sig = Signature::parse(sig_text);
  bool eq = text.find('=') != std::string::npos;
  r.j["kind"] = eq ? "equation" : "term";
  if (eq) {
    Equation e = parse_equation(text, sig);
    r.j["canonical"] = print(e);
    r.j["nodes"] = {e.lhs.node_count(), e.rhs.node_count()};
    r.j["signature"] = signature_of(e).to_string();
    json vars = json::array();
    for (unsigned v : variables(e)) vars.push_back("x" + std::to_string(v));
    r.j["variables"] = vars;
    r.line("equation: " + print(e));
  } else {
    Term t = parse_term(text, sig);
    r.j["canonical"] = print(t);
    r.j["nodes"] = t.node_count();
    r.j["signature"] = signature_of(t).to_string();
    json vars = json::array();
    for (unsigned v : variables(t)) vars.push_back("x" + std::to_string(v));
    r.j["variables"] = vars;
    if (!signature_of(t).contains(Op::pow)) r.j["weight"] = weight(t).get_str();
    r.line("term: " + print(t));
    if (r.j.contains("weight")) r.line("weight: " + r.j["weight"].get<std::string>());
  }
  r.line("nodes: " + r.j["nodes"].dump());
  r.line("signature: " + r.j["signature"].get<std::string>());
  return r;
}

NatAssignment parse_values(const std::vector<std::string>& values, unsigned need) {
  NatAssignment a(need, 0);
  if (values.size() < need)
    throw PreconditionError("need values for x1..x" + std::to_string(need));
  for (std::size_t i = 0; i < values.size() && i < need; ++i) {
    mpz_class v;
    if (v.set_str(values[i], 10) != 0 || v < 0)
      throw PreconditionError("bad natural number '" + values[i] + "'");
    a[i] = v;
  }
  return a;
}

Report cmd_eval_nat(const std::string& text, const std::vector<std::string>& values) {
  Report r;
  if (text.find('=') != std::string::npos) {
    Equation e = parse_equation(text);
    r.j["equation"] = print(e);
    if (!values.empty()) {
      unsigned need = std::max(e.lhs.max_var(), e.rhs.max_var());
      NatAssignment a = parse_values(values, need);
      mpz_class l = eval_nat(e.lhs, a), rv = eval_nat(e.rhs, a);
      r.j["lhs"] = l.get_str();
      r.j["rhs"] = rv.get_str();
      r.j["verdict"] = l == rv ? "equal" : "different";
      r.line("lhs: " + l.get_str());
      r.line("rhs: " + rv.get_str());
      r.code = l == rv ? kOk : kNegative;
      return r;
    }
    LawVerdict v = valid_on_nat(e);
    r.j["verdict"] = to_string(v.verdict);
    r.j["checked"] = v.checked;
    r.j["skipped"] = v.skipped;
    r.line("verdict: " + to_string(v.verdict));
    r.line("points checked: " + std::to_string(v.checked) + ", skipped: " + std::to_string(v.skipped));
    if (v.verdict == NatVerdict::RefutedOnNat) {
      json w = json::object();
      std::string desc;
      for (std::size_t i = 0; i < v.witness.size(); ++i) {
        w["x" + std::to_string(i + 1)] = v.witness[i].get_str();
        desc += (i ? ", x" : "x") + std::to_string(i + 1) + "=" + v.witness[i].get_str();
      }
      r.j["witness"] = {{"assignment", w}, {"lhs", v.lhs.get_str()}, {"rhs", v.rhs.get_str()}};
      r.line("witness: " + desc + ": " + v.lhs.get_str() + " vs " + v.rhs.get_str());
    }
    r.code = v.verdict == NatVerdict::ValidOnSample ? kOk
             : v.verdict == NatVerdict::RefutedOnNat ? kNegative
                                                      : kInconclusive;
    return r;
  }
  Term t = parse_term(text);
  NatAssignment a = parse_values(values, t.max_var());
  mpz_class v = eval_nat(t, a);
  r.j["term"] = print(t);
  r.j["value"] = v.get_str();
  r.line(v.get_str());
  return r;
}

Report cmd_check(const std::string& model, const std::vector<std::string>& eqs,
                 const std::string& file, const Globals& g) {
  Report r;
  FiniteAlgebra A = builtin_model(model);
  std::vector<Equation> list;
  for (const auto& s : eqs) list.push_back(parse_equation(s));
  if (!file.empty())
    for (auto& e : read_equations_file(file)) list.push_back(std::move(e));
  if (list.empty()) throw PreconditionError("no equations given (use --eq or --file)");
  r.j["model"] = A.name();
  r.j["size"] = A.size();
  json results = json::array();
  bool all = true;
  for (const Equation& e : list) {
    SatResult s = satisfies(A, e, sat_options(g));
    json item = {{"equation", print(e)},
                 {"verdict", s.satisfied ? "satisfied" : "refuted"},
                 {"assignments", s.assignments}};
    std::string text = print(e) + ": " + (s.satisfied ? "satisfied" : "refuted");
    if (s.witness) {
      revalidate(*s.witness, A);
      item["witness"] = witness_json(*s.witness, A);
      text += " (" + describe(*s.witness, A) + ")";
    }
    all = all && s.satisfied;
    results.push_back(item);
    r.line(text);
  }
  r.j["results"] = results;
  r.j["verdict"] = all ? "satisfied" : "refuted";
  r.code = all ? kOk : kNegative;
  return r;
}

Report cmd_axioms(const std::string& model, const std::string& group_name, bool do_export,
                  const Globals& g) {
  Report r;
  std::optional<AxiomGroup> group;
  if (!group_name.empty()) {
    group = axiom_group_from_name(group_name);
    if (!group) throw PreconditionError("unknown axiom group '" + group_name + "'");
  }
  if (do_export) {
    std::vector<Axiom> chosen;
    const auto& list = group == AxiomGroup::derived ? derived_laws() : axioms();
    for (const Axiom& a : list)
      if (!group || a.group == *group) chosen.push_back(a);
    std::string text = write_equations(chosen);
    r.j["equations"] = text;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) r.line(l);
    return r;
  }
  json results = json::array();
  bool all = true, unknown = false;
  if (model == "nat") {
    r.j["model"] = "nat";
    for (const LawVerdict& v : run_suite_nat(group)) {
      std::string id;
      for (const auto* list : {&axioms(), &derived_laws()})
        for (const Axiom& a : *list)
          if (a.equation == v.equation) id = a.id;
      results.push_back({{"id", id}, {"equation", print(v.equation)}, {"verdict", to_string(v.verdict)}});
      r.line(id + ": " + to_string(v.verdict));
      all = all && v.verdict != NatVerdict::RefutedOnNat;
      unknown = unknown || v.verdict == NatVerdict::Unevaluable;
    }
  } else {
    FiniteAlgebra A = builtin_model(model);
    r.j["model"] = A.name();
    for (const AxiomVerdict& v : run_suite(A, group, sat_options(g))) {
      json item = {{"id", v.axiom.id},
                   {"group", to_string(v.axiom.group)},
                   {"equation", print(v.axiom.equation)},
                   {"verdict", v.satisfied ? "satisfied" : "refuted"}};
      std::string text = v.axiom.id + ": " + (v.satisfied ? "satisfied" : "refuted");
      if (v.witness) {
        revalidate(*v.witness, A);
        item["witness"] = witness_json(*v.witness, A);
        text += " (" + describe(*v.witness, A) + ")";
      }
      results.push_back(item);
      r.line(text);
      all = all && v.satisfied;
    }
  }
  r.j["results"] = results;
  r.code = !all ? kNegative : unknown ? kInconclusive : kOk;
  r.j["verdict"] = !all ? "refuted" : unknown ? "inconclusive" : "all pass";
  return r;
}

Report cmd_girth(const std::string& spec) {
  Report r;
  Hypergraph3 H = load_hypergraph(spec);
  auto gi = girth(H);
  r.j["vertices"] = H.vertex_count();
  r.j["edges"] = H.edges().size();
  r.j["girth"] = gi ? json(*gi) : json("inf");
  r.j["hyperforest"] = !gi.has_value();
  r.line("girth: " + (gi ? std::to_string(*gi) : std::string("inf")));
  r.line("hyperforest: " + yes_no(!gi));
  return r;
}

Report cmd_hom(const std::string& spec, bool all) {
  Report r;
  Hypergraph3 H = load_hypergraph(spec);
  auto h = find_hom(H);
  r.j["exists"] = h.has_value();
  r.line(h ? "hom: " + hom_text(*h) : "hom: none");
  if (h) r.j["least"] = hom_json(*h);
  if (all) {
    auto homs = all_homs(H);
    json list = json::array();
    for (const Hom& x : homs) list.push_back(hom_json(x));
    r.j["count"] = homs.size();
    r.j["all"] = list;
    r.line("count: " + std::to_string(homs.size()));
    for (const Hom& x : homs) r.line("  " + hom_text(x));
  }
  r.code = h ? kOk : kNegative;
  return r;
}

Report cmd_robust(const std::string& spec, const Globals& g) {
  Report r;
  Hypergraph3 H = load_hypergraph(spec);
  RobustnessResult res = is_robustly_satisfiable(H, g.jobs);
  r.j["robust"] = res.robust;
  r.line("robust: " + yes_no(res.robust));
  if (res.pair) {
    auto [u, v] = *res.pair;
    r.j["failing"] = {{"u", u}, {"v", v}, {"fu", label(res.labels.first)}, {"fv", label(res.labels.second)}};
    r.line("fails at " + std::to_string(u) + ":" + label(res.labels.first) + " " +
           std::to_string(v) + ":" + label(res.labels.second));
  }
  r.code = res.robust ? kOk : kNegative;
  return r;
}

Report cmd_tau(const std::string& spec) {
  Report r;
  Equation e = tau_law(load_hypergraph(spec));
  r.j["equation"] = print(e);
  r.line(print(e));
  return r;
}

std::string legend_text(const SemiringElement& s, const HypergraphAlgebra& h) {
  using K = SemiringElement::Kind;
  switch (s.kind) {
    case K::Zero: return "zero";
    case K::One: return "one";
    case K::Two: return "two = 1 + 1";
    case K::Inf: return "absorbing element";
    case K::Gen: return "generator of vertex " + std::to_string(s.index);
    case K::Triple: return "product of the three generators of any edge";
    case K::PairClass: {
      std::string out = "pair class";
      for (auto [u, v] : h.pair_classes[s.index])
        out += " {" + std::to_string(u) + "," + std::to_string(v) + "}";
      return out;
    }
  }
  return "";
}

Report cmd_build_bh(const std::string& spec, const std::string& out_path) {
  Report r;
  HypergraphAlgebra h = build_BH(load_hypergraph(spec));
  for (Elem e = 0; e < h.algebra.size(); ++e)
    h.algebra.add_note(h.algebra.element_name(e) + ": " + legend_text(h.legend[e], h));
  std::string text = write_algebra(h.algebra);
  r.j["size"] = h.algebra.size();
  r.j["pair_classes"] = h.pair_classes.size();
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw PreconditionError("cannot write " + out_path);
    f << text;
    r.j["out"] = out_path;
    r.line("wrote " + out_path + " (" + std::to_string(h.algebra.size()) + " elements)");
  } else {
    r.j["algebra"] = text;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) r.line(l);
  }
  return r;
}

Report cmd_lemma2(const std::string& spec, const Globals& g) {
  Report r;
  Lemma2Report rep = check_lemma2(load_hypergraph(spec), sat_options(g));
  FiniteAlgebra B = algebra_B();
  r.j["tau"] = print(rep.tau);
  r.j["B_satisfies_tau"] = rep.sat.satisfied;
  r.j["assignments"] = rep.sat.assignments;
  r.line("tau: " + print(rep.tau));
  std::string sat = rep.sat.satisfied ? "satisfied" : "refuted";
  if (rep.sat.witness) {
    revalidate(*rep.sat.witness, B);
    r.j["witness"] = witness_json(*rep.sat.witness, B);
    sat += " (" + describe(*rep.sat.witness, B) + ")";
  }
  r.line("B: " + sat);
  r.j["hom"] = rep.hom ? hom_json(*rep.hom) : json(nullptr);
  r.line("hom: " + (rep.hom ? hom_text(*rep.hom) : std::string("none")));
  if (rep.hom_image_refutes) {
    r.j["hom_image_refutes"] = *rep.hom_image_refutes;
    r.line(std::string("hom image assignment ") +
           (*rep.hom_image_refutes ? "refutes tau" : "does not refute tau; witness found by search"));
  }
  r.j["agree"] = rep.agree;
  r.line(std::string(rep.sat.satisfied ? "satisfied" : "refuted") + " & " +
         (rep.hom ? "hom exists" : "no hom") + ": biconditional " +
         (rep.agree ? "agrees" : "DISAGREES"));
  r.code = rep.agree ? kOk : kNegative;
  return r;
}

Report cmd_lemma3(const std::string& spec, std::size_t max_homs) {
  Report r;
  Lemma3Options o;
  o.max_homs = max_homs;
  Lemma3Report rep = check_lemma3(load_hypergraph(spec), o);
  r.j["homs"] = rep.homs;
  r.j["generated_size"] = rep.generated_size;
  r.j["collapsed"] = rep.collapsed;
  r.j["congruence"] = !rep.congruence_violation;
  r.line("homomorphisms: " + std::to_string(rep.homs));
  r.line("generated subalgebra: " + std::to_string(rep.generated_size) + " tuples, " +
         std::to_string(rep.collapsed) + " with an inf coordinate");
  if (rep.congruence_violation) {
    r.j["violation"] = *rep.congruence_violation;
    r.line("collapse is not a congruence: " + *rep.congruence_violation);
  } else {
    r.line("collapse is a congruence");
    r.j["quotient_size"] = rep.quotient_size;
    r.j["bh_size"] = rep.bh_size;
    r.j["isomorphic"] = rep.isomorphism.has_value();
    r.line("quotient: " + std::to_string(rep.quotient_size) + " elements, B_H: " +
           std::to_string(rep.bh_size) + " elements");
    r.line(std::string("isomorphic to B_H: ") + yes_no(rep.isomorphism.has_value()));
  }
  r.j["verdict"] = rep.holds() ? "holds" : "fails";
  r.code = rep.holds() ? kOk : kNegative;
  return r;
}

json bound_json(const BoundInfo& b) {
  return {{"m", b.m},
          {"w1", b.w1.get_str()},
          {"w2", b.w2.get_str()},
          {"K", b.K.get_str()},
          {"bound", b.bound_known ? json(b.bound.get_str()) : json(nullptr)}};
}

void bound_lines(Report& r, const BoundInfo& b) {
  r.line("m: " + std::to_string(b.m));
  r.line("weights: " + b.w1.get_str() + ", " + b.w2.get_str());
  r.line("K: " + b.K.get_str());
  r.line("b_K(m) + 1: " + (b.bound_known ? b.bound.get_str() : std::string("not expanded (K > 24)")));
}

Report cmd_free_quotient(const std::string& eq_text, std::size_t max_elements) {
  Report r;
  Equation e = parse_equation(eq_text);
  BoundInfo b = bound_B(e.lhs, e.rhs);
  r.j["equation"] = print(e);
  r.j["bound"] = bound_json(b);
  bound_lines(r, b);
  Term nl = omega_normalize(e.lhs), nr = omega_normalize(e.rhs);
  r.j["normal_forms"] = {print(nl), print(nr)};
  bool derivable = nl == nr;
  r.j["omega_derivable"] = derivable;
  r.line("normal forms: " + print(nl) + " | " + print(nr));
  r.line("omega-derivable: " + yes_no(derivable));
  if (derivable) return r;
  auto ref = refute_via_truncation(e, max_elements);
  if (!ref) throw InvariantViolation("distinct normal forms but no refutation");
  const FiniteAlgebra& M = ref->model.algebra;
  revalidate(ref->witness, M);
  r.j["model_size"] = M.size();
  r.j["witness"] = witness_json(ref->witness, M);
  r.line("truncated model: " + std::to_string(M.size()) + " elements");
  r.line("witness: " + print(ref->renamed) + " with " + describe(ref->witness, M));
  r.j["verdict"] = "refuted";
  r.code = kNegative;
  return r;
}

Report cmd_entail(const std::string& sigma_file, const std::string& eq_text, std::size_t max_size,
                  const std::string& sig_text, const Globals& g) {
  Report r;
  std::vector<Equation> sigma;
  if (!sigma_file.empty()) sigma = read_equations_file(sigma_file);
  Equation e = parse_equation(eq_text);
  EntailmentOptions o;
  o.max_size = max_size;
  if (!sig_text.empty()) o.sig = Signature::parse(sig_text);
  if (g.budget) o.budget = *g.budget;
  EntailmentResult res = decide_entailment(sigma, e, o);
  r.j["equation"] = print(e);
  r.j["sigma"] = sigma.size();
  r.j["verdict"] = to_string(res.verdict);
  r.j["reason"] = res.reason;
  r.j["sizes_searched"] = res.sizes_searched;
  r.j["models_checked"] = res.models_checked;
  r.line("verdict: " + to_string(res.verdict));
  r.line("reason: " + res.reason);
  if (res.bound) {
    r.j["bound"] = bound_json(*res.bound);
    bound_lines(r, *res.bound);
  }
  if (res.model) {
    r.j["model"] = write_algebra(*res.model);
    r.line("counter-model:");
    std::istringstream in(write_algebra(*res.model));
    for (std::string l; std::getline(in, l);) r.line("  " + l);
  }
  if (res.witness && res.model) {
    revalidate(*res.witness, *res.model);
    r.j["witness"] = witness_json(*res.witness, *res.model);
    r.line("witness: " + describe(*res.witness, *res.model));
  }
  r.code = res.verdict == Entailment::Entailed      ? kOk
           : res.verdict == Entailment::NotEntailed ? kNegative
                                                    : kInconclusive;
  return r;
}

Box parse_box(const std::string& s) {
  if (s == "fact" || s == "!") return Box::fact;
  if (s == "exp2") return Box::exp2;
  throw PreconditionError("--box must be fact or exp2");
}

json probe_json(const ProbeResult& p) {
  json pts = json::array();
  for (std::size_t i = 0; i < p.points.size(); ++i)
    pts.push_back({{"x", p.points[i]}, {"sign", p.signs[i]}});
  return {{"verdict", to_string(p.verdict)},
          {"crossover", p.crossover ? json(*p.crossover) : json(nullptr)},
          {"points", pts},
          {"truncated", p.truncated}};
}

std::string probe_text(const ProbeResult& p) {
  std::string out = to_string(p.verdict);
  if (p.crossover) out += " from x = " + std::to_string(*p.crossover);
  out += " (" + std::to_string(p.points.size()) + " points";
  if (p.truncated) out += ", stopped at the value cap";
  return out + ")";
}

Report cmd_dominance(const std::string& box_text, const std::string& s_text, const std::string& t_text) {
  Report r;
  Box box = parse_box(box_text);
  Term s = parse_term(s_text), t = parse_term(t_text);
  Ordinal os = to_ordinal(s, box), ot = to_ordinal(t, box);
  Cmp c = compare(s, t, box);
  ProbeResult p = numeric_probe(s, t);
  r.j["box"] = to_string(box);
  r.j["ordinals"] = {to_string(os), to_string(ot)};
  r.j["verdict"] = to_string(c);
  r.j["probe"] = probe_json(p);
  r.line("ordinals: " + to_string(os) + " vs " + to_string(ot));
  r.line("verdict: " + to_string(c));
  r.line("probe: " + probe_text(p));
  r.code = c == Cmp::Equal ? kOk : kNegative;
  return r;
}

Report cmd_embed(const std::string& s_text, const std::string& t_text) {
  Report r;
  Term s = reduce_term(parse_term(s_text)), t = reduce_term(parse_term(t_text));
  bool e = tree_embed(s, t);
  r.j["reduced"] = {print(s), print(t)};
  r.j["embeds"] = e;
  r.line("reduced: " + print(s) + " | " + print(t));
  r.line("embeds: " + yes_no(e));
  r.code = e ? kOk : kNegative;
  return r;
}

Report cmd_sweep(std::size_t max_nodes, unsigned vars, std::size_t max_terms, const Globals& g) {
  Report r;
  Prop1Options o;
  o.max_nodes = max_nodes;
  o.variables = vars;
  o.max_terms = max_terms;
  o.jobs = g.jobs;
  Prop1Report rep = prop1_sweep(o);
  FiniteAlgebra B = algebra_B();
  r.j["terms"] = rep.terms;
  r.j["pairs"] = rep.pairs;
  r.j["nat_agreeing_pairs"] = rep.nat_agreeing_pairs;
  json dis = json::array();
  for (const auto& d : rep.disagreements) {
    revalidate(d.witness, B);
    dis.push_back({{"lhs", print(d.lhs)}, {"rhs", print(d.rhs)}, {"witness", witness_json(d.witness, B)}});
  }
  r.j["disagreements"] = dis;
  r.line("terms: " + std::to_string(rep.terms));
  r.line("pairs: " + std::to_string(rep.pairs));
  r.line("agreeing on the sample: " + std::to_string(rep.nat_agreeing_pairs));
  r.line("refuted by B: " + std::to_string(rep.disagreements.size()));
  for (const auto& d : rep.disagreements)
    r.line("  " + print(d.lhs) + " = " + print(d.rhs) + ": " + describe(d.witness, B));
  r.code = rep.disagreements.empty() ? kOk : kNegative;
  return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite models and decision procedures for combinatorial algebra"};
  app.name("combalg");
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_flag("--timing", g.timing, "Include wall-clock time in the report");
  app.add_option("--budget", g.budget, "Cap on evaluations or search nodes");
  app.add_option("--jobs", g.jobs, "Worker threads (0: all cores)");

  std::function<Report()> action;
  std::string text, sig = "full", model = "B", file, group, out_path, box = "fact", s_text, t_text,
              hyper, sigma_file, entail_sig;
  std::vector<std::string> values, eqs;
  bool flag = false;
  std::size_t max_size = 2, max_homs = 8, max_nodes = 4, max_terms = 20'000,
              max_elements = 2'000'000;
  unsigned vars = 1;

  auto* c = app.add_subcommand("parse", "Parse and print a term or equation");
  c->add_option("text", text)->required();
  c->add_option("--sig", sig, "Signature (full, comb, semiring or a list)");
  c->callback([&] { action = [&] { return cmd_parse(text, sig); }; });

  c = app.add_subcommand("eval-nat", "Evaluate over the naturals, or sample an equation");
  c->add_option("text", text)->required();
  c->add_option("values", values, "Values of x1, x2, ...");
  c->callback([&] { action = [&] { return cmd_eval_nat(text, values); }; });

  c = app.add_subcommand("check", "Check equations in a finite model");
  c->add_option("--model", model, "B, Bminus, S7_0 (optionally :sig) or @file");
  c->add_option("--eq", eqs, "Equation s = t (repeatable)");
  c->add_option("--file", file, "Equation file");
  c->callback([&] { action = [&] { return cmd_check(model, eqs, file, g); }; });

  c = app.add_subcommand("axioms", "Run the axiom suite");
  c->add_option("--model", model, "Model name, @file or nat");
  c->add_option("--group", group, "semiring, exp2, factorial, binomial, mixed or derived");
  c->add_flag("--export", flag, "Print the axioms as an equation file");
  c->callback([&] { action = [&] { return cmd_axioms(model, group, flag, g); }; });

  c = app.add_subcommand("girth", "Girth of a hypergraph");
  c->add_option("hypergraph", hyper, "File or @name")->required();
  c->callback([&] { action = [&] { return cmd_girth(hyper); }; });

  c = app.add_subcommand("hom", "Least homomorphism to the 1-in-3 template");
  c->add_option("hypergraph", hyper)->required();
  c->add_flag("--all", flag, "List every homomorphism");
  c->callback([&] { action = [&] { return cmd_hom(hyper, flag); }; });

  c = app.add_subcommand("robust", "2-robust 1-in-3 satisfiability");
  c->add_option("hypergraph", hyper)->required();
  c->callback([&] { action = [&] { return cmd_robust(hyper, g); }; });

  c = app.add_subcommand("tau", "The hypergraph law");
  c->add_option("hypergraph", hyper)->required();
  c->callback([&] { action = [&] { return cmd_tau(hyper); }; });

  c = app.add_subcommand("build-bh", "Build the hypergraph algebra B_H");
  c->add_option("hypergraph", hyper)->required();
  c->add_option("--out", out_path, "Write the algebra file here");
  c->callback([&] { action = [&] { return cmd_build_bh(hyper, out_path); }; });

  c = app.add_subcommand("lemma2", "B satisfies tau iff there is no homomorphism");
  c->add_option("hypergraph", hyper)->required();
  c->callback([&] { action = [&] { return cmd_lemma2(hyper, g); }; });

  c = app.add_subcommand("lemma3", "B_H as a quotient of a subalgebra of a power of B");
  c->add_option("hypergraph", hyper)->required();
  c->add_option("--max-homs", max_homs, "Largest power of B to build");
  c->callback([&] { action = [&] { return cmd_lemma3(hyper, max_homs); }; });

  c = app.add_subcommand("free-quotient", "Bound and truncated free algebra refutation");
  c->add_option("--eq", text, "Equation s = t")->required();
  c->add_option("--max-elements", max_elements, "Size cap for the truncated model");
  c->callback([&] { action = [&] { return cmd_free_quotient(text, max_elements); }; });

  c = app.add_subcommand("entail", "Decide whether sigma entails an equation");
  c->add_option("--sigma", sigma_file, "Equation file");
  c->add_option("--eq", text, "Equation s = t")->required();
  c->add_option("--max-size", max_size, "Largest model size to search");
  c->add_option("--sig", entail_sig, "Signature of the search (default comb)");
  c->callback([&] {
    action = [&] { return cmd_entail(sigma_file, text, max_size, entail_sig, g); };
  });

  c = app.add_subcommand("dominance", "Eventual dominance in the {+, box} fragment");
  c->add_option("--box", box, "fact or exp2");
  c->add_option("s", s_text)->required();
  c->add_option("t", t_text)->required();
  c->callback([&] { action = [&] { return cmd_dominance(box, s_text, t_text); }; });

  c = app.add_subcommand("embed", "Tree embedding of reduced terms");
  c->add_option("s", s_text)->required();
  c->add_option("t", t_text)->required();
  c->callback([&] { action = [&] { return cmd_embed(s_text, t_text); }; });

  c = app.add_subcommand("sweep-prop1", "Check B against all small term pairs equal on the naturals");
  c->add_option("--max-nodes", max_nodes);
  c->add_option("--vars", vars);
  c->add_option("--max-terms", max_terms);
  c->callback([&] { action = [&] { return cmd_sweep(max_nodes, vars, max_terms, g); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "combalg: " << e.what() << "\n";
    return kUsage;
  }

  Report r;
  auto start = std::chrono::steady_clock::now();
  try {
    r = action();
  } catch (const BudgetExceeded& e) {
    r = Report{};
    r.code = kInconclusive;
    r.j["verdict"] = "budget exceeded";
    r.j["reason"] = e.what();
    r.line("budget exceeded: " + std::string(e.what()));
  } catch (const EvalOverflow& e) {
    r = Report{};
    r.code = kInconclusive;
    r.j["verdict"] = "value cap exceeded";
    r.j["reason"] = e.what();
    r.line("value cap exceeded: " + std::string(e.what()));
  } catch (const std::exception& e) {
    err << "combalg: " << e.what() << "\n";
    return kUsage;
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json doc = json::object();
  doc["command"] = args;
  for (auto& [k, v] : r.j.items()) doc[k] = v;
  doc["exit"] = r.code;
  if (g.timing) doc["seconds"] = seconds;
  if (g.json) {
    out << doc.dump(2) << "\n";
  } else {
    for (const auto& l : r.lines) out << l << "\n";
    if (g.timing) out << "time: " << seconds << " s\n";
  }
  return r.code;
}

}  // namespace combalg::cli
