#include "combalg/axioms.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "combalg/error.hpp"

namespace combalg {

std::string to_string(AxiomGroup g) {
  switch (g) {
    case AxiomGroup::semiring: return "semiring";
    case AxiomGroup::exp2: return "exp2";
    case AxiomGroup::factorial: return "factorial";
    case AxiomGroup::binomial: return "binomial";
    case AxiomGroup::mixed: return "mixed";
    case AxiomGroup::derived: return "derived";
  }
  return "?";
}

std::optional<AxiomGroup> axiom_group_from_name(const std::string& name) {
  for (auto g : {AxiomGroup::semiring, AxiomGroup::exp2, AxiomGroup::factorial,
                 AxiomGroup::binomial, AxiomGroup::mixed, AxiomGroup::derived})
    if (to_string(g) == name) return g;
  return std::nullopt;
}

namespace {

std::vector<Axiom> make(AxiomGroup g,
                        std::initializer_list<std::pair<const char*, const char*>> rows) {
  std::vector<Axiom> out;
  for (auto [id, text] : rows)
    out.push_back({id, parse_equation(text, Signature::combinatorial()), g});
  return out;
}

}  // namespace

const std::vector<Axiom>& axioms() {
  static const std::vector<Axiom> list = [] {
    using G = AxiomGroup;
    std::vector<Axiom> out;
    auto add = [&](std::vector<Axiom> part) { out.insert(out.end(), part.begin(), part.end()); };
    add(make(G::semiring, {{"zero-add", "0 + x = x"},
                           {"add-zero", "x + 0 = x"},
                           {"add-comm", "x + y = y + x"},
                           {"add-assoc", "x + (y + z) = (x + y) + z"},
                           {"one-mul", "1*x = x"},
                           {"mul-one", "x*1 = x"},
                           {"mul-comm", "x*y = y*x"},
                           {"mul-assoc", "x*(y*z) = (x*y)*z"},
                           {"distrib", "x*(y + z) = x*y + x*z"},
                           {"zero-mul", "0*x = 0"}}));
    add(make(G::exp2, {{"exp2-zero", "exp2(0) = 1"},
                       {"exp2-one", "exp2(1) = 2"},
                       {"exp2-add", "exp2(x + y) = exp2(x)*exp2(y)"}}));
    add(make(G::factorial, {{"fact-zero", "0! = 1"}, {"fact-succ", "(x + 1)! = (x + 1)*x!"}}));
    add(make(G::binomial, {{"choose-zero", "(x C 0) = 1"},
                           {"choose-one", "(x C 1) = x + 1"},
                           {"pascal", "((x + 1) C y) + (x C (y + 1)) = ((x + 1) C (y + 1))"},
                           {"trinomial", "((x + y) C z)*(x C y) = ((z + x) C y)*(z C x)"}}));
    add(make(G::mixed, {{"mixed", "x!*y!*(x C y) = (x + y)!"}}));
    return out;
  }();
  return list;
}

const std::vector<Axiom>& derived_laws() {
  static const std::vector<Axiom> list =
      make(AxiomGroup::derived, {{"choose-comm", "(x C y) = (y C x)"},
                                 {"committee-chair", "(y + 1)*(x C (y + 1)) = (x + y + 1)*(x C y)"}});
  return list;
}

std::optional<Axiom> find_axiom(const std::string& id) {
  for (const auto* list : {&axioms(), &derived_laws()})
    for (const Axiom& a : *list)
      if (a.id == id) return a;
  return std::nullopt;
}

Equation multinomial_law(const std::vector<unsigned>& perm) {
  const std::size_t n = perm.size();
  if (n < 3 || n > 6) throw PreconditionError("multinomial law needs 3 <= n <= 6");
  std::vector<unsigned> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < n; ++i)
    if (sorted[i] != i + 1) throw PreconditionError("not a permutation of 1.." + std::to_string(n));

  auto side = [&](auto index) {
    std::optional<Term> prod;
    for (std::size_t k = n - 1; k >= 1; --k) {
      Term sum = Term::var(index(1));
      for (std::size_t i = 2; i <= k; ++i) sum = Term::plus(sum, Term::var(index(i)));
      Term factor = Term::choose(sum, Term::var(index(k + 1)));
      prod = prod ? Term::times(*prod, factor) : factor;
    }
    return *prod;
  };
  return {side([](std::size_t i) { return static_cast<unsigned>(i); }),
          side([&](std::size_t i) { return perm[i - 1]; })};
}

namespace {

std::vector<const Axiom*> select(std::optional<AxiomGroup> group) {
  std::vector<const Axiom*> out;
  const auto& list = group == AxiomGroup::derived ? derived_laws() : axioms();
  for (const Axiom& a : list)
    if (!group || a.group == *group) out.push_back(&a);
  return out;
}

}  // namespace

std::vector<AxiomVerdict> run_suite(const FiniteAlgebra& A, std::optional<AxiomGroup> group,
                                    const SatOptions& opts) {
  auto chosen = select(group);
  Signature used;
  for (const Axiom* a : chosen) used = used.united(signature_of(a->equation));
  if (!A.signature().includes(used))
    throw SignatureError("algebra " + A.name() + " lacks operations: " +
                         used.without(A.signature()).to_string());
  std::vector<AxiomVerdict> out;
  for (const Axiom* a : chosen) {
    SatResult r = satisfies(A, a->equation, opts);
    out.push_back({*a, r.satisfied, r.witness});
  }
  return out;
}

std::vector<LawVerdict> run_suite_nat(std::optional<AxiomGroup> group, const NatSampleConfig& cfg) {
  std::vector<LawVerdict> out;
  for (const Axiom* a : select(group)) out.push_back(valid_on_nat(a->equation, cfg));
  return out;
}

std::vector<Equation> read_equations(std::istream& in, Signature sig) {
  std::vector<Equation> out;
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(parse_equation(line, sig));
  }
  return out;
}

std::vector<Equation> read_equations_file(const std::string& path, Signature sig) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open " + path);
  return read_equations(in, sig);
}

std::string write_equations(const std::vector<Axiom>& list) {
  std::string out;
  for (const Axiom& a : list) out += "# " + a.id + "\n" + print(a.equation) + "\n";
  return out;
}

}  // namespace combalg
