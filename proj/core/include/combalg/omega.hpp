#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "combalg/term.hpp"

namespace combalg {

// The thirteen unit, zero and small-constant laws, oriented left to right.
struct OmegaRule {
  std::string_view id;
  Equation law;  // lhs rewrites to rhs
};

const std::vector<OmegaRule>& omega_rules();
std::vector<Equation> omega_laws();

// Result of one rule applied at the root, if any rule matches there.
std::optional<Term> omega_root_step(const Term& t);

// Every term reachable in exactly one rewrite step, at any position.
std::vector<Term> omega_successors(const Term& t);

bool is_omega_normal(const Term& t);

// Innermost normal form. Throws PreconditionError if t contains ^.
Term omega_normalize(const Term& t);

}  // namespace combalg
