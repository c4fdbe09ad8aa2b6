#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "combalg/term.hpp"

namespace combalg {

// Values of x1, x2, ... in order: element i is the value of x<i+1>.
using NatAssignment = std::vector<mpz_class>;

struct EvalLimits {
  // Largest intermediate value, in bits, before EvalOverflow is thrown.
  std::size_t max_bits = std::size_t{1} << 22;
};

// Exact value over the naturals with 0^0 = 1, x C y = binom(x+y, y),
// x! the factorial and exp2(x) = 2^x.
mpz_class eval_nat(const Term& t, const NatAssignment& a, const EvalLimits& limits = {});

// One operation on exact naturals; `y` is ignored for unary kinds.
mpz_class nat_apply(Kind kind, const mpz_class& x, const mpz_class& y,
                    const EvalLimits& limits = {});

// Saturating evaluation: the exact value when it is at most `cap`, otherwise
// cap + 1. Sound because every operation is monotone on the naturals once
// its absorbing cases (0*y, y C 0, 0^y, 1^y, y^0) are handled exactly.
std::uint64_t eval_nat_capped(const Term& t, const std::vector<std::uint64_t>& a,
                              std::uint64_t cap);

// w(0)=0, w(1)=1, w(x_i)=3, homomorphic otherwise. Rejects ^.
mpz_class weight(const Term& t, const EvalLimits& limits = {});
// Weight when it is at most `cap`, else nullopt. Rejects ^.
std::optional<std::uint64_t> weight_at_most(const Term& t, std::uint64_t cap);

}  // namespace combalg
