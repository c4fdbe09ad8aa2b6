#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace combalg {

// Operation symbols of the full language {+, *, ^, C, !, exp2, 0, 1}.
enum class Op : std::uint8_t { plus, times, pow, choose, fact, exp2, const0, const1 };

inline constexpr std::size_t kOpCount = 8;

inline constexpr std::array<Op, kOpCount> kAllOps = {Op::plus,   Op::times, Op::pow,
                                                     Op::choose, Op::fact,  Op::exp2,
                                                     Op::const0, Op::const1};

constexpr unsigned arity(Op op) noexcept {
  switch (op) {
    case Op::plus:
    case Op::times:
    case Op::pow:
    case Op::choose:
      return 2;
    case Op::fact:
    case Op::exp2:
      return 1;
    case Op::const0:
    case Op::const1:
      return 0;
  }
  return 0;
}

constexpr std::size_t index_of(Op op) noexcept { return static_cast<std::size_t>(op); }

// Canonical lowercase name used in files and on the command line.
std::string_view op_name(Op op) noexcept;

// Accepts canonical names and the aliases zero/one/0/1/+/*/^/C/!.
std::optional<Op> op_from_name(std::string_view name) noexcept;

class Signature {
 public:
  constexpr Signature() = default;
  constexpr Signature(std::initializer_list<Op> ops) {
    for (Op op : ops) insert(op);
  }

  static constexpr Signature full() {
    return {Op::plus, Op::times, Op::pow,    Op::choose,
            Op::fact, Op::exp2,  Op::const0, Op::const1};
  }
  // {+, *, C, !, exp2, 0, 1}: the combinatorial signature without ^.
  static constexpr Signature combinatorial() {
    return {Op::plus, Op::times, Op::choose, Op::fact, Op::exp2, Op::const0, Op::const1};
  }

  constexpr bool contains(Op op) const noexcept { return (bits_ >> index_of(op)) & 1U; }
  constexpr void insert(Op op) noexcept { bits_ |= static_cast<std::uint8_t>(1U << index_of(op)); }
  constexpr void erase(Op op) noexcept { bits_ &= static_cast<std::uint8_t>(~(1U << index_of(op))); }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr bool includes(Signature other) const noexcept {
    return (other.bits_ & ~bits_) == 0;
  }
  constexpr Signature united(Signature other) const noexcept {
    Signature s;
    s.bits_ = bits_ | other.bits_;
    return s;
  }
  constexpr Signature without(Signature other) const noexcept {
    Signature s;
    s.bits_ = bits_ & static_cast<std::uint8_t>(~other.bits_);
    return s;
  }

  std::vector<Op> ops() const;
  std::vector<Op> ops_of_arity(unsigned n) const;

  // Space separated canonical names in enum order.
  std::string to_string() const;
  // Parses a list separated by spaces, commas or dashes, or one of the presets
  // "full", "comb", "semiring", "plus-times".
  static Signature parse(std::string_view text);

  constexpr std::uint8_t bits() const noexcept { return bits_; }
  friend constexpr bool operator==(Signature, Signature) = default;

 private:
  std::uint8_t bits_ = 0;
};

}  // namespace combalg
