#include "combalg/signature.hpp"

#include <cctype>

#include "combalg/error.hpp"

namespace combalg {

std::string_view op_name(Op op) noexcept {
  switch (op) {
    case Op::plus: return "plus";
    case Op::times: return "times";
    case Op::pow: return "pow";
    case Op::choose: return "choose";
    case Op::fact: return "fact";
    case Op::exp2: return "exp2";
    case Op::const0: return "const0";
    case Op::const1: return "const1";
  }
  return "?";
}

std::optional<Op> op_from_name(std::string_view name) noexcept {
  for (Op op : kAllOps) {
    if (op_name(op) == name) return op;
  }
  if (name == "+") return Op::plus;
  if (name == "*") return Op::times;
  if (name == "^") return Op::pow;
  if (name == "C") return Op::choose;
  if (name == "!") return Op::fact;
  if (name == "zero" || name == "0") return Op::const0;
  if (name == "one" || name == "1") return Op::const1;
  return std::nullopt;
}

std::vector<Op> Signature::ops() const {
  std::vector<Op> out;
  for (Op op : kAllOps) {
    if (contains(op)) out.push_back(op);
  }
  return out;
}

std::vector<Op> Signature::ops_of_arity(unsigned n) const {
  std::vector<Op> out;
  for (Op op : kAllOps) {
    if (contains(op) && arity(op) == n) out.push_back(op);
  }
  return out;
}

std::string Signature::to_string() const {
  std::string out;
  for (Op op : ops()) {
    if (!out.empty()) out += ' ';
    out += op_name(op);
  }
  return out;
}

Signature Signature::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text == "full") return full();
  if (text == "comb") return combinatorial();
  if (text == "semiring") return {Op::plus, Op::times, Op::const0, Op::const1};
  Signature sig;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    auto op = op_from_name(token);
    if (!op) throw SignatureError("unknown operation '" + token + "'");
    sig.insert(*op);
    token.clear();
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '-') {
      flush();
    } else {
      token += c;
    }
  }
  flush();
  if (sig.empty()) throw SignatureError("empty signature");
  return sig;
}

}  // namespace combalg
