#include "combalg/term.hpp"

#include <algorithm>
#include <set>

#include "combalg/error.hpp"

namespace combalg {

namespace {

const Term kNullTerm{};

std::size_t mix(std::size_t seed, std::size_t value) noexcept {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t leaf_hash(Kind kind, unsigned var) noexcept {
  return mix(static_cast<std::size_t>(kind) * 0x100000001b3ULL, var);
}

}  // namespace

std::optional<Op> op_of(Kind k) noexcept {
  switch (k) {
    case Kind::var: return std::nullopt;
    case Kind::zero: return Op::const0;
    case Kind::one: return Op::const1;
    case Kind::plus: return Op::plus;
    case Kind::times: return Op::times;
    case Kind::pow: return Op::pow;
    case Kind::choose: return Op::choose;
    case Kind::fact: return Op::fact;
    case Kind::exp2: return Op::exp2;
  }
  return std::nullopt;
}

Kind kind_of(Op op) noexcept {
  switch (op) {
    case Op::plus: return Kind::plus;
    case Op::times: return Kind::times;
    case Op::pow: return Kind::pow;
    case Op::choose: return Kind::choose;
    case Op::fact: return Kind::fact;
    case Op::exp2: return Kind::exp2;
    case Op::const0: return Kind::zero;
    case Op::const1: return Kind::one;
  }
  return Kind::zero;
}

Term Term::var(unsigned index) {
  if (index == 0) throw PreconditionError("variable indices start at 1");
  auto node = std::make_shared<TermNode>();
  node->kind = Kind::var;
  node->var = index;
  node->max_var = index;
  node->hash = leaf_hash(Kind::var, index);
  return Term(std::move(node));
}

Term Term::zero() { return Term(); }

Term Term::one() {
  static const Term one = [] {
    auto node = std::make_shared<TermNode>();
    node->kind = Kind::one;
    node->hash = leaf_hash(Kind::one, 0);
    return Term(std::move(node));
  }();
  return one;
}

Term Term::numeral(unsigned long value) {
  if (value == 0) return zero();
  Term t = one();
  for (unsigned long i = 1; i < value; ++i) t = plus(t, one());
  return t;
}

Term Term::binary(Kind kind, Term lhs, Term rhs) {
  if (!is_binary(kind)) throw PreconditionError("binary() needs a binary kind");
  auto node = std::make_shared<TermNode>();
  node->kind = kind;
  node->nodes = 1 + lhs.node_count() + rhs.node_count();
  node->depth = 1 + std::max(lhs.depth(), rhs.depth());
  node->max_var = std::max(lhs.max_var(), rhs.max_var());
  node->hash = mix(mix(leaf_hash(kind, 0), lhs.hash()), rhs.hash());
  node->children[0] = std::move(lhs);
  node->children[1] = std::move(rhs);
  return Term(std::move(node));
}

Term Term::unary(Kind kind, Term arg) {
  if (!is_unary(kind)) throw PreconditionError("unary() needs a unary kind");
  auto node = std::make_shared<TermNode>();
  node->kind = kind;
  node->nodes = 1 + arg.node_count();
  node->depth = 1 + arg.depth();
  node->max_var = arg.max_var();
  node->hash = mix(leaf_hash(kind, 0), arg.hash());
  node->children[0] = std::move(arg);
  return Term(std::move(node));
}

Kind Term::kind() const noexcept { return node_ ? node_->kind : Kind::zero; }
unsigned Term::var_index() const noexcept { return node_ ? node_->var : 0; }
const Term& Term::lhs() const noexcept { return node_ ? node_->children[0] : kNullTerm; }
const Term& Term::rhs() const noexcept { return node_ ? node_->children[1] : kNullTerm; }
std::size_t Term::node_count() const noexcept { return node_ ? node_->nodes : 1; }
std::size_t Term::depth() const noexcept { return node_ ? node_->depth : 1; }
unsigned Term::max_var() const noexcept { return node_ ? node_->max_var : 0; }
std::size_t Term::hash() const noexcept {
  return node_ ? node_->hash : leaf_hash(Kind::zero, 0);
}

bool operator==(const Term& a, const Term& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.node_count() != b.node_count()) {
    return false;
  }
  switch (a.kind()) {
    case Kind::var: return a.var_index() == b.var_index();
    case Kind::zero:
    case Kind::one: return true;
    case Kind::fact:
    case Kind::exp2: return a.arg() == b.arg();
    default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

std::strong_ordering operator<=>(const Term& a, const Term& b) noexcept {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.node_count() <=> b.node_count(); c != 0) return c;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case Kind::var: return a.var_index() <=> b.var_index();
    case Kind::zero:
    case Kind::one: return std::strong_ordering::equal;
    case Kind::fact:
    case Kind::exp2: return a.arg() <=> b.arg();
    default:
      if (auto c = a.lhs() <=> b.lhs(); c != 0) return c;
      return a.rhs() <=> b.rhs();
  }
}

void for_each_subterm(const Term& t, const std::function<void(const Term&)>& visit) {
  if (is_binary(t.kind())) {
    for_each_subterm(t.lhs(), visit);
    for_each_subterm(t.rhs(), visit);
  } else if (is_unary(t.kind())) {
    for_each_subterm(t.arg(), visit);
  }
  visit(t);
}

std::vector<unsigned> variables(const Term& t) {
  std::set<unsigned> seen;
  for_each_subterm(t, [&](const Term& s) {
    if (s.is(Kind::var)) seen.insert(s.var_index());
  });
  return {seen.begin(), seen.end()};
}

std::vector<unsigned> variables(const Equation& e) {
  auto l = variables(e.lhs);
  auto r = variables(e.rhs);
  std::vector<unsigned> out;
  std::set_union(l.begin(), l.end(), r.begin(), r.end(), std::back_inserter(out));
  return out;
}

Signature signature_of(const Term& t) {
  Signature sig;
  for_each_subterm(t, [&](const Term& s) {
    if (auto op = op_of(s.kind())) sig.insert(*op);
  });
  return sig;
}

Signature signature_of(const Equation& e) {
  return signature_of(e.lhs).united(signature_of(e.rhs));
}

Term rename_variables(const Term& t, const std::function<unsigned(unsigned)>& mapping) {
  switch (t.kind()) {
    case Kind::var: return Term::var(mapping(t.var_index()));
    case Kind::zero:
    case Kind::one: return t;
    case Kind::fact:
    case Kind::exp2: return Term::unary(t.kind(), rename_variables(t.arg(), mapping));
    default:
      return Term::binary(t.kind(), rename_variables(t.lhs(), mapping),
                          rename_variables(t.rhs(), mapping));
  }
}

// ---------------------------------------------------------------- printing

namespace {

// Binding strength of the printed form; larger binds tighter.
enum Level { kSum = 1, kProd = 2, kPow = 3, kPost = 4, kAtom = 5 };

int level_of(const Term& t) {
  switch (t.kind()) {
    case Kind::plus: return kSum;
    case Kind::times: return kProd;
    case Kind::pow: return kPow;
    case Kind::fact: return kPost;
    default: return kAtom;
  }
}

void emit(const Term& t, int needed, std::string& out);

void emit_child(const Term& t, int needed, std::string& out) {
  if (level_of(t) < needed) {
    out += '(';
    emit(t, kSum, out);
    out += ')';
  } else {
    emit(t, needed, out);
  }
}

void emit(const Term& t, int /*needed*/, std::string& out) {
  switch (t.kind()) {
    case Kind::var:
      out += 'x';
      out += std::to_string(t.var_index());
      return;
    case Kind::zero: out += '0'; return;
    case Kind::one: out += '1'; return;
    case Kind::plus:
      emit_child(t.lhs(), kSum, out);
      out += " + ";
      emit_child(t.rhs(), kProd, out);
      return;
    case Kind::times:
      emit_child(t.lhs(), kProd, out);
      out += '*';
      emit_child(t.rhs(), kPow, out);
      return;
    case Kind::pow:
      emit_child(t.lhs(), kPost, out);
      out += '^';
      emit_child(t.rhs(), kPow, out);
      return;
    case Kind::fact:
      emit_child(t.arg(), kPost, out);
      out += '!';
      return;
    case Kind::exp2:
      out += "exp2(";
      emit(t.arg(), kSum, out);
      out += ')';
      return;
    case Kind::choose:
      out += '(';
      emit(t.lhs(), kSum, out);
      out += " C ";
      emit(t.rhs(), kSum, out);
      out += ')';
      return;
  }
}

}  // namespace

std::string print(const Term& t) {
  std::string out;
  emit(t, kSum, out);
  return out;
}

std::string print(const Equation& e) { return print(e.lhs) + " = " + print(e.rhs); }

std::string print_compact(const Term& t) {
  std::string s = print(t);
  std::erase(s, ' ');
  return s;
}

// ---------------------------------------------------------------- parsing

namespace {

enum class Tok {
  end, number, var, exp2_kw, choose_kw, fact_kw, choose_op,
  plus, star, caret, bang, lparen, rparen, comma, equals
};

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
  unsigned var = 0;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  auto is_alnum = [&](char c) {
    return is_digit(c) || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  };
  while (i < s.size()) {
    char c = s[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    std::size_t start = i;
    switch (c) {
      case '+': out.push_back({Tok::plus, start, "+"}); ++i; continue;
      case '*': out.push_back({Tok::star, start, "*"}); ++i; continue;
      case '^': out.push_back({Tok::caret, start, "^"}); ++i; continue;
      case '!': out.push_back({Tok::bang, start, "!"}); ++i; continue;
      case '(': out.push_back({Tok::lparen, start, "("}); ++i; continue;
      case ')': out.push_back({Tok::rparen, start, ")"}); ++i; continue;
      case ',': out.push_back({Tok::comma, start, ","}); ++i; continue;
      case '=': out.push_back({Tok::equals, start, "="}); ++i; continue;
      default: break;
    }
    if (is_digit(c)) {
      while (i < s.size() && is_digit(s[i])) ++i;
      out.push_back({Tok::number, start, std::string(s.substr(start, i - start))});
      continue;
    }
    if (is_alnum(c)) {
      while (i < s.size() && is_alnum(s[i])) ++i;
      std::string word(s.substr(start, i - start));
      Token tok{Tok::var, start, word};
      if (word == "exp2") {
        tok.kind = Tok::exp2_kw;
      } else if (word == "choose") {
        tok.kind = Tok::choose_kw;
      } else if (word == "fact") {
        tok.kind = Tok::fact_kw;
      } else if (word == "C") {
        tok.kind = Tok::choose_op;
      } else if (word == "x" || word == "y" || word == "z" || word == "w") {
        tok.var = word == "x" ? 1 : word == "y" ? 2 : word == "z" ? 3 : 4;
      } else if (word.size() > 1 && word[0] == 'x' &&
                 std::all_of(word.begin() + 1, word.end(), is_digit) && word[1] != '0') {
        if (word.size() > 9) throw ParseError("variable index too large", start);
        tok.var = static_cast<unsigned>(std::stoul(word.substr(1)));
      } else {
        throw ParseError("unknown identifier '" + word + "'", start);
      }
      out.push_back(std::move(tok));
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }
  out.push_back({Tok::end, s.size(), ""});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, Signature sig) : toks_(std::move(tokens)), sig_(sig) {}

  Term parse_full() {
    Term t = term();
    expect(Tok::end, "end of input");
    return t;
  }

  Equation parse_equation() {
    Term l = term();
    expect(Tok::equals, "'='");
    Term r = term();
    expect(Tok::end, "end of input");
    return {std::move(l), std::move(r)};
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  void expect(Tok k, const char* what) {
    if (peek().kind != k) {
      throw ParseError(std::string("expected ") + what + ", found '" +
                           (peek().kind == Tok::end ? std::string("end of input") : peek().text) +
                           "'",
                       peek().pos);
    }
    ++pos_;
  }
  void require(Op op, std::size_t pos) const {
    if (!sig_.contains(op)) {
      throw SignatureError("operation '" + std::string(op_name(op)) +
                           "' is outside the signature at position " + std::to_string(pos));
    }
  }

  Term term() { return sum(); }

  Term sum() {
    Term t = prod();
    while (peek().kind == Tok::plus) {
      std::size_t p = next().pos;
      require(Op::plus, p);
      t = Term::plus(t, prod());
    }
    return t;
  }

  Term prod() {
    Term t = power();
    while (peek().kind == Tok::star) {
      std::size_t p = next().pos;
      require(Op::times, p);
      t = Term::times(t, power());
    }
    return t;
  }

  Term power() {
    Term base = post();
    if (peek().kind == Tok::caret) {
      std::size_t p = next().pos;
      require(Op::pow, p);
      return Term::pow(base, power());
    }
    return base;
  }

  Term post() {
    Term t = atom();
    while (peek().kind == Tok::bang) {
      std::size_t p = next().pos;
      require(Op::fact, p);
      t = Term::fact(t);
    }
    return t;
  }

  Term atom() {
    const Token& tok = next();
    switch (tok.kind) {
      case Tok::number: {
        if (tok.text.size() > 6) throw ParseError("numeral too large", tok.pos);
        unsigned long v = std::stoul(tok.text);
        if (v == 0) {
          require(Op::const0, tok.pos);
          return Term::zero();
        }
        require(Op::const1, tok.pos);
        if (v >= 2) require(Op::plus, tok.pos);
        return Term::numeral(v);
      }
      case Tok::var: return Term::var(tok.var);
      case Tok::exp2_kw: {
        require(Op::exp2, tok.pos);
        expect(Tok::lparen, "'('");
        Term a = term();
        expect(Tok::rparen, "')'");
        return Term::exp2(a);
      }
      case Tok::fact_kw: {
        require(Op::fact, tok.pos);
        expect(Tok::lparen, "'('");
        Term a = term();
        expect(Tok::rparen, "')'");
        return Term::fact(a);
      }
      case Tok::choose_kw: {
        require(Op::choose, tok.pos);
        expect(Tok::lparen, "'('");
        Term a = term();
        expect(Tok::comma, "','");
        Term b = term();
        expect(Tok::rparen, "')'");
        return Term::choose(a, b);
      }
      case Tok::lparen: {
        Term a = term();
        if (peek().kind == Tok::choose_op) {
          require(Op::choose, next().pos);
          Term b = term();
          expect(Tok::rparen, "')'");
          return Term::choose(a, b);
        }
        expect(Tok::rparen, "')' or 'C'");
        return a;
      }
      case Tok::choose_op:
        throw ParseError("'C' must appear inside parentheses as (s C t)", tok.pos);
      case Tok::end: throw ParseError("unexpected end of input", tok.pos);
      default: throw ParseError("unexpected '" + tok.text + "'", tok.pos);
    }
  }

  std::vector<Token> toks_;
  Signature sig_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(std::string_view text, Signature sig) {
  return Parser(lex(text), sig).parse_full();
}

Equation parse_equation(std::string_view text, Signature sig) {
  return Parser(lex(text), sig).parse_equation();
}

// ---------------------------------------------------------------- enumeration

TermShape TermShape::from_signature(Signature sig, unsigned variables) {
  TermShape shape;
  shape.variables = variables;
  shape.zero = sig.contains(Op::const0);
  shape.one = sig.contains(Op::const1);
  for (Op op : sig.ops()) {
    if (arity(op) == 1) shape.unary.push_back(kind_of(op));
    if (arity(op) == 2) shape.binary.push_back(kind_of(op));
  }
  return shape;
}

std::vector<Term> enumerate_terms(const TermShape& shape, std::size_t max_nodes,
                                  std::size_t limit) {
  // by_size[n] holds every term with exactly n nodes.
  std::vector<std::vector<Term>> by_size(max_nodes + 1);
  std::size_t total = 0;
  auto push = [&](std::size_t n, Term t) {
    if (++total > limit) {
      throw BudgetExceeded("term enumeration exceeds " + std::to_string(limit) + " terms");
    }
    by_size[n].push_back(std::move(t));
  };
  if (max_nodes >= 1) {
    if (shape.zero) push(1, Term::zero());
    if (shape.one) push(1, Term::one());
    for (unsigned v = 1; v <= shape.variables; ++v) push(1, Term::var(v));
  }
  for (std::size_t n = 2; n <= max_nodes; ++n) {
    for (Kind k : shape.unary) {
      for (const Term& a : by_size[n - 1]) push(n, Term::unary(k, a));
    }
    for (Kind k : shape.binary) {
      for (std::size_t left = 1; left + 1 < n; ++left) {
        std::size_t right = n - 1 - left;
        for (const Term& l : by_size[left]) {
          for (const Term& r : by_size[right]) push(n, Term::binary(k, l, r));
        }
      }
    }
    std::sort(by_size[n].begin(), by_size[n].end());
  }
  std::vector<Term> out;
  out.reserve(total);
  for (auto& level : by_size) {
    std::sort(level.begin(), level.end());
    for (auto& t : level) out.push_back(std::move(t));
  }
  return out;
}

}  // namespace combalg
