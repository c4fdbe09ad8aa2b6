#include <fstream>
#include <sstream>

#include "combalg/error.hpp"
#include "combalg/finite_algebra.hpp"

namespace combalg {

namespace {

std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ParseError("algebra file: " + what, line);
}

Op expect_op(std::size_t line, const std::string& word, unsigned want_arity) {
  auto op = op_from_name(word);
  if (!op || arity(*op) != want_arity) fail(line, "bad operation '" + word + "'");
  return *op;
}

}  // namespace

FiniteAlgebra read_algebra(std::istream& in) {
  std::string name;
  std::vector<std::string> notes;
  std::optional<Signature> sig;
  std::optional<FiniteAlgebra> A;
  std::string raw;
  std::size_t lineno = 0;
  auto next_line = [&](std::string& out) {
    if (!std::getline(in, out)) return false;
    ++lineno;
    if (!out.empty() && out.back() == '\r') out.pop_back();
    return true;
  };
  auto elem = [&](const std::string& w) {
    auto e = A->find(w);
    if (!e) fail(lineno, "unknown element '" + w + "'");
    return *e;
  };
  while (next_line(raw)) {
    if (!raw.empty() && raw[0] == '#') {
      std::size_t skip = raw.size() > 1 && raw[1] == ' ' ? 2 : 1;
      notes.push_back(raw.substr(skip));
      continue;
    }
    auto words = split_words(raw);
    if (words.empty()) continue;
    const std::string& key = words[0];
    if (key == "algebra") {
      if (words.size() != 2) fail(lineno, "expected 'algebra <name>'");
      name = words[1];
    } else if (key == "signature") {
      std::string rest = raw.substr(raw.find("signature") + 9);
      try {
        sig = Signature::parse(rest);
      } catch (const SignatureError& e) {
        fail(lineno, e.what());
      }
    } else if (key == "elements") {
      if (!sig) fail(lineno, "'elements' before 'signature'");
      if (A) fail(lineno, "duplicate 'elements'");
      A.emplace(name, std::vector<std::string>(words.begin() + 1, words.end()), *sig);
    } else if (key == "const") {
      if (!A) fail(lineno, "'const' before 'elements'");
      if (words.size() != 4 || words[2] != "=") fail(lineno, "expected 'const <op> = <e>'");
      A->set_constant(expect_op(lineno, words[1], 0), elem(words[3]));
    } else if (key == "unop") {
      if (!A) fail(lineno, "'unop' before 'elements'");
      if (words.size() < 2 || words[1].back() != ':') fail(lineno, "expected 'unop <op>:'");
      Op op = expect_op(lineno, words[1].substr(0, words[1].size() - 1), 1);
      if (words.size() != 2 + A->size()) fail(lineno, "unop needs one entry per element");
      for (std::size_t i = 2; i < words.size(); ++i) {
        auto arrow = words[i].find("->");
        if (arrow == std::string::npos) fail(lineno, "expected <e>-><e>");
        A->set(op, elem(words[i].substr(0, arrow)), elem(words[i].substr(arrow + 2)));
      }
    } else if (key == "binop") {
      if (!A) fail(lineno, "'binop' before 'elements'");
      if (words.size() != 2 || words[1].back() != ':') fail(lineno, "expected 'binop <op>:'");
      Op op = expect_op(lineno, words[1].substr(0, words[1].size() - 1), 2);
      for (Elem x = 0; x < A->size(); ++x) {
        if (!next_line(raw)) fail(lineno, "missing table rows");
        auto row = split_words(raw);
        if (row.size() != A->size()) fail(lineno, "table row needs one entry per element");
        for (Elem y = 0; y < A->size(); ++y) A->set(op, x, y, elem(row[y]));
      }
    } else {
      fail(lineno, "unknown directive '" + key + "'");
    }
  }
  if (!A) fail(lineno, "no 'elements' line");
  if (name.empty()) fail(lineno, "no 'algebra' line");
  A->set_name(name);
  for (auto& n : notes) A->add_note(std::move(n));
  try {
    A->validate();
  } catch (const PreconditionError& e) {
    fail(lineno, e.what());
  }
  return std::move(*A);
}

FiniteAlgebra read_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open algebra file " + path);
  return read_algebra(in);
}

FiniteAlgebra parse_algebra(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_algebra(in);
}

std::string write_algebra(const FiniteAlgebra& A) {
  std::ostringstream out;
  out << "algebra " << A.name() << '\n';
  for (const auto& note : A.notes()) out << "# " << note << '\n';
  out << "signature " << A.signature().to_string() << '\n';
  out << "elements";
  for (const auto& e : A.elements()) out << ' ' << e;
  out << '\n';
  const std::size_t n = A.size();
  for (Op op : A.signature().ops()) {
    switch (arity(op)) {
      case 0: out << "const " << op_name(op) << " = " << A.element_name(A.constant(op)) << '\n'; break;
      case 1:
        out << "unop " << op_name(op) << ':';
        for (Elem x = 0; x < n; ++x) {
          out << ' ' << A.element_name(x) << "->" << A.element_name(A.apply(op, x));
        }
        out << '\n';
        break;
      default:
        out << "binop " << op_name(op) << ":\n";
        for (Elem x = 0; x < n; ++x) {
          for (Elem y = 0; y < n; ++y) {
            if (y) out << ' ';
            out << A.element_name(A.apply(op, x, y));
          }
          out << '\n';
        }
    }
  }
  return out.str();
}

}  // namespace combalg
