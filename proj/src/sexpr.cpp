#include "gforms/sexpr.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "gforms/group_word.hpp"
#include "gforms/rational.hpp"

namespace gforms {

std::string to_sexpr(const FormExpr& e) { return e.key(); }

namespace {

struct SNode {
  // Either an atom or a list; exactly one is populated.
  std::string atom;
  std::vector<SNode> list;
  bool is_atom = false;
};

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == '(' || c == ')') {
      if (!cur.empty()) {
        out.push_back(cur);
        cur.clear();
      }
      out.push_back(std::string(1, c));
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) {
        out.push_back(cur);
        cur.clear();
      }
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

SNode parse_node(const std::vector<std::string>& toks, std::size_t& pos) {
  if (pos >= toks.size())
    throw std::invalid_argument("s-expression: unexpected end of input");
  SNode n;
  if (toks[pos] == "(") {
    ++pos;
    while (pos < toks.size() && toks[pos] != ")")
      n.list.push_back(parse_node(toks, pos));
    if (pos >= toks.size())
      throw std::invalid_argument("s-expression: missing ')'");
    ++pos;  // consume ')'
    return n;
  }
  if (toks[pos] == ")")
    throw std::invalid_argument("s-expression: unexpected ')'");
  n.is_atom = true;
  n.atom = toks[pos++];
  return n;
}

const std::string& head(const SNode& n) {
  if (n.is_atom || n.list.empty() || !n.list[0].is_atom)
    throw std::invalid_argument("s-expression: expected a tagged list");
  return n.list[0].atom;
}

int parse_int(const SNode& n, const char* what) {
  if (!n.is_atom)
    throw std::invalid_argument(std::string("s-expression: expected ") + what);
  try {
    std::size_t used = 0;
    int v = std::stoi(n.atom, &used);
    if (used != n.atom.size()) throw std::invalid_argument(n.atom);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("s-expression: bad ") + what +
                                " '" + n.atom + "'");
  }
}

double parse_double(const SNode& n) {
  if (!n.is_atom)
    throw std::invalid_argument("s-expression: expected a number");
  char* end = nullptr;
  double v = std::strtod(n.atom.c_str(), &end);
  if (end == nullptr || *end != '\0')
    throw std::invalid_argument("s-expression: bad number '" + n.atom + "'");
  return v;
}

Rational parse_rational(const SNode& n) {
  if (!n.is_atom)
    throw std::invalid_argument("s-expression: expected a rational");
  try {
    Rational r(n.atom);
    if (r.get_den() == 0)
      throw std::invalid_argument("zero denominator");
    r.canonicalize();
    return r;
  } catch (const std::exception&) {
    throw std::invalid_argument("s-expression: bad rational '" + n.atom + "'");
  }
}

GroupWord parse_word(const SNode& n, int arity) {
  if (n.is_atom || n.list.empty() || head(n) != "w")
    throw std::invalid_argument("s-expression: expected a (w ...) word");
  if ((n.list.size() - 1) % 2 != 0)
    throw std::invalid_argument("s-expression: word needs factor/exp pairs");
  std::vector<Letter> letters;
  for (std::size_t i = 1; i + 1 < n.list.size(); i += 2) {
    int f = parse_int(n.list[i], "word factor");
    int e = parse_int(n.list[i + 1], "word exponent");
    if (e != 1 && e != -1)
      throw std::invalid_argument("s-expression: word exponent must be +-1");
    letters.push_back({f, e});
  }
  return GroupWord(arity, letters);
}

/// Largest factor index mentioned anywhere (for arity inference).
int max_factor(const SNode& n) {
  if (n.is_atom) return -1;
  const std::string& h = head(n);
  int best = -1;
  if (h == "lmc" || h == "rmc") {
    if (n.list.size() == 2) best = parse_int(n.list[1], "factor");
  } else if (h == "w") {
    for (std::size_t i = 1; i + 1 < n.list.size(); i += 2)
      best = std::max(best, parse_int(n.list[i], "word factor"));
  } else {
    for (std::size_t i = 1; i < n.list.size(); ++i)
      if (!n.list[i].is_atom) best = std::max(best, max_factor(n.list[i]));
  }
  return best;
}

FormExpr build(const SNode& n, int arity) {
  const std::string& h = head(n);
  auto want = [&](std::size_t k, const char* tag) {
    if (n.list.size() != k)
      throw std::invalid_argument(std::string("s-expression: (") + tag +
                                  " ...) takes " + std::to_string(k - 1) +
                                  " arguments");
  };
  if (h == "zero") {
    want(3, "zero");
    int deg = parse_int(n.list[1], "degree");
    const SNode& v = n.list[2];
    if (!v.is_atom || (v.atom != "lie" && v.atom != "scalar"))
      throw std::invalid_argument("s-expression: zero wants lie|scalar");
    return FormExpr::zero(arity, deg,
                          v.atom == "lie" ? Valued::lie : Valued::scalar);
  }
  if (h == "lmc") {
    want(2, "lmc");
    return FormExpr::lmc(arity, parse_int(n.list[1], "factor"));
  }
  if (h == "rmc") {
    want(2, "rmc");
    return FormExpr::rmc(arity, parse_int(n.list[1], "factor"));
  }
  if (h == "ad") {
    want(3, "ad");
    return FormExpr::ad(parse_word(n.list[1], arity), build(n.list[2], arity));
  }
  if (h == "const") {
    if (n.list.size() < 2)
      throw std::invalid_argument("s-expression: (const n entries...)");
    int size = parse_int(n.list[1], "matrix size");
    if (size <= 0 || n.list.size() != 2 + static_cast<std::size_t>(size * size))
      throw std::invalid_argument(
          "s-expression: const entry count does not match its size");
    Eigen::MatrixXd m(size, size);
    std::size_t k = 2;
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) m(i, j) = parse_double(n.list[k++]);
    return FormExpr::lie_const(arity, m);
  }
  if (h == "slot") {
    want(2, "slot");
    if (!n.list[1].is_atom)
      throw std::invalid_argument("s-expression: slot wants a name");
    return FormExpr::slot(arity, n.list[1].atom);
  }
  if (h == "pair" || h == "bracket" || h == "wedge") {
    want(3, h.c_str());
    FormExpr a = build(n.list[1], arity);
    FormExpr b = build(n.list[2], arity);
    if (h == "pair") return FormExpr::pair(a, b);
    if (h == "bracket") return FormExpr::bracket(a, b);
    return FormExpr::wedge(a, b);
  }
  if (h == "sum") {
    if (n.list.size() < 2)
      throw std::invalid_argument("s-expression: empty sum");
    std::vector<std::pair<Rational, FormExpr>> terms;
    for (std::size_t i = 1; i < n.list.size(); ++i) {
      const SNode& t = n.list[i];
      if (t.is_atom || t.list.size() != 2)
        throw std::invalid_argument(
            "s-expression: sum terms are (coeff expr) pairs");
      terms.emplace_back(parse_rational(t.list[0]), build(t.list[1], arity));
    }
    int deg = terms.front().second.degree();
    Valued val = terms.front().second.valued();
    return FormExpr::sum(std::move(terms), arity, deg, val);
  }
  throw std::invalid_argument("s-expression: unknown tag '" + h + "'");
}

}  // namespace

FormExpr parse_sexpr(const std::string& text, int arity) {
  std::vector<std::string> toks = tokenize(text);
  std::size_t pos = 0;
  SNode root = parse_node(toks, pos);
  if (pos != toks.size())
    throw std::invalid_argument("s-expression: trailing input");
  return build(root, arity);
}

FormExpr parse_sexpr(const std::string& text) {
  std::vector<std::string> toks = tokenize(text);
  std::size_t pos = 0;
  SNode root = parse_node(toks, pos);
  if (pos != toks.size())
    throw std::invalid_argument("s-expression: trailing input");
  return build(root, std::max(1, max_factor(root) + 1));
}

}  // namespace gforms
