#include "gforms/normalize.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gforms/group_word.hpp"
#include "gforms/rational.hpp"

namespace gforms {

namespace {

using Term = std::pair<Rational, FormExpr>;
using Terms = std::vector<Term>;

/// Split a monomial into its outer conjugation twist and the untwisted
/// body. The empty word stands for "no twist".
std::pair<GroupWord, FormExpr> split_twist(const FormExpr& e) {
  if (e.kind() == Kind::ad) return {e.word(), e.body()};
  return {GroupWord::identity(e.arity()), e};
}

/// Wrap a body in a conjugation twist, composing and reducing words.
FormExpr twist(const GroupWord& w, const FormExpr& body) {
  GroupWord r = w.reduced();
  if (r.letters().empty()) return body;
  if (body.kind() == Kind::ad)
    return twist(body.word() * r, body.body());
  return FormExpr::ad(r, body);
}

bool is_exact_zero_const(const FormExpr& e) {
  return e.kind() == Kind::lie_const && (e.matrix().array() == 0.0).all();
}

/// The pairing is conjugation-invariant, so a twist on one argument can
/// be transferred to the other: (Ad_w a, Ad_v b) = (Ad_{w v^{-1}} a, b).
FormExpr canon_pair(const FormExpr& a, const FormExpr& b, Rational& coeff) {
  auto [wa, a0] = split_twist(a);
  auto [wb, b0] = split_twist(b);
  std::string ka = a0.key(), kb = b0.key();
  if (ka == kb && (a0.degree() % 2) != 0 && wa.reduced().letters() ==
                                                wb.reduced().letters())
    return FormExpr::zero(a.arity(), a.degree() + b.degree(), Valued::scalar);
  if (ka <= kb)
    return FormExpr::pair(twist(wa * wb.inverse(), a0), b0);
  if ((a0.degree() * b0.degree()) % 2 != 0) coeff = -coeff;
  return FormExpr::pair(twist(wb * wa.inverse(), b0), a0);
}

/// [Ad_w a, Ad_v b] = Ad_v [Ad_{w v^{-1}} a, b]; arguments are ordered
/// with the graded sign [a, b] = -(-1)^{pq} [b, a].
FormExpr canon_bracket(const FormExpr& a, const FormExpr& b,
                       Rational& coeff) {
  auto [wa, a0] = split_twist(a);
  auto [wb, b0] = split_twist(b);
  std::string ka = a0.key(), kb = b0.key();
  if (ka == kb && (a0.degree() % 2) == 0 &&
      wa.reduced().letters() == wb.reduced().letters())
    return FormExpr::zero(a.arity(), a.degree() + b.degree(), Valued::lie);
  if (ka <= kb)
    return twist(wb, FormExpr::bracket(twist(wa * wb.inverse(), a0), b0));
  if ((a0.degree() * b0.degree()) % 2 == 0) coeff = -coeff;
  return twist(wa, FormExpr::bracket(twist(wb * wa.inverse(), b0), a0));
}

/// Flatten a wedge chain, sort the scalar factors by key with the
/// graded transposition signs, and rebuild right-associated.
void wedge_leaves(const FormExpr& e, std::vector<FormExpr>& out) {
  if (e.kind() == Kind::wedge) {
    wedge_leaves(e.lhs(), out);
    wedge_leaves(e.rhs(), out);
    return;
  }
  out.push_back(e);
}

FormExpr canon_wedge(const FormExpr& a, const FormExpr& b, Rational& coeff) {
  std::vector<FormExpr> leaves;
  wedge_leaves(a, leaves);
  wedge_leaves(b, leaves);
  std::vector<std::string> keys;
  keys.reserve(leaves.size());
  for (const FormExpr& l : leaves) keys.push_back(l.key());
  // Bubble sort, tracking the graded parity of each adjacent swap.
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::size_t i = 0; i + 1 < leaves.size(); ++i) {
      if (keys[i] > keys[i + 1]) {
        if ((leaves[i].degree() * leaves[i + 1].degree()) % 2 != 0)
          coeff = -coeff;
        std::swap(leaves[i], leaves[i + 1]);
        std::swap(keys[i], keys[i + 1]);
        moved = true;
      }
    }
  }
  int total_degree = a.degree() + b.degree();
  for (std::size_t i = 0; i + 1 < leaves.size(); ++i)
    if (keys[i] == keys[i + 1] && (leaves[i].degree() % 2) != 0)
      return FormExpr::zero(a.arity(), total_degree, Valued::scalar);
  FormExpr acc = leaves.back();
  for (std::size_t i = leaves.size() - 1; i-- > 0;)
    acc = FormExpr::wedge(leaves[i], acc);
  return acc;
}

Terms norm_terms(const FormExpr& e);

/// Cross product of child term lists under a binary node.
Terms expand_binary(Kind kind, const FormExpr& e) {
  Terms ls = norm_terms(e.lhs());
  Terms rs = norm_terms(e.rhs());
  Terms out;
  for (const auto& [cl, ml] : ls)
    for (const auto& [cr, mr] : rs) {
      Rational c = cl * cr;
      FormExpr m = kind == Kind::pair    ? canon_pair(ml, mr, c)
                   : kind == Kind::bracket ? canon_bracket(ml, mr, c)
                                           : canon_wedge(ml, mr, c);
      if (!m.is_zero()) out.emplace_back(std::move(c), std::move(m));
    }
  return out;
}

Terms norm_terms(const FormExpr& e) {
  switch (e.kind()) {
    case Kind::zero:
      return {};
    case Kind::lie_const:
      if (is_exact_zero_const(e)) return {};
      return {{rat(1), e}};
    case Kind::lmc:
    case Kind::rmc:
    case Kind::slot:
      return {{rat(1), e}};
    case Kind::ad: {
      Terms body = norm_terms(e.body());
      Terms out;
      out.reserve(body.size());
      for (auto& [c, m] : body) {
        FormExpr t = twist(e.word(), m);
        if (!t.is_zero()) out.emplace_back(std::move(c), std::move(t));
      }
      return out;
    }
    case Kind::pair:
    case Kind::bracket:
    case Kind::wedge:
      return expand_binary(e.kind(), e);
    case Kind::sum: {
      Terms out;
      for (const auto& [c, t] : e.terms())
        for (auto& [ct, mt] : norm_terms(t))
          out.emplace_back(c * ct, std::move(mt));
      return out;
    }
  }
  return {};
}

}  // namespace

FormExpr normalize(const FormExpr& e) {
  Terms raw = norm_terms(e);
  std::map<std::string, Term> collected;
  for (auto& [c, m] : raw) {
    std::string k = m.key();
    auto it = collected.find(k);
    if (it == collected.end())
      collected.emplace(std::move(k), Term{c, std::move(m)});
    else
      it->second.first += c;
  }
  std::vector<Term> terms;
  terms.reserve(collected.size());
  for (auto& [k, t] : collected)
    if (t.first != 0) terms.push_back(std::move(t));
  return FormExpr::sum(std::move(terms), e.arity(), e.degree(), e.valued());
}

}  // namespace gforms
