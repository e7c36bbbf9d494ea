#include "gforms/calculus.hpp"

#include <stdexcept>

namespace gforms {

namespace {

GroupWord single_letter(int arity, int factor, int exp) {
  return GroupWord(arity, {Letter{factor, exp}});
}

/// Rebuild an arity-0 expression (necessarily coordinate-free) at a new
/// arity; pullback cannot infer the target arity from an empty word map.
FormExpr reroot_const(const FormExpr& e, int new_arity) {
  switch (e.kind()) {
    case Kind::zero:
      return FormExpr::zero(new_arity, e.degree(), e.valued());
    case Kind::lie_const:
      return FormExpr::lie_const(new_arity, e.matrix());
    case Kind::slot:
      return FormExpr::slot(new_arity, e.slot_name());
    case Kind::ad:
      return FormExpr::ad(GroupWord::identity(new_arity),
                          reroot_const(e.body(), new_arity));
    case Kind::pair:
      return FormExpr::pair(reroot_const(e.lhs(), new_arity),
                            reroot_const(e.rhs(), new_arity));
    case Kind::bracket:
      return FormExpr::bracket(reroot_const(e.lhs(), new_arity),
                               reroot_const(e.rhs(), new_arity));
    case Kind::wedge:
      return FormExpr::wedge(reroot_const(e.lhs(), new_arity),
                             reroot_const(e.rhs(), new_arity));
    case Kind::sum: {
      std::vector<std::pair<Rational, FormExpr>> terms;
      for (const auto& [c, t] : e.terms())
        terms.emplace_back(c, reroot_const(t, new_arity));
      return FormExpr::sum(std::move(terms), new_arity, e.degree(),
                           e.valued());
    }
    default:
      throw std::logic_error("arity-0 form with a coordinate generator");
  }
}

}  // namespace

FormExpr pull_lmc(const GroupWord& w) {
  const int m = w.arity();
  // Recurse on the last letter: theta along u * g_j = Ad_{g_j}(theta
  // along u) + theta_j, and theta along u * g_j^{-1} = Ad_{g_j^{-1}}
  // (theta along u) - theta-bar_j.
  if (w.is_identity()) return FormExpr::zero(m, 1, Valued::lie);
  std::vector<Letter> head(w.letters().begin(), w.letters().end() - 1);
  Letter last = w.letters().back();
  FormExpr rest = pull_lmc(GroupWord(m, std::move(head)));
  if (last.exp == 1) {
    return FormExpr::ad(single_letter(m, last.factor, 1), rest) +
           FormExpr::lmc(m, last.factor);
  }
  return FormExpr::ad(single_letter(m, last.factor, -1), rest) -
         FormExpr::rmc(m, last.factor);
}

FormExpr pull_rmc(const GroupWord& w) {
  const int m = w.arity();
  // Recurse on the first letter: theta-bar along g_j * u = theta-bar_j +
  // Ad_{g_j^{-1}}(theta-bar along u), and along g_j^{-1} * u =
  // -theta_j + Ad_{g_j}(theta-bar along u).
  if (w.is_identity()) return FormExpr::zero(m, 1, Valued::lie);
  Letter first = w.letters().front();
  std::vector<Letter> tail(w.letters().begin() + 1, w.letters().end());
  FormExpr rest = pull_rmc(GroupWord(m, std::move(tail)));
  if (first.exp == 1) {
    return FormExpr::rmc(m, first.factor) +
           FormExpr::ad(single_letter(m, first.factor, -1), rest);
  }
  return FormExpr::ad(single_letter(m, first.factor, 1), rest) -
         FormExpr::lmc(m, first.factor);
}

FormExpr pullback(const FormExpr& e, const WordMap& coords) {
  if (static_cast<int>(coords.size()) != e.arity())
    throw std::invalid_argument("pullback: need one word per coordinate");
  const int m = coords.empty() ? 0 : coords[0].arity();
  for (const GroupWord& w : coords)
    if (w.arity() != m)
      throw std::invalid_argument("pullback: coordinate arity mismatch");
  switch (e.kind()) {
    case Kind::zero:
      return FormExpr::zero(m, e.degree(), e.valued());
    case Kind::lmc:
      return pull_lmc(coords[e.factor()]);
    case Kind::rmc:
      return pull_rmc(coords[e.factor()]);
    case Kind::ad:
      return FormExpr::ad(e.word().substitute(coords),
                          pullback(e.body(), coords));
    case Kind::lie_const:
      return FormExpr::lie_const(m, e.matrix());
    case Kind::slot:
      return FormExpr::slot(m, e.slot_name());
    case Kind::pair:
      return FormExpr::pair(pullback(e.lhs(), coords),
                            pullback(e.rhs(), coords));
    case Kind::bracket:
      return FormExpr::bracket(pullback(e.lhs(), coords),
                               pullback(e.rhs(), coords));
    case Kind::wedge:
      return FormExpr::wedge(pullback(e.lhs(), coords),
                             pullback(e.rhs(), coords));
    case Kind::sum: {
      std::vector<std::pair<Rational, FormExpr>> terms;
      for (const auto& [c, t] : e.terms())
        terms.emplace_back(c, pullback(t, coords));
      return FormExpr::sum(std::move(terms), m, e.degree(), e.valued());
    }
  }
  throw std::logic_error("pullback: unhandled kind");
}

FormExpr extend_arity(const FormExpr& e, int new_arity, int offset) {
  if (offset < 0 || offset + e.arity() > new_arity)
    throw std::invalid_argument("extend_arity: range out of bounds");
  if (e.arity() == 0) return reroot_const(e, new_arity);
  WordMap coords;
  coords.reserve(e.arity());
  for (int i = 0; i < e.arity(); ++i)
    coords.push_back(GroupWord::generator(new_arity, offset + i));
  return pullback(e, coords);
}

FormExpr de_rham(const FormExpr& e) {
  const int a = e.arity();
  switch (e.kind()) {
    case Kind::zero:
      return FormExpr::zero(a, e.degree() + 1, e.valued());
    case Kind::lmc:
      return rat(-1, 2) *
             FormExpr::bracket(FormExpr::lmc(a, e.factor()),
                               FormExpr::lmc(a, e.factor()));
    case Kind::rmc:
      return rat(1, 2) *
             FormExpr::bracket(FormExpr::rmc(a, e.factor()),
                               FormExpr::rmc(a, e.factor()));
    case Kind::lie_const:
    case Kind::slot:
      return FormExpr::zero(a, 1, Valued::lie);
    case Kind::ad: {
      // d Ad_w(b) = Ad_w(d b) - [w*theta, Ad_w(b)].
      FormExpr adb = FormExpr::ad(e.word(), e.body());
      return FormExpr::ad(e.word(), de_rham(e.body())) -
             FormExpr::bracket(pull_lmc(e.word()), adb);
    }
    case Kind::pair:
    case Kind::bracket:
    case Kind::wedge: {
      // Graded Leibniz: d(T(a, b)) = T(da, b) + (-1)^{deg a} T(a, db).
      auto rebuild = [&](FormExpr x, FormExpr y) {
        switch (e.kind()) {
          case Kind::pair:
            return FormExpr::pair(std::move(x), std::move(y));
          case Kind::bracket:
            return FormExpr::bracket(std::move(x), std::move(y));
          default:
            return FormExpr::wedge(std::move(x), std::move(y));
        }
      };
      Rational sign = (e.lhs().degree() % 2 == 0) ? rat(1) : rat(-1);
      return FormExpr::sum(
          {{rat(1), rebuild(de_rham(e.lhs()), e.rhs())},
           {sign, rebuild(e.lhs(), de_rham(e.rhs()))}},
          a, e.degree() + 1, e.valued());
    }
    case Kind::sum: {
      std::vector<std::pair<Rational, FormExpr>> terms;
      for (const auto& [c, t] : e.terms()) terms.emplace_back(c, de_rham(t));
      return FormExpr::sum(std::move(terms), a, e.degree() + 1, e.valued());
    }
  }
  throw std::logic_error("de_rham: unhandled kind");
}

namespace {

void check_generator(const FormExpr& e, const FormExpr& gen) {
  if (gen.valued() != Valued::lie || gen.degree() != 0 ||
      (gen.kind() != Kind::lie_const && gen.kind() != Kind::slot))
    throw std::invalid_argument(
        "contract: generator must be a constant algebra element or slot");
  if (gen.arity() != e.arity())
    throw std::invalid_argument("contract: generator arity mismatch");
}

}  // namespace

FormExpr contract(const FormExpr& e, int factor, Side side,
                  const FormExpr& gen) {
  check_generator(e, gen);
  if (factor < 0 || factor >= e.arity())
    throw std::invalid_argument("contract: factor out of range");
  if (e.degree() == 0)
    throw std::invalid_argument("contract: cannot contract a 0-form");
  const int a = e.arity();
  switch (e.kind()) {
    case Kind::zero:
      return FormExpr::zero(a, e.degree() - 1, e.valued());
    case Kind::lmc:
      if (e.factor() != factor)
        return FormExpr::zero(a, 0, Valued::lie);
      // iota_{v^L} theta = Ad_a(v); iota_{v^R} theta = v.
      return side == Side::left
                 ? FormExpr::ad(GroupWord(a, {Letter{factor, 1}}), gen)
                 : gen;
    case Kind::rmc:
      if (e.factor() != factor)
        return FormExpr::zero(a, 0, Valued::lie);
      // iota_{v^L} theta-bar = v; iota_{v^R} theta-bar = Ad_{a^{-1}}(v).
      return side == Side::left
                 ? gen
                 : FormExpr::ad(GroupWord(a, {Letter{factor, -1}}), gen);
    case Kind::ad:
      return FormExpr::ad(e.word(), contract(e.body(), factor, side, gen));
    case Kind::pair:
    case Kind::bracket:
    case Kind::wedge: {
      // Graded antiderivation; terms whose argument is a 0-form drop.
      auto rebuild = [&](FormExpr x, FormExpr y) {
        switch (e.kind()) {
          case Kind::pair:
            return FormExpr::pair(std::move(x), std::move(y));
          case Kind::bracket:
            return FormExpr::bracket(std::move(x), std::move(y));
          default:
            return FormExpr::wedge(std::move(x), std::move(y));
        }
      };
      std::vector<std::pair<Rational, FormExpr>> terms;
      if (e.lhs().degree() > 0)
        terms.emplace_back(rat(1),
                           rebuild(contract(e.lhs(), factor, side, gen),
                                   e.rhs()));
      if (e.rhs().degree() > 0) {
        Rational sign = (e.lhs().degree() % 2 == 0) ? rat(1) : rat(-1);
        terms.emplace_back(sign,
                           rebuild(e.lhs(),
                                   contract(e.rhs(), factor, side, gen)));
      }
      return FormExpr::sum(std::move(terms), a, e.degree() - 1, e.valued());
    }
    case Kind::sum: {
      std::vector<std::pair<Rational, FormExpr>> terms;
      for (const auto& [c, t] : e.terms())
        terms.emplace_back(c, contract(t, factor, side, gen));
      return FormExpr::sum(std::move(terms), a, e.degree() - 1, e.valued());
    }
    default:
      throw std::logic_error("contract: unhandled kind");
  }
}

FormExpr action_contract(const FormExpr& e, const FormExpr& gen) {
  std::vector<std::pair<Rational, FormExpr>> terms;
  for (int f = 0; f < e.arity(); ++f) {
    terms.emplace_back(rat(1), contract(e, f, Side::right, gen));
    terms.emplace_back(rat(-1), contract(e, f, Side::left, gen));
  }
  return FormExpr::sum(std::move(terms), e.arity(), e.degree() - 1,
                       e.valued());
}

}  // namespace gforms
