#include "gforms/cech.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace gforms {

WordMap cech_face(int base_arity, int level, int i) {
  const int m = base_arity;
  const int n = level;  // target level; source has m + n + 1 coordinates
  const int src = m + n + 1;
  if (i < 0 || i > n + 1) throw std::invalid_argument("cech_face: bad index");
  WordMap out;
  out.reserve(m + n);
  if (i == 0) {
    // (x; k_1, ..., k_{n+1}) -> (x . k_1; k_2, ..., k_{n+1})
    for (int j = 0; j < m; ++j)
      out.push_back(GroupWord(src, {{m, -1}, {j, 1}, {m, 1}}));
    for (int t = 1; t <= n; ++t) out.push_back(GroupWord::generator(src, m + t));
    return out;
  }
  for (int j = 0; j < m; ++j) out.push_back(GroupWord::generator(src, j));
  if (i == n + 1) {
    // drop the last leg
    for (int s = 1; s <= n; ++s)
      out.push_back(GroupWord::generator(src, m + s - 1));
    return out;
  }
  // multiply adjacent legs k_i k_{i+1}
  for (int s = 1; s <= n; ++s) {
    if (s < i)
      out.push_back(GroupWord::generator(src, m + s - 1));
    else if (s == i)
      out.push_back(GroupWord(src, {{m + i - 1, 1}, {m + i, 1}}));
    else
      out.push_back(GroupWord::generator(src, m + s));
  }
  return out;
}

CechElement cech_differential(const CechElement& c) {
  auto [evens, odds] = cech_differential_split(c);
  return {c.base_arity, c.level + 1, evens - odds};
}

std::pair<FormExpr, FormExpr> cech_differential_split(const CechElement& c) {
  const int m = c.base_arity;
  const int n = c.level;
  if (c.form.arity() != m + n)
    throw std::invalid_argument("cech element arity mismatch");
  FormExpr evens = FormExpr::zero(m + n + 1, c.form.degree(), c.form.valued());
  FormExpr odds = evens;
  for (int i = 0; i <= n + 1; ++i) {
    FormExpr pulled = pullback(c.form, cech_face(m, n, i));
    if (i % 2 == 0)
      evens = evens + pulled;
    else
      odds = odds + pulled;
  }
  return {evens, odds};
}

FormExpr action_shortcut(const FormExpr& level0_form,
                         const std::string& gen_slot) {
  FormExpr gen = FormExpr::slot(level0_form.arity(), gen_slot);
  return -action_contract(level0_form, gen);
}

CechElement descend(const Backend& b, const InvariantDatum& datum) {
  const int m = datum.base_arity;
  const int dim = b.dim();
  switch (datum.kind) {
    case InvariantDatum::Kind::function:
    case InvariantDatum::Kind::one_form:
      return {m, 0, datum.expr};
    case InvariantDatum::Kind::dual_function: {
      FormExpr acc = FormExpr::zero(m + 1, 1, Valued::scalar);
      for (int i = 0; i < dim; ++i) {
        FormExpr ti = extend_arity(
            bind_slot(datum.expr, datum.slot, b.basis()[i]), m + 1);
        FormExpr leg = FormExpr::pair(
            FormExpr::lie_const(m + 1, b.dual_basis(i)),
            FormExpr::rmc(m + 1, m));
        acc = acc - FormExpr::wedge(ti, leg);
      }
      return {m, 1, acc};
    }
    case InvariantDatum::Kind::dual_one_form: {
      FormExpr acc = FormExpr::zero(m + 1, 2, Valued::scalar);
      std::vector<FormExpr> legs;
      legs.reserve(dim);
      for (int i = 0; i < dim; ++i)
        legs.push_back(FormExpr::pair(
            FormExpr::lie_const(m + 1, b.dual_basis(i)),
            FormExpr::rmc(m + 1, m)));
      for (int i = 0; i < dim; ++i) {
        FormExpr ti = bind_slot(datum.expr, datum.slot, b.basis()[i]);
        acc = acc + FormExpr::wedge(extend_arity(ti, m + 1), legs[i]);
        for (int j = 0; j < dim; ++j) {
          FormExpr cji = action_contract(
              ti, FormExpr::lie_const(m, b.basis()[j]));
          FormExpr tail = FormExpr::wedge(legs[i], legs[j]);
          acc = acc - rat(1, 2) * FormExpr::wedge(extend_arity(cji, m + 1),
                                                  tail);
        }
      }
      return {m, 1, acc};
    }
    case InvariantDatum::Kind::sym2: {
      FormExpr core = FormExpr::pair(FormExpr::lmc(m + 2, m),
                                     FormExpr::rmc(m + 2, m + 1));
      return {m, 2, (rat(-1, 2) * datum.coeff) * core};
    }
  }
  throw std::invalid_argument("descend: unsupported datum shape");
}

ClosedPairReport check_closed_pair(const Backend& b, const CechElement& two,
                                   const CechElement& three,
                                   const SamplePlan& plan) {
  if (three.base_arity != two.base_arity || three.level != two.level - 1)
    throw std::invalid_argument("closed pair: level/base mismatch");
  ClosedPairReport rep;
  auto [t_even, t_odd] = cech_differential_split(two);
  rep.top = equal_numeric(b, t_even, t_odd, plan);
  auto [m_even, m_odd] = cech_differential_split(three);
  rep.middle = equal_numeric(b, de_rham(two.form) + m_even, m_odd, plan);
  FormExpr d3 = de_rham(three.form);
  rep.bottom = equal_numeric(
      b, d3, FormExpr::zero(d3.arity(), d3.degree(), d3.valued()), plan);
  return rep;
}

InvariantDatum omega0_datum(const std::string& slot_name) {
  FormExpr theta_sum = FormExpr::lmc(1, 0) + FormExpr::rmc(1, 0);
  FormExpr expr =
      rat(-1, 2) * FormExpr::pair(theta_sum, FormExpr::slot(1, slot_name));
  return {InvariantDatum::Kind::dual_one_form, 1, expr, slot_name, rat(0)};
}

FormExpr omega1_form(int arity, int factor) {
  FormExpr th = FormExpr::lmc(arity, factor);
  return rat(1, 12) * FormExpr::pair(th, FormExpr::bracket(th, th));
}

FormExpr phi_form() {
  return rat(-1, 2) * FormExpr::pair(FormExpr::lmc(2, 0), FormExpr::rmc(2, 1));
}

}  // namespace gforms
