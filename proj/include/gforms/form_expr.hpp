#pragma once
// Immutable expression trees for invariant differential forms on a power
// G^arity of a Lie group. Generators are the per-factor Maurer-Cartan
// forms; forms are scalar- or Lie-algebra-valued.
//
// Evaluation convention: a binary operation T in {pair, bracket, wedge}
// applied to a p-form and a q-form antisymmetrizes over (p, q)-shuffles
// with no combinatorial prefactor:
//   T(a, b)(t_1..t_{p+q}) = sum_{shuffles s} sgn(s) T(a(t_{s1}..), b(..)).

#include <Eigen/Dense>

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gforms/group_word.hpp"
#include "gforms/rational.hpp"

namespace gforms {

enum class Kind {
  zero,       // the zero form of a given degree and valuedness
  lmc,        // left-invariant Maurer-Cartan form of one factor: a^{-1} da
  rmc,        // right-invariant Maurer-Cartan form: da a^{-1}
  ad,         // Ad_w(body) for a group word w: w^{-1} body w
  lie_const,  // constant algebra element (Lie-valued 0-form)
  slot,       // named constant algebra element, bound at evaluation time
  pair,       // invariant pairing of two Lie-valued forms (scalar-valued)
  bracket,    // commutator of two Lie-valued forms (Lie-valued)
  wedge,      // product of two scalar-valued forms
  sum,        // rational linear combination of same-shape forms
};

enum class Valued { scalar, lie };

/// Immutable shared handle to a form expression node.
class FormExpr {
 public:
  Kind kind() const;
  int arity() const;
  int degree() const;
  Valued valued() const;
  bool is_zero() const { return kind() == Kind::zero; }

  // ----- factories (each validates shapes and propagates zeros) -----
  static FormExpr zero(int arity, int degree, Valued v);
  static FormExpr lmc(int arity, int factor);
  static FormExpr rmc(int arity, int factor);
  static FormExpr ad(GroupWord w, FormExpr body);
  static FormExpr lie_const(int arity, Eigen::MatrixXd m);
  static FormExpr slot(int arity, std::string name);
  static FormExpr pair(FormExpr a, FormExpr b);
  static FormExpr bracket(FormExpr a, FormExpr b);
  static FormExpr wedge(FormExpr a, FormExpr b);
  /// Linear combination; terms must share arity/degree/valuedness.
  /// Zero coefficients and zero terms are dropped; an empty result
  /// collapses to the zero form of the given shape.
  static FormExpr sum(std::vector<std::pair<Rational, FormExpr>> terms,
                      int arity, int degree, Valued v);
  /// Shape inferred from the first term (terms must be non-empty).
  static FormExpr sum(std::vector<std::pair<Rational, FormExpr>> terms);

  // ----- child accessors (kind-checked) -----
  int factor() const;                 // lmc, rmc
  const GroupWord& word() const;      // ad
  const FormExpr& body() const;       // ad
  const FormExpr& lhs() const;        // pair, bracket, wedge
  const FormExpr& rhs() const;        // pair, bracket, wedge
  const Eigen::MatrixXd& matrix() const;           // lie_const
  const std::string& slot_name() const;            // slot
  const std::vector<std::pair<Rational, FormExpr>>& terms() const;  // sum

  /// All slot names appearing in the expression.
  std::set<std::string> slots() const;

  /// Canonical structural string; doubles printed with full precision.
  /// Structural equality of expressions is equality of keys.
  std::string key() const;
  bool structurally_equal(const FormExpr& o) const {
    return key() == o.key();
  }
  bool same_shape(const FormExpr& o) const {
    return arity() == o.arity() && degree() == o.degree() &&
           valued() == o.valued();
  }

  friend FormExpr operator+(const FormExpr& a, const FormExpr& b);
  friend FormExpr operator-(const FormExpr& a, const FormExpr& b);
  friend FormExpr operator*(const Rational& c, const FormExpr& e);
  FormExpr operator-() const;

  struct Node;

 private:
  explicit FormExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Substitute a concrete algebra element for a named slot.
FormExpr bind_slot(const FormExpr& e, const std::string& name,
                   const Eigen::MatrixXd& value);

/// Rename a slot.
FormExpr rename_slot(const FormExpr& e, const std::string& from,
                     const std::string& to);

}  // namespace gforms
