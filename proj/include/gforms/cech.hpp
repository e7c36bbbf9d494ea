#pragma once
// The Cech model of forms on a conjugation quotient [G^m / G]: level n
// holds forms on G^m x G^n (base coordinates first, then n conjugator
// legs), with the alternating-sum differential over the nerve face maps:
//   d_0 (x; k_1..k_{n+1}) = (x . k_1; k_2..k_{n+1})   (conjugate the base)
//   d_i = multiply legs k_i k_{i+1}                    (0 < i < n+1)
//   d_{n+1} = drop the last leg.

#include <string>
#include <vector>

#include "gforms/calculus.hpp"
#include "gforms/form_expr.hpp"
#include "gforms/lie_backend.hpp"
#include "gforms/numeric.hpp"
#include "gforms/rational.hpp"

namespace gforms {

struct CechElement {
  int base_arity = 0;  // m: the base is G^m with diagonal conjugation
  int level = 0;       // n: number of conjugator legs
  FormExpr form;       // arity must equal base_arity + level
};

/// Coordinate words of the face map d_i from level `level + 1` points to
/// level `level` points (used as a pullback recipe for level-`level`
/// forms). Result: base_arity + level words on base_arity + level + 1
/// coordinates.
WordMap cech_face(int base_arity, int level, int i);

/// Alternating sum of face pullbacks; raises the level by one.
CechElement cech_differential(const CechElement& c);

/// Same alternating sum split by sign: first = sum of even faces,
/// second = sum of odd faces (both at level + 1). Used to state
/// delta(c) = 0 as a two-sided comparison.
std::pair<FormExpr, FormExpr> cech_differential_split(const CechElement& c);

/// Degree-lowering shortcut on level-0 forms: minus the contraction with
/// the conjugation action field of a slot generator.
FormExpr action_shortcut(const FormExpr& level0_form,
                         const std::string& gen_slot);

/// G-invariant input data on the base X = G^base_arity for the descent
/// construction. `expr` uses slot `slot` for the algebra argument where
/// applicable.
struct InvariantDatum {
  enum class Kind {
    function,        // invariant function (scalar 0-form), no slot
    one_form,        // invariant scalar 1-form, no slot
    dual_function,   // x |-> scalar 0-form, linear in slot x
    dual_one_form,   // x |-> scalar 1-form, linear in slot x
    sym2,            // coeff * (the invariant pairing), constant on X
  };
  Kind kind;
  int base_arity = 1;
  FormExpr expr;      // unused for sym2 (pass a zero form)
  std::string slot;   // bound algebra argument for dual_* kinds
  Rational coeff = rat(0);  // sym2 only
};

/// The Cech representative the datum descends to:
///   function/one_form -> level 0 (unchanged);
///   dual_function t   -> level 1:  - sum_i t[e_i] (f_i, rmc(leg));
///   dual_one_form t   -> level 1:
///        sum_i t[e_i] ^ (f_i, rmc(leg))
///      - 1/2 sum_{i,j} (contract of t[e_i] with the action field of e_j)
///                      ^ (f_i, rmc(leg)) ^ (f_j, rmc(leg));
///   sym2 c            -> level 2:  -c/2 (lmc(leg1), rmc(leg2)).
/// Here e_i is the backend basis and f_i its pairing-dual basis.
CechElement descend(const Backend& b, const InvariantDatum& datum);

/// The three closedness equations for a pair (2-form at level n,
/// 3-form at level n-1) representing a closed shifted 2-form:
///   delta(two) = 0,   d(two) + delta(three) = 0,   d(three) = 0.
/// Each is tested two-sided to keep residuals relative.
struct ClosedPairReport {
  EqReport top;     // delta(two) = 0
  EqReport middle;  // d(two) + delta(three) = 0
  EqReport bottom;  // d(three) = 0
  bool all_equal() const {
    return top.status == EqStatus::equal &&
           middle.status == EqStatus::equal &&
           bottom.status == EqStatus::equal;
  }
};

ClosedPairReport check_closed_pair(const Backend& b, const CechElement& two,
                                   const CechElement& three,
                                   const SamplePlan& plan);

/// omega0 as invariant datum on X = G: x |-> -1/2 (theta + theta-bar, x).
InvariantDatum omega0_datum(const std::string& slot_name = "x");

/// The canonical invariant 3-form omega1 = 1/12 (theta, [theta, theta])
/// on one factor of G^arity.
FormExpr omega1_form(int arity = 1, int factor = 0);

/// The multiplicative-torsor 2-form phi = -1/2 (lmc(0), rmc(1)) on G^2.
FormExpr phi_form();

}  // namespace gforms
