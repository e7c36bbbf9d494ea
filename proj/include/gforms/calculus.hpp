#pragma once
// Symbolic operations on form expressions: pullback along product-group
// maps given by words, exterior differential, and contraction with the
// invariant vector fields generated by constant algebra elements.

#include "gforms/form_expr.hpp"
#include "gforms/group_word.hpp"

namespace gforms {

/// Pullback of theta (left MC form) along a word map G^m -> G.
FormExpr pull_lmc(const GroupWord& w);
/// Pullback of theta-bar (right MC form) along a word map G^m -> G.
FormExpr pull_rmc(const GroupWord& w);

/// Pullback along the map G^m -> G^a whose coordinates are `coords`
/// (a = e.arity(), all words on m inputs).
FormExpr pullback(const FormExpr& e, const WordMap& coords);

/// Reinterpret e on a larger product: coordinate i becomes coordinate
/// offset + i of G^new_arity.
FormExpr extend_arity(const FormExpr& e, int new_arity, int offset = 0);

/// Exterior differential. Rules:
///   d lmc = -1/2 [lmc, lmc],   d rmc = +1/2 [rmc, rmc],
///   d Ad_w(b) = Ad_w(d b) - [w*theta, Ad_w(b)],
///   graded Leibniz on pair/bracket/wedge, linearity on sums,
///   d(constant) = 0.
FormExpr de_rham(const FormExpr& e);

enum class Side { left, right };

/// Contraction with the invariant vector field on one factor generated by
/// the constant element `gen` (a Lie-valued 0-form of kind lie_const or
/// slot): side == left contracts with v^L|_a = a v, side == right with
/// v^R|_a = v a. Graded antiderivation of degree -1; throws on 0-forms.
FormExpr contract(const FormExpr& e, int factor, Side side,
                  const FormExpr& gen);

/// Contraction with the conjugation-action field of `gen`: the sum over
/// all factors of (right contraction - left contraction).
FormExpr action_contract(const FormExpr& e, const FormExpr& gen);

}  // namespace gforms
