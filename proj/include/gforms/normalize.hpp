#pragma once
// Conservative term rewriting to a canonical sum-of-monomials shape.
// Guarantees: eval(normalize(e)) == eval(e) at every site, and
// normalize is idempotent. It is a simplifier, not a decision procedure
// for equality; numeric comparison remains the ground truth.

#include "gforms/form_expr.hpp"

namespace gforms {

/// Rewrites applied (recursively, then at each node):
///   - multilinear expansion of pair/bracket/wedge/ad over sums;
///   - sum flattening, like-term collection over exact rationals,
///     zero dropping, canonical term order;
///   - Ad composition Ad_v(Ad_w x) = Ad_{wv}(x), free word reduction,
///     Ad_e(x) = x;
///   - invariance: pair(Ad_w a, Ad_w b) = pair(a, b) and
///     bracket(Ad_w a, Ad_w b) = Ad_w(bracket(a, b));
///   - graded commutativity: pair/wedge arguments sorted with sign
///     (a, b) = (-1)^{pq} (b, a); bracket sorted with
///     [a, b] = -(-1)^{pq} [b, a]; odd-degree self-pair/self-wedge -> 0.
FormExpr normalize(const FormExpr& e);

}  // namespace gforms
