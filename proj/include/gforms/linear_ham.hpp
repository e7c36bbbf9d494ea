#pragma once
// Classical (vector-space) Hamiltonian warm-up checks, evaluated with
// direct linear algebra rather than the group-manifold expression trees:
// the cotangent space of the adjoint representation, and the coadjoint
// quotient with its tautological 1-form.

#include <Eigen/Dense>

#include "gforms/lie_backend.hpp"
#include "gforms/numeric.hpp"

namespace gforms {

/// T*V for V = the adjoint representation. Points (q, p) with q in g and
/// p in g* (realized via the pairing); canonical symplectic form
/// h0((xq, xp), (yq, yp)) = <xp, yq> - <yp, xq>; action a(v)(q, p) =
/// ([q, v], p(ad_v .)); moment mu(v) = p([q, v]). Checks, sampled:
///   E1: -(contraction of h0 with a(v)) = d mu(v);
///   E2: h0 constant (d h0 = 0);
///   equivariance of mu.
struct LinearReport {
  EqStatus status = EqStatus::equal;
  double max_residual = 0.0;
  int trials = 0;
  std::string worst_check;  // which equation attained the max
};
LinearReport cotangent_adjoint_check(const Backend& b,
                                     const SamplePlan& plan);

/// The coadjoint quotient [g*/G]: tautological g*-valued 1-form
/// omega0(v)|_x(eta) = <eta, v>. Checks: closedness of omega0(v) for
/// basis v (constant coefficients), equivariance of the coadjoint
/// action, and that v -> omega0(v) has full rank (the induced map of
/// the tangent complex is an isomorphism in the relevant degree).
struct CoadjointReport {
  EqStatus status = EqStatus::equal;
  double max_residual = 0.0;
  int trials = 0;
  bool full_rank = false;
  double smallest_singular = 0.0;
};
CoadjointReport coadjoint_check(const Backend& b, const SamplePlan& plan);

}  // namespace gforms
