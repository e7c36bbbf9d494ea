#include "gforms/linear_ham.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <vector>

namespace gforms {

namespace {

/// Covector with coefficients uniform in [-1, 1]; <p, y> = p . coeffs(y).
Eigen::VectorXd sample_covector(int dim, Rng& rng) {
  Eigen::VectorXd p(dim);
  for (int i = 0; i < dim; ++i) p(i) = rng.coeff();
  return p;
}

double apply_cov(const Backend& b, const Eigen::VectorXd& p,
                 const Eigen::MatrixXd& y) {
  return p.dot(b.coeffs(y));
}

/// Coadjoint right action (p . g)(v) = p(g v g^{-1}).
Eigen::VectorXd coadjoint(const Backend& b, const Eigen::VectorXd& p,
                          const Eigen::MatrixXd& g) {
  return b.ad_matrix(b.inverse(g)).transpose() * p;
}

double rel(double lhs, double rhs) {
  return std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

double vec_rel(const Eigen::VectorXd& lhs, const Eigen::VectorXd& rhs) {
  return (lhs - rhs).norm() / std::max({1.0, lhs.norm(), rhs.norm()});
}

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

}  // namespace

LinearReport cotangent_adjoint_check(const Backend& b,
                                     const SamplePlan& plan) {
  const int d = b.dim();
  // Canonical form on T*V, V the adjoint representation; points (q, p),
  // tangents (xq, xp) with xq in the algebra and xp a covector.
  auto h0 = [&](const Eigen::MatrixXd& xq, const Eigen::VectorXd& xp,
                const Eigen::MatrixXd& yq, const Eigen::VectorXd& yp) {
    return apply_cov(b, xp, yq) - apply_cov(b, yp, xq);
  };

  // E1: -(h0 contracted with the action field of v) = d mu(v).
  std::vector<double> e1 = sweep_trials(
      plan.trials, plan.seed, plan.mode, [&](int, Rng& rng) {
        Eigen::MatrixXd q = b.sample_lie(rng);
        Eigen::VectorXd p = sample_covector(d, rng);
        Eigen::MatrixXd v = b.sample_lie(rng);
        Eigen::MatrixXd tq = b.sample_lie(rng);
        Eigen::VectorXd tp = sample_covector(d, rng);
        // a(v)|(q,p) = ([q, v], w -> p([v, w])).
        Eigen::MatrixXd aq = b.bracket(q, v);
        Eigen::VectorXd ap(d);
        for (int i = 0; i < d; ++i)
          ap(i) = apply_cov(b, p, b.bracket(v, b.basis(i)));
        double lhs = -h0(aq, ap, tq, tp);
        // Derivative of mu(v) = p([q, v]) along (tq, tp).
        double rhs =
            apply_cov(b, tp, b.bracket(q, v)) + apply_cov(b, p, b.bracket(tq, v));
        return rel(lhs, rhs);
      });

  // E2: h0 has constant coefficients (hence is closed) and is
  // antisymmetric. Constancy is definitional in this realization -- the
  // evaluator takes no base point -- so the sweep pins antisymmetry.
  std::vector<double> e2 = sweep_trials(
      plan.trials, plan.seed + 1, plan.mode, [&](int, Rng& rng) {
        Eigen::MatrixXd xq = b.sample_lie(rng);
        Eigen::VectorXd xp = sample_covector(d, rng);
        Eigen::MatrixXd yq = b.sample_lie(rng);
        Eigen::VectorXd yp = sample_covector(d, rng);
        return rel(h0(xq, xp, yq, yp), -h0(yq, yp, xq, xp));
      });

  // Moment equivariance: mu((q, p) . g)(v) = mu(q, p)(g v g^{-1}).
  std::vector<double> eq = sweep_trials(
      plan.trials, plan.seed + 2, plan.mode, [&](int, Rng& rng) {
        Eigen::MatrixXd q = b.sample_lie(rng);
        Eigen::VectorXd p = sample_covector(d, rng);
        Eigen::MatrixXd v = b.sample_lie(rng);
        Eigen::MatrixXd g = b.sample_group(rng);
        Eigen::MatrixXd gi = b.inverse(g);
        Eigen::MatrixXd qg = gi * q * g;
        Eigen::VectorXd pg = coadjoint(b, p, g);
        double lhs = apply_cov(b, pg, b.bracket(qg, v));
        double rhs = apply_cov(b, p, b.bracket(q, g * v * gi));
        return rel(lhs, rhs);
      });

  LinearReport rep;
  rep.trials = plan.trials;
  double m1 = max_of(e1), m2 = max_of(e2), m3 = max_of(eq);
  rep.max_residual = std::max({m1, m2, m3});
  rep.worst_check = rep.max_residual == m1   ? "moment contraction"
                    : rep.max_residual == m2 ? "constant antisymmetric form"
                                             : "moment equivariance";
  rep.status =
      rep.max_residual <= plan.tol ? EqStatus::equal : EqStatus::not_equal;
  return rep;
}

CoadjointReport coadjoint_check(const Backend& b, const SamplePlan& plan) {
  const int d = b.dim();
  CoadjointReport rep;
  rep.trials = plan.trials;

  std::vector<double> res = sweep_trials(
      plan.trials, plan.seed, plan.mode, [&](int, Rng& rng) {
        double worst = 0.0;
        Eigen::VectorXd eta = sample_covector(d, rng);
        Eigen::MatrixXd v = b.sample_lie(rng);
        Eigen::MatrixXd g = b.sample_group(rng);
        Eigen::MatrixXd h = b.sample_group(rng);
        Eigen::VectorXd p = sample_covector(d, rng);
        // Right-action composition: (p . g) . h = p . (g h).
        worst = std::max(
            worst, vec_rel(coadjoint(b, coadjoint(b, p, g), h),
                           coadjoint(b, p, g * h)));
        // Equivariance of the tautological 1-form: pulling back
        // omega0(v) along the action of g twists v by g v g^{-1}.
        double lhs = coadjoint(b, eta, g).dot(b.coeffs(v));
        double rhs = eta.dot(b.coeffs(g * v * b.inverse(g)));
        worst = std::max(worst, rel(lhs, rhs));
        return worst;
      });
  rep.max_residual = max_of(res);
  rep.status =
      rep.max_residual <= plan.tol ? EqStatus::equal : EqStatus::not_equal;

  // v -> omega0(v), expressed on the coordinate covector directions,
  // must have full rank d.
  Eigen::MatrixXd m(d, d);
  for (int j = 0; j < d; ++j) m.col(j) = b.coeffs(b.basis(j));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  rep.smallest_singular = svd.singularValues().tail(1)(0);
  rep.full_rank = rep.smallest_singular > 1e-9;
  return rep;
}

}  // namespace gforms
