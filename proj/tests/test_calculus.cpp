#include <doctest.h>

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "gforms/calculus.hpp"
#include "gforms/cech.hpp"
#include "gforms/form_expr.hpp"
#include "gforms/lie_backend.hpp"
#include "gforms/numeric.hpp"
#include "gforms/transgression.hpp"
#include "oracle.hpp"

using namespace gforms;

namespace {

SamplePlan quick(int trials, std::uint64_t seed) {
  SamplePlan p;
  p.trials = trials;
  p.seed = seed;
  return p;
}

}  // namespace

TEST_CASE("multiplication pulls theta back to a twisted sum") {
  // (ab)* theta = Ad_b (p1* theta) + p2* theta.
  Backend b = Backend::make("sl2");
  GroupWord ab(2, {{0, 1}, {1, 1}});
  FormExpr lhs = pull_lmc(ab);
  FormExpr rhs = FormExpr::ad(GroupWord::generator(2, 1),
                              FormExpr::lmc(2, 0)) +
                 FormExpr::lmc(2, 1);
  EqReport r = equal_numeric(b, lhs, rhs, quick(40, 1));
  CHECK(r.status == EqStatus::equal);
}

TEST_CASE("inversion swaps the two Maurer-Cartan forms with a sign") {
  Backend b = Backend::make("gl2");
  GroupWord inv(1, {{0, -1}});
  EqReport r1 = equal_numeric(b, pull_lmc(inv), -FormExpr::rmc(1, 0),
                              quick(40, 2));
  CHECK(r1.status == EqStatus::equal);
  EqReport r2 = equal_numeric(b, pull_rmc(inv), -FormExpr::lmc(1, 0),
                              quick(40, 2));
  CHECK(r2.status == EqStatus::equal);
}

TEST_CASE("multiplication pulls theta-bar back from the left") {
  // (ab)* theta-bar = p1* theta-bar + Ad_{a^{-1}} (p2* theta-bar).
  Backend b = Backend::make("sl2");
  GroupWord ab(2, {{0, 1}, {1, 1}});
  FormExpr rhs = FormExpr::rmc(2, 0) +
                 FormExpr::ad(GroupWord(2, {{0, -1}}), FormExpr::rmc(2, 1));
  EqReport r = equal_numeric(b, pull_rmc(ab), rhs, quick(40, 3));
  CHECK(r.status == EqStatus::equal);
}

TEST_CASE("pullback along composed maps is functorial") {
  Backend b = Backend::make("sl2");
  WordMap f = {GroupWord(2, {{0, 1}, {1, 1}}),
               GroupWord(2, {{1, -1}, {0, 1}})};
  WordMap g = {GroupWord(2, {{1, 1}}), GroupWord(2, {{0, 1}, {0, 1}})};
  for (const FormExpr& e :
       {phi_form(), doublelagr_form(),
        de_rham(phi_form())}) {
    FormExpr twice = pullback(pullback(e, f), g);
    FormExpr once = pullback(e, compose_map(f, g));
    EqReport r = equal_numeric(b, twice, once, quick(30, 4));
    CHECK(r.status == EqStatus::equal);
  }
}

TEST_CASE("extend_arity embeds a form into a larger product") {
  Backend b = Backend::make("sl2");
  Rng rng(101);
  FormExpr phi = phi_form();
  FormExpr wide = extend_arity(phi, 4, 1);  // factors (1, 2) of G^4
  CHECK(wide.arity() == 4);
  EvalPoint at = sample_point(b, 4, 2, {}, rng);
  EvalPoint inner;
  inner.point = {at.point[1], at.point[2]};
  for (const Tangent& t : at.tangents)
    inner.tangents.push_back(Tangent{t[1], t[2]});
  CHECK(testing::residual(eval_scalar(b, wide, at),
                          eval_scalar(b, phi, inner)) < 1e-12);
  // Arity-0 expressions re-root onto any product.
  FormExpr z0 = FormExpr::zero(0, 2, Valued::scalar);
  CHECK(extend_arity(z0, 3).arity() == 3);
}

TEST_CASE("contractions of the Maurer-Cartan forms") {
  Backend b = Backend::make("sl2");
  Rng rng(103);
  for (int trial = 0; trial < 6; ++trial) {
    Eigen::MatrixXd a = b.sample_group(rng);
    Eigen::MatrixXd v = b.sample_lie(rng);
    FormExpr cv = FormExpr::lie_const(1, v);
    EvalPoint at;
    at.point = {a};
    auto val = [&](const FormExpr& e) { return eval(b, e, at).m; };
    // Left field a v: theta gives Ad_a v, theta-bar gives v.
    CHECK((val(contract(FormExpr::lmc(1, 0), 0, Side::left, cv)) -
           b.adjoint(a, v))
              .norm() < 1e-10);
    CHECK((val(contract(FormExpr::rmc(1, 0), 0, Side::left, cv)) - v)
              .norm() < 1e-10);
    // Right field v a: theta gives v, theta-bar gives Ad_{a^{-1}} v.
    CHECK((val(contract(FormExpr::lmc(1, 0), 0, Side::right, cv)) - v)
              .norm() < 1e-10);
    CHECK((val(contract(FormExpr::rmc(1, 0), 0, Side::right, cv)) -
           b.adjoint(b.inverse(a), v))
              .norm() < 1e-10);
  }
}

TEST_CASE("contraction is a graded antiderivation on pairs") {
  // i_X (alpha, beta) = (i_X alpha, beta) - (alpha, i_X beta) for
  // 1-forms alpha, beta (sign (-1)^{deg alpha}).
  Backend b = Backend::make("sl2");
  Rng rng(107);
  FormExpr alpha = FormExpr::lmc(1, 0);
  FormExpr beta = FormExpr::rmc(1, 0);
  Eigen::MatrixXd v = b.sample_lie(rng);
  FormExpr cv = FormExpr::lie_const(1, v);
  FormExpr lhs = contract(FormExpr::pair(alpha, beta), 0, Side::left, cv);
  FormExpr rhs = FormExpr::pair(contract(alpha, 0, Side::left, cv), beta) -
                 FormExpr::pair(alpha, contract(beta, 0, Side::left, cv));
  EqReport r = equal_numeric(b, lhs, rhs, quick(40, 6));
  CHECK(r.status == EqStatus::equal);
}

TEST_CASE("contract rejects 0-forms") {
  FormExpr c = FormExpr::lie_const(1, Eigen::MatrixXd::Identity(2, 2));
  CHECK_THROWS_AS((void)contract(c, 0, Side::left, c),
                  std::invalid_argument);
}

TEST_CASE("exterior differential matches central differences") {
  // The finite-difference gate: d evaluated symbolically must agree with
  // the chart-based derivative for expressions exercising every rule,
  // in particular the twisted-body rule
  //   d Ad_w(beta) = Ad_w(d beta) - [w* theta, Ad_w(beta)].
  Backend b = Backend::make("sl2");
  Rng rng(109);
  std::vector<FormExpr> shapes;
  GroupWord w1(2, {{0, 1}, {1, -1}});
  GroupWord w2(2, {{1, 1}, {0, 1}, {1, 1}});
  Eigen::MatrixXd cmat = b.sample_lie(rng);
  FormExpr cst = FormExpr::lie_const(2, cmat);
  shapes.push_back(FormExpr::pair(FormExpr::ad(w1, FormExpr::lmc(2, 0)),
                                  cst));
  shapes.push_back(FormExpr::pair(FormExpr::ad(w2, FormExpr::rmc(2, 1)),
                                  cst));
  shapes.push_back(FormExpr::pair(
      FormExpr::ad(w1, FormExpr::bracket(FormExpr::lmc(2, 0),
                                         FormExpr::rmc(2, 1))),
      cst));
  shapes.push_back(phi_form());
  shapes.push_back(doublelagr_form());
  for (const FormExpr& alpha : shapes) {
    FormExpr da = de_rham(alpha);
    for (int trial = 0; trial < 8; ++trial) {
      Rng trial_rng(derive_seed(911, static_cast<std::uint64_t>(trial)));
      EvalPoint at = sample_point(b, 2, alpha.degree() + 1, {}, trial_rng);
      double sym = eval_scalar(b, da, at);
      double fd =
          testing::fd_de_rham(b, alpha, at.point, at.tangents, at.slots);
      CHECK(testing::residual(sym, fd) < 1e-6);
    }
  }
}

TEST_CASE("d is a differential: d(d(alpha)) = 0") {
  Backend b = Backend::make("sl2");
  std::vector<FormExpr> battery = {
      phi_form(), doublelagr_form(),
      FormExpr::pair(FormExpr::ad(GroupWord(2, {{0, 1}, {1, 1}}),
                                  FormExpr::lmc(2, 0)),
                     FormExpr::rmc(2, 1)),
      circle_rep(GroupWord::generator(2, 0), GroupWord::generator(2, 1))};
  for (const FormExpr& e : battery) {
    FormExpr dd = de_rham(de_rham(e));
    FormExpr z = FormExpr::zero(2, e.degree() + 2, Valued::scalar);
    EqReport r = equal_numeric(b, dd, z, quick(40, 8));
    CHECK(r.status == EqStatus::equal);
  }
}

TEST_CASE("differential of the invariant-section pairing") {
  // d(-1/2 (theta + theta-bar, x)) =
  //   -1/2 (-1/2 [theta, theta] + 1/2 [theta-bar, theta-bar], x)
  // for constant x.
  Backend b = Backend::make("sl2");
  Rng rng(113);
  Eigen::MatrixXd x = b.sample_lie(rng);
  FormExpr cx = FormExpr::lie_const(1, x);
  FormExpr t = FormExpr::lmc(1, 0), tb = FormExpr::rmc(1, 0);
  FormExpr lhs = de_rham(rat(-1, 2) * FormExpr::pair(t + tb, cx));
  FormExpr rhs = rat(-1, 2) * FormExpr::pair(
      rat(-1, 2) * FormExpr::bracket(t, t) +
          rat(1, 2) * FormExpr::bracket(tb, tb),
      cx);
  EqReport r = equal_numeric(b, lhs, rhs, quick(40, 9));
  CHECK(r.status == EqStatus::equal);
}

TEST_CASE("pullback respects evaluation on random word maps") {
  Backend b = Backend::make("gl2");
  Rng rng(127);
  WordMap f = {GroupWord(2, {{0, 1}, {1, 1}}), GroupWord(2, {{0, -1}})};
  FormExpr phi = phi_form();
  FormExpr pulled = pullback(phi, f);
  for (int trial = 0; trial < 6; ++trial) {
    EvalPoint at = sample_point(b, 2, 2, {}, rng);
    // Push the site through the word map by hand.
    EvalPoint image;
    image.point = {f[0].eval(at.point), f[1].eval(at.point)};
    for (const Tangent& t : at.tangents) {
      Tangent it;
      for (const GroupWord& w : f) {
        Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(b.n(), b.n());
        for (int j = 0; j < 2; ++j) acc += w.dval(at.point, j, t[j]);
        it.push_back(acc);
      }
      image.tangents.push_back(it);
    }
    CHECK(testing::residual(eval_scalar(b, pulled, at),
                            eval_scalar(b, phi, image)) < 1e-9);
  }
}
