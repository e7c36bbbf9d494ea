#include <doctest.h>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <stdexcept>

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

TEST_CASE("face maps produce the expected coordinate words") {
  // Level-0 faces from level-1 points (x; k) over a one-factor base:
  // d_0 = (k^{-1} x k) and d_1 = (x).
  WordMap d0 = cech_face(1, 0, 0);
  REQUIRE(d0.size() == 1);
  CHECK(d0[0] == GroupWord(2, {{1, -1}, {0, 1}, {1, 1}}));
  WordMap d1 = cech_face(1, 0, 1);
  REQUIRE(d1.size() == 1);
  CHECK(d1[0] == GroupWord(2, {{0, 1}}));
  // Level-1 faces from level-2 points (x; k1, k2): the middle face
  // multiplies the legs, the last drops the trailing leg.
  WordMap m0 = cech_face(1, 1, 0);
  REQUIRE(m0.size() == 2);
  CHECK(m0[0] == GroupWord(3, {{1, -1}, {0, 1}, {1, 1}}));
  CHECK(m0[1] == GroupWord(3, {{2, 1}}));
  WordMap m1 = cech_face(1, 1, 1);
  CHECK(m1[0] == GroupWord(3, {{0, 1}}));
  CHECK(m1[1] == GroupWord(3, {{1, 1}, {2, 1}}));
  WordMap m2 = cech_face(1, 1, 2);
  CHECK(m2[0] == GroupWord(3, {{0, 1}}));
  CHECK(m2[1] == GroupWord(3, {{1, 1}}));
}

TEST_CASE("the Cech differential squares to zero") {
  Backend b = Backend::make("sl2");
  SamplePlan plan = quick(40, 31);
  // Level 0 over a two-factor base.
  {
    CechElement c{2, 0, doublelagr_form()};
    auto [evens, odds] = cech_differential_split(cech_differential(c));
    CHECK(equal_numeric(b, evens, odds, plan).status == EqStatus::equal);
  }
  // Level 1 over a one-factor base.
  {
    CechElement c{1, 1, circle_rep(GroupWord::generator(2, 0),
                                   GroupWord::generator(2, 1))};
    auto [evens, odds] = cech_differential_split(cech_differential(c));
    CHECK(equal_numeric(b, evens, odds, plan).status == EqStatus::equal);
  }
  // Level 2 over an empty base (forms on the classifying nerve).
  {
    CechElement c{0, 2, phi_form()};
    auto [evens, odds] = cech_differential_split(cech_differential(c));
    CHECK(equal_numeric(b, evens, odds, plan).status == EqStatus::equal);
  }
}

TEST_CASE("classifying-nerve pair: phi at level 2, omega1 below") {
  Backend b = Backend::make("sl2");
  CechElement two{0, 2, phi_form()};
  CechElement three{0, 1, omega1_form(1, 0)};
  ClosedPairReport r = check_closed_pair(b, two, three, quick(60, 33));
  CHECK(r.top.status == EqStatus::equal);
  CHECK(r.middle.status == EqStatus::equal);
  CHECK(r.bottom.status == EqStatus::equal);
}

TEST_CASE("conjugation-quotient pair: circle 2-form with minus omega1") {
  Backend b = Backend::make("sl2");
  CechElement two{1, 1, circle_rep(GroupWord::generator(2, 0),
                                   GroupWord::generator(2, 1))};
  CechElement three{1, 0, -omega1_form(1, 0)};
  ClosedPairReport r = check_closed_pair(b, two, three, quick(60, 34));
  CHECK(r.top.status == EqStatus::equal);
  CHECK(r.middle.status == EqStatus::equal);
  CHECK(r.bottom.status == EqStatus::equal);
}

TEST_CASE("dropping the 3-form breaks the middle equation") {
  Backend b = Backend::make("sl2");
  CechElement two{1, 1, circle_rep(GroupWord::generator(2, 0),
                                   GroupWord::generator(2, 1))};
  CechElement three{1, 0, FormExpr::zero(1, 3, Valued::scalar)};
  ClosedPairReport r = check_closed_pair(b, two, three, quick(60, 35));
  CHECK(r.middle.status == EqStatus::not_equal);
  REQUIRE(r.middle.witness.has_value());
  CHECK(r.middle.witness->residual > 1e-6);
}

TEST_CASE("closed-pair shape validation") {
  Backend b = Backend::make("sl2");
  CechElement two{1, 1, circle_rep(GroupWord::generator(2, 0),
                                   GroupWord::generator(2, 1))};
  CechElement bad{2, 0, doublelagr_form()};
  CHECK_THROWS_AS((void)check_closed_pair(b, two, bad, quick(5, 0)),
                  std::invalid_argument);
}

TEST_CASE("descent of the pairing datum is the level-2 leg pairing") {
  Backend b = Backend::make("sl2");
  InvariantDatum d{InvariantDatum::Kind::sym2, 0,
                   FormExpr::zero(0, 0, Valued::scalar), "", rat(1)};
  CechElement img = descend(b, d);
  CHECK(img.level == 2);
  CHECK(img.base_arity == 0);
  EqReport r = equal_numeric(b, img.form, phi_form(), quick(40, 36));
  CHECK(r.status == EqStatus::equal);
}

TEST_CASE("descent of the invariant-section datum is the circle 2-form") {
  Backend b = Backend::make("sl2");
  CechElement img = descend(b, omega0_datum("x"));
  CHECK(img.level == 1);
  CHECK(img.base_arity == 1);
  FormExpr rep = circle_rep(GroupWord::generator(2, 0),
                            GroupWord::generator(2, 1));
  EqReport r = equal_numeric(b, img.form, rep, quick(60, 37));
  CHECK(r.status == EqStatus::equal);
}

TEST_CASE("descent of a constant dual function collapses by duality") {
  // For t[x] = (x, c): -sum_i (e_i, c) (f_i, rmc) = -(c, rmc).
  Backend b = Backend::make("sl2");
  Rng rng(131);
  Eigen::MatrixXd c = b.sample_lie(rng);
  InvariantDatum d{InvariantDatum::Kind::dual_function, 1,
                   FormExpr::pair(FormExpr::slot(1, "x"),
                                  FormExpr::lie_const(1, c)),
                   "x", rat(0)};
  CechElement img = descend(b, d);
  CHECK(img.level == 1);
  FormExpr want = -FormExpr::pair(FormExpr::lie_const(2, c),
                                  FormExpr::rmc(2, 1));
  EqReport r = equal_numeric(b, img.form, want, quick(40, 38));
  CHECK(r.status == EqStatus::equal);
}

TEST_CASE("conjugation flow differentiates to the action contraction") {
  // For an invariant form alpha on the base, the t-derivative of the
  // conjugated site (E m E^{-1}, E xi E^{-1}) with E = exp(t v) equals
  // (i_{a(v)} d alpha + d i_{a(v)} alpha) at t = 0 (Cartan's formula;
  // the conjugation face of the Cech model is built on this flow).
  Backend b = Backend::make("sl2");
  Rng rng(137);
  const double eps = 1e-5;
  FormExpr alpha = doublelagr_form();
  FormExpr cv_template = FormExpr::slot(2, "v");
  FormExpr rhs_expr = action_contract(de_rham(alpha), cv_template) +
                      de_rham(action_contract(alpha, cv_template));
  for (int trial = 0; trial < 5; ++trial) {
    EvalPoint at = sample_point(b, 2, 2, {"v"}, rng);
    Eigen::MatrixXd v = at.slots.at("v");
    auto value_at = [&](double t) {
      Eigen::MatrixXd E = (t * v).exp();
      Eigen::MatrixXd Ei = E.inverse();
      EvalPoint moved;
      for (const Eigen::MatrixXd& p : at.point)
        moved.point.push_back(E * p * Ei);
      for (const Tangent& tan : at.tangents) {
        Tangent mt;
        for (const Eigen::MatrixXd& x : tan) mt.push_back(E * x * Ei);
        moved.tangents.push_back(mt);
      }
      return eval_scalar(b, alpha, moved);
    };
    double fd = (value_at(eps) - value_at(-eps)) / (2.0 * eps);
    double sym = eval_scalar(b, rhs_expr, at);
    CHECK(testing::residual(fd, sym) < 1e-6);
  }
}

TEST_CASE("action_shortcut agrees with minus the action contraction") {
  Backend b = Backend::make("sl2");
  FormExpr alpha = doublelagr_form();
  FormExpr lhs = action_shortcut(alpha, "v");
  FormExpr rhs = -action_contract(alpha, FormExpr::slot(2, "v"));
  EqReport r = equal_numeric(b, lhs, rhs, quick(40, 39));
  CHECK(r.status == EqStatus::equal);
}
