#include <doctest.h>

#include <Eigen/Dense>
#include <stdexcept>

#include "gforms/form_expr.hpp"
#include "gforms/lie_backend.hpp"
#include "gforms/numeric.hpp"
#include "gforms/cech.hpp"
#include "gforms/transgression.hpp"
#include "oracle.hpp"

using namespace gforms;

TEST_CASE("shapes of the primitive forms") {
  FormExpr t = FormExpr::lmc(2, 0);
  CHECK(t.arity() == 2);
  CHECK(t.degree() == 1);
  CHECK(t.valued() == Valued::lie);
  FormExpr p = FormExpr::pair(t, FormExpr::rmc(2, 1));
  CHECK(p.degree() == 2);
  CHECK(p.valued() == Valued::scalar);
  FormExpr br = FormExpr::bracket(t, t);
  CHECK(br.degree() == 2);
  CHECK(br.valued() == Valued::lie);
  CHECK(FormExpr::zero(2, 3, Valued::scalar).is_zero());
  CHECK(FormExpr::lmc(1, 0).arity() == 1);
}

TEST_CASE("factory shape validation") {
  FormExpr t = FormExpr::lmc(2, 0);
  FormExpr s = FormExpr::pair(t, t);  // scalar
  CHECK_THROWS_AS((void)FormExpr::pair(s, t), std::invalid_argument);
  CHECK_THROWS_AS((void)FormExpr::bracket(s, s), std::invalid_argument);
  CHECK_THROWS_AS((void)FormExpr::wedge(t, t), std::invalid_argument);
  CHECK_THROWS_AS((void)(t + s), std::invalid_argument);
  CHECK_THROWS_AS((void)(FormExpr::lmc(2, 0) + FormExpr::lmc(3, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)FormExpr::lmc(2, 5), std::invalid_argument);
}

TEST_CASE("zero absorbs and sums flatten") {
  FormExpr t = FormExpr::lmc(2, 0);
  FormExpr z = FormExpr::zero(2, 1, Valued::lie);
  CHECK(FormExpr::pair(z, t).is_zero());
  CHECK(FormExpr::bracket(t, z).is_zero());
  CHECK((t + z).key() == t.key());
  FormExpr u = FormExpr::rmc(2, 1);
  FormExpr abc = (t + u) + FormExpr::ad(GroupWord::generator(2, 0), u);
  CHECK(abc.terms().size() == 3);
}

TEST_CASE("keys are stable and discriminating") {
  CHECK(FormExpr::lmc(2, 0).key() == "(lmc 0)");
  CHECK(FormExpr::rmc(2, 1).key() == "(rmc 1)");
  CHECK(FormExpr::lmc(2, 0).key() != FormExpr::lmc(2, 1).key());
  FormExpr phi1 = phi_form();
  FormExpr phi2 = phi_form();
  CHECK(phi1.structurally_equal(phi2));
  CHECK_FALSE(phi1.structurally_equal(doublelagr_form()));
}

TEST_CASE("frozen scalar: Cartan 3-form on sl2 at the identity") {
  // omega1 = 1/12 (theta, [theta, theta]) on (e, f, h) at the identity
  // evaluates to exactly 1 with the trace pairing.
  Backend b = Backend::make("sl2");
  FormExpr w1 = omega1_form(1, 0);
  EvalPoint at;
  at.point = {b.identity()};
  at.tangents = {Tangent{b.basis(0)}, Tangent{b.basis(1)},
                 Tangent{b.basis(2)}};
  CHECK(eval_scalar(b, w1, at) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("frozen scalar: group-pair 2-form on sl2 at the identity") {
  // phi = -1/2 (p1* theta, p2* theta-bar) on tangents (e at the first
  // factor, f at the second) evaluates to -1/2.
  Backend b = Backend::make("sl2");
  FormExpr phi = phi_form();
  EvalPoint at;
  at.point = {b.identity(), b.identity()};
  at.tangents = {unit_tangent(2, 0, b.basis(0)),
                 unit_tangent(2, 1, b.basis(1))};
  CHECK(eval_scalar(b, phi, at) == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("shuffle evaluation equals the full permutation sum") {
  Backend b = Backend::make("sl2");
  Rng rng(71);
  // (1,1), (1,2) and (2,2) degree splits, all within p + q <= 4.
  struct Case {
    FormExpr a, bta;
  };
  FormExpr th0 = FormExpr::lmc(2, 0);
  FormExpr tb1 = FormExpr::rmc(2, 1);
  std::vector<Case> cases = {
      {th0, tb1},
      {th0, FormExpr::bracket(tb1, FormExpr::lmc(2, 1))},
      {FormExpr::bracket(th0, FormExpr::rmc(2, 0)),
       FormExpr::bracket(tb1, tb1)}};
  for (const Case& c : cases) {
    FormExpr paired = FormExpr::pair(c.a, c.bta);
    for (int trial = 0; trial < 5; ++trial) {
      EvalPoint at = sample_point(b, 2, paired.degree(), {}, rng);
      double got = eval_scalar(b, paired, at);
      double want = testing::perm_pair(b, c.a, c.bta, at);
      CHECK(testing::residual(got, want) < 1e-10);
    }
  }
}

TEST_CASE("pair antisymmetry in odd degree") {
  Backend b = Backend::make("gl2");
  Rng rng(73);
  FormExpr a = FormExpr::lmc(2, 0);
  FormExpr c = FormExpr::rmc(2, 1);
  for (int trial = 0; trial < 5; ++trial) {
    EvalPoint at = sample_point(b, 2, 2, {}, rng);
    double ab = eval_scalar(b, FormExpr::pair(a, c), at);
    double ba = eval_scalar(b, FormExpr::pair(c, a), at);
    CHECK(testing::residual(ab, -ba) < 1e-10);
    // (alpha, alpha) = 0 for odd alpha.
    CHECK(std::abs(eval_scalar(b, FormExpr::pair(a, a), at)) < 1e-12);
  }
}

TEST_CASE("adjoint twists compose through word products") {
  Backend b = Backend::make("sl2");
  Rng rng(79);
  GroupWord v(2, {{0, 1}, {1, -1}});
  GroupWord w(2, {{1, 1}, {0, 1}});
  FormExpr body = FormExpr::lmc(2, 0);
  // Value of Ad_w(body) is W^{-1} (body) W, so nesting applies the outer
  // word first: Ad_w(Ad_v(body)) = Ad_{v w}(body).
  FormExpr nested = FormExpr::ad(w, FormExpr::ad(v, body));
  FormExpr flat = FormExpr::ad(v * w, body);
  SamplePlan plan;
  plan.trials = 40;
  plan.seed = 5;
  EqReport r = equal_numeric(b, nested, flat, plan);
  CHECK(r.status == EqStatus::equal);
}

TEST_CASE("slots: evaluation, binding and renaming") {
  Backend b = Backend::make("sl2");
  FormExpr f = FormExpr::pair(FormExpr::lmc(1, 0), FormExpr::slot(1, "v"));
  CHECK(f.slots().count("v") == 1);
  Rng rng(83);
  EvalPoint at = sample_point(b, 1, 1, f.slots(), rng);
  REQUIRE(at.slots.count("v") == 1);
  double via_slot = eval_scalar(b, f, at);
  FormExpr bound = bind_slot(f, "v", at.slots.at("v"));
  CHECK(bound.slots().empty());
  CHECK(testing::residual(eval_scalar(b, bound, at), via_slot) < 1e-12);
  FormExpr renamed = rename_slot(f, "v", "w");
  CHECK(renamed.slots().count("w") == 1);
  EvalPoint at2 = at;
  at2.slots.clear();
  at2.slots["w"] = at.slots.at("v");
  CHECK(testing::residual(eval_scalar(b, renamed, at2), via_slot) < 1e-12);
}

TEST_CASE("rational scaling and negation evaluate correctly") {
  Backend b = Backend::make("gl2");
  Rng rng(89);
  FormExpr f = doublelagr_form();
  EvalPoint at = sample_point(b, 2, 2, {}, rng);
  double v = eval_scalar(b, f, at);
  CHECK(eval_scalar(b, rat(3, 2) * f, at) ==
        doctest::Approx(1.5 * v).epsilon(1e-12));
  CHECK(eval_scalar(b, -f, at) == doctest::Approx(-v).epsilon(1e-12));
  CHECK(eval_scalar(b, f - f, at) == doctest::Approx(0.0));
}

TEST_CASE("lie_const evaluates to its matrix regardless of the point") {
  Backend b = Backend::make("sl2");
  Rng rng(97);
  Eigen::MatrixXd c = b.sample_lie(rng);
  FormExpr e = FormExpr::lie_const(1, c);
  CHECK(e.degree() == 0);
  EvalPoint at;
  at.point = {b.sample_group(rng)};
  CHECK((eval(b, e, at).m - c).norm() == 0.0);
}
