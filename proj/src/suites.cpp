#include "gforms/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "gforms/calculus.hpp"
#include "gforms/cech.hpp"
#include "gforms/linear_ham.hpp"
#include "gforms/normalize.hpp"
#include "gforms/qham.hpp"
#include "gforms/sexpr.hpp"
#include "gforms/transgression.hpp"

namespace gforms {

namespace {

SamplePlan plan_from(const RunConfig& cfg) {
  SamplePlan p;
  p.trials = cfg.trials;
  p.tol = cfg.tol;
  p.seed = cfg.seed;
  p.mode = cfg.mode;
  return p;
}

double rel(double lhs, double rhs) {
  return std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

CheckResult structural_check(const std::string& id,
                             const std::string& statement, bool ok,
                             nlohmann::ordered_json details = nullptr) {
  CheckResult r;
  r.id = id;
  r.statement = statement;
  r.status = ok ? CheckResult::Status::pass : CheckResult::Status::fail;
  r.trials = 1;
  r.details = std::move(details);
  return r;
}

CheckResult value_check(const std::string& id, const std::string& statement,
                        double got, double want, double tol) {
  CheckResult r;
  r.id = id;
  r.statement = statement;
  r.max_residual = std::abs(got - want);
  r.trials = 1;
  r.status = r.max_residual <= tol ? CheckResult::Status::pass
                                   : CheckResult::Status::fail;
  r.details = {{"value", got}, {"expected", want}};
  return r;
}

CheckResult sweep_check(const std::string& id, const std::string& statement,
                        const RunConfig& cfg, double tol,
                        const std::function<double(int, Rng&)>& fn) {
  std::vector<double> res = sweep_trials(cfg.trials, cfg.seed, cfg.mode, fn);
  CheckResult r;
  r.id = id;
  r.statement = statement;
  r.trials = cfg.trials;
  for (double x : res) r.max_residual = std::max(r.max_residual, x);
  r.status = r.max_residual <= tol ? CheckResult::Status::pass
                                   : CheckResult::Status::fail;
  return r;
}

GroupWord gen(int arity, int factor) {
  return GroupWord::generator(arity, factor);
}

// ---------------------------------------------------------------- lie --

void lie_suite(const Backend& b, const RunConfig& cfg,
               std::vector<CheckResult>& out) {
  SamplePlan plan = plan_from(cfg);

  out.push_back(check_from_eq(
      "lie.mc.inverse", "(a^-1)* theta = -theta_bar",
      equal_numeric(b, pullback(FormExpr::lmc(1, 0), {gen(1, 0).inverse()}),
                    -FormExpr::rmc(1, 0), plan)));

  out.push_back(check_from_eq(
      "lie.mc.product", "(a b)* theta = Ad_b(theta_0) + theta_1",
      equal_numeric(b, pull_lmc(gen(2, 0) * gen(2, 1)),
                    FormExpr::ad(gen(2, 1), FormExpr::lmc(2, 0)) +
                        FormExpr::lmc(2, 1),
                    plan)));

  {
    FormExpr v = FormExpr::slot(1, "v");
    out.push_back(check_from_eq(
        "lie.mc.conj", "iota_{a(v)} theta = v - Ad_a v",
        equal_numeric(b, action_contract(FormExpr::lmc(1, 0), v),
                      v - FormExpr::ad(gen(1, 0), v), plan)));
  }

  out.push_back(check_from_eq(
      "lie.cartan3.closed", "d omega1 = 0",
      equal_numeric(b, de_rham(omega1_form()),
                    FormExpr::zero(1, 4, Valued::scalar), plan)));

  {
    // Frozen convention oracles on sl2 (independent of cfg.backend).
    Backend sl2 = Backend::make("sl2");
    EvalPoint at;
    at.point = {sl2.identity()};
    at.tangents = {unit_tangent(1, 0, sl2.basis(0)),
                   unit_tangent(1, 0, sl2.basis(1)),
                   unit_tangent(1, 0, sl2.basis(2))};
    out.push_back(value_check(
        "lie.oracle.omega1.sl2",
        "omega1 at the sl2 identity on (e, f, h) = 1",
        eval_scalar(sl2, omega1_form(), at), 1.0, 1e-12));

    EvalPoint at2;
    at2.point = {sl2.identity(), sl2.identity()};
    at2.tangents = {unit_tangent(2, 0, sl2.basis(0)),
                    unit_tangent(2, 1, sl2.basis(1))};
    out.push_back(value_check(
        "lie.oracle.phi.sl2",
        "phi at (e, e) on (e at factor 0, f at factor 1) = -1/2",
        eval_scalar(sl2, phi_form(), at2), -0.5, 1e-12));
  }
}

// -------------------------------------------------------------- forms --

void forms_suite(const Backend& b, const RunConfig& cfg,
                 std::vector<CheckResult>& out) {
  SamplePlan plan = plan_from(cfg);
  std::vector<FormExpr> battery = {
      doublelagr_form(), de_rham(phi_form()),
      circle_rep(gen(2, 0), gen(2, 1)),
      action_contract(phi_form(), FormExpr::slot(2, "v"))};

  {
    double worst = 0.0;
    bool all = true;
    for (const FormExpr& e : battery) {
      EqReport r = equal_numeric(b, normalize(e), e, plan);
      worst = std::max(worst, r.max_residual);
      all = all && r.status == EqStatus::equal;
    }
    CheckResult r;
    r.id = "normalize.preserves";
    r.statement = "normalize(e) = e numerically on an expression battery";
    r.trials = cfg.trials * static_cast<int>(battery.size());
    r.max_residual = worst;
    r.status =
        all ? CheckResult::Status::pass : CheckResult::Status::fail;
    out.push_back(std::move(r));
  }

  {
    bool idem = true;
    for (const FormExpr& e : battery) {
      FormExpr n1 = normalize(e);
      idem = idem && normalize(n1).key() == n1.key();
    }
    out.push_back(structural_check(
        "normalize.idempotent",
        "normalize(normalize(e)) is structurally normalize(e)", idem));
  }

  {
    FormExpr d = doublelagr_form();
    bool cancels =
        normalize(d - d).key() ==
        FormExpr::zero(2, 2, Valued::scalar).key();
    FormExpr antisym = FormExpr::pair(FormExpr::lmc(2, 0), FormExpr::lmc(2, 1)) +
                       FormExpr::pair(FormExpr::lmc(2, 1), FormExpr::lmc(2, 0));
    cancels = cancels && normalize(antisym).key() ==
                             FormExpr::zero(2, 2, Valued::scalar).key();
    out.push_back(structural_check(
        "normalize.cancels",
        "e - e and (alpha, beta) + (beta, alpha) normalize to zero",
        cancels));
  }

  {
    bool ok = true;
    for (const FormExpr& e : battery)
      ok = ok && parse_sexpr(e.key(), e.arity()).key() == e.key();
    FormExpr example =
        parse_sexpr("(pair (lmc 0) (ad (w 1 -1) (rmc 1)))", 2);
    ok = ok && example.degree() == 2 && example.valued() == Valued::scalar &&
         parse_sexpr(example.key(), 2).key() == example.key();
    out.push_back(structural_check(
        "io.roundtrip",
        "parse(print(e)) is structurally e on the battery and the "
        "documented example",
        ok));
  }

  out.push_back(check_from_eq(
      "engine.detects.difference",
      "theta and theta_bar differ and the engine exhibits a witness",
      equal_numeric(b, FormExpr::lmc(1, 0), FormExpr::rmc(1, 0), plan),
      /*expect_not_equal=*/true));

  {
    auto fn = [&](int, Rng& rng) {
      EvalPoint at = sample_point(b, 2, 2, {}, rng);
      return eval_scalar(b, doublelagr_form(), at);
    };
    std::vector<double> serial =
        sweep_trials(64, cfg.seed, ExecMode::serial, fn);
    std::vector<double> parallel =
        sweep_trials(64, cfg.seed, ExecMode::parallel, fn);
    out.push_back(structural_check(
        "engine.serial.parallel",
        "parallel trial sweep returns bit-identical values to serial",
        serial == parallel));
  }
}

// --------------------------------------------------------------- cech --

void cech_suite(const Backend& b, const RunConfig& cfg,
                std::vector<CheckResult>& out) {
  SamplePlan plan = plan_from(cfg);

  {
    CechElement c{2, 0, doublelagr_form()};
    CechElement dc = cech_differential(c);
    auto [evens, odds] = cech_differential_split(dc);
    out.push_back(check_from_eq(
        "cech.delta.squared.l0",
        "delta(delta(c)) = 0 for the level-0 double 2-form (two-sided)",
        equal_numeric(b, evens, odds, plan)));
  }
  {
    CechElement c{1, 1, circle_rep(gen(2, 0), gen(2, 1))};
    CechElement dc = cech_differential(c);
    auto [evens, odds] = cech_differential_split(dc);
    out.push_back(check_from_eq(
        "cech.delta.squared.l1",
        "delta(delta(c)) = 0 for the level-1 circle 2-form (two-sided)",
        equal_numeric(b, evens, odds, plan)));
  }

  {
    // Classifying pair over the point base: phi at level 2 with omega1
    // at level 1.
    CechElement two{0, 2, phi_form()};
    CechElement three{0, 1, omega1_form()};
    ClosedPairReport r = check_closed_pair(b, two, three, plan);
    out.push_back(check_from_eq("cech.bg.pair.top",
                                "delta(phi) = 0 (associativity)", r.top));
    out.push_back(check_from_eq("cech.bg.pair.middle",
                                "d phi + delta(omega1) = 0", r.middle));
    out.push_back(check_from_eq("cech.bg.pair.bottom", "d omega1 = 0",
                                r.bottom));
  }

  {
    // Conjugation-quotient pair: circle 2-form at level 1 with -omega1
    // at level 0.
    CechElement two{1, 1, circle_rep(gen(2, 0), gen(2, 1))};
    CechElement three{1, 0, -omega1_form(1, 0)};
    ClosedPairReport r = check_closed_pair(b, two, three, plan);
    out.push_back(check_from_eq("cech.gg.pair.top",
                                "delta(circle 2-form) = 0", r.top));
    out.push_back(check_from_eq(
        "cech.gg.pair.middle",
        "d(circle 2-form) = delta(omega1) (two-sided)", r.middle));
    out.push_back(check_from_eq("cech.gg.pair.bottom", "d omega1 = 0",
                                r.bottom));
  }

  {
    // Control: replacing the 3-form component by zero must break the
    // middle equation (the circle 2-form is not d-closed by itself).
    CechElement two{1, 1, circle_rep(gen(2, 0), gen(2, 1))};
    CechElement three{1, 0, FormExpr::zero(1, 3, Valued::scalar)};
    ClosedPairReport r = check_closed_pair(b, two, three, plan);
    out.push_back(check_from_eq(
        "cech.gg.control.middle",
        "dropping omega1 from the closed pair is detected", r.middle,
        /*expect_not_equal=*/true));
  }

  {
    InvariantDatum sym2{InvariantDatum::Kind::sym2, 0,
                        FormExpr::zero(0, 0, Valued::scalar), "", rat(1)};
    CechElement d = descend(b, sym2);
    out.push_back(check_from_eq(
        "descent.sym2.phi",
        "the invariant pairing descends to phi at level 2",
        equal_numeric(b, d.form, phi_form(), plan)));
  }

  {
    CechElement d = descend(b, omega0_datum("x"));
    out.push_back(check_from_eq(
        "descent.omega0.circle",
        "descent of -1/2(theta + theta_bar, x) is the circle 2-form",
        equal_numeric(b, d.form, circle_rep(gen(2, 0), gen(2, 1)), plan)));
  }
}

// ------------------------------------------------------------- torsor --

void torsor_suite(const Backend& b, const RunConfig& cfg,
                  std::vector<CheckResult>& out) {
  SamplePlan plan = plan_from(cfg);
  FormExpr phi = phi_form();

  WordMap m23 = {gen(3, 0), gen(3, 1) * gen(3, 2)};
  WordMap p23 = {gen(3, 1), gen(3, 2)};
  WordMap m12 = {gen(3, 0) * gen(3, 1), gen(3, 2)};
  WordMap p12 = {gen(3, 0), gen(3, 1)};

  out.push_back(check_from_eq(
      "torsor.assoc", "m23* phi + p23* phi = m12* phi + p12* phi",
      equal_numeric(b, pullback(phi, m23) + pullback(phi, p23),
                    pullback(phi, m12) + pullback(phi, p12), plan)));

  {
    // Control: the same telescope with a wrong classifying form.
    FormExpr bad = rat(-1, 2) * FormExpr::pair(FormExpr::lmc(2, 0),
                                               FormExpr::lmc(2, 1));
    out.push_back(check_from_eq(
        "torsor.assoc.control",
        "the telescope detects a wrong classifying 2-form",
        equal_numeric(b, pullback(bad, m23) + pullback(bad, p23),
                      pullback(bad, m12) + pullback(bad, p12), plan),
        /*expect_not_equal=*/true));
  }

  // Slotted 1-form F(v) = 1/2 (theta + theta_bar, v) and the identities
  // it satisfies independently of any trivializing choice.
  FormExpr f_v = rat(1, 2) * FormExpr::pair(
                                 FormExpr::lmc(1, 0) + FormExpr::rmc(1, 0),
                                 FormExpr::slot(1, "v"));
  FormExpr f_w = rename_slot(f_v, "v", "w");

  {
    // Equivariance under conjugation, restricted to base-factor
    // tangents (on conjugator-leg tangents the identity genuinely
    // fails, so this is a restricted sweep rather than equal_numeric).
    GroupWord conj(2, {Letter{1, -1}, Letter{0, 1}, Letter{1, 1}});
    FormExpr lhs = pullback(f_v, {conj});
    FormExpr rhs = rat(1, 2) *
                   FormExpr::pair(FormExpr::lmc(2, 0) + FormExpr::rmc(2, 0),
                                  FormExpr::ad(gen(2, 1).inverse(),
                                               FormExpr::slot(2, "v")));
    const int n = b.n();
    out.push_back(sweep_check(
        "torsor.section.equivariance",
        "conj* F(v) = F(Ad_{g^-1} v) on base-factor tangents", cfg,
        cfg.tol, [&, n](int, Rng& rng) {
          Eigen::MatrixXd a = b.sample_group(rng);
          Eigen::MatrixXd g = b.sample_group(rng);
          Eigen::MatrixXd xi = b.sample_lie(rng);
          EvalPoint at;
          at.point = {a, g};
          at.tangents = {Tangent{a * xi, Eigen::MatrixXd::Zero(n, n)}};
          at.slots = {{"v", b.sample_lie(rng)}};
          return rel(eval_scalar(b, lhs, at), eval_scalar(b, rhs, at));
        }));
  }

  out.push_back(check_from_eq(
      "torsor.section.antisym",
      "iota_{a(w)} F(v) = -iota_{a(v)} F(w)",
      equal_numeric(b, action_contract(f_v, FormExpr::slot(1, "w")),
                    -action_contract(f_w, FormExpr::slot(1, "v")), plan)));

  {
    FormExpr w = FormExpr::slot(1, "w");
    FormExpr rhs = rat(1, 2) *
                   FormExpr::pair(FormExpr::ad(gen(1, 0).inverse(), w) -
                                      FormExpr::ad(gen(1, 0), w),
                                  FormExpr::slot(1, "v"));
    out.push_back(check_from_eq(
        "torsor.section.contraction",
        "iota_{a(w)} F(v) = 1/2 (Ad_{a^-1} w - Ad_a w, v)",
        equal_numeric(b, action_contract(f_v, w), rhs, plan)));
  }

  out.push_back(check_from_eq(
      "torsor.chimult",
      "m* omega1 = p1* omega1 + p2* omega1 + d phi",
      equal_numeric(b, pullback(omega1_form(), {gen(2, 0) * gen(2, 1)}),
                    omega1_form(2, 0) + omega1_form(2, 1) + de_rham(phi),
                    plan)));
}

// -------------------------------------------------------- transgression --

void transgression_suite(const Backend& b, const RunConfig& cfg,
                         std::vector<CheckResult>& out) {
  SamplePlan plan = plan_from(cfg);
  FormExpr rep = circle_rep(gen(2, 0), gen(2, 1));

  CechElement em = em_pushforward(MappingModel::circle(), phi_form());
  out.push_back(check_from_eq(
      "transgress.circle.em",
      "circle pushforward of phi equals the circle 2-form",
      equal_numeric(b, em.form, rep, plan)));

  {
    // Control: dropping the Ad-twisted summand must be detected.
    FormExpr mutilated =
        rat(-1, 2) * FormExpr::pair(pull_lmc(gen(2, 0)) + pull_rmc(gen(2, 0)),
                                    pull_rmc(gen(2, 1)));
    out.push_back(check_from_eq(
        "transgress.circle.control",
        "dropping the twisted summand of the circle 2-form is detected",
        equal_numeric(b, em.form, mutilated, plan),
        /*expect_not_equal=*/true));
  }

  {
    CechElement pants = em_pushforward(MappingModel::pants(), phi_form());
    out.push_back(structural_check(
        "transgress.pants",
        "pants pushforward of phi is structurally phi at level 0",
        pants.level == 0 && pants.base_arity == 2 &&
            pants.form.key() == phi_form().key()));
  }

  {
    bool rejected = false;
    std::string what;
    try {
      MappingModel wedge;
      wedge.surface = SimplicialSurface::wedge_two_circles();
      wedge.hom_arity = 2;
      wedge.ev1.emplace("a", GroupWord(3, {Letter{0, 1}, Letter{2, 1}}));
      wedge.ev1.emplace("b", GroupWord(3, {Letter{1, 1}, Letter{2, 1}}));
      em_pushforward(wedge, phi_form());
    } catch (const std::invalid_argument& e) {
      rejected = true;
      what = e.what();
    }
    out.push_back(structural_check(
        "transgress.wedge.rejected",
        "pushforward along the wedge of two circles is rejected", rejected,
        {{"error", what}}));
  }

  out.push_back(check_from_eq(
      "ptorus.routes.equal",
      "commutator route = homotopy route for the punctured-torus 2-form",
      equal_numeric(b, ptorus_commutator_route(), ptorus_homotopy_route(),
                    plan)));

  out.push_back(check_from_eq(
      "ptorus.doublelagr",
      "homotopy route equals the closed 3-term 2-form",
      equal_numeric(b, ptorus_homotopy_route(), doublelagr_form(), plan)));
}

// --------------------------------------------------------------- qham --

void push_moment(std::vector<CheckResult>& out, const std::string& prefix,
                 const MomentReport& m) {
  {
    CheckResult r;
    r.id = prefix + ".e1";
    r.statement =
        "iota_{a(v)} h0 = -1/2 (mu*(theta + theta_bar), v) for basis v";
    bool all = true;
    for (const EqReport& e : m.e1) {
      r.max_residual = std::max(r.max_residual, e.max_residual);
      r.trials += e.trials;
      all = all && e.status == EqStatus::equal;
    }
    r.status = all ? CheckResult::Status::pass : CheckResult::Status::fail;
    out.push_back(std::move(r));
  }
  out.push_back(
      check_from_eq(prefix + ".e2", "d h0 = -mu* omega1", m.e2));
  out.push_back(check_from_eq(prefix + ".equivariance",
                              "mu(g^-1 m g) = g^-1 mu(m) g",
                              m.equivariance));
}

void qham_suite(const Backend& b, const RunConfig& cfg,
                std::vector<CheckResult>& out) {
  SamplePlan plan = plan_from(cfg);
  QHamSpace cs = commutator_space();

  push_moment(out, "qham.moment", moment_check(cs, b, plan));

  out.push_back(check_from_eq(
      "qham.variant.equal",
      "the multiplication/inversion presentation equals h0",
      equal_numeric(b, commutator_variant_form(), cs.h0, plan)));

  out.push_back(check_from_eq(
      "qham.fuse.internal",
      "internal fusion of the double reproduces h0",
      equal_numeric(b, internal_fusion_double().h0, cs.h0, plan)));

  {
    QHamSpace trivial{"pt", 0, GroupWord::identity(0),
                      FormExpr::zero(0, 2, Valued::scalar)};
    QHamSpace left = fuse(trivial, cs);
    QHamSpace right = fuse(cs, trivial);
    bool words_ok =
        left.moment == cs.moment && right.moment == cs.moment;
    EqReport e1 = equal_numeric(b, left.h0, cs.h0, plan);
    EqReport e2 = equal_numeric(b, right.h0, cs.h0, plan);
    CheckResult r;
    r.id = "qham.fuse.trivial";
    r.statement = "fusing with a point is the identity";
    r.trials = e1.trials + e2.trials;
    r.max_residual = std::max(e1.max_residual, e2.max_residual);
    r.status = (words_ok && e1.status == EqStatus::equal &&
                e2.status == EqStatus::equal)
                   ? CheckResult::Status::pass
                   : CheckResult::Status::fail;
    out.push_back(std::move(r));
  }

  push_moment(out, "qham.fuse.genus2", moment_check(genus_space(2), b, plan));

  {
    QHamSpace left = fuse(fuse(cs, cs), cs);
    QHamSpace right = fuse(cs, fuse(cs, cs));
    bool words_ok = left.moment == right.moment;
    EqReport e = equal_numeric(b, left.h0, right.h0, plan);
    CheckResult r;
    r.id = "qham.fuse.assoc";
    r.statement = "fusion is associative (words structural, h0 numeric)";
    r.trials = e.trials;
    r.max_residual = e.max_residual;
    r.status = (words_ok && e.status == EqStatus::equal)
                   ? CheckResult::Status::pass
                   : CheckResult::Status::fail;
    out.push_back(std::move(r));
  }

  {
    Rng rng(derive_seed(cfg.seed, 101));
    double min_sv = std::numeric_limits<double>::infinity();
    double id_res = 0.0;
    bool all_pass = true;
    bool any_inconclusive = false;
    for (int s = 0; s < 5; ++s) {
      NondegReport r = nondegeneracy_check(b, b.sample_group(rng));
      min_sv = std::min(min_sv, r.smallest_singular);
      id_res = std::max(id_res, r.identity_residual);
      all_pass = all_pass && r.verdict == NondegReport::Verdict::pass;
      any_inconclusive = any_inconclusive ||
                         r.verdict == NondegReport::Verdict::inconclusive;
    }
    NondegReport at_id = nondegeneracy_check(b, b.identity());
    min_sv = std::min(min_sv, at_id.smallest_singular);
    id_res = std::max(id_res, at_id.identity_residual);
    all_pass = all_pass && at_id.verdict == NondegReport::Verdict::pass;
    CheckResult r;
    r.id = "qham.nondeg.kernel";
    r.statement =
        "the quotient 2-form is injective on ker(1 - Ad_{a^-1})";
    r.trials = 6;
    r.max_residual = id_res;
    r.status = all_pass ? CheckResult::Status::pass
               : any_inconclusive ? CheckResult::Status::inconclusive
                                  : CheckResult::Status::fail;
    r.details = {{"min_smallest_singular", min_sv},
                 {"max_identity_residual", id_res}};
    out.push_back(std::move(r));
  }

  {
    // Control: zeroing one pairing row must be caught by the kernel
    // criterion at the identity point.
    Eigen::MatrixXd gram = b.pairing_gram();
    gram.row(0).setZero();
    gram.col(0).setZero();
    Backend broken =
        Backend::unchecked(b.name() + "-broken", b.n(), b.basis(), gram);
    NondegReport r = nondegeneracy_check(broken, broken.identity());
    out.push_back(structural_check(
        "qham.nondeg.control",
        "a degenerate pairing is detected by the kernel criterion",
        r.verdict == NondegReport::Verdict::fail,
        {{"smallest_singular", r.smallest_singular}}));
  }

  {
    ExactnessReport r = disk_exactness(b);
    out.push_back(structural_check(
        "qham.exact.disk",
        "0 -> g -> g + g -> g* -> 0 is exact in the middle",
        r.ok(),
        {{"rank_f", r.rank_f},
         {"rank_g", r.rank_g},
         {"composite_norm", r.composite_norm}}));
  }

  {
    Rng rng(derive_seed(cfg.seed, 202));
    bool ok = true;
    double ann = 0.0;
    for (int s = 0; s < 3; ++s) {
      ConjClassReport r = conjugacy_class_exactness(b, b.sample_group(rng));
      ok = ok && r.ok();
      ann = std::max(ann, r.annihilator_residual);
    }
    CheckResult r;
    r.id = "qham.exact.conjclass";
    r.statement =
        "g --(1 - Ad_g)--> g --(pair with centralizer)--> h* is exact";
    r.trials = 3;
    r.max_residual = ann;
    r.status = ok ? CheckResult::Status::pass : CheckResult::Status::fail;
    out.push_back(std::move(r));
  }

  {
    Backend sl2 = Backend::make("sl2");
    Eigen::MatrixXd g(2, 2);
    g << 2.0, 0.0, 0.0, 0.5;
    ConjClassReport r = conjugacy_class_exactness(sl2, g);
    out.push_back(structural_check(
        "qham.exact.conjclass.sl2",
        "at diag(2, 1/2) in sl2 the centralizer is the Cartan line",
        r.ok() && r.centralizer_dim == 1,
        {{"centralizer_dim", r.centralizer_dim},
         {"annihilator_residual", r.annihilator_residual}}));
  }

  {
    Rng rng(derive_seed(cfg.seed, 303));
    bool ok = true;
    nlohmann::ordered_json last;
    for (int s = 0; s < 3; ++s) {
      std::vector<Eigen::MatrixXd> m = {b.sample_group(rng),
                                        b.sample_group(rng)};
      ConeReport r = cone_quasi_iso_check(cs, b, m);
      ok = ok && r.acyclic;
      last = {{"dims", r.dims}, {"ranks", r.ranks}, {"gaps", r.gaps}};
    }
    out.push_back(structural_check(
        "qham.cone.acyclic",
        "the comparison cone of the double is acyclic at sampled points",
        ok, last));
  }

  {
    Rng rng(derive_seed(cfg.seed, 404));
    QHamSpace g2 = genus_space(2);
    std::vector<Eigen::MatrixXd> m;
    for (int j = 0; j < 4; ++j) m.push_back(b.sample_group(rng));
    ConeReport r = cone_quasi_iso_check(g2, b, m);
    out.push_back(structural_check(
        "qham.cone.genus2",
        "the comparison cone of the genus-2 space is acyclic", r.acyclic,
        {{"dims", r.dims}, {"ranks", r.ranks}, {"gaps", r.gaps}}));
  }

  {
    // Informational: rank of h0 on ker(d mu) at a point of the identity
    // level set of the genus-2 moment, against 6g - 6 + 2 dim z(g).
    Rng rng(derive_seed(cfg.seed, 505));
    Eigen::MatrixXd a = b.sample_group(rng);
    Eigen::MatrixXd g = b.sample_group(rng);
    QHamSpace g2 = genus_space(2);
    LevelSetRankReport r = level_set_rank(g2, b, {a, g, g, a}, 2);
    CheckResult c;
    c.id = "qham.levelset.info";
    c.statement =
        "rank of h0 on ker(d mu) at an identity-level point (reported)";
    c.status = CheckResult::Status::pass;
    c.trials = 1;
    c.details = {{"kernel_dim", r.kernel_dim},
                 {"h0_rank_on_kernel", r.h0_rank_on_kernel},
                 {"reference_6g_minus_6_plus_2z", r.reference_value}};
    out.push_back(std::move(c));
  }

  {
    SamplePlan tight = plan;
    tight.tol = 1e-12;
    out.push_back(check_from_eq(
        "qham.gl1.torus", "on gl1 x gl1, h0 = dlog a ^ dlog b exactly",
        gl1_torus_example(tight)));
    Backend gl1 = Backend::make("gl1");
    GroupWord aw = gen(2, 0), bw = gen(2, 1);
    FormExpr third = rat(1, 2) * FormExpr::pair(
                                     pull_lmc(aw * bw),
                                     pull_rmc(aw.inverse() * bw.inverse()));
    out.push_back(check_from_eq(
        "qham.gl1.third",
        "the fusion summand of h0 vanishes identically on gl1",
        equal_numeric(gl1, third, FormExpr::zero(2, 2, Valued::scalar),
                      tight)));
  }

  {
    // At the identity point, h0 vanishes on pairs of diagonal tangents
    // (the same algebra element on both factors).
    double worst = 0.0;
    const int d = b.dim();
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        EvalPoint at;
        at.point = {b.identity(), b.identity()};
        at.tangents = {Tangent{b.basis(i), b.basis(i)},
                       Tangent{b.basis(j), b.basis(j)}};
        worst = std::max(worst, std::abs(eval_scalar(b, cs.h0, at)));
      }
    CheckResult r;
    r.id = "qham.identity.diag";
    r.statement =
        "h0 vanishes at (e, e) on diagonal tangent pairs";
    r.trials = d * d;
    r.max_residual = worst;
    r.status = worst <= 1e-12 ? CheckResult::Status::pass
                              : CheckResult::Status::fail;
    out.push_back(std::move(r));
  }

  {
    LinearReport r = cotangent_adjoint_check(b, plan);
    CheckResult c;
    c.id = "linear.cotangent";
    c.statement =
        "T*V moment identities: -iota_{a(v)} h0 = d mu(v); h0 constant; "
        "mu equivariant";
    c.trials = r.trials * 3;
    c.max_residual = r.max_residual;
    c.status = r.status == EqStatus::equal ? CheckResult::Status::pass
                                           : CheckResult::Status::fail;
    c.details = {{"worst_check", r.worst_check}};
    out.push_back(std::move(c));
  }

  {
    CoadjointReport r = coadjoint_check(b, plan);
    CheckResult c;
    c.id = "linear.coadjoint";
    c.statement =
        "coadjoint quotient: tautological 1-form equivariant and of "
        "full rank";
    c.trials = r.trials;
    c.max_residual = r.max_residual;
    c.status = (r.status == EqStatus::equal && r.full_rank)
                   ? CheckResult::Status::pass
                   : CheckResult::Status::fail;
    c.details = {{"smallest_singular", r.smallest_singular}};
    out.push_back(std::move(c));
  }
}

}  // namespace

bool is_known_suite(const std::string& name) {
  for (const std::string& s : suite_names())
    if (s == name) return true;
  return name == "all";
}

std::vector<std::string> suite_names() {
  return {"lie", "forms", "cech", "torsor", "transgression", "qham"};
}

std::vector<CheckResult> run_suite(const std::string& suite,
                                   const Backend& b, const RunConfig& cfg) {
  std::vector<CheckResult> out;
  auto want = [&](const std::string& s) {
    return suite == "all" || suite == s;
  };
  if (!is_known_suite(suite))
    throw std::invalid_argument("unknown suite: " + suite);
  if (want("lie")) lie_suite(b, cfg, out);
  if (want("forms")) forms_suite(b, cfg, out);
  if (want("cech")) cech_suite(b, cfg, out);
  if (want("torsor")) torsor_suite(b, cfg, out);
  if (want("transgression")) transgression_suite(b, cfg, out);
  if (want("qham")) qham_suite(b, cfg, out);
  return out;
}

}  // namespace gforms
