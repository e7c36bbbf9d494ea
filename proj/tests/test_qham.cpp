#include <doctest.h>

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "gforms/calculus.hpp"
#include "gforms/form_expr.hpp"
#include "gforms/lie_backend.hpp"
#include "gforms/normalize.hpp"
#include "gforms/numeric.hpp"
#include "gforms/qham.hpp"
#include "gforms/transgression.hpp"

using namespace gforms;

namespace {

SamplePlan quick(int trials, std::uint64_t seed) {
  SamplePlan p;
  p.trials = trials;
  p.seed = seed;
  return p;
}

std::vector<Eigen::MatrixXd> sample_tuple(const Backend& b, int m,
                                          Rng& rng) {
  std::vector<Eigen::MatrixXd> p;
  for (int i = 0; i < m; ++i) p.push_back(b.sample_group(rng));
  return p;
}

}  // namespace

TEST_CASE("the conjugation double satisfies both moment equations") {
  Backend b = Backend::make("sl2");
  MomentReport r = moment_check(commutator_space(), b, quick(60, 51));
  CHECK(r.all_equal());
  CHECK(r.e1.size() == static_cast<size_t>(b.dim()));
  CHECK(r.e2.status == EqStatus::equal);
  CHECK(r.equivariance.status == EqStatus::equal);
}

TEST_CASE("the multiplicative-route spelling of the double 2-form") {
  Backend b = Backend::make("sl2");
  EqReport r = equal_numeric(b, commutator_variant_form(),
                             commutator_space().h0, quick(60, 52));
  CHECK(r.status == EqStatus::equal);
}

TEST_CASE("fusing with the trivial space changes nothing") {
  Backend b = Backend::make("sl2");
  QHamSpace cs = commutator_space();
  QHamSpace trivial{"pt", 0, GroupWord::identity(0),
                    FormExpr::zero(0, 2, Valued::scalar)};
  for (const QHamSpace& fused : {fuse(trivial, cs), fuse(cs, trivial)}) {
    CHECK(fused.factors == 2);
    CHECK(fused.moment == cs.moment);
    EqReport r = equal_numeric(b, fused.h0, cs.h0, quick(40, 53));
    CHECK(r.status == EqStatus::equal);
  }
}

TEST_CASE("fusion is associative") {
  Backend b = Backend::make("sl2");
  QHamSpace cs = commutator_space();
  QHamSpace left = fuse(fuse(cs, cs), cs);
  QHamSpace right = fuse(cs, fuse(cs, cs));
  CHECK(left.factors == 6);
  CHECK(left.moment == right.moment);
  EqReport r = equal_numeric(b, left.h0, right.h0, quick(25, 54));
  CHECK(r.status == EqStatus::equal);
}

TEST_CASE("genus spaces fold commutator doubles") {
  QHamSpace g1 = genus_space(1);
  QHamSpace cs = commutator_space();
  CHECK(g1.factors == 2);
  CHECK(g1.moment == cs.moment);
  CHECK(g1.h0.key() == cs.h0.key());
  QHamSpace g2 = genus_space(2);
  CHECK(g2.factors == 4);
  // mu = [a1, b1][a2, b2].
  GroupWord want(4, {{0, 1}, {1, 1}, {0, -1}, {1, -1},
                     {2, 1}, {3, 1}, {2, -1}, {3, -1}});
  CHECK(g2.moment == want);
  CHECK_THROWS_AS((void)genus_space(0), std::invalid_argument);
}

TEST_CASE("the genus-2 space satisfies both moment equations") {
  Backend b = Backend::make("sl2");
  MomentReport r = moment_check(genus_space(2), b, quick(30, 55));
  CHECK(r.all_equal());
}

TEST_CASE("internal fusion of the double reproduces its 2-form") {
  Backend b = Backend::make("sl2");
  EqReport r = equal_numeric(b, internal_fusion_double().h0,
                             commutator_space().h0, quick(60, 56));
  CHECK(r.status == EqStatus::equal);
}

TEST_CASE("space JSON round-trips words and forms") {
  QHamSpace g2 = genus_space(2);
  QHamSpace back = QHamSpace::from_json(g2.to_json());
  CHECK(back.name == g2.name);
  CHECK(back.factors == 4);
  CHECK(back.moment == g2.moment);
  CHECK(back.h0.key() == g2.h0.key());
  CHECK_THROWS_AS((void)QHamSpace::from_json("{\"name\": \"x\"}"),
                  std::exception);
}

TEST_CASE("quotient 2-form kernels: nondegenerate at generic points") {
  for (const char* fam : {"sl2", "gl2"}) {
    Backend b = Backend::make(fam);
    NondegReport at_e = nondegeneracy_check(b, b.identity());
    CHECK(at_e.verdict == NondegReport::Verdict::pass);
    CHECK(at_e.kernel_dim == b.dim());  // whole algebra at the identity
    CHECK(at_e.identity_residual < 1e-9);
    Rng rng(57);
    for (int k = 0; k < 5; ++k) {
      NondegReport r = nondegeneracy_check(b, b.sample_group(rng));
      CHECK(r.verdict == NondegReport::Verdict::pass);
      CHECK(r.kernel_dim >= 1);
      CHECK(r.identity_residual < 1e-9);
    }
  }
}

TEST_CASE("a degenerate pairing is flagged by the kernel criterion") {
  Backend good = Backend::make("sl2");
  Eigen::MatrixXd gram = good.pairing_gram();
  gram.row(0).setZero();
  gram.col(0).setZero();
  Backend broken =
      Backend::unchecked("sl2-degenerate", good.n(), good.basis(), gram);
  NondegReport r = nondegeneracy_check(broken, broken.identity());
  CHECK(r.verdict == NondegReport::Verdict::fail);
}

TEST_CASE("the inclusion/pairing sequence of the trivial space is exact") {
  for (const char* fam : {"sl2", "gl2"}) {
    Backend b = Backend::make(fam);
    ExactnessReport r = disk_exactness(b);
    CHECK(r.ok());
    CHECK(r.dim_b == 2 * b.dim());
    CHECK(r.rank_f == b.dim());
    CHECK(r.rank_g == b.dim());
  }
}

TEST_CASE("conjugacy classes: two-step sequence is exact at samples") {
  Backend b = Backend::make("sl2");
  Rng rng(58);
  for (int k = 0; k < 3; ++k) {
    ConjClassReport r = conjugacy_class_exactness(b, b.sample_group(rng));
    CHECK(r.ok());
    CHECK(r.centralizer_dim >= 1);
  }
  // The identity is totally central.
  ConjClassReport at_e = conjugacy_class_exactness(b, b.identity());
  CHECK(at_e.ok());
  CHECK(at_e.centralizer_dim == b.dim());
}

TEST_CASE("conjugacy class of a fixed regular semisimple sl2 element") {
  Backend b = Backend::make("sl2");
  Eigen::MatrixXd g(2, 2);
  g << 2.0, 0.0, 0.0, 0.5;
  ConjClassReport r = conjugacy_class_exactness(b, g);
  CHECK(r.ok());
  CHECK(r.centralizer_dim == 1);  // the diagonal torus direction
  CHECK(r.seq.rank_f == 2);
}

TEST_CASE("mapping cones of the standard spaces are acyclic") {
  Backend b = Backend::make("sl2");
  Rng rng(59);
  QHamSpace cs = commutator_space();
  for (int k = 0; k < 3; ++k) {
    ConeReport r = cone_quasi_iso_check(cs, b, sample_tuple(b, 2, rng));
    CHECK(r.acyclic);
    REQUIRE(r.ranks.size() == 3);
    CHECK(r.ranks[0] == b.dim());
    CHECK(r.ranks[2] == b.dim());
  }
  QHamSpace g2 = genus_space(2);
  ConeReport r2 = cone_quasi_iso_check(g2, b, sample_tuple(b, 4, rng));
  CHECK(r2.acyclic);
}

TEST_CASE("a wrong 2-form breaks the cone acyclicity") {
  Backend b = Backend::make("sl2");
  Rng rng(60);
  QHamSpace cs = commutator_space();
  // Drop the fusion term: the remaining two-term 2-form does not satisfy
  // the contraction equation, so the cone differentials fail to square
  // to zero / telescope.
  QHamSpace broken{"broken-double", 2, cs.moment, double_form()};
  ConeReport r = cone_quasi_iso_check(broken, b, sample_tuple(b, 2, rng));
  CHECK_FALSE(r.acyclic);
}

TEST_CASE("level-set rank at an identity-level genus-2 point") {
  Backend b = Backend::make("sl2");
  Rng rng(61);
  Eigen::MatrixXd a = b.sample_group(rng);
  Eigen::MatrixXd c = b.sample_group(rng);
  // mu(a, c, c, a) = [a, c][c, a] = identity.
  std::vector<Eigen::MatrixXd> pt = {a, c, c, a};
  QHamSpace g2 = genus_space(2);
  LevelSetRankReport r = level_set_rank(g2, b, pt, 2);
  CHECK(r.reference_value == 6);  // 6g - 6 + 2 dim z, sl2 center is 0
  CHECK(r.kernel_dim == 9);       // 4 dim - rank(d mu) at a generic point
  CHECK(r.h0_rank_on_kernel == 6);
}

TEST_CASE("abelian example: the double 2-form is dlog a wedge dlog b") {
  EqReport r = gl1_torus_example(quick(80, 62));
  CHECK(r.status == EqStatus::equal);
  CHECK(r.max_residual < 1e-12);
}

TEST_CASE("the fusion correction vanishes on an abelian group") {
  Backend b = Backend::make("gl1");
  GroupWord a = GroupWord::generator(2, 0);
  GroupWord c = GroupWord::generator(2, 1);
  FormExpr fusion_term =
      rat(1, 2) * FormExpr::pair(pull_lmc(a * c),
                                 pull_rmc(a.inverse() * c.inverse()));
  SamplePlan plan = quick(60, 63);
  plan.tol = 1e-12;
  EqReport r = equal_numeric(b, fusion_term,
                             FormExpr::zero(2, 2, Valued::scalar), plan);
  CHECK(r.status == EqStatus::equal);
}

TEST_CASE("diagonal tangent pairs at the identity annihilate h0") {
  // At (e, e), tangents that repeat one algebra element on both factors
  // lie in the kernel directions of the double 2-form.
  Backend b = Backend::make("sl2");
  FormExpr h0 = commutator_space().h0;
  EvalPoint at;
  at.point = {b.identity(), b.identity()};
  for (int i = 0; i < b.dim(); ++i) {
    for (int j = 0; j < b.dim(); ++j) {
      at.tangents = {Tangent{b.basis(i), b.basis(i)},
                     Tangent{b.basis(j), b.basis(j)}};
      CHECK(std::abs(eval_scalar(b, h0, at)) < 1e-12);
    }
  }
}

TEST_CASE("swap pullback of the double 2-form: frozen sample") {
  // The double 2-form is odd under swapping the two factors, so the
  // symmetrized combination vanishes identically.  The antisymmetric
  // combination is pinned at a fixed seeded site as a regression anchor
  // against silent convention drift.
  Backend b = Backend::make("sl2");
  WordMap swap = {GroupWord::generator(2, 1), GroupWord::generator(2, 0)};
  FormExpr h0 = commutator_space().h0;
  FormExpr sym = pullback(h0, swap) + h0;
  FormExpr anti = pullback(h0, swap) - h0;
  Rng rng(64);
  EvalPoint at = sample_point(b, 2, 2, {}, rng);
  CHECK(std::abs(eval_scalar(b, sym, at)) < 1e-12);
  const double frozen = -2.9273686724741355;
  CHECK(eval_scalar(b, anti, at) == doctest::Approx(frozen).epsilon(1e-9));
}
