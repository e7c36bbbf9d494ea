#include "gforms/qham.hpp"

#include <Eigen/SVD>
#include <nlohmann/json.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "gforms/sexpr.hpp"
#include "gforms/transgression.hpp"

namespace gforms {

namespace {

/// Rank by singular values with a relative cutoff; also reports the
/// gap around the cut (smallest kept / largest dropped).
int svd_rank(const Eigen::MatrixXd& m, double* gap = nullptr,
             double rel_tol = 1e-7) {
  if (m.size() == 0) {
    if (gap) *gap = std::numeric_limits<double>::infinity();
    return 0;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  double top = sv.size() > 0 ? sv(0) : 0.0;
  double cut = rel_tol * std::max(1.0, top);
  int rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  if (gap) {
    double kept = rank > 0 ? sv(rank - 1) : 0.0;
    double dropped = rank < sv.size() ? sv(rank) : 0.0;
    *gap = dropped > 0 ? kept / dropped
                       : std::numeric_limits<double>::infinity();
  }
  return rank;
}

/// Orthonormal basis of ker(m) (columns), via SVD.
Eigen::MatrixXd svd_kernel(const Eigen::MatrixXd& m, double rel_tol = 1e-7) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double top = sv.size() > 0 ? sv(0) : 0.0;
  double cut = rel_tol * std::max(1.0, top);
  int rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

GroupWord shift_word(const GroupWord& w, int new_arity, int offset) {
  std::vector<Letter> letters;
  letters.reserve(w.letters().size());
  for (const Letter& l : w.letters())
    letters.push_back({l.factor + offset, l.exp});
  return GroupWord(new_arity, letters);
}

}  // namespace

std::string QHamSpace::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["factors"] = factors;
  nlohmann::ordered_json letters = nlohmann::ordered_json::array();
  for (const Letter& l : moment.letters())
    letters.push_back({l.factor, l.exp});
  j["moment"] = letters;
  j["h0"] = h0.key();
  return j.dump(2);
}

QHamSpace QHamSpace::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  const std::string name = j.at("name").get<std::string>();
  const int factors = j.at("factors").get<int>();
  if (factors < 0)
    throw std::invalid_argument("space JSON: negative factor count");
  std::vector<Letter> letters;
  for (const auto& l : j.at("moment"))
    letters.push_back({l.at(0).get<int>(), l.at(1).get<int>()});
  GroupWord moment(factors, letters);
  FormExpr h0 = parse_sexpr(j.at("h0").get<std::string>(), factors);
  if (h0.degree() != 2 || h0.valued() != Valued::scalar)
    throw std::invalid_argument("space JSON: h0 must be a scalar 2-form");
  return {name, factors, std::move(moment), std::move(h0)};
}

QHamSpace commutator_space() {
  GroupWord mu(2, {{0, 1}, {1, 1}, {0, -1}, {1, -1}});
  return {"commutator", 2, mu, doublelagr_form()};
}

FormExpr commutator_variant_form() {
  GroupWord a = GroupWord::generator(2, 0);
  GroupWord b = GroupWord::generator(2, 1);
  FormExpr t_mult = FormExpr::pair(pull_lmc(a * b),
                                   pull_rmc(a.inverse() * b.inverse()));
  FormExpr t_inv = FormExpr::pair(pull_lmc(a.inverse()),
                                  pull_rmc(b.inverse()));
  FormExpr t_proj = FormExpr::pair(FormExpr::lmc(2, 0), FormExpr::rmc(2, 1));
  return rat(1, 2) * t_mult + rat(1, 2) * t_inv + rat(1, 2) * t_proj;
}

QHamSpace fuse(const QHamSpace& s1, const QHamSpace& s2) {
  const int f = s1.factors + s2.factors;
  GroupWord mu1 = shift_word(s1.moment, f, 0);
  GroupWord mu2 = shift_word(s2.moment, f, s1.factors);
  FormExpr h0 = extend_arity(s1.h0, f, 0) + extend_arity(s2.h0, f, s1.factors) +
                rat(1, 2) * FormExpr::pair(pull_lmc(mu1), pull_rmc(mu2));
  return {s1.name + "*" + s2.name, f, mu1 * mu2, h0};
}

QHamSpace genus_space(int g) {
  if (g < 1)
    throw std::invalid_argument("genus_space: genus must be at least 1");
  QHamSpace s = commutator_space();
  s.name = "genus1";
  for (int i = 1; i < g; ++i) {
    s = fuse(s, commutator_space());
    s.name = "genus" + std::to_string(i + 1);
  }
  return s;
}

QHamSpace internal_fusion_double() {
  GroupWord a = GroupWord::generator(2, 0);
  GroupWord b = GroupWord::generator(2, 1);
  GroupWord mu(2, {{0, 1}, {1, 1}, {0, -1}, {1, -1}});
  FormExpr h0 = double_form() +
                rat(1, 2) * FormExpr::pair(pull_lmc(a * b),
                                           pull_rmc(a.inverse() * b.inverse()));
  return {"fused-double", 2, mu, h0};
}

bool MomentReport::all_equal() const {
  for (const EqReport& r : e1)
    if (r.status != EqStatus::equal) return false;
  return e2.status == EqStatus::equal &&
         equivariance.status == EqStatus::equal;
}

MomentReport moment_check(const QHamSpace& s, const Backend& b,
                          const SamplePlan& plan) {
  if (s.h0.arity() != s.factors || s.moment.arity() != s.factors)
    throw std::invalid_argument("moment_check: space shape mismatch");
  MomentReport rep;
  FormExpr mu_mc = pull_lmc(s.moment) + pull_rmc(s.moment);
  for (int i = 0; i < b.dim(); ++i) {
    FormExpr v = FormExpr::lie_const(s.factors, b.basis()[i]);
    FormExpr lhs = action_contract(s.h0, v);
    FormExpr rhs = rat(-1, 2) * FormExpr::pair(mu_mc, v);
    rep.e1.push_back(equal_numeric(b, lhs, rhs, plan));
  }
  rep.e2 = equal_numeric(
      b, de_rham(s.h0),
      -pullback(omega1_form(1, 0), WordMap{s.moment}), plan);
  // Equivariance of the moment word: mu(g^{-1} m g) = g^{-1} mu(m) g.
  std::vector<double> residuals = sweep_trials(
      plan.trials, plan.seed, plan.mode, [&](int, Rng& rng) {
        std::vector<Eigen::MatrixXd> m;
        for (int j = 0; j < s.factors; ++j) m.push_back(b.sample_group(rng));
        Eigen::MatrixXd g = b.sample_group(rng);
        Eigen::MatrixXd gi = b.inverse(g);
        std::vector<Eigen::MatrixXd> mg;
        for (const auto& mj : m) mg.push_back(gi * mj * g);
        Eigen::MatrixXd lhs = s.moment.eval(mg);
        Eigen::MatrixXd rhs = gi * s.moment.eval(m) * g;
        double scale = std::max({1.0, lhs.norm(), rhs.norm()});
        return (lhs - rhs).norm() / scale;
      });
  rep.equivariance.trials = plan.trials;
  for (double r : residuals)
    rep.equivariance.max_residual = std::max(rep.equivariance.max_residual, r);
  rep.equivariance.status = rep.equivariance.max_residual <= plan.tol
                                ? EqStatus::equal
                                : EqStatus::not_equal;
  return rep;
}

NondegReport nondegeneracy_check(const Backend& b, const Eigen::MatrixXd& a,
                                 double pass_threshold,
                                 double fail_threshold) {
  const int d = b.dim();
  Eigen::MatrixXd ad_inv = b.ad_matrix(b.inverse(a));
  Eigen::MatrixXd kernel =
      svd_kernel(Eigen::MatrixXd::Identity(d, d) - ad_inv);
  NondegReport rep;
  rep.kernel_dim = static_cast<int>(kernel.cols());
  // Rows: tangent directions a e_j; columns: algebra elements. The
  // quotient 2-form pairs them as  v -> -1/2 (e_j + Ad_{a^{-1}} e_j, v).
  Eigen::MatrixXd n(d, d);
  for (int j = 0; j < d; ++j) {
    Eigen::MatrixXd twisted =
        b.basis()[j] + b.from_coeffs(ad_inv.col(j));
    for (int i = 0; i < d; ++i)
      n(j, i) = -0.5 * b.pair(twisted, b.basis()[i]);
  }
  if (rep.kernel_dim == 0) {
    rep.verdict = NondegReport::Verdict::pass;
    rep.smallest_singular = std::numeric_limits<double>::infinity();
    return rep;
  }
  Eigen::MatrixXd restricted = n * kernel;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(restricted);
  rep.smallest_singular = svd.singularValues().tail(1)(0);
  // Sanity identity on the kernel: -1/2 (e_j + Ad_{a^{-1}} e_j, v) =
  // -(e_j, v) whenever Ad_a v = v.
  for (int c = 0; c < kernel.cols(); ++c) {
    Eigen::MatrixXd v = b.from_coeffs(kernel.col(c));
    for (int j = 0; j < d; ++j) {
      double expect = -b.pair(b.basis()[j], v);
      rep.identity_residual = std::max(
          rep.identity_residual, std::abs(restricted(j, c) - expect));
    }
  }
  if (rep.smallest_singular >= pass_threshold)
    rep.verdict = NondegReport::Verdict::pass;
  else if (rep.smallest_singular <= fail_threshold)
    rep.verdict = NondegReport::Verdict::fail;
  else
    rep.verdict = NondegReport::Verdict::inconclusive;
  return rep;
}

ExactnessReport disk_exactness(const Backend& b) {
  const int d = b.dim();
  ExactnessReport rep;
  rep.dim_a = d;
  rep.dim_b = 2 * d;
  rep.dim_c = d;
  Eigen::MatrixXd f(2 * d, d);
  f << Eigen::MatrixXd::Identity(d, d), Eigen::MatrixXd::Zero(d, d);
  Eigen::MatrixXd g(d, 2 * d);
  g.setZero();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      g(i, d + j) = -b.pair(b.basis()[j], b.basis()[i]);
  rep.rank_f = svd_rank(f);
  rep.rank_g = svd_rank(g);
  rep.composite_norm = (g * f).norm();
  rep.composite_zero = rep.composite_norm < 1e-10;
  rep.exact_middle = rep.rank_f + rep.rank_g == rep.dim_b;
  return rep;
}

ConjClassReport conjugacy_class_exactness(const Backend& b,
                                          const Eigen::MatrixXd& g) {
  const int d = b.dim();
  ConjClassReport rep;
  Eigen::MatrixXd f = Eigen::MatrixXd::Identity(d, d) - b.ad_matrix(g);
  Eigen::MatrixXd kernel = svd_kernel(f);
  rep.centralizer_dim = static_cast<int>(kernel.cols());
  // Second map: restrict the pairing functional to the centralizer.
  Eigen::MatrixXd proj(rep.centralizer_dim, d);
  for (int r = 0; r < rep.centralizer_dim; ++r) {
    Eigen::MatrixXd hr = b.from_coeffs(kernel.col(r));
    for (int i = 0; i < d; ++i) proj(r, i) = b.pair(b.basis()[i], hr);
  }
  rep.seq.dim_a = d;
  rep.seq.dim_b = d;
  rep.seq.dim_c = rep.centralizer_dim;
  rep.seq.rank_f = svd_rank(f);
  rep.seq.rank_g = svd_rank(proj);
  rep.seq.composite_norm = (proj * f).norm();
  rep.seq.composite_zero = rep.seq.composite_norm < 1e-10;
  rep.seq.exact_middle = rep.seq.rank_f + rep.seq.rank_g == d;
  // The annihilator of the centralizer must be the image of 1 - Ad_g:
  // each image vector pairs to zero with each kernel vector.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(f, Eigen::ComputeFullU);
  for (int c = 0; c < rep.seq.rank_f; ++c) {
    Eigen::MatrixXd u = b.from_coeffs(svd.matrixU().col(c));
    for (int r = 0; r < rep.centralizer_dim; ++r) {
      Eigen::MatrixXd hr = b.from_coeffs(kernel.col(r));
      rep.annihilator_residual =
          std::max(rep.annihilator_residual, std::abs(b.pair(u, hr)));
    }
  }
  return rep;
}

ConeReport cone_quasi_iso_check(const QHamSpace& s, const Backend& b,
                                const std::vector<Eigen::MatrixXd>& m) {
  const int d = b.dim();
  const int k = s.factors;
  const int dm = k * d;
  if (static_cast<int>(m.size()) != k)
    throw std::invalid_argument("cone check: wrong number of factors");
  Eigen::MatrixXd x = s.moment.eval(m);
  Eigen::MatrixXd xi = b.inverse(x);
  Eigen::MatrixXd ad_x = b.ad_matrix(x);
  Eigen::MatrixXd ad_xi = b.ad_matrix(xi);

  // Conjugation action on each factor, in left-translated coordinates.
  std::vector<Eigen::MatrixXd> act(k);
  for (int j = 0; j < k; ++j)
    act[j] = Eigen::MatrixXd::Identity(d, d) - b.ad_matrix(m[j]);

  // Basis tangents t_{j,i} = m_j e_i; their moment differentials in
  // both Maurer-Cartan trivializations of T_x G.
  Eigen::MatrixXd dmu(d, dm);      // coords of x^{-1} dmu(t)
  Eigen::MatrixXd dmu_bar(d, dm);  // coords of dmu(t) x^{-1}
  std::vector<Tangent> basis_tangents;
  basis_tangents.reserve(dm);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < d; ++i) {
      Eigen::MatrixXd block = m[j] * b.basis()[i];
      basis_tangents.push_back(unit_tangent(k, j, block));
      Eigen::MatrixXd dv = s.moment.dval(m, j, block);
      dmu.col(j * d + i) = b.coeffs(xi * dv);
      dmu_bar.col(j * d + i) = b.coeffs(dv * xi);
    }

  // h0 on the basis tangents.
  Eigen::MatrixXd h(dm, dm);
  for (int r = 0; r < dm; ++r)
    for (int c = 0; c < dm; ++c) {
      EvalPoint at{m, {basis_tangents[r], basis_tangents[c]}, {}};
      h(r, c) = eval_scalar(b, s.h0, at);
    }

  // Cone differentials; degrees run g -> T_m M + g -> T_x G + T*_m M -> g*.
  Eigen::MatrixXd d2 = Eigen::MatrixXd::Zero(dm + d, d);
  for (int j = 0; j < k; ++j) d2.block(j * d, 0, d, d) = -act[j];
  d2.block(dm, 0, d, d).setIdentity();

  Eigen::MatrixXd d1 = Eigen::MatrixXd::Zero(d + dm, dm + d);
  d1.block(0, 0, d, dm) = -dmu;
  d1.block(0, dm, d, d) = -(Eigen::MatrixXd::Identity(d, d) - ad_x);
  d1.block(d, 0, dm, dm) = h.transpose();
  // Covector part in w: -1/2 (theta(dmu t) + theta-bar(dmu t), w),
  // matching the contraction moment equation.
  Eigen::MatrixXd kw(dm, d);
  for (int t = 0; t < dm; ++t) {
    Eigen::MatrixXd mc = b.from_coeffs(dmu.col(t)) + b.from_coeffs(dmu_bar.col(t));
    for (int i = 0; i < d; ++i)
      kw(t, i) = -0.5 * b.pair(mc, b.basis()[i]);
  }
  d1.block(d, dm, dm, d) = kw;

  Eigen::MatrixXd d0 = Eigen::MatrixXd::Zero(d, d + dm);
  for (int i = 0; i < d; ++i) {
    Eigen::MatrixXd mc = b.basis()[i] + b.from_coeffs(ad_xi.col(i));
    for (int r = 0; r < d; ++r) d0(r, i) = -0.5 * b.pair(mc, b.basis()[r]);
  }
  for (int r = 0; r < d; ++r) {
    // -lambda(a_M(e_r)), the dual of the degree-2 action block.
    for (int j = 0; j < k; ++j) {
      Eigen::VectorXd col = act[j].col(r);
      for (int t = 0; t < d; ++t) d0(r, d + j * d + t) = -col(t);
    }
  }

  ConeReport rep;
  rep.dims = {d, dm + d, d + dm, d};
  rep.gaps.resize(3);
  rep.ranks = {svd_rank(d2, &rep.gaps[0]), svd_rank(d1, &rep.gaps[1]),
               svd_rank(d0, &rep.gaps[2])};
  double square_norm =
      std::max((d1 * d2).norm(), (d0 * d1).norm());
  rep.acyclic = rep.ranks[0] == d && rep.ranks[1] == dm &&
                rep.ranks[2] == d && square_norm < 1e-8;
  return rep;
}

LevelSetRankReport level_set_rank(const QHamSpace& s, const Backend& b,
                                  const std::vector<Eigen::MatrixXd>& m,
                                  int genus) {
  const int d = b.dim();
  const int k = s.factors;
  const int dm = k * d;
  Eigen::MatrixXd x = s.moment.eval(m);
  Eigen::MatrixXd xi = b.inverse(x);
  Eigen::MatrixXd dmu(d, dm);
  std::vector<Tangent> basis_tangents;
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < d; ++i) {
      Eigen::MatrixXd block = m[j] * b.basis()[i];
      basis_tangents.push_back(unit_tangent(k, j, block));
      dmu.col(j * d + i) = b.coeffs(xi * s.moment.dval(m, j, block));
    }
  Eigen::MatrixXd kernel = svd_kernel(dmu);
  Eigen::MatrixXd h(dm, dm);
  for (int r = 0; r < dm; ++r)
    for (int c = 0; c < dm; ++c) {
      EvalPoint at{m, {basis_tangents[r], basis_tangents[c]}, {}};
      h(r, c) = eval_scalar(b, s.h0, at);
    }
  LevelSetRankReport rep;
  rep.kernel_dim = static_cast<int>(kernel.cols());
  rep.h0_rank_on_kernel = svd_rank(kernel.transpose() * h * kernel);
  // Center dimension from the structure constants.
  Eigen::MatrixXd stacked(d * d, d);
  for (int i = 0; i < d; ++i) {
    for (int c = 0; c < d; ++c) {
      Eigen::VectorXd br = b.coeffs(b.bracket(b.basis()[c], b.basis()[i]));
      for (int r = 0; r < d; ++r) stacked(i * d + r, c) = br(r);
    }
  }
  int center_dim = d - svd_rank(stacked);
  rep.reference_value = 6 * genus - 6 + 2 * center_dim;
  return rep;
}

EqReport gl1_torus_example(const SamplePlan& plan) {
  Backend b = Backend::make("gl1");
  Eigen::MatrixXd one = Eigen::MatrixXd::Identity(1, 1);
  FormExpr dlog_a = FormExpr::pair(FormExpr::lmc(2, 0),
                                   FormExpr::lie_const(2, one));
  FormExpr dlog_b = FormExpr::pair(FormExpr::lmc(2, 1),
                                   FormExpr::lie_const(2, one));
  return equal_numeric(b, doublelagr_form(),
                       FormExpr::wedge(dlog_a, dlog_b), plan);
}

}  // namespace gforms
